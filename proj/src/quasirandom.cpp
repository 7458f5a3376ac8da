#include "turan/quasirandom.hpp"

#include "turan/rng.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace turan {

void BipartiteGraph::add(std::size_t a, std::size_t b)
{
    if (a >= x_ || b >= y_)
        throw std::out_of_range("bipartite edge outside its sides");
    bits_[a * words_ + (b >> 6)] |= Word(1) << (b & 63);
}

Rational BipartiteGraph::density() const
{
    if (x_ == 0 || y_ == 0)
        return 0;
    return Rational(static_cast<long long>(size()), static_cast<long long>(x_ * y_));
}

BipartiteGraph BipartiteGraph::complement() const
{
    BipartiteGraph g(x_, y_);
    for (std::size_t a = 0; a < x_; ++a)
        for (std::size_t b = 0; b < y_; ++b)
            if (!has(a, b))
                g.add(a, b);
    return g;
}

BipartiteGraph BipartiteGraph::transpose() const
{
    BipartiteGraph g(y_, x_);
    for (std::size_t a = 0; a < x_; ++a)
        for_each_bit(row(a), [&](std::size_t b) { g.add(b, a); });
    return g;
}

BipartiteGraph random_bipartite(std::size_t x, std::size_t y, const Rational& p, std::uint64_t seed)
{
    if (p < 0 || p > 1)
        throw std::invalid_argument("edge probability must lie in [0, 1]");
    const auto num = numerator_of(p).convert_to<std::uint64_t>();
    const auto den = denominator_of(p).convert_to<std::uint64_t>();
    BipartiteGraph g(x, y);
    Rng r(seed);
    for (std::size_t a = 0; a < x; ++a)
        for (std::size_t b = 0; b < y; ++b)
            if (r.bernoulli(num, den))
                g.add(a, b);
    return g;
}

BipartiteGraph color_class(const PartitionedColoring& phi, Index i, Index j, Local c)
{
    if (i == j || i >= phi.parts() || j >= phi.parts())
        throw std::invalid_argument("colour class needs two distinct blocks");
    const std::size_t h = phi.block();
    BipartiteGraph g(h, h);
    for (std::size_t a = 0; a < h; ++a)
        for (std::size_t b = 0; b < h; ++b)
            if (phi.local(static_cast<Vertex>(i * h + a), static_cast<Vertex>(j * h + b)) == c)
                g.add(a, b);
    return g;
}

void TripartiteGraph::validate() const
{
    if (xy.x_size() != xz.x_size() || xy.y_size() != yz.x_size() || xz.y_size() != yz.y_size())
        throw std::invalid_argument("tripartite layers disagree on part sizes");
    if (labelled() &&
        (x_label.size() != x_size() || y_label.size() != y_size() || z_label.size() != z_size()))
        throw std::invalid_argument("tripartite labels must cover every part");
}

// ---------------------------------------------------------------------------
// Quasirandomness audit

namespace {

using i128 = __int128;

BigInt to_big(i128 v)
{
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-r) : r;
}

struct Deviation {
    i128 value = -1; // scaled |e(A, B) - d|A||B||
    bool positive = true;
};

/// Column counts s[b] = e(A, b) given; best B is all b with positive or all with negative deviation.
Deviation best_b(const std::vector<std::int64_t>& s, std::size_t asize, i128 dn, i128 dd)
{
    i128 pos = 0, neg = 0;
    for (std::int64_t sb : s) {
        const i128 t = static_cast<i128>(sb) * dd - dn * static_cast<i128>(asize);
        (t > 0 ? pos : neg) += t;
    }
    return pos >= -neg ? Deviation{pos, true} : Deviation{-neg, false};
}

Bitset b_set(const std::vector<std::int64_t>& s, std::size_t asize, i128 dn, i128 dd, bool positive)
{
    Bitset out(s.size());
    for (std::size_t b = 0; b < s.size(); ++b) {
        const i128 t = static_cast<i128>(s[b]) * dd - dn * static_cast<i128>(asize);
        if (positive ? t > 0 : t < 0)
            out.set(b);
    }
    return out;
}

std::vector<std::int64_t> columns(const BipartiteGraph& g, const Bitset& a)
{
    std::vector<std::int64_t> s(g.y_size(), 0);
    for (std::size_t x : a.members())
        for_each_bit(g.row(x), [&](std::size_t b) { ++s[b]; });
    return s;
}

Bitset draw_subset(Rng& r, std::size_t n)
{
    Bitset s(n);
    const auto shape = r.uniform(5);
    if (shape < 3) {
        for (std::size_t v = 0; v < n; ++v)
            if (r.bernoulli(shape + 1, 4))
                s.set(v);
    } else if (n > 0) {
        const auto v = r.uniform(n);
        if (shape == 4)
            s.set_all();
        s.flip(v);
    }
    return s;
}

} // namespace

QuasirandomReport audit_quasirandom(const BipartiteGraph& g0, const Rational& delta, const Rational& d,
                                    const QuasirandomOptions& options)
{
    const bool swapped = g0.x_size() > g0.y_size();
    const BipartiteGraph g = swapped ? g0.transpose() : g0;
    const std::size_t nx = g.x_size(), ny = g.y_size();
    const auto f = SmallFraction::from(d);
    const i128 dn = f.num, dd = f.den;

    QuasirandomReport rep;
    rep.delta = delta;
    rep.d = d;
    rep.seed = options.seed;
    rep.rng = std::string(Rng::algorithm);

    Bitset best_a(nx);
    Deviation best;
    if (nx <= options.exact_threshold) {
        if (nx > 40)
            throw std::invalid_argument("exact quasirandom audit supports at most 40 vertices on the smaller side");
        rep.mode = AuditMode::exact;
        rep.space = BigInt(1) << (nx + ny);
        const std::size_t high = nx > 12 ? 6 : 0;
        const std::size_t low = nx - high;
        std::vector<std::pair<Deviation, std::uint64_t>> parts(std::size_t{1} << high);
#pragma omp parallel for schedule(dynamic, 1) if (options.exec == Exec::parallel)
        for (long long chunk = 0; chunk < static_cast<long long>(parts.size()); ++chunk) {
            std::uint64_t a = static_cast<std::uint64_t>(chunk) << low;
            std::vector<std::int64_t> s = columns(g, Bitset::from_mask(nx, a));
            Deviation top = best_b(s, std::popcount(a), dn, dd);
            std::uint64_t top_a = a;
            for (std::uint64_t gc = 1; gc < (std::uint64_t{1} << low); ++gc) {
                const auto v = static_cast<std::size_t>(std::countr_zero(gc));
                const std::int64_t sign = (a >> v) & 1U ? -1 : 1;
                a ^= std::uint64_t{1} << v;
                for_each_bit(g.row(v), [&](std::size_t b) { s[b] += sign; });
                const Deviation cur = best_b(s, std::popcount(a), dn, dd);
                if (cur.value > top.value || (cur.value == top.value && a < top_a)) {
                    top = cur;
                    top_a = a;
                }
            }
            parts[chunk] = {top, top_a};
        }
        std::uint64_t mask = 0;
        for (const auto& [dev, m] : parts)
            if (dev.value > best.value || (dev.value == best.value && m < mask)) {
                best = dev;
                mask = m;
            }
        best_a = Bitset::from_mask(nx, mask);
    } else {
        rep.mode = AuditMode::sampled;
        rep.samples = options.samples;
        rep.space = options.samples;
        const Rng base(options.seed);
        std::vector<i128> values(options.samples);
#pragma omp parallel for schedule(static) if (options.exec == Exec::parallel)
        for (long long i = 0; i < static_cast<long long>(options.samples); ++i) {
            Rng r = base.split(static_cast<std::uint64_t>(i));
            const Bitset a = draw_subset(r, nx);
            values[i] = best_b(columns(g, a), a.count(), dn, dd).value;
        }
        if (!values.empty()) {
            const auto arg = static_cast<std::uint64_t>(std::max_element(values.begin(), values.end()) - values.begin());
            Rng r = base.split(arg);
            best_a = draw_subset(r, nx);
        }
        best = best_b(columns(g, best_a), best_a.count(), dn, dd);
        // Steepest single-vertex ascent on the deviation.
        while (true) {
            Deviation top = best;
            std::size_t flip = nx;
            for (std::size_t v = 0; v < nx; ++v) {
                best_a.flip(v);
                const Deviation cur = best_b(columns(g, best_a), best_a.count(), dn, dd);
                best_a.flip(v);
                if (cur.value > top.value) {
                    top = cur;
                    flip = v;
                }
            }
            if (flip == nx)
                break;
            best_a.flip(flip);
            best = top;
        }
    }

    const auto s = columns(g, best_a);
    Bitset b = b_set(s, best_a.count(), dn, dd, best.positive);
    const i128 scale = dd * static_cast<i128>(nx) * static_cast<i128>(ny);
    rep.max_deviation = scale == 0 ? Rational(0) : Rational(to_big(std::max<i128>(best.value, 0)), to_big(scale));
    rep.worst_a = swapped ? std::move(b) : best_a;
    rep.worst_b = swapped ? best_a : std::move(b);
    return rep;
}

// ---------------------------------------------------------------------------
// Triangles

std::uint64_t triangle_count(const TripartiteGraph& p)
{
    p.validate();
    std::uint64_t total = 0;
    for (std::size_t x = 0; x < p.x_size(); ++x)
        for_each_bit(p.xy.row(x), [&](std::size_t y) { total += popcount_and(p.xz.row(x), p.yz.row(y)); });
    return total;
}

namespace {

Rational volume(const TripartiteGraph& p)
{
    return Rational(static_cast<long long>(p.x_size() * p.y_size() * p.z_size()));
}

} // namespace

CountingLemmaReport check_counting_lemma(const TripartiteGraph& p, const Rational& delta, const Rational& dxy,
                                         const Rational& dxz, const Rational& dyz, const QuasirandomOptions& options)
{
    p.validate();
    CountingLemmaReport r;
    r.triangles = triangle_count(p);
    r.delta = delta;
    const Rational vol = volume(p);
    r.expected = dxy * dxz * dyz * vol;
    r.deviation = vol == 0 ? Rational(0) : (Rational(BigInt(r.triangles)) - r.expected) / vol;
    r.within = abs(r.deviation) <= 3 * delta;
    r.layers = {audit_quasirandom(p.xy, delta, dxy, options), audit_quasirandom(p.xz, delta, dxz, options),
                audit_quasirandom(p.yz, delta, dyz, options)};
    r.layers_pass = std::all_of(r.layers.begin(), r.layers.end(), [](const auto& l) { return l.passed(); });
    return r;
}

Rational audited_delta(const TripartiteGraph& p, const QuasirandomOptions& options)
{
    p.validate();
    Rational worst = 0;
    for (const auto* g : {&p.xy, &p.xz, &p.yz})
        worst = std::max(worst, audit_quasirandom(*g, 0, g->density(), options).max_deviation);
    return worst;
}

// ---------------------------------------------------------------------------
// Relative density

namespace {

struct TriangleEdges {
    std::uint64_t triangles = 0;
    std::uint64_t edges = 0;
};

TriangleEdges count_with(const Hypergraph3& h, const TripartiteGraph& p)
{
    TriangleEdges t;
    for (std::size_t x = 0; x < p.x_size(); ++x)
        for_each_bit(p.xy.row(x), [&](std::size_t y) {
            for (std::size_t w = 0; w < p.xz.row(x).size(); ++w) {
                Word common = p.xz.row(x)[w] & p.yz.row(y)[w];
                while (common) {
                    const std::size_t z = w * 64 + static_cast<std::size_t>(std::countr_zero(common));
                    common &= common - 1;
                    ++t.triangles;
                    t.edges += h.has_edge(p.x_label[x], p.y_label[y], p.z_label[z]);
                }
            }
        });
    return t;
}

void require_labels(const Hypergraph3& h, const TripartiteGraph& p)
{
    p.validate();
    if (!p.labelled())
        throw std::invalid_argument("relative density needs the parts placed inside V(H)");
    for (const auto* labels : {&p.x_label, &p.y_label, &p.z_label})
        for (Vertex v : *labels)
            if (v >= h.order())
                throw std::invalid_argument("part label " + std::to_string(v) + " outside V(H)");
}

} // namespace

Rational relative_density(const Hypergraph3& h, const TripartiteGraph& p)
{
    require_labels(h, p);
    const auto t = count_with(h, p);
    if (t.triangles == 0)
        return 0;
    return Rational(BigInt(t.edges), BigInt(t.triangles));
}

RegularityAudit audit_regularity_sampled(const Hypergraph3& h, const TripartiteGraph& p, std::optional<Rational> d3,
                                         std::uint64_t samples, std::uint64_t seed)
{
    require_labels(h, p);
    RegularityAudit out;
    out.d3 = d3.value_or(relative_density(h, p));
    out.samples = samples;
    out.seed = seed;
    const auto whole = count_with(h, p);
    if (whole.triangles == 0)
        return out;
    const Rng base(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        Rng r = base.split(i);
        TripartiteGraph q = p;
        auto thin = [&](const BipartiteGraph& g, std::uint64_t rate) {
            BipartiteGraph t(g.x_size(), g.y_size());
            for (std::size_t a = 0; a < g.x_size(); ++a)
                for_each_bit(g.row(a), [&](std::size_t b) {
                    if (r.bernoulli(rate, 4))
                        t.add(a, b);
                });
            return t;
        };
        auto induce = [&](const BipartiteGraph& g, const Bitset& sa, const Bitset& sb) {
            BipartiteGraph t(g.x_size(), g.y_size());
            for (std::size_t a : sa.members())
                for_each_bit(g.row(a), [&](std::size_t b) {
                    if (sb.test(b))
                        t.add(a, b);
                });
            return t;
        };
        if (r.uniform(2) == 0) {
            const auto rate = 1 + r.uniform(3);
            q.xy = thin(p.xy, rate);
            q.xz = thin(p.xz, rate);
            q.yz = thin(p.yz, rate);
        } else {
            const Bitset sx = draw_subset(r, p.x_size()), sy = draw_subset(r, p.y_size()),
                         sz = draw_subset(r, p.z_size());
            q.xy = induce(p.xy, sx, sy);
            q.xz = induce(p.xz, sx, sz);
            q.yz = induce(p.yz, sy, sz);
        }
        const auto t = count_with(h, q);
        const Rational dev =
            abs(Rational(BigInt(t.edges)) - out.d3 * Rational(BigInt(t.triangles))) / Rational(BigInt(whole.triangles));
        out.max_deviation = std::max(out.max_deviation, dev);
    }
    return out;
}

} // namespace turan
