#include "turan/density.hpp"

#include "turan/rng.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace turan {

// ---------------------------------------------------------------------------
// Pair sets and counts

PairSet PairSet::product(const Bitset& a, const Bitset& b)
{
    PairSet p(a.size());
    for (std::size_t x : a.members())
        for (std::size_t y : b.members())
            p.add(static_cast<Vertex>(x), static_cast<Vertex>(y));
    return p;
}

PairSet PairSet::all(std::size_t n)
{
    Bitset v(n);
    v.set_all();
    return product(v, v);
}

std::vector<Pair> PairSet::pairs() const
{
    std::vector<Pair> out;
    for (Vertex x = 0; x < n_; ++x)
        for_each_bit(row(x), [&](std::size_t y) { out.push_back({x, static_cast<Vertex>(y)}); });
    return out;
}

std::uint64_t count_vvv(const Hypergraph3& h, const Bitset& a, const Bitset& b, const Bitset& c)
{
    std::uint64_t total = 0;
    for (std::size_t x : a.members())
        for (std::size_t y : b.members())
            total += popcount_and(h.link(static_cast<Vertex>(x), static_cast<Vertex>(y)), c.words());
    return total;
}

std::uint64_t count_ev(const Hypergraph3& h, const Bitset& a, const PairSet& p)
{
    std::uint64_t total = 0;
    for (Vertex b = 0; b < p.order(); ++b)
        for_each_bit(p.row(b), [&](std::size_t c) {
            total += popcount_and(h.link(b, static_cast<Vertex>(c)), a.words());
        });
    return total;
}

EeCount count_ee(const Hypergraph3& h, const PairSet& p, const PairSet& q)
{
    const std::size_t n = p.order();
    EeCount out;
    std::vector<std::uint64_t> in(n, 0);
    for (Vertex a = 0; a < n; ++a)
        for_each_bit(p.row(a), [&](std::size_t b) { ++in[b]; });
    for (Vertex b = 0; b < n; ++b)
        out.kpq += in[b] * popcount(q.row(b));
    for (Vertex a = 0; a < n; ++a)
        for_each_bit(p.row(a), [&](std::size_t b) {
            out.epq += popcount_and(h.link(a, static_cast<Vertex>(b)), q.row(static_cast<Vertex>(b)));
        });
    return out;
}

std::uint64_t count_inside(const Hypergraph3& h, const Bitset& u)
{
    std::uint64_t total = 0;
    for (const auto& [a, b, c] : h.edges())
        total += u.test(a) && u.test(b) && u.test(c);
    return total;
}

namespace {

Rational cube(std::size_t n)
{
    const auto x = static_cast<long long>(n);
    return Rational(x * x * x);
}

Rational as_rational(std::uint64_t x) { return Rational(BigInt(x)); }

} // namespace

Rational slack_uniform(const Hypergraph3& h, const Bitset& u, const Rational& d, const Rational& eta)
{
    const auto s = static_cast<long long>(u.count());
    return as_rational(count_inside(h, u)) - d * Rational(s * (s - 1) * (s - 2), 6) + eta * cube(h.order());
}

Rational slack_vvv(const Hypergraph3& h, const Bitset& a, const Bitset& b, const Bitset& c, const Rational& d,
                   const Rational& eta)
{
    const BigInt size = BigInt(a.count()) * b.count() * c.count();
    return as_rational(count_vvv(h, a, b, c)) - d * Rational(size) + eta * cube(h.order());
}

Rational slack_ev(const Hypergraph3& h, const Bitset& a, const PairSet& p, const Rational& d, const Rational& eta)
{
    const BigInt size = BigInt(a.count()) * p.size();
    return as_rational(count_ev(h, a, p)) - d * Rational(size) + eta * cube(h.order());
}

Rational slack_ee(const Hypergraph3& h, const PairSet& p, const PairSet& q, const Rational& d, const Rational& eta)
{
    const auto c = count_ee(h, p, q);
    return as_rational(c.epq) - d * as_rational(c.kpq) + eta * cube(h.order());
}

// ---------------------------------------------------------------------------
// Audits
//
// Every objective below is the slack without its eta term, scaled by the
// denominator of d (and by 6 for the uniform notion) to stay integral.

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

struct Scale {
    i128 dn;
    i128 dd;
    explicit Scale(const Rational& d)
    {
        auto f = SmallFraction::from(d);
        dn = f.num;
        dd = f.den;
    }
};

i128 neg_part(i128 x) { return x < 0 ? x : 0; }

BigInt pow2(std::size_t e)
{
    BigInt r = 1;
    r <<= e;
    return r;
}

Bitset mask_set(std::size_t n, std::uint64_t mask) { return Bitset::from_mask(n, mask); }

struct Best {
    i128 value = std::numeric_limits<i128>::max();
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    bool better_than(const Best& o) const
    {
        if (value != o.value)
            return value < o.value;
        if (a != o.a)
            return a < o.a;
        return b < o.b;
    }
};

Best reduce(const std::vector<Best>& parts)
{
    Best best;
    for (const auto& p : parts)
        if (p.better_than(best))
            best = p;
    return best;
}

void check_exact_size(std::size_t n, std::size_t limit)
{
    if (n > limit)
        throw std::invalid_argument("exact audit supports at most " + std::to_string(limit) + " vertices here; got " +
                                    std::to_string(n));
}

/// A random subset: density 1/4, 1/2 or 3/4, a singleton, or the complement of one.
Bitset draw_subset(Rng& r, std::size_t n)
{
    Bitset s(n);
    const auto shape = r.uniform(5);
    if (shape < 3) {
        for (std::size_t v = 0; v < n; ++v)
            if (r.bernoulli(shape + 1, 4))
                s.set(v);
    } else {
        const auto v = r.uniform(n);
        if (shape == 4)
            s.set_all();
        s.flip(v);
    }
    return s;
}

/// Steepest single-element descent over a list of sets; eval() returns the scaled objective.
template <typename Eval>
std::uint64_t descend(std::vector<Bitset>& sets, i128& value, Eval&& eval)
{
    std::uint64_t steps = 0;
    while (true) {
        i128 best = value;
        std::size_t best_set = 0, best_v = 0;
        bool found = false;
        for (std::size_t s = 0; s < sets.size(); ++s)
            for (std::size_t v = 0; v < sets[s].size(); ++v) {
                sets[s].flip(v);
                i128 x = eval(sets);
                sets[s].flip(v);
                if (x < best) {
                    best = x;
                    best_set = s;
                    best_v = v;
                    found = true;
                }
            }
        if (!found)
            return steps;
        sets[best_set].flip(best_v);
        value = best;
        ++steps;
    }
}

// -- uniform ---------------------------------------------------------------

i128 uniform_value(const Hypergraph3& h, const Bitset& u, const Scale& s)
{
    const auto k = static_cast<i128>(u.count());
    return static_cast<i128>(count_inside(h, u)) * 6 * s.dd - s.dn * k * (k - 1) * (k - 2);
}

Best uniform_exact(const Hypergraph3& h, const Scale& s, Exec exec)
{
    const std::size_t n = h.order();
    const std::size_t high = n > 12 ? 6 : 0;
    const std::size_t low = n - high;
    std::vector<Best> parts(std::size_t{1} << high);
    auto link0 = [&](Vertex a, Vertex b) { return n == 0 ? Word(0) : h.link(a, b)[0]; };
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
    for (long long chunk = 0; chunk < static_cast<long long>(parts.size()); ++chunk) {
        std::uint64_t u = static_cast<std::uint64_t>(chunk) << low;
        std::int64_t e = 0;
        std::vector<std::int64_t> t(n, 0);
        auto in = [&](Vertex v) { return (u >> v) & 1U; };
        for (const auto& [a, b, c] : h.edges()) {
            e += in(a) && in(b) && in(c);
            t[a] += in(b) && in(c);
            t[b] += in(a) && in(c);
            t[c] += in(a) && in(b);
        }
        auto value = [&] {
            const auto k = static_cast<i128>(std::popcount(u));
            return static_cast<i128>(e) * 6 * s.dd - s.dn * k * (k - 1) * (k - 2);
        };
        Best best{value(), u, 0};
        for (std::uint64_t g = 1; g < (std::uint64_t{1} << low); ++g) {
            const auto v = static_cast<Vertex>(std::countr_zero(g));
            const std::uint64_t bit = std::uint64_t{1} << v;
            if (u & bit) {
                u ^= bit;
                e -= t[v];
                for (Vertex w = 0; w < n; ++w)
                    t[w] -= std::popcount(link0(w, v) & u);
            } else {
                for (Vertex w = 0; w < n; ++w)
                    t[w] += std::popcount(link0(w, v) & u);
                e += t[v];
                u |= bit;
            }
            Best cur{value(), u, 0};
            if (cur.better_than(best))
                best = cur;
        }
        parts[chunk] = best;
    }
    return reduce(parts);
}

// -- vvv -------------------------------------------------------------------

/// Best C for fixed (A, B): the c with w_AB(c) < d|A||B|.
i128 vvv_value(const Hypergraph3& h, const Bitset& a, const Bitset& b, const Scale& s, Bitset* c_out)
{
    const std::size_t n = h.order();
    const i128 size = static_cast<i128>(a.count()) * static_cast<i128>(b.count());
    i128 total = 0;
    if (c_out)
        *c_out = Bitset(n);
    const auto bs = b.members();
    for (Vertex c = 0; c < n; ++c) {
        std::uint64_t w = 0;
        for (std::size_t y : bs)
            w += popcount_and(h.link(static_cast<Vertex>(y), c), a.words());
        const i128 term = static_cast<i128>(w) * s.dd - s.dn * size;
        if (term < 0) {
            total += term;
            if (c_out)
                c_out->set(c);
        }
    }
    return total;
}

Best vvv_exact(const Hypergraph3& h, const Scale& s, Exec exec)
{
    const std::size_t n = h.order();
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<Best> parts(count);
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::parallel)
    for (long long ai = 0; ai < static_cast<long long>(count); ++ai) {
        const auto a = static_cast<std::uint64_t>(ai);
        const i128 asize = std::popcount(a);
        std::vector<std::int64_t> m(n * n, 0), w(n, 0);
        for (Vertex b = 0; b < n; ++b)
            for (Vertex c = 0; c < n; ++c)
                m[b * n + c] = std::popcount(h.link(b, c)[0] & a);
        std::uint64_t bmask = 0;
        auto value = [&] {
            const i128 size = asize * std::popcount(bmask);
            i128 total = 0;
            for (Vertex c = 0; c < n; ++c)
                total += neg_part(static_cast<i128>(w[c]) * s.dd - s.dn * size);
            return total;
        };
        Best best{value(), a, 0};
        for (std::uint64_t g = 1; g < count; ++g) {
            const auto v = static_cast<Vertex>(std::countr_zero(g));
            const std::int64_t sign = (bmask >> v) & 1U ? -1 : 1;
            bmask ^= std::uint64_t{1} << v;
            for (Vertex c = 0; c < n; ++c)
                w[c] += sign * m[v * n + c];
            Best cur{value(), a, bmask};
            if (cur.better_than(best))
                best = cur;
        }
        parts[ai] = best;
    }
    return reduce(parts);
}

/// Largest n for which vvv_exact enumerates every (A, B).
constexpr std::size_t vvv_full_limit = 12;

struct VvvCertified {
    bool violated = false;
    i128 bound = 0;   ///< min over A of the proven lower bound (exact value where refined)
    Best witness;     ///< least exactly evaluated (A, B)
    std::uint64_t refined = 0;
    i128 least_lb = std::numeric_limits<i128>::max();
    std::uint64_t least_lb_a = 0; ///< A attaining least_lb, least mask on ties
};

/// Exact min over B (C optimal) for one A.
Best vvv_min_over_b(const Hypergraph3& h, std::uint64_t a, const Scale& s)
{
    const std::size_t n = h.order();
    const i128 asize = std::popcount(a);
    std::vector<std::int64_t> m(n * n, 0), w(n, 0);
    for (Vertex b = 0; b < n; ++b)
        for (Vertex c = 0; c < n; ++c)
            m[b * n + c] = std::popcount(h.link(b, c)[0] & a);
    std::uint64_t bmask = 0;
    Best best{0, a, 0};
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << n); ++g) {
        const auto v = static_cast<Vertex>(std::countr_zero(g));
        const std::int64_t sign = (bmask >> v) & 1U ? -1 : 1;
        bmask ^= std::uint64_t{1} << v;
        for (Vertex c = 0; c < n; ++c)
            w[c] += sign * m[v * n + c];
        const i128 size = asize * std::popcount(bmask);
        i128 total = 0;
        for (Vertex c = 0; c < n; ++c)
            total += neg_part(static_cast<i128>(w[c]) * s.dd - s.dn * size);
        Best cur{total, a, bmask};
        if (cur.better_than(best))
            best = cur;
    }
    return best;
}

/// Decides vvv-density exactly without visiting every (A, B). For each A the
/// sum of the negative entries of M_A[b][c] = |A n link(b, c)| - d|A| bounds
/// the objective over all (B, C) from below; only A whose bound does not
/// clear `floor` are minimised exactly over B. A is enumerated in waves of
/// Gray-code chunks and the audit stops after the first wave with a violation.
VvvCertified vvv_certified(const Hypergraph3& h, const Scale& s, i128 floor, Exec exec)
{
    const std::size_t n = h.order();
    std::vector<std::vector<std::uint32_t>> touch(n);
    for (const auto& [a, b, c] : h.edges()) {
        touch[a].insert(touch[a].end(), {b * static_cast<std::uint32_t>(n) + c, c * static_cast<std::uint32_t>(n) + b});
        touch[b].insert(touch[b].end(), {a * static_cast<std::uint32_t>(n) + c, c * static_cast<std::uint32_t>(n) + a});
        touch[c].insert(touch[c].end(), {a * static_cast<std::uint32_t>(n) + b, b * static_cast<std::uint32_t>(n) + a});
    }
    const std::size_t high = std::min<std::size_t>(n, 8);
    const std::size_t low = n - high;
    const std::size_t chunks = std::size_t{1} << high;
    const std::size_t wave = 64;

    VvvCertified out;
    out.bound = std::numeric_limits<i128>::max();
    for (std::size_t first = 0; first < chunks && !out.violated; first += wave) {
        const std::size_t last = std::min(chunks, first + wave);
        std::vector<VvvCertified> parts(last - first);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
        for (long long ci = static_cast<long long>(first); ci < static_cast<long long>(last); ++ci) {
            VvvCertified part;
            part.bound = std::numeric_limits<i128>::max();
            std::uint64_t a = static_cast<std::uint64_t>(ci) << low;
            std::vector<std::int64_t> m(n * n, 0);
            for (Vertex b = 0; b < n; ++b)
                for (Vertex c = 0; c < n; ++c)
                    m[b * n + c] = std::popcount(h.link(b, c)[0] & a);
            auto visit = [&] {
                const i128 shift = s.dn * std::popcount(a);
                i128 lb = 0;
                for (std::int64_t x : m)
                    lb += neg_part(static_cast<i128>(x) * s.dd - shift);
                if (lb < part.least_lb || (lb == part.least_lb && a < part.least_lb_a)) {
                    part.least_lb = lb;
                    part.least_lb_a = a;
                }
                if (lb >= floor) {
                    part.bound = std::min(part.bound, lb);
                    return;
                }
                const Best exact = vvv_min_over_b(h, a, s);
                ++part.refined;
                part.bound = std::min(part.bound, exact.value);
                if (exact.better_than(part.witness))
                    part.witness = exact;
                part.violated = part.violated || exact.value < floor;
            };
            visit();
            for (std::uint64_t g = 1; g < (std::uint64_t{1} << low); ++g) {
                const auto v = static_cast<Vertex>(std::countr_zero(g));
                const std::int64_t sign = (a >> v) & 1U ? -1 : 1;
                a ^= std::uint64_t{1} << v;
                for (std::uint32_t idx : touch[v])
                    m[idx] += sign;
                visit();
            }
            parts[ci - first] = part;
        }
        for (const auto& p : parts) {
            out.violated = out.violated || p.violated;
            out.bound = std::min(out.bound, p.bound);
            out.refined += p.refined;
            if (p.least_lb < out.least_lb || (p.least_lb == out.least_lb && p.least_lb_a < out.least_lb_a)) {
                out.least_lb = p.least_lb;
                out.least_lb_a = p.least_lb_a;
            }
            if (p.witness.better_than(out.witness))
                out.witness = p.witness;
        }
    }
    return out;
}

// -- ev --------------------------------------------------------------------

/// Best P for fixed A: the pairs (b, c) with |A n link(b, c)| < d|A|.
i128 ev_value(const Hypergraph3& h, const Bitset& a, const Scale& s, PairSet* p_out)
{
    const std::size_t n = h.order();
    const i128 asize = static_cast<i128>(a.count());
    if (p_out)
        *p_out = PairSet(n);
    i128 total = 0;
    for (Vertex b = 0; b < n; ++b)
        for (Vertex c = 0; c < n; ++c) {
            const i128 term = static_cast<i128>(popcount_and(h.link(b, c), a.words())) * s.dd - s.dn * asize;
            if (term < 0) {
                total += term;
                if (p_out)
                    p_out->add(b, c);
            }
        }
    return total;
}

Best ev_exact(const Hypergraph3& h, const Scale& s, Exec exec)
{
    const std::size_t n = h.order();
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<Best> parts(count);
#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::parallel)
    for (long long ai = 0; ai < static_cast<long long>(count); ++ai) {
        const auto a = static_cast<std::uint64_t>(ai);
        const i128 asize = std::popcount(a);
        i128 total = 0;
        for (Vertex b = 0; b < n; ++b)
            for (Vertex c = 0; c < n; ++c)
                total += neg_part(static_cast<i128>(std::popcount(h.link(b, c)[0] & a)) * s.dd - s.dn * asize);
        parts[ai] = Best{total, a, 0};
    }
    return reduce(parts);
}

// -- ee --------------------------------------------------------------------

/// For middle vertex b and P_b = S: best Q_b, the c whose S-count in link(., b, c) is below d|S|.
i128 ee_value(const Hypergraph3& h, Vertex b, const Bitset& set, const Scale& s, Bitset* t_out)
{
    const std::size_t n = h.order();
    const i128 size = static_cast<i128>(set.count());
    if (t_out)
        *t_out = Bitset(n);
    i128 total = 0;
    for (Vertex c = 0; c < n; ++c) {
        const i128 term = static_cast<i128>(popcount_and(h.link(b, c), set.words())) * s.dd - s.dn * size;
        if (term < 0) {
            total += term;
            if (t_out)
                t_out->set(c);
        }
    }
    return total;
}

std::vector<Best> ee_exact(const Hypergraph3& h, const Scale& s, Exec exec)
{
    const std::size_t n = h.order();
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<Best> per(n);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
    for (long long bi = 0; bi < static_cast<long long>(n); ++bi) {
        const auto b = static_cast<Vertex>(bi);
        std::vector<std::int64_t> col(n, 0);
        std::uint64_t set = 0;
        auto value = [&] {
            const i128 size = std::popcount(set);
            i128 total = 0;
            for (Vertex c = 0; c < n; ++c)
                total += neg_part(static_cast<i128>(col[c]) * s.dd - s.dn * size);
            return total;
        };
        Best best{value(), 0, 0};
        for (std::uint64_t g = 1; g < count; ++g) {
            const auto a = static_cast<Vertex>(std::countr_zero(g));
            const std::int64_t sign = (set >> a) & 1U ? -1 : 1;
            set ^= std::uint64_t{1} << a;
            for_each_bit(h.link(a, b), [&](std::size_t c) { col[c] += sign; });
            Best cur{value(), set, 0};
            if (cur.better_than(best))
                best = cur;
        }
        per[b] = best;
    }
    return per;
}

DensityReport base_report(std::string notion, const Rational& d, const Rational& eta, const AuditOptions& o)
{
    DensityReport r;
    r.notion = std::move(notion);
    r.d = d;
    r.eta = eta;
    r.seed = o.seed;
    r.rng = std::string(Rng::algorithm);
    return r;
}

Rational finish(i128 value, const Scale& s, i128 mult, const Rational& eta, std::size_t n)
{
    return Rational(to_big(value), to_big(s.dd * mult)) + eta * cube(n);
}

/// Smallest integer x with x >= r * dd.
i128 ceil_scaled(const Rational& r, const Scale& s)
{
    const Rational t = r * Rational(to_big(s.dd));
    BigInt q = numerator_of(t) / denominator_of(t);
    if (q * denominator_of(t) < numerator_of(t))
        ++q;
    return static_cast<i128>(q.convert_to<long long>());
}

/// Index of the least value among per-sample results (first on ties).
std::size_t argmin(const std::vector<i128>& v)
{
    return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

} // namespace

std::size_t default_exact_threshold(std::optional<Notion> notion)
{
    if (!notion)
        return 22;
    switch (*notion) {
    case Notion::vvv:
        return 10;
    case Notion::ev:
    case Notion::ee:
        return 16;
    }
    return 0;
}

DensityReport audit_uniform_dense(const Hypergraph3& h, const Rational& d, const Rational& eta,
                                  const AuditOptions& options)
{
    const std::size_t n = h.order();
    const Scale s(d);
    auto report = base_report("uniform", d, eta, options);
    const std::size_t threshold = options.exact_threshold.value_or(default_exact_threshold(std::nullopt));
    if (n <= threshold) {
        check_exact_size(n, 40);
        const Best best = uniform_exact(h, s, options.exec);
        report.mode = AuditMode::exact;
        report.space = pow2(n);
        report.min_slack = finish(best.value, s, 6, eta, n);
        report.worst.sets = {mask_set(n, best.a)};
        return report;
    }

    const Rng base(options.seed);
    std::vector<i128> values(options.samples);
#pragma omp parallel for schedule(static) if (options.exec == Exec::parallel)
    for (long long i = 0; i < static_cast<long long>(options.samples); ++i) {
        Rng r = base.split(static_cast<std::uint64_t>(i));
        values[i] = uniform_value(h, draw_subset(r, n), s);
    }
    std::vector<Bitset> sets{Bitset(n)};
    i128 value = uniform_value(h, sets[0], s);
    if (!values.empty()) {
        Rng r = base.split(argmin(values));
        sets[0] = draw_subset(r, n);
        value = values[argmin(values)];
    }
    report.descent_steps = descend(sets, value, [&](const std::vector<Bitset>& x) { return uniform_value(h, x[0], s); });
    report.mode = AuditMode::sampled;
    report.samples = options.samples;
    report.space = options.samples;
    report.min_slack = finish(value, s, 6, eta, n);
    report.worst.sets = std::move(sets);
    return report;
}

DensityReport audit_star_dense(const Hypergraph3& h, Notion notion, const Rational& d, const Rational& eta,
                               const AuditOptions& options)
{
    const std::size_t n = h.order();
    const Scale s(d);
    auto report = base_report(std::string(name(notion)), d, eta, options);
    const std::size_t threshold = options.exact_threshold.value_or(default_exact_threshold(notion));
    const bool exact = n <= threshold;
    report.mode = exact ? AuditMode::exact : AuditMode::sampled;
    if (!exact) {
        report.samples = options.samples;
        report.space = options.samples;
    }
    const Rng base(options.seed);

    switch (notion) {
    case Notion::vvv: {
        std::vector<Bitset> sets;
        i128 value = 0;
        if (exact && n > vvv_full_limit) {
            check_exact_size(n, 24);
            const i128 floor = ceil_scaled(-eta * cube(n), s);
            auto cert = vvv_certified(h, s, floor, options.exec);
            report.mode = AuditMode::certified;
            report.space = pow2(3 * n);
            report.refined = cert.refined;
            if (cert.refined == 0) {
                // No A needed refinement; exhibit the exact optimum of the A with the least bound.
                cert.witness = vvv_min_over_b(h, cert.least_lb_a, s);
            }
            sets = {mask_set(n, cert.witness.a), mask_set(n, cert.witness.b)};
            Bitset c;
            vvv_value(h, sets[0], sets[1], s, &c);
            sets.push_back(std::move(c));
            report.worst.sets = std::move(sets);
            report.witness_slack = finish(cert.witness.value, s, 1, eta, n);
            report.min_slack = cert.violated ? *report.witness_slack : finish(cert.bound, s, 1, eta, n);
            return report;
        }
        if (exact) {
            const Best best = vvv_exact(h, s, options.exec);
            sets = {mask_set(n, best.a), mask_set(n, best.b)};
            value = best.value;
            report.space = pow2(3 * n);
        } else {
            std::vector<i128> values(options.samples);
#pragma omp parallel for schedule(static) if (options.exec == Exec::parallel)
            for (long long i = 0; i < static_cast<long long>(options.samples); ++i) {
                Rng r = base.split(static_cast<std::uint64_t>(i));
                Bitset a = draw_subset(r, n);
                Bitset b = draw_subset(r, n);
                values[i] = vvv_value(h, a, b, s, nullptr);
            }
            sets = {Bitset(n), Bitset(n)};
            if (!values.empty()) {
                Rng r = base.split(argmin(values));
                sets[0] = draw_subset(r, n);
                sets[1] = draw_subset(r, n);
            }
            value = vvv_value(h, sets[0], sets[1], s, nullptr);
            report.descent_steps = descend(
                sets, value, [&](const std::vector<Bitset>& x) { return vvv_value(h, x[0], x[1], s, nullptr); });
        }
        Bitset c;
        vvv_value(h, sets[0], sets[1], s, &c);
        sets.push_back(std::move(c));
        report.worst.sets = std::move(sets);
        report.min_slack = finish(value, s, 1, eta, n);
        return report;
    }
    case Notion::ev: {
        std::vector<Bitset> sets;
        i128 value = 0;
        if (exact) {
            check_exact_size(n, 24);
            const Best best = ev_exact(h, s, options.exec);
            sets = {mask_set(n, best.a)};
            value = best.value;
            report.space = pow2(n + n * n);
        } else {
            std::vector<i128> values(options.samples);
#pragma omp parallel for schedule(static) if (options.exec == Exec::parallel)
            for (long long i = 0; i < static_cast<long long>(options.samples); ++i) {
                Rng r = base.split(static_cast<std::uint64_t>(i));
                values[i] = ev_value(h, draw_subset(r, n), s, nullptr);
            }
            sets = {Bitset(n)};
            if (!values.empty()) {
                Rng r = base.split(argmin(values));
                sets[0] = draw_subset(r, n);
            }
            value = ev_value(h, sets[0], s, nullptr);
            report.descent_steps = descend(
                sets, value, [&](const std::vector<Bitset>& x) { return ev_value(h, x[0], s, nullptr); });
        }
        PairSet p;
        ev_value(h, sets[0], s, &p);
        report.worst.sets = std::move(sets);
        report.worst.pair_sets = {std::move(p)};
        report.min_slack = finish(value, s, 1, eta, n);
        return report;
    }
    case Notion::ee: {
        // The objective splits over the middle vertex b: P_b = {a : (a, b) in P}, Q_b = {c : (b, c) in Q}.
        std::vector<Bitset> per_b(n, Bitset(n));
        i128 total = 0;
        if (exact) {
            check_exact_size(n, 24);
            const auto per = ee_exact(h, s, options.exec);
            for (Vertex b = 0; b < n; ++b) {
                per_b[b] = mask_set(n, per[b].a);
                total += per[b].value;
            }
            report.space = pow2(2 * n * n);
        } else {
            std::vector<std::uint64_t> steps(n, 0);
            std::vector<i128> best_value(n, 0);
#pragma omp parallel for schedule(dynamic, 1) if (options.exec == Exec::parallel)
            for (long long bi = 0; bi < static_cast<long long>(n); ++bi) {
                const auto b = static_cast<Vertex>(bi);
                const Rng stream = base.split(b);
                std::size_t arg = 0;
                i128 best = 0;
                for (std::uint64_t i = 0; i < options.samples; ++i) {
                    Rng r = stream.split(i);
                    const i128 v = ee_value(h, b, draw_subset(r, n), s, nullptr);
                    if (i == 0 || v < best) {
                        best = v;
                        arg = i;
                    }
                }
                std::vector<Bitset> sets{Bitset(n)};
                if (options.samples > 0) {
                    Rng r = stream.split(arg);
                    sets[0] = draw_subset(r, n);
                }
                i128 value = ee_value(h, b, sets[0], s, nullptr);
                steps[b] = descend(sets, value,
                                   [&](const std::vector<Bitset>& x) { return ee_value(h, b, x[0], s, nullptr); });
                per_b[b] = std::move(sets[0]);
                best_value[b] = value;
            }
            for (Vertex b = 0; b < n; ++b) {
                total += best_value[b];
                report.descent_steps += steps[b];
            }
        }
        PairSet p(n), q(n);
        for (Vertex b = 0; b < n; ++b) {
            Bitset t;
            ee_value(h, b, per_b[b], s, &t);
            for (std::size_t a : per_b[b].members())
                p.add(static_cast<Vertex>(a), b);
            for (std::size_t c : t.members())
                q.add(b, static_cast<Vertex>(c));
        }
        report.worst.pair_sets = {std::move(p), std::move(q)};
        report.min_slack = finish(total, s, 1, eta, n);
        return report;
    }
    }
    return report;
}

} // namespace turan
