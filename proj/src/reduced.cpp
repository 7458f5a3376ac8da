#include "turan/reduced.hpp"

#include "turan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace turan {

namespace {

using u128 = unsigned __int128;

std::string triple_name(const IndexTriple& t)
{
    return std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]);
}

// count < d * base, exactly.
bool below(std::size_t count, const Rational& d, std::size_t base)
{
    return Rational(static_cast<long long>(count)) < d * static_cast<long long>(base);
}

// Role of the class joining sorted positions x != y among three indices.
int role_of(int x, int y) { return x + y - 1; }

} // namespace

// ---------------------------------------------------------------------------
// Constituent

Constituent::Constituent(std::size_t ij, std::size_t ik, std::size_t jk) : dims_{ij, ik, jk}
{
    for (int o = 0; o < 3; ++o) {
        const auto& r = others(o);
        words_[o] = words_for(dims_[o]);
        bits_[o].assign(dims_[r[0]] * dims_[r[1]] * words_[o], 0);
    }
}

void Constituent::set(Local a, Local b, Local c, bool on)
{
    if (a >= dims_[0] || b >= dims_[1] || c >= dims_[2])
        throw std::out_of_range("constituent vertex outside its class");
    const std::array<Local, 3> loc{a, b, c};
    if (has(a, b, c) == on)
        return;
    for (int o = 0; o < 3; ++o) {
        const auto& r = others(o);
        std::size_t at = (static_cast<std::size_t>(loc[r[0]]) * dims_[r[1]] + loc[r[1]]) * words_[o] + (loc[o] >> 6);
        if (on)
            bits_[o][at] |= Word(1) << (loc[o] & 63);
        else
            bits_[o][at] &= ~(Word(1) << (loc[o] & 63));
    }
    size_ = on ? size_ + 1 : size_ - 1;
}

void Constituent::fill()
{
    for (Local a = 0; a < dims_[0]; ++a)
        for (Local b = 0; b < dims_[1]; ++b)
            for (Local c = 0; c < dims_[2]; ++c)
                set(a, b, c);
}

std::vector<std::size_t> Constituent::degrees(int role) const
{
    std::vector<std::size_t> deg(dims_[role], 0);
    if (role == 2) {
        for (Local a = 0; a < dims_[0]; ++a)
            for (Local c = 0; c < dims_[2]; ++c)
                deg[c] += popcount(completions(1, a, c));
        return deg;
    }
    for (Local a = 0; a < dims_[0]; ++a)
        for (Local b = 0; b < dims_[1]; ++b)
            deg[role == 0 ? a : b] += popcount(completions(2, a, b));
    return deg;
}

std::vector<std::size_t> Constituent::codegrees(int open) const
{
    const auto& r = others(open);
    std::vector<std::size_t> out(dims_[r[0]] * dims_[r[1]]);
    for (Local u = 0; u < dims_[r[0]]; ++u)
        for (Local v = 0; v < dims_[r[1]]; ++v)
            out[u * dims_[r[1]] + v] = popcount(completions(open, u, v));
    return out;
}

std::vector<LocalTriple> Constituent::edges() const
{
    std::vector<LocalTriple> out;
    out.reserve(size_);
    for (Local a = 0; a < dims_[0]; ++a)
        for (Local b = 0; b < dims_[1]; ++b)
            for_each_bit(completions(2, a, b), [&](std::size_t c) { out.push_back({a, b, static_cast<Local>(c)}); });
    return out;
}

// ---------------------------------------------------------------------------
// ReducedHypergraph

ReducedHypergraph::ReducedHypergraph(std::size_t m, std::vector<std::size_t> sizes) : m_(m), sizes_(std::move(sizes))
{
    if (m < 3)
        throw std::invalid_argument("a reduced hypergraph needs at least 3 indices");
    if (sizes_.size() != m * (m - 1) / 2)
        throw std::invalid_argument("expected " + std::to_string(m * (m - 1) / 2) + " class sizes, got " +
                                    std::to_string(sizes_.size()));
    if (std::find(sizes_.begin(), sizes_.end(), 0) != sizes_.end())
        throw std::invalid_argument("vertex classes must be nonempty");
    constituents_.resize(m * (m - 1) * (m - 2) / 6);
    for (const auto& [i, j, k] : triples())
        constituents_[triple_slot(i, j, k)] = Constituent(class_size(i, j), class_size(i, k), class_size(j, k));
}

ReducedHypergraph ReducedHypergraph::uniform(std::size_t m, std::size_t class_size)
{
    return ReducedHypergraph(m, std::vector<std::size_t>(m < 2 ? 0 : m * (m - 1) / 2, class_size));
}

std::size_t ReducedHypergraph::pair_slot(Index i, Index j) const
{
    if (i > j)
        std::swap(i, j);
    if (i == j || j >= m_)
        throw std::out_of_range("invalid index pair");
    return static_cast<std::size_t>(i) * (2 * m_ - i - 1) / 2 + (j - i - 1);
}

std::size_t ReducedHypergraph::triple_slot(Index i, Index j, Index k) const
{
    if (!(i < j && j < k && k < m_))
        throw std::out_of_range("constituent indices must satisfy i < j < k < m");
    auto c3 = static_cast<std::size_t>(k) * (k - 1) * (k - 2) / 6;
    auto c2 = static_cast<std::size_t>(j) * (j - 1) / 2;
    return c3 + c2 + i;
}

bool ReducedHypergraph::has_edge(const IndexTriple& idx, const LocalTriple& locals) const
{
    if (idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2])
        return false;
    std::array<int, 3> pos{0, 1, 2};
    std::sort(pos.begin(), pos.end(), [&](int a, int b) { return idx[a] < idx[b]; });
    // sorted role (s, t) corresponds to the original positions pos[s], pos[t]
    LocalTriple sorted{locals[role_of(pos[0], pos[1])], locals[role_of(pos[0], pos[2])],
                       locals[role_of(pos[1], pos[2])]};
    const auto& c = constituent(idx[pos[0]], idx[pos[1]], idx[pos[2]]);
    for (int r = 0; r < 3; ++r)
        if (sorted[r] >= c.dims()[r])
            return false;
    return c.has(sorted);
}

std::vector<IndexTriple> ReducedHypergraph::triples() const
{
    std::vector<IndexTriple> out;
    for (Index i = 0; i < m_; ++i)
        for (Index j = i + 1; j < m_; ++j)
            for (Index k = j + 1; k < m_; ++k)
                out.push_back({i, j, k});
    return out;
}

// ---------------------------------------------------------------------------
// Density checks

namespace {

bool less_ratio(const DenseWitness& a, const DenseWitness& b)
{
    return static_cast<u128>(a.count) * b.out_of < static_cast<u128>(b.count) * a.out_of;
}

DenseWitness triple_worst(const Constituent& c, const IndexTriple& t, Notion notion)
{
    const auto& d = c.dims();
    DenseWitness best;
    best.triple = t;
    bool have = false;
    auto offer = [&](const DenseWitness& w) {
        if (!have || less_ratio(w, best)) {
            best = w;
            have = true;
        }
    };
    switch (notion) {
    case Notion::vvv: {
        DenseWitness w;
        w.triple = t;
        w.count = c.size();
        w.out_of = d[0] * d[1] * d[2];
        offer(w);
        break;
    }
    case Notion::ev:
        for (int r = 0; r < 3; ++r) {
            const auto& o = Constituent::others(r);
            auto deg = c.degrees(r);
            auto it = std::min_element(deg.begin(), deg.end());
            DenseWitness w;
            w.triple = t;
            w.role = r;
            w.vertices = {static_cast<Local>(it - deg.begin()), 0};
            w.count = *it;
            w.out_of = d[o[0]] * d[o[1]];
            offer(w);
        }
        break;
    case Notion::ee:
        for (int open = 0; open < 3; ++open) {
            const auto& o = Constituent::others(open);
            auto co = c.codegrees(open);
            auto it = std::min_element(co.begin(), co.end());
            auto at = static_cast<std::size_t>(it - co.begin());
            DenseWitness w;
            w.triple = t;
            w.role = open;
            w.vertices = {static_cast<Local>(at / d[o[1]]), static_cast<Local>(at % d[o[1]])};
            w.count = *it;
            w.out_of = d[open];
            offer(w);
        }
        break;
    }
    return best;
}

} // namespace

DenseCheck check_dense(const ReducedHypergraph& a, Notion notion, const Rational& d, Exec exec)
{
    const auto triples = a.triples();
    std::vector<DenseWitness> per(triples.size());
    const auto count = static_cast<long long>(triples.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
    for (long long t = 0; t < count; ++t) {
        const auto& [i, j, k] = triples[t];
        per[t] = triple_worst(a.constituent(i, j, k), triples[t], notion);
    }
    DenseCheck out;
    for (const auto& w : per)
        if (!out.worst || less_ratio(w, *out.worst))
            out.worst = w;
    out.dense = !out.worst || !below(out.worst->count, d, out.worst->out_of);
    return out;
}

EtaDenseCheck check_eta_dense(const ReducedHypergraph& a, Notion notion, const Rational& d, const Rational& eta,
                              Exec exec)
{
    if (notion == Notion::vvv)
        throw std::invalid_argument("exceptional sets are defined for ev and ee only");
    const auto triples = a.triples();
    std::vector<std::vector<ExceptionalEntry>> per(triples.size());
    const auto count = static_cast<long long>(triples.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
    for (long long t = 0; t < count; ++t) {
        const auto& [i, j, k] = triples[t];
        const auto& c = a.constituent(i, j, k);
        const auto& dims = c.dims();
        for (int r = 0; r < 3; ++r) {
            const auto& o = Constituent::others(r);
            ExceptionalEntry e;
            e.triple = triples[t];
            e.role = r;
            if (notion == Notion::ev) {
                auto deg = c.degrees(r);
                for (std::size_t v = 0; v < deg.size(); ++v)
                    if (below(deg[v], d, dims[o[0]] * dims[o[1]]))
                        e.vertices.push_back(static_cast<Local>(v));
                e.base = dims[r];
            } else {
                auto co = c.codegrees(r);
                for (std::size_t at = 0; at < co.size(); ++at)
                    if (below(co[at], d, dims[r]))
                        e.pairs.push_back({static_cast<Local>(at / dims[o[1]]), static_cast<Local>(at % dims[o[1]])});
                e.base = dims[o[0]] * dims[o[1]];
            }
            if (e.size() == 0)
                continue;
            e.within = Rational(static_cast<long long>(e.size())) <= eta * static_cast<long long>(e.base);
            per[t].push_back(std::move(e));
        }
    }
    EtaDenseCheck out;
    out.sets.kind = notion;
    for (auto& v : per)
        for (auto& e : v) {
            out.dense = out.dense && e.within;
            out.sets.entries.push_back(std::move(e));
        }
    return out;
}

PurgeResult purge_ev(const ReducedHypergraph& a, const Rational& d)
{
    const std::size_t m = a.indices();
    std::vector<std::vector<char>> removed(a.pair_count());
    for (std::size_t s = 0; s < a.pair_count(); ++s)
        removed[s].assign(a.class_sizes()[s], 0);
    for (const auto& t : a.triples()) {
        const auto& c = a.constituent(t[0], t[1], t[2]);
        const auto& dims = c.dims();
        const std::array<std::size_t, 3> slots{a.pair_slot(t[0], t[1]), a.pair_slot(t[0], t[2]),
                                               a.pair_slot(t[1], t[2])};
        for (int r = 0; r < 3; ++r) {
            const auto& o = Constituent::others(r);
            auto deg = c.degrees(r);
            for (std::size_t v = 0; v < deg.size(); ++v)
                if (below(deg[v], d, dims[o[0]] * dims[o[1]]))
                    removed[slots[r]][v] = 1;
        }
    }
    PurgeResult out;
    out.kept.resize(a.pair_count());
    std::vector<std::vector<long long>> remap(a.pair_count());
    for (Index i = 0; i < m; ++i)
        for (Index j = i + 1; j < m; ++j) {
            const auto s = a.pair_slot(i, j);
            remap[s].assign(removed[s].size(), -1);
            for (std::size_t v = 0; v < removed[s].size(); ++v)
                if (!removed[s][v]) {
                    remap[s][v] = static_cast<long long>(out.kept[s].size());
                    out.kept[s].push_back(static_cast<Local>(v));
                }
            if (out.kept[s].empty())
                throw EmptyClassError("class " + std::to_string(i) + "," + std::to_string(j) +
                                      " empties out; the input is too sparse for d = " + to_string(d));
        }
    std::vector<std::size_t> sizes(a.pair_count());
    for (std::size_t s = 0; s < sizes.size(); ++s)
        sizes[s] = out.kept[s].size();
    out.reduced = ReducedHypergraph(m, std::move(sizes));
    for (const auto& t : a.triples()) {
        const std::array<std::size_t, 3> slots{a.pair_slot(t[0], t[1]), a.pair_slot(t[0], t[2]),
                                               a.pair_slot(t[1], t[2])};
        auto& target = out.reduced.constituent(t[0], t[1], t[2]);
        for (const auto& e : a.constituent(t[0], t[1], t[2]).edges()) {
            long long x = remap[slots[0]][e[0]], y = remap[slots[1]][e[1]], z = remap[slots[2]][e[2]];
            if (x >= 0 && y >= 0 && z >= 0)
                target.set(static_cast<Local>(x), static_cast<Local>(y), static_cast<Local>(z));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Projection

ReducedHypergraph project(const ReducedHypergraph& a, const Projection& psi)
{
    if (psi.size() != a.pair_count())
        throw std::invalid_argument("projection needs one map per index pair");
    std::vector<std::size_t> sizes(psi.size());
    for (std::size_t s = 0; s < psi.size(); ++s) {
        if (psi[s].empty())
            throw std::invalid_argument("projection classes must be nonempty");
        for (Local v : psi[s])
            if (v >= a.class_sizes()[s])
                throw std::invalid_argument("projection maps outside its target class");
        sizes[s] = psi[s].size();
    }
    ReducedHypergraph b(a.indices(), std::move(sizes));
    for (const auto& t : a.triples()) {
        const auto& src = a.constituent(t[0], t[1], t[2]);
        auto& dst = b.constituent(t[0], t[1], t[2]);
        const auto& p0 = psi[a.pair_slot(t[0], t[1])];
        const auto& p1 = psi[a.pair_slot(t[0], t[2])];
        const auto& p2 = psi[a.pair_slot(t[1], t[2])];
        for (Local q0 = 0; q0 < p0.size(); ++q0)
            for (Local q1 = 0; q1 < p1.size(); ++q1) {
                auto row = src.completions(2, p0[q0], p1[q1]);
                for (Local q2 = 0; q2 < p2.size(); ++q2)
                    if (test_bit(row, p2[q2]))
                        dst.set(q0, q1, q2);
            }
    }
    return b;
}

ProjectionResult project_random(const ReducedHypergraph& a, std::size_t ell, std::uint64_t seed)
{
    if (ell == 0)
        throw std::invalid_argument("projection class size must be at least 1");
    const Rng base(seed);
    Projection psi(a.pair_count());
    for (std::size_t s = 0; s < psi.size(); ++s) {
        Rng r = base.split(s);
        psi[s].resize(ell);
        for (auto& v : psi[s])
            v = static_cast<Local>(r.uniform(a.class_sizes()[s]));
    }
    ProjectionResult out{project(a, psi), psi};
    return out;
}

double projection_failure_bound(std::size_t m, std::size_t ell, double eta, double eps)
{
    const double md = static_cast<double>(m);
    const double ld = static_cast<double>(ell);
    return md * md * md * ld * ld * (eta + std::exp(-eps * eps * ld / 2));
}

// ---------------------------------------------------------------------------
// Reduced maps

bool check_reduced_map(const Hypergraph3& f, const ReducedHypergraph& a, const ReducedMap& map, std::string* why)
{
    auto fail = [&](std::string message) {
        if (why)
            *why = std::move(message);
        return false;
    };
    const std::size_t n = f.order();
    if (map.lambda.size() != n)
        return fail("lambda must assign an index to every vertex of F");
    for (Index i : map.lambda)
        if (i >= a.indices())
            return fail("lambda uses index " + std::to_string(i) + " outside the index set");
    const auto shadow = f.shadow();
    if (map.phi.size() != shadow.size())
        return fail("phi must be defined on exactly the shadow of F");
    std::vector<long long> phi(n * n, -1);
    for (std::size_t s = 0; s < shadow.size(); ++s) {
        const auto& [pair, local] = map.phi[s];
        if (pair != shadow[s])
            return fail("phi is not indexed by the sorted shadow of F");
        auto [u, v] = pair;
        if (map.lambda[u] == map.lambda[v])
            return fail("lambda(" + std::to_string(u) + ") = lambda(" + std::to_string(v) + ") on a shadow pair");
        if (local >= a.class_size(map.lambda[u], map.lambda[v]))
            return fail("phi(" + std::to_string(u) + "," + std::to_string(v) + ") lies outside its class");
        phi[u * n + v] = phi[v * n + u] = local;
    }
    for (const auto& [u, v, w] : f.edges()) {
        IndexTriple idx{map.lambda[u], map.lambda[v], map.lambda[w]};
        LocalTriple loc{static_cast<Local>(phi[u * n + v]), static_cast<Local>(phi[u * n + w]),
                        static_cast<Local>(phi[v * n + w])};
        if (!a.has_edge(idx, loc))
            return fail("edge " + std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(w) +
                        " is not sent to a constituent edge");
    }
    return true;
}

ReducedMap compose(const ReducedMap& map, const ReducedHypergraph& a, const Projection& psi)
{
    ReducedMap out = map;
    for (auto& [pair, local] : out.phi)
        local = psi.at(a.pair_slot(map.lambda.at(pair[0]), map.lambda.at(pair[1]))).at(local);
    return out;
}

namespace {

class MapSearch {
public:
    MapSearch(const Hypergraph3& f, const ReducedHypergraph& a, bool injective)
        : f_(f), a_(a), injective_(injective), order_(embedding_order(f)), shadow_(f.shadow())
    {
        const std::size_t n = f.order();
        pid_.assign(n * n, -1);
        for (std::size_t p = 0; p < shadow_.size(); ++p) {
            auto [u, v] = shadow_[p];
            pid_[u * n + v] = pid_[v * n + u] = static_cast<int>(p);
        }
        incident_.resize(shadow_.size());
        for (const auto& e : f.edges()) {
            Edge ed;
            ed.v = e;
            ed.pairs = {pid(e[0], e[1]), pid(e[0], e[2]), pid(e[1], e[2])};
            for (int r = 0; r < 3; ++r)
                incident_[ed.pairs[r]].push_back({edges_.size(), r});
            edges_.push_back(ed);
        }
        neighbours_.resize(n);
        for (const auto& [u, v] : shadow_) {
            neighbours_[u].push_back(v);
            neighbours_[v].push_back(u);
        }
        std::vector<std::size_t> depth(n);
        for (std::size_t t = 0; t < n; ++t)
            depth[order_[t]] = t;
        for (std::size_t t = 0; t < n; ++t) {
            steps_.push_back({true, order_[t]});
            std::vector<std::pair<std::size_t, std::size_t>> fresh;
            for (Vertex u : neighbours_[order_[t]])
                if (depth[u] < t)
                    fresh.push_back({depth[u], pid(u, order_[t])});
            std::sort(fresh.begin(), fresh.end());
            for (auto [d, p] : fresh)
                steps_.push_back({false, p});
        }
    }

    std::size_t first_choices() const { return a_.indices(); }
    bool empty() const { return steps_.empty(); }

    BranchOutcome solve_branch(Index first, std::uint64_t cap, ReducedMap& out) const
    {
        State s(*this, cap);
        BranchOutcome r;
        if (s.try_lambda(0, first))
            r.found = s.dfs(1);
        else
            r.found = false;
        r.exhausted = !r.found && !s.aborted;
        r.nodes = s.nodes;
        if (r.found) {
            out.lambda.assign(f_.order(), 0);
            for (std::size_t v = 0; v < f_.order(); ++v)
                out.lambda[v] = static_cast<Index>(s.lambda[v]);
            out.phi.clear();
            for (std::size_t p = 0; p < shadow_.size(); ++p)
                out.phi.push_back({shadow_[p], static_cast<Local>(s.phi[p])});
        }
        return r;
    }

private:
    struct Step {
        bool lambda;
        std::size_t id; // vertex or pair
    };
    struct Edge {
        Triple v;
        std::array<std::size_t, 3> pairs; // (v0 v1, v0 v2, v1 v2)
    };

    std::size_t pid(Vertex u, Vertex v) const { return static_cast<std::size_t>(pid_[u * f_.order() + v]); }

    struct State {
        const MapSearch& ms;
        std::uint64_t cap;
        std::uint64_t nodes = 0;
        bool aborted = false;
        std::vector<long long> lambda;
        std::vector<long long> phi;
        std::vector<std::vector<Word>> dom;
        std::vector<std::pair<std::size_t, std::vector<Word>>> trail;
        std::vector<char> used;

        State(const MapSearch& m, std::uint64_t c)
            : ms(m), cap(c), lambda(m.f_.order(), -1), phi(m.shadow_.size(), -1), dom(m.shadow_.size()),
              used(m.a_.indices(), 0)
        {
        }

        bool tick()
        {
            if (++nodes > cap) {
                aborted = true;
                return false;
            }
            return true;
        }

        // Assigns lambda for the vertex of step `step`; false if not allowed or out of nodes.
        bool try_lambda(std::size_t step, Index i)
        {
            const Vertex v = static_cast<Vertex>(ms.steps_[step].id);
            if (ms.injective_ && used[i])
                return false;
            for (Vertex u : ms.neighbours_[v])
                if (lambda[u] == static_cast<long long>(i))
                    return false;
            if (!tick())
                return false;
            lambda[v] = i;
            ++used[i];
            for (Vertex u : ms.neighbours_[v])
                if (lambda[u] >= 0) {
                    auto p = ms.pid(u, v);
                    std::size_t size = ms.a_.class_size(static_cast<Index>(lambda[u]), i);
                    Bitset full(size);
                    full.set_all();
                    dom[p].assign(full.words().begin(), full.words().end());
                }
            return true;
        }

        void undo_lambda(std::size_t step)
        {
            const Vertex v = static_cast<Vertex>(ms.steps_[step].id);
            --used[lambda[v]];
            lambda[v] = -1;
        }

        bool narrow(std::size_t q, std::span<const Word> allowed)
        {
            auto& d = dom[q];
            bool changed = false, any = false;
            for (std::size_t w = 0; w < d.size(); ++w)
                if ((d[w] & allowed[w]) != d[w]) {
                    changed = true;
                    break;
                }
            if (changed) {
                trail.push_back({q, d});
                for (std::size_t w = 0; w < d.size(); ++w)
                    d[w] &= allowed[w];
            }
            for (Word w : d)
                any = any || w != 0;
            return any;
        }

        bool propagate(std::size_t p)
        {
            for (auto [e, r] : ms.incident_[p]) {
                const auto& ed = ms.edges_[e];
                std::array<long long, 3> idx{lambda[ed.v[0]], lambda[ed.v[1]], lambda[ed.v[2]]};
                if (idx[0] < 0 || idx[1] < 0 || idx[2] < 0)
                    continue;
                std::array<int, 3> pos{0, 1, 2};
                std::sort(pos.begin(), pos.end(), [&](int x, int y) { return idx[x] < idx[y]; });
                std::array<int, 3> rank{};
                for (int s = 0; s < 3; ++s)
                    rank[pos[s]] = s;
                // role in the sorted constituent of each F-pair (v0v1, v0v2, v1v2)
                const std::array<int, 3> role{role_of(std::min(rank[0], rank[1]), std::max(rank[0], rank[1])),
                                              role_of(std::min(rank[0], rank[2]), std::max(rank[0], rank[2])),
                                              role_of(std::min(rank[1], rank[2]), std::max(rank[1], rank[2]))};
                const auto& c = ms.a_.constituent(static_cast<Index>(idx[pos[0]]), static_cast<Index>(idx[pos[1]]),
                                                  static_cast<Index>(idx[pos[2]]));
                std::array<long long, 3> at{}; // value per constituent role
                int open_count = 0, open_slot = -1;
                for (int s = 0; s < 3; ++s) {
                    at[role[s]] = phi[ed.pairs[s]];
                    if (phi[ed.pairs[s]] < 0) {
                        ++open_count;
                        open_slot = s;
                    }
                }
                if (open_count == 0) {
                    if (!c.has(static_cast<Local>(at[0]), static_cast<Local>(at[1]), static_cast<Local>(at[2])))
                        return false;
                } else if (open_count == 1) {
                    const int open = role[open_slot];
                    const auto& o = Constituent::others(open);
                    if (!narrow(ed.pairs[open_slot], c.completions(open, static_cast<Local>(at[o[0]]),
                                                                   static_cast<Local>(at[o[1]]))))
                        return false;
                }
            }
            return true;
        }

        bool dfs(std::size_t step)
        {
            if (step == ms.steps_.size())
                return true;
            const auto& st = ms.steps_[step];
            if (st.lambda) {
                for (Index i = 0; i < ms.a_.indices(); ++i) {
                    if (!try_lambda(step, i)) {
                        if (aborted)
                            return false;
                        continue;
                    }
                    if (dfs(step + 1))
                        return true;
                    undo_lambda(step);
                    if (aborted)
                        return false;
                }
                return false;
            }
            const std::size_t p = st.id;
            const auto candidates = dom[p];
            for (std::size_t w = 0; w < candidates.size(); ++w) {
                Word bits = candidates[w];
                while (bits) {
                    const Local x = static_cast<Local>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                    bits &= bits - 1;
                    if (!tick())
                        return false;
                    const std::size_t mark = trail.size();
                    phi[p] = x;
                    if (propagate(p) && dfs(step + 1))
                        return true;
                    phi[p] = -1;
                    while (trail.size() > mark) {
                        dom[trail.back().first] = std::move(trail.back().second);
                        trail.pop_back();
                    }
                    if (aborted)
                        return false;
                }
            }
            return false;
        }
    };

    const Hypergraph3& f_;
    const ReducedHypergraph& a_;
    bool injective_;
    std::vector<Vertex> order_;
    std::vector<Pair> shadow_;
    std::vector<int> pid_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<std::size_t, int>>> incident_;
    std::vector<std::vector<Vertex>> neighbours_;
    std::vector<Step> steps_;
};

} // namespace

ReducedMapResult find_reduced_map(const Hypergraph3& f, const ReducedHypergraph& a, const ReducedMapOptions& options)
{
    ReducedMapResult result;
    if (options.injective && f.order() > a.indices()) {
        result.verdict = Verdict::free;
        return result;
    }
    const MapSearch search(f, a, options.injective);
    if (search.empty()) {
        result.verdict = Verdict::certificate;
        result.map = ReducedMap{};
        return result;
    }
    const std::size_t branches = search.first_choices();
    std::vector<BranchOutcome> outcomes(branches);
    std::vector<ReducedMap> maps(branches);
    const std::uint64_t budget = options.node_budget;
#pragma omp parallel for schedule(dynamic, 1) if (options.exec == Exec::parallel)
    for (long long b = 0; b < static_cast<long long>(branches); ++b)
        outcomes[b] = search.solve_branch(static_cast<Index>(b), budget, maps[b]);
    const auto d = decide_batch(outcomes, budget);
    result.nodes = d.nodes;
    switch (d.state) {
    case BatchDecision::State::success: {
        std::string why;
        if (!check_reduced_map(f, a, maps[d.index], &why))
            throw std::logic_error("reduced-map search produced an invalid map: " + why);
        result.verdict = Verdict::certificate;
        result.map = std::move(maps[d.index]);
        break;
    }
    case BatchDecision::State::out_of_budget:
        result.verdict = Verdict::inconclusive;
        break;
    case BatchDecision::State::undecided:
        result.verdict = Verdict::free;
        break;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Greedy tetrahedron

TetraPlan tetrahedron_plan(const Rational& eps)
{
    if (eps <= 0 || eps > 1)
        throw std::invalid_argument("eps must lie in (0, 1]");
    TetraPlan plan;
    Rational inv = 1 / eps;
    BigInt ceil_inv = numerator_of(inv) / denominator_of(inv);
    if (ceil_inv * denominator_of(inv) != numerator_of(inv))
        ceil_inv += 1;
    plan.x_size = ceil_inv.convert_to<std::size_t>() + 1;
    const std::size_t stages = plan.x_size * (plan.x_size - 1) / 2;
    Rational need = 2;
    for (std::size_t s = 0; s < stages; ++s)
        need /= eps;
    BigInt y = numerator_of(need) / denominator_of(need);
    if (y * denominator_of(need) != numerator_of(need))
        y += 1;
    plan.y_required = std::max<std::size_t>(2, y.convert_to<std::size_t>());
    plan.indices_required = plan.x_size + plan.y_required;
    return plan;
}

TetraResult tetrahedron_greedy(const ReducedHypergraph& a, const Rational& eps)
{
    TetraResult out;
    out.plan = tetrahedron_plan(eps);
    const std::size_t m = a.indices();
    if (m < out.plan.indices_required)
        throw PrecheckError("eps = " + to_string(eps) + " needs |X| = " + std::to_string(out.plan.x_size) +
                            " and |Y| >= " + std::to_string(out.plan.y_required) + ", i.e. at least " +
                            std::to_string(out.plan.indices_required) + " indices; got " + std::to_string(m));
    auto dense = check_dense(a, Notion::ee, eps);
    if (!dense.dense)
        throw PrecheckError("reduced hypergraph is not (" + to_string(eps) + ", ee)-dense: triple " +
                            triple_name(dense.worst->triple) + " has a completion count of " +
                            std::to_string(dense.worst->count) + " out of " + std::to_string(dense.worst->out_of));

    const auto xs = static_cast<Index>(out.plan.x_size);
    std::vector<Index> survivors;
    for (Index y = xs; y < m; ++y)
        survivors.push_back(y);
    // P^xy = local 0 throughout, so an X-pair vertex c survives y iff (c, 0, 0) is an edge of xx'y.
    std::vector<std::vector<Local>> chosen(xs, std::vector<Local>(xs, 0));
    for (Index x = 0; x < xs; ++x)
        for (Index x2 = x + 1; x2 < xs; ++x2) {
            const std::size_t size = a.class_size(x, x2);
            Local best = 0;
            std::size_t best_count = 0;
            for (Local c = 0; c < size; ++c) {
                std::size_t cnt = 0;
                for (Index y : survivors)
                    cnt += a.constituent(x, x2, y).has(c, 0, 0);
                if (cnt > best_count) {
                    best = c;
                    best_count = cnt;
                }
            }
            if (Rational(static_cast<long long>(best_count)) < eps * static_cast<long long>(survivors.size()))
                throw std::logic_error("pigeonhole step failed for pair " + std::to_string(x) + "," +
                                       std::to_string(x2) + ": the (eps, ee)-density check was violated");
            chosen[x][x2] = best;
            std::vector<Index> next;
            for (Index y : survivors)
                if (a.constituent(x, x2, y).has(best, 0, 0))
                    next.push_back(y);
            survivors = std::move(next);
        }
    if (survivors.size() < 2)
        throw std::logic_error("fewer than two indices of Y survived; the (eps, ee)-density check was violated");
    const Index y = survivors[0], y2 = survivors[1];

    const std::size_t size = a.class_size(y, y2);
    Local best = 0;
    std::size_t best_count = 0;
    for (Local c = 0; c < size; ++c) {
        std::size_t cnt = 0;
        for (Index x = 0; x < xs; ++x)
            cnt += a.constituent(x, y, y2).has(0, 0, c);
        if (cnt > best_count) {
            best = c;
            best_count = cnt;
        }
    }
    std::vector<Index> xstar;
    for (Index x = 0; x < xs; ++x)
        if (a.constituent(x, y, y2).has(0, 0, best))
            xstar.push_back(x);
    if (xstar.size() < 2)
        throw std::logic_error("fewer than two indices of X survived; the (eps, ee)-density check was violated");
    const Index x = xstar[0], x2 = xstar[1];

    out.indices = {x, x2, y, y2};
    out.map.lambda = {x, x2, y, y2};
    out.map.phi = {{{0, 1}, chosen[x][x2]}, {{0, 2}, 0}, {{0, 3}, 0}, {{1, 2}, 0}, {{1, 3}, 0}, {{2, 3}, best}};
    std::string why;
    if (!check_reduced_map(clique(4), a, out.map, &why))
        throw std::logic_error("greedy tetrahedron failed validation: " + why);
    return out;
}

// ---------------------------------------------------------------------------
// Builders

ReducedHypergraph from_palette(const Palette& p, std::size_t m)
{
    if (!p.base().is_uniform())
        throw std::invalid_argument("from_palette needs uniform colour weights; class copies cannot carry weights");
    auto a = ReducedHypergraph::uniform(m, p.colors());
    for (const auto& t : a.triples()) {
        auto& c = a.constituent(t[0], t[1], t[2]);
        for (const auto& pat : p.patterns())
            c.set(pat[0], pat[1], pat[2]);
    }
    return a;
}

ReducedHypergraph random_reduced(std::size_t m, std::size_t class_size, const Rational& p, std::uint64_t seed)
{
    if (p < 0 || p > 1)
        throw std::invalid_argument("edge probability must lie in [0, 1]");
    const auto num = numerator_of(p).convert_to<std::uint64_t>();
    const auto den = denominator_of(p).convert_to<std::uint64_t>();
    auto a = ReducedHypergraph::uniform(m, class_size);
    const Rng base(seed);
    const auto triples = a.triples();
    for (std::size_t t = 0; t < triples.size(); ++t) {
        Rng r = base.split(t);
        auto& c = a.constituent(triples[t][0], triples[t][1], triples[t][2]);
        for (Local x = 0; x < class_size; ++x)
            for (Local y = 0; y < class_size; ++y)
                for (Local z = 0; z < class_size; ++z)
                    if (r.bernoulli(num, den))
                        c.set(x, y, z);
    }
    return a;
}

void repair_ee_dense(ReducedHypergraph& a, const Rational& d, std::uint64_t seed)
{
    const Rng base(seed);
    const auto triples = a.triples();
    for (std::size_t t = 0; t < triples.size(); ++t) {
        Rng r = base.split(t);
        auto& c = a.constituent(triples[t][0], triples[t][1], triples[t][2]);
        const auto dims = c.dims();
        for (int open = 0; open < 3; ++open) {
            const auto& o = Constituent::others(open);
            Rational need_r = d * static_cast<long long>(dims[open]);
            BigInt need = numerator_of(need_r) / denominator_of(need_r);
            if (need * denominator_of(need_r) != numerator_of(need_r))
                need += 1;
            const auto needed = need.convert_to<std::size_t>();
            for (Local u = 0; u < dims[o[0]]; ++u)
                for (Local v = 0; v < dims[o[1]]; ++v) {
                    std::size_t have = popcount(c.completions(open, u, v));
                    while (have < needed) {
                        std::vector<Local> missing;
                        auto row = c.completions(open, u, v);
                        for (Local w = 0; w < dims[open]; ++w)
                            if (!test_bit(row, w))
                                missing.push_back(w);
                        const Local w = missing[r.uniform(missing.size())];
                        std::array<Local, 3> loc{};
                        loc[open] = w;
                        loc[o[0]] = u;
                        loc[o[1]] = v;
                        c.set(loc[0], loc[1], loc[2]);
                        ++have;
                    }
                }
        }
    }
}

std::vector<IndexTriple> useless_triples(const ReducedHypergraph& a, const ReducedHypergraph& b, const Rational& xi)
{
    if (a.indices() != b.indices() || a.class_sizes() != b.class_sizes())
        throw std::invalid_argument("useless-triple classification needs identical index sets and classes");
    std::vector<IndexTriple> out;
    for (const auto& t : a.triples()) {
        const auto& ca = a.constituent(t[0], t[1], t[2]);
        const auto& cb = b.constituent(t[0], t[1], t[2]);
        const auto& dims = ca.dims();
        std::size_t lost = 0;
        for (Local x = 0; x < dims[0]; ++x)
            for (Local y = 0; y < dims[1]; ++y) {
                auto ra = ca.completions(2, x, y);
                auto rb = cb.completions(2, x, y);
                for (std::size_t w = 0; w < ra.size(); ++w)
                    lost += static_cast<std::size_t>(std::popcount(ra[w] & ~rb[w]));
            }
        if (Rational(static_cast<long long>(lost)) > xi * static_cast<long long>(dims[0] * dims[1] * dims[2]))
            out.push_back(t);
    }
    return out;
}

} // namespace turan
