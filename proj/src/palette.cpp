#include "turan/palette.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace turan {

// ---------------------------------------------------------------------------
// Colour sets and palettes

WeightedColorSet WeightedColorSet::uniform(std::vector<std::string> names)
{
    if (names.empty())
        throw std::invalid_argument("colour set must be nonempty");
    std::vector<Rational> w(names.size(), Rational(1, static_cast<long long>(names.size())));
    return weighted(std::move(names), std::move(w));
}

WeightedColorSet WeightedColorSet::weighted(std::vector<std::string> names, std::vector<Rational> weights)
{
    if (names.empty())
        throw std::invalid_argument("colour set must be nonempty");
    if (names.size() > 64)
        throw std::invalid_argument("at most 64 colours are supported");
    if (names.size() != weights.size())
        throw std::invalid_argument("colour and weight counts differ");
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate colour name");
    Rational total = 0;
    for (const auto& w : weights) {
        if (w < 0 || w > 1)
            throw std::invalid_argument("colour weight " + to_string(w) + " outside [0, 1]");
        total += w;
    }
    if (total != 1)
        throw std::invalid_argument("colour weights sum to " + to_string(total) + ", not 1");
    WeightedColorSet s;
    s.names_ = std::move(names);
    s.weights_ = std::move(weights);
    return s;
}

bool WeightedColorSet::is_uniform() const
{
    return std::all_of(weights_.begin(), weights_.end(),
                       [&](const Rational& w) { return w == Rational(1, static_cast<long long>(size())); });
}

std::optional<Color> WeightedColorSet::find(std::string_view name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return static_cast<Color>(i);
    return std::nullopt;
}

Palette::Palette(WeightedColorSet base, std::vector<Pattern> patterns)
    : base_(std::move(base)), patterns_(std::move(patterns))
{
    const std::size_t k = base_.size();
    for (const auto& p : patterns_)
        for (Color c : p)
            if (c >= k)
                throw std::invalid_argument("pattern uses colour index " + std::to_string(c) +
                                            " outside a base of " + std::to_string(k) + " colours");
    std::sort(patterns_.begin(), patterns_.end());
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
    table_.assign(k * k * k, 0);
    for (const auto& p : patterns_)
        table_[(static_cast<std::size_t>(p[0]) * k + p[1]) * k + p[2]] = 1;
    symmetric_ = std::all_of(patterns_.begin(), patterns_.end(), [&](Pattern p) {
        std::sort(p.begin(), p.end());
        do {
            if (!contains(p))
                return false;
        } while (std::next_permutation(p.begin(), p.end()));
        return true;
    });
}

Rational density_vvv(const Palette& p)
{
    const auto& b = p.base();
    Rational total = 0;
    for (const auto& [x, y, z] : p.patterns())
        total += b.weight(x) * b.weight(y) * b.weight(z);
    return total;
}

Rational density_ev(const Palette& p)
{
    const auto& b = p.base();
    const std::size_t k = b.size();
    Rational best = 1;
    for (int role = 0; role < 3; ++role) {
        std::vector<Rational> mass(k, Rational(0));
        for (const auto& pat : p.patterns()) {
            Rational w = 1;
            for (int r = 0; r < 3; ++r)
                if (r != role)
                    w *= b.weight(pat[r]);
            mass[pat[role]] += w;
        }
        for (const auto& m : mass)
            best = std::min(best, m);
    }
    return best;
}

Rational density_ee(const Palette& p)
{
    const auto& b = p.base();
    const std::size_t k = b.size();
    Rational best = 1;
    for (int missing = 0; missing < 3; ++missing) {
        std::vector<Rational> mass(k * k, Rational(0));
        for (const auto& pat : p.patterns()) {
            Color u = missing == 0 ? pat[1] : pat[0];
            Color v = missing == 2 ? pat[1] : pat[2];
            mass[static_cast<std::size_t>(u) * k + v] += b.weight(pat[missing]);
        }
        for (const auto& m : mass)
            best = std::min(best, m);
    }
    return best;
}

Rational density(const Palette& p, Notion notion)
{
    switch (notion) {
    case Notion::vvv:
        return density_vvv(p);
    case Notion::ev:
        return density_ev(p);
    case Notion::ee:
        return density_ee(p);
    }
    return 0;
}

Palette symmetric_closure(std::span<const Pattern> generators, const WeightedColorSet& base)
{
    std::vector<Pattern> out;
    for (Pattern g : generators) {
        for (Color c : g)
            if (c >= base.size())
                throw std::invalid_argument("generator uses unknown colour index " + std::to_string(c));
        std::sort(g.begin(), g.end());
        do
            out.push_back(g);
        while (std::next_permutation(g.begin(), g.end()));
    }
    return Palette(base, std::move(out));
}

// ---------------------------------------------------------------------------
// Certificates

bool check_certificate(const Hypergraph3& f, const Palette& p, const RepresentabilityCertificate& cert)
{
    const std::size_t n = f.order();
    if (cert.ordering.size() != n)
        return false;
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v = cert.ordering[i];
        if (v >= n || pos[v] != n)
            return false;
        pos[v] = i;
    }
    std::vector<int> color(n * n, -1);
    for (const auto& [pair, c] : cert.coloring) {
        auto [u, v] = pair;
        if (u >= n || v >= n || u == v || c >= p.colors())
            return false;
        if (color[u * n + v] != -1)
            return false;
        color[u * n + v] = color[v * n + u] = c;
    }
    for (const auto& e : f.edges()) {
        std::array<Vertex, 3> t = e;
        std::sort(t.begin(), t.end(), [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
        int cxy = color[t[0] * n + t[1]], cxz = color[t[0] * n + t[2]], cyz = color[t[1] * n + t[2]];
        if (cxy < 0 || cxz < 0 || cyz < 0)
            return false;
        if (!p.contains(static_cast<Color>(cxy), static_cast<Color>(cxz), static_cast<Color>(cyz)))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Colouring search for a fixed ordering

namespace {

using Mask = std::uint64_t;

class ColoringSearch {
public:
    ColoringSearch(const Hypergraph3& f, const Palette& p) : f_(f), k_(p.colors()), pairs_(f.shadow())
    {
        const std::size_t n = f.order();
        pair_id_.assign(n * n, -1);
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            auto [u, v] = pairs_[i];
            pair_id_[u * n + v] = pair_id_[v * n + u] = static_cast<int>(i);
        }

        // Variables: most incident edges first, ties by larger endpoint then smaller.
        std::vector<std::size_t> incidence(pairs_.size(), 0);
        for (const auto& [a, b, c] : f.edges()) {
            ++incidence[pid(a, b)];
            ++incidence[pid(a, c)];
            ++incidence[pid(b, c)];
        }
        var_order_.resize(pairs_.size());
        std::iota(var_order_.begin(), var_order_.end(), std::size_t{0});
        std::stable_sort(var_order_.begin(), var_order_.end(), [&](std::size_t x, std::size_t y) {
            if (incidence[x] != incidence[y])
                return incidence[x] > incidence[y];
            if (pairs_[x][1] != pairs_[y][1])
                return pairs_[x][1] < pairs_[y][1];
            return pairs_[x][0] < pairs_[y][0];
        });

        // Values: most frequent colour in the palette first.
        std::vector<std::size_t> freq(k_, 0);
        for (const auto& pat : p.patterns())
            for (Color c : pat)
                ++freq[c];
        value_order_.resize(k_);
        std::iota(value_order_.begin(), value_order_.end(), Color{0});
        std::stable_sort(value_order_.begin(), value_order_.end(),
                         [&](Color x, Color y) { return freq[x] > freq[y]; });

        // complete_[(missing * k + a) * k + b]: colours for role `missing`
        // given the other two roles (in increasing role order) hold a, b.
        complete_.assign(3 * k_ * k_, 0);
        support_.assign(3 * k_ * 3, 0);
        for (const auto& pat : p.patterns()) {
            complete_[(0 * k_ + pat[1]) * k_ + pat[2]] |= Mask(1) << pat[0];
            complete_[(1 * k_ + pat[0]) * k_ + pat[2]] |= Mask(1) << pat[1];
            complete_[(2 * k_ + pat[0]) * k_ + pat[1]] |= Mask(1) << pat[2];
            for (int s = 0; s < 3; ++s)
                for (int t = 0; t < 3; ++t)
                    if (s != t)
                        support_[(s * k_ + pat[s]) * 3 + t] |= Mask(1) << pat[t];
        }
    }

    std::size_t pair_count() const { return pairs_.size(); }
    const std::vector<Pair>& pairs() const { return pairs_; }

    /// Colours the shadow under `ordering`; on success `colors` holds one colour per pair.
    BranchOutcome solve(std::span<const Vertex> ordering, std::uint64_t cap, std::vector<Color>& colors) const
    {
        State s(*this, ordering, cap);
        BranchOutcome out;
        out.found = s.dfs(0);
        out.exhausted = !out.found && !s.aborted;
        out.nodes = s.nodes;
        if (out.found) {
            colors.resize(pairs_.size());
            for (std::size_t i = 0; i < pairs_.size(); ++i)
                colors[i] = static_cast<Color>(s.value[i]);
        }
        return out;
    }

private:
    std::size_t pid(Vertex a, Vertex b) const { return static_cast<std::size_t>(pair_id_[a * f_.order() + b]); }

    struct State {
        const ColoringSearch& cs;
        std::uint64_t cap;
        std::uint64_t nodes = 0;
        bool aborted = false;
        std::vector<std::array<std::size_t, 3>> edge_pairs;          // role order
        std::vector<std::vector<std::pair<std::size_t, int>>> incident; // (edge, role)
        std::vector<Mask> dom;
        std::vector<int> value;
        std::vector<std::pair<std::size_t, Mask>> trail;

        State(const ColoringSearch& c, std::span<const Vertex> ordering, std::uint64_t cap_)
            : cs(c), cap(cap_), incident(c.pairs_.size()), dom(c.pairs_.size()), value(c.pairs_.size(), -1)
        {
            const std::size_t n = c.f_.order();
            std::vector<std::size_t> pos(n);
            for (std::size_t i = 0; i < n; ++i)
                pos[ordering[i]] = i;
            const Mask full = c.k_ == 64 ? ~Mask(0) : (Mask(1) << c.k_) - 1;
            std::fill(dom.begin(), dom.end(), full);
            for (const auto& e : c.f_.edges()) {
                std::array<Vertex, 3> t = e;
                std::sort(t.begin(), t.end(), [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
                std::array<std::size_t, 3> roles{c.pid(t[0], t[1]), c.pid(t[0], t[2]), c.pid(t[1], t[2])};
                for (int r = 0; r < 3; ++r)
                    incident[roles[r]].push_back({edge_pairs.size(), r});
                edge_pairs.push_back(roles);
            }
        }

        bool narrow(std::size_t q, Mask allowed)
        {
            Mask nd = dom[q] & allowed;
            if (nd != dom[q]) {
                trail.push_back({q, dom[q]});
                dom[q] = nd;
            }
            return nd != 0;
        }

        bool assign(std::size_t p, Color v)
        {
            const std::size_t k = cs.k_;
            trail.push_back({p, dom[p]});
            dom[p] = Mask(1) << v;
            value[p] = v;
            for (auto [e, r] : incident[p]) {
                const auto& roles = edge_pairs[e];
                int t1 = r == 0 ? 1 : 0;
                int t2 = r == 2 ? 1 : 2;
                std::size_t q1 = roles[t1], q2 = roles[t2];
                bool a1 = value[q1] >= 0, a2 = value[q2] >= 0;
                if (a1 && a2) {
                    std::array<int, 3> pat{};
                    pat[r] = v;
                    pat[t1] = value[q1];
                    pat[t2] = value[q2];
                    Mask m = cs.complete_[(0 * k + pat[1]) * k + pat[2]];
                    if (!((m >> pat[0]) & 1))
                        return false;
                } else if (a1 || a2) {
                    int known_role = a1 ? t1 : t2;
                    int open_role = a1 ? t2 : t1;
                    std::size_t open_pair = a1 ? q2 : q1;
                    int known_value = value[a1 ? q1 : q2];
                    int lo = std::min(r, known_role) == r ? v : known_value;
                    int hi = std::min(r, known_role) == r ? known_value : v;
                    if (!narrow(open_pair, cs.complete_[(open_role * k + lo) * k + hi]))
                        return false;
                } else {
                    if (!narrow(q1, cs.support_[(r * k + v) * 3 + t1]))
                        return false;
                    if (!narrow(q2, cs.support_[(r * k + v) * 3 + t2]))
                        return false;
                }
            }
            return true;
        }

        void undo(std::size_t mark)
        {
            while (trail.size() > mark) {
                dom[trail.back().first] = trail.back().second;
                trail.pop_back();
            }
        }

        bool dfs(std::size_t depth)
        {
            if (depth == cs.var_order_.size())
                return true;
            const std::size_t p = cs.var_order_[depth];
            for (Color v : cs.value_order_) {
                if (!((dom[p] >> v) & 1))
                    continue;
                if (++nodes > cap) {
                    aborted = true;
                    return false;
                }
                const std::size_t mark = trail.size();
                if (assign(p, v) && dfs(depth + 1))
                    return true;
                value[p] = -1;
                undo(mark);
                if (aborted)
                    return false;
            }
            return false;
        }
    };

    const Hypergraph3& f_;
    std::size_t k_;
    std::vector<Pair> pairs_;
    std::vector<int> pair_id_;
    std::vector<std::size_t> var_order_;
    std::vector<Color> value_order_;
    std::vector<Mask> complete_;
    std::vector<Mask> support_;
};

/// One ordering per Aut(F)-orbit: the lexicographically least member,
/// built position by position against the pointwise stabiliser of the prefix.
void canonical_orderings(const std::vector<std::vector<Vertex>>& auts, std::size_t n, std::vector<Vertex>& prefix,
                         std::vector<char>& used, const std::vector<std::size_t>& stab,
                         std::vector<std::vector<Vertex>>& out)
{
    if (prefix.size() == n) {
        out.push_back(prefix);
        return;
    }
    for (Vertex v = 0; v < n; ++v) {
        if (used[v])
            continue;
        bool least = std::all_of(stab.begin(), stab.end(), [&](std::size_t g) { return auts[g][v] >= v; });
        if (!least)
            continue;
        std::vector<std::size_t> next;
        for (std::size_t g : stab)
            if (auts[g][v] == v)
                next.push_back(g);
        used[v] = 1;
        prefix.push_back(v);
        canonical_orderings(auts, n, prefix, used, next, out);
        prefix.pop_back();
        used[v] = 0;
    }
}

BigInt factorial(std::size_t n)
{
    BigInt r = 1;
    for (std::size_t i = 2; i <= n; ++i)
        r *= i;
    return r;
}

BigInt power(std::size_t base, std::size_t exp)
{
    BigInt r = 1;
    for (std::size_t i = 0; i < exp; ++i)
        r *= base;
    return r;
}

void validate_ordering(const std::vector<Vertex>& ordering, std::size_t n)
{
    if (ordering.size() != n)
        throw std::invalid_argument("ordering has wrong length");
    std::vector<char> seen(n, 0);
    for (Vertex v : ordering) {
        if (v >= n || seen[v])
            throw std::invalid_argument("ordering is not a permutation of V(F)");
        seen[v] = 1;
    }
}

} // namespace

RepresentabilityResult representable(const Hypergraph3& f, const Palette& p,
                                     const std::optional<std::vector<Vertex>>& fixed_ordering,
                                     const SearchOptions& options)
{
    const std::size_t n = f.order();
    const ColoringSearch search(f, p);
    RepresentabilityResult result;
    result.space = power(p.colors(), search.pair_count());

    std::vector<Vertex> identity(n);
    std::iota(identity.begin(), identity.end(), Vertex{0});

    // Orderings are produced in batches; `next_batch` returns false when exhausted.
    std::vector<std::vector<Vertex>> all;
    std::size_t cursor = 0;
    bool permutations_left = true;
    std::vector<Vertex> perm = identity;
    const bool enumerate = !fixed_ordering && !p.symmetric();
    if (fixed_ordering) {
        validate_ordering(*fixed_ordering, n);
        all.push_back(*fixed_ordering);
    } else if (!enumerate) {
        all.push_back(identity);
    } else {
        result.space *= factorial(n);
        if (n <= 8) {
            auto auts = automorphisms(f);
            std::vector<std::size_t> stab(auts.size());
            std::iota(stab.begin(), stab.end(), std::size_t{0});
            std::vector<Vertex> prefix;
            std::vector<char> used(n, 0);
            canonical_orderings(auts, n, prefix, used, stab, all);
        }
    }
    const bool lazy = enumerate && n > 8;

    constexpr std::size_t batch_size = 64;
    std::uint64_t remaining = options.node_budget;
    while (true) {
        std::vector<std::vector<Vertex>> batch;
        if (lazy) {
            while (batch.size() < batch_size && permutations_left) {
                batch.push_back(perm);
                permutations_left = std::next_permutation(perm.begin(), perm.end());
            }
        } else {
            while (batch.size() < batch_size && cursor < all.size())
                batch.push_back(all[cursor++]);
        }
        if (batch.empty()) {
            result.verdict = Verdict::free;
            return result;
        }

        std::vector<BranchOutcome> outcomes(batch.size());
        std::vector<std::vector<Color>> colorings(batch.size());
        const long long count = static_cast<long long>(batch.size());
#pragma omp parallel for schedule(dynamic, 1) if (options.exec == Exec::parallel)
        for (long long i = 0; i < count; ++i)
            outcomes[i] = search.solve(batch[i], remaining, colorings[i]);

        auto d = decide_batch(outcomes, remaining);
        result.nodes += d.nodes;
        result.orderings_explored += d.branches;
        remaining -= d.nodes;
        if (d.state == BatchDecision::State::out_of_budget) {
            result.verdict = Verdict::inconclusive;
            return result;
        }
        if (d.state == BatchDecision::State::success) {
            RepresentabilityCertificate cert;
            cert.ordering = batch[d.index];
            for (std::size_t i = 0; i < search.pair_count(); ++i)
                cert.coloring.push_back({search.pairs()[i], colorings[d.index][i]});
            if (!check_certificate(f, p, cert))
                throw std::logic_error("representability search produced an invalid certificate");
            result.verdict = Verdict::certificate;
            result.certificate = std::move(cert);
            return result;
        }
    }
}

// ---------------------------------------------------------------------------
// Catalogue

namespace {

Palette from_names(const WeightedColorSet& base, const std::vector<std::array<std::string, 3>>& pats)
{
    std::vector<Pattern> out;
    for (const auto& t : pats)
        out.push_back({*base.find(t[0]), *base.find(t[1]), *base.find(t[2])});
    return Palette(base, std::move(out));
}

BuiltinPalette roedl(std::size_t r)
{
    if (r < 2)
        throw std::invalid_argument("roedl palette needs r >= 2");
    std::vector<std::string> names;
    if (r == 2)
        names = {"red", "green"};
    else
        for (std::size_t i = 1; i <= r; ++i)
            names.push_back(std::to_string(i));
    auto base = WeightedColorSet::uniform(names);
    std::vector<Pattern> pats;
    for (Color a = 0; a < r; ++a)
        for (Color b = 0; b < r; ++b)
            for (Color c = 0; c < r; ++c)
                if (a != b)
                    pats.push_back({a, b, c});
    const auto rr = static_cast<long long>(r);
    std::string name = r == 2 ? "roedl" : "roedl:" + std::to_string(r);
    return {name, Palette(base, std::move(pats)),
            {Notion::vvv, Rational(rr - 1, rr), "K_" + std::to_string(r + 2) + " lower bound (r-1)/r"}};
}

} // namespace

RepresentabilityResult zero_density_certificate(const Hypergraph3& f, const SearchOptions& options)
{
    return representable(f, builtin("rainbow").palette, std::nullopt, options);
}

BuiltinPalette builtin(std::string_view name)
{
    if (name == "rainbow") {
        auto base = WeightedColorSet::uniform({"red", "blue", "green"});
        return {"rainbow", from_names(base, {{"red", "blue", "green"}}),
                {Notion::vvv, Rational(1, 27), "single rainbow pattern"}};
    }
    if (name == "tournament") {
        auto base = WeightedColorSet::uniform({"->", "<-"});
        return {"tournament", from_names(base, {{"->", "<-", "->"}, {"<-", "->", "<-"}}),
                {Notion::vvv, Rational(1, 4), "cyclic triangles of a random tournament"}};
    }
    if (name == "star4") {
        auto base = WeightedColorSet::uniform({"1", "2", "3"});
        return {"star4",
                from_names(base, {{"1", "2", "1"},
                                  {"1", "3", "1"},
                                  {"2", "1", "2"},
                                  {"2", "3", "2"},
                                  {"3", "1", "3"},
                                  {"3", "2", "3"},
                                  {"1", "2", "3"},
                                  {"2", "3", "1"},
                                  {"3", "1", "2"}}),
                {Notion::vvv, Rational(1, 3), "star S_4 lower bound"}};
    }
    if (name == "roedl" || name == "roedl(2)")
        return roedl(2);
    if (name.starts_with("roedl:") || (name.starts_with("roedl(") && name.ends_with(")"))) {
        auto digits = name.substr(6);
        if (digits.ends_with(")"))
            digits.remove_suffix(1);
        std::size_t r = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r);
        if (ec != std::errc() || ptr != digits.data() + digits.size())
            throw std::invalid_argument("invalid roedl parameter '" + std::string(digits) + "'");
        return roedl(r);
    }
    if (name == "ramsey6") {
        auto base = WeightedColorSet::uniform({"red", "green"});
        std::vector<Pattern> pats;
        for (Color a = 0; a < 2; ++a)
            for (Color b = 0; b < 2; ++b)
                for (Color c = 0; c < 2; ++c)
                    if (!(a == b && b == c))
                        pats.push_back({a, b, c});
        return {"ramsey6", Palette(base, std::move(pats)),
                {Notion::vvv, Rational(3, 4), "both colours on every triple (6 -> (3)^2_2)"}};
    }
    if (name == "cycle5") {
        auto base = WeightedColorSet::weighted({"red", "green"}, {Rational(2, 3), Rational(1, 3)});
        return {"cycle5", from_names(base, {{"red", "red", "green"}}),
                {Notion::vvv, Rational(4, 27), "weighted C_5 construction"}};
    }
    if (name == "ee5" || name == "ee6" || name == "ee11") {
        const bool two = name == "ee6";
        auto base = WeightedColorSet::uniform(two ? std::vector<std::string>{"1", "2"}
                                                  : std::vector<std::string>{"1", "2", "3"});
        std::vector<Pattern> gens;
        Rational d;
        if (name == "ee5") {
            gens = {{0, 0, 1}, {1, 1, 2}, {2, 2, 0}};
            d = Rational(1, 3);
        } else if (name == "ee6") {
            gens = {{0, 0, 1}, {0, 1, 1}};
            d = Rational(1, 2);
        } else {
            gens = {{0, 0, 1}, {0, 0, 2}, {1, 1, 0}, {1, 1, 2}, {2, 2, 0}, {2, 2, 1}};
            d = Rational(2, 3);
        }
        return {std::string(name), symmetric_closure(gens, base),
                {Notion::ee, d, "symmetric palette generated by " + std::to_string(gens.size()) + " patterns"}};
    }
    throw std::invalid_argument("unknown builtin palette '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names()
{
    return {"rainbow", "tournament", "star4", "roedl", "ramsey6", "cycle5", "ee5", "ee6", "ee11"};
}

// ---------------------------------------------------------------------------
// CNF export

CnfEncoding encode_cnf(const Hypergraph3& f, const Palette& p, const std::optional<std::vector<Vertex>>& ordering)
{
    const std::size_t n = f.order();
    const std::size_t k = p.colors();
    CnfEncoding cnf;
    if (ordering) {
        validate_ordering(*ordering, n);
        cnf.ordering = *ordering;
    } else {
        cnf.ordering.resize(n);
        std::iota(cnf.ordering.begin(), cnf.ordering.end(), Vertex{0});
    }
    const auto pairs = f.shadow();
    std::vector<int> id(n * n, -1);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        id[pairs[i][0] * n + pairs[i][1]] = id[pairs[i][1] * n + pairs[i][0]] = static_cast<int>(i);
        for (Color c = 0; c < k; ++c)
            cnf.variables.push_back({pairs[i], c});
    }
    auto var = [&](std::size_t pair, Color c) { return static_cast<int>(pair * k + c + 1); };

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::vector<int> some;
        for (Color c = 0; c < k; ++c)
            some.push_back(var(i, c));
        cnf.clauses.push_back(std::move(some));
        for (Color a = 0; a < k; ++a)
            for (Color b = a + 1; b < k; ++b)
                cnf.clauses.push_back({-var(i, a), -var(i, b)});
    }
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i)
        pos[cnf.ordering[i]] = i;
    for (const auto& e : f.edges()) {
        std::array<Vertex, 3> t = e;
        std::sort(t.begin(), t.end(), [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
        auto xy = static_cast<std::size_t>(id[t[0] * n + t[1]]);
        auto xz = static_cast<std::size_t>(id[t[0] * n + t[2]]);
        auto yz = static_cast<std::size_t>(id[t[1] * n + t[2]]);
        for (Color a = 0; a < k; ++a)
            for (Color b = 0; b < k; ++b)
                for (Color c = 0; c < k; ++c)
                    if (!p.contains(a, b, c))
                        cnf.clauses.push_back({-var(xy, a), -var(xz, b), -var(yz, c)});
    }
    return cnf;
}

void write_dimacs(std::ostream& out, const CnfEncoding& cnf)
{
    out << "c pair colouring; variable v <-> entry v-1 of the sidecar map\n";
    out << "p cnf " << cnf.variables.size() << ' ' << cnf.clauses.size() << '\n';
    for (const auto& clause : cnf.clauses) {
        for (int lit : clause)
            out << lit << ' ';
        out << "0\n";
    }
}

} // namespace turan
