#include "turan/hypergraph.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace turan {

Hypergraph3 Hypergraph3::make(std::size_t n, std::span<const Triple> triples)
{
    Hypergraph3 h;
    h.n_ = n;
    h.words_ = words_for(n);
    h.edges_.reserve(triples.size());
    for (const auto& t : triples) {
        for (Vertex v : t)
            if (v >= n)
                throw std::invalid_argument("vertex " + std::to_string(v) + " out of range for n = " +
                                            std::to_string(n));
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
            throw std::invalid_argument("triple {" + std::to_string(t[0]) + "," + std::to_string(t[1]) +
                                        "," + std::to_string(t[2]) + "} repeats a vertex");
        h.edges_.push_back(sorted_triple(t[0], t[1], t[2]));
    }
    std::sort(h.edges_.begin(), h.edges_.end());
    h.edges_.erase(std::unique(h.edges_.begin(), h.edges_.end()), h.edges_.end());

    h.links_.assign(n * n * h.words_, 0);
    h.degrees_.assign(n, 0);
    auto mark = [&](Vertex a, Vertex b, Vertex c) {
        h.links_[(static_cast<std::size_t>(a) * n + b) * h.words_ + (c >> 6)] |= Word(1) << (c & 63);
    };
    for (const auto& [a, b, c] : h.edges_) {
        mark(a, b, c);
        mark(b, a, c);
        mark(a, c, b);
        mark(c, a, b);
        mark(b, c, a);
        mark(c, b, a);
        ++h.degrees_[a];
        ++h.degrees_[b];
        ++h.degrees_[c];
    }
    return h;
}

std::vector<Pair> Hypergraph3::shadow() const
{
    std::vector<Pair> pairs;
    pairs.reserve(edges_.size() * 3);
    for (const auto& [a, b, c] : edges_) {
        pairs.push_back({a, b});
        pairs.push_back({a, c});
        pairs.push_back({b, c});
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

Hypergraph3 clique(std::size_t t)
{
    if (t < 3)
        throw std::invalid_argument("clique needs t >= 3");
    std::vector<Triple> e;
    for (Vertex a = 0; a < t; ++a)
        for (Vertex b = a + 1; b < t; ++b)
            for (Vertex c = b + 1; c < t; ++c)
                e.push_back({a, b, c});
    return Hypergraph3::make(t, e);
}

Hypergraph3 clique_minus4()
{
    return Hypergraph3::make(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
}

Hypergraph3 cycle5()
{
    std::vector<Triple> e;
    for (Vertex i = 0; i < 5; ++i)
        e.push_back({i, (i + 1) % 5, (i + 2) % 5});
    return Hypergraph3::make(5, e);
}

Hypergraph3 cone(std::size_t graph_order, std::span<const Pair> graph_edges)
{
    std::vector<Triple> e;
    for (const auto& [u, v] : graph_edges) {
        if (u >= graph_order || v >= graph_order || u == v)
            throw std::invalid_argument("cone: invalid graph edge");
        e.push_back({0, u + 1, v + 1});
    }
    return Hypergraph3::make(graph_order + 1, e);
}

Hypergraph3 star(std::size_t k)
{
    if (k < 2)
        throw std::invalid_argument("star needs k >= 2");
    std::vector<Pair> g;
    for (Vertex u = 0; u < k; ++u)
        for (Vertex v = u + 1; v < k; ++v)
            g.push_back({u, v});
    return cone(k, g);
}

Hypergraph3 fano()
{
    return Hypergraph3::make(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

namespace {

std::size_t parse_param(std::string_view text, std::string_view family)
{
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("invalid parameter '" + std::string(text) + "' for family '" +
                                    std::string(family) + "'");
    return value;
}

} // namespace

Hypergraph3 named(std::string_view family)
{
    if (family == "k4minus" || family == "k4-" || family == "clique_minus:4")
        return clique_minus4();
    if (family == "c5" || family == "cycle5")
        return cycle5();
    if (family == "fano")
        return fano();
    if (family.starts_with("clique:"))
        return clique(parse_param(family.substr(7), family));
    if (family.starts_with("star:"))
        return star(parse_param(family.substr(5), family));
    if (family.size() > 1 && family[0] == 'k')
        return clique(parse_param(family.substr(1), family));
    if (family.size() > 1 && family[0] == 's')
        return star(parse_param(family.substr(1), family));
    throw std::invalid_argument("unknown hypergraph family '" + std::string(family) + "'");
}

bool is_embedding(const Hypergraph3& f, const Hypergraph3& h, std::span<const Vertex> map)
{
    if (map.size() != f.order())
        return false;
    std::vector<char> used(h.order(), 0);
    for (Vertex v : map) {
        if (v >= h.order() || used[v])
            return false;
        used[v] = 1;
    }
    return std::all_of(f.edges().begin(), f.edges().end(), [&](const Triple& e) {
        return h.has_edge(map[e[0]], map[e[1]], map[e[2]]);
    });
}

std::vector<Vertex> embedding_order(const Hypergraph3& f)
{
    std::vector<Vertex> order(f.order());
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return f.degree(a) > f.degree(b); });
    return order;
}

namespace {

struct EmbeddingSearch {
    const Hypergraph3& f;
    const Hypergraph3& h;
    std::vector<Vertex> order;
    // For the vertex at depth t: earlier pairs closing an edge with it, and
    // earlier vertices sharing an edge with it whose third vertex comes later.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> closing;
    std::vector<std::vector<std::size_t>> forward;

    EmbeddingSearch(const Hypergraph3& f_, const Hypergraph3& h_) : f(f_), h(h_), order(embedding_order(f_))
    {
        const std::size_t k = order.size();
        std::vector<std::size_t> depth(k);
        for (std::size_t t = 0; t < k; ++t)
            depth[order[t]] = t;
        closing.resize(k);
        forward.resize(k);
        for (const auto& e : f.edges()) {
            std::array<std::size_t, 3> d{depth[e[0]], depth[e[1]], depth[e[2]]};
            std::sort(d.begin(), d.end());
            closing[d[2]].push_back({d[0], d[1]});
            forward[d[1]].push_back(d[0]);
        }
    }

    bool extend(std::size_t t, std::vector<Vertex>& image, std::vector<char>& used) const
    {
        if (t == order.size())
            return true;
        const Vertex u = order[t];
        const std::size_t w = h.link_words();
        std::vector<Word> cand(w, 0);
        for (Vertex v = 0; v < h.order(); ++v)
            if (!used[v] && h.degree(v) >= f.degree(u))
                cand[v >> 6] |= Word(1) << (v & 63);
        for (auto [a, b] : closing[t]) {
            auto l = h.link(image[a], image[b]);
            for (std::size_t i = 0; i < w; ++i)
                cand[i] &= l[i];
        }
        bool found = false;
        for_each_bit(cand, [&](std::size_t v) {
            if (found)
                return;
            for (std::size_t a : forward[t])
                if (popcount(h.link(image[a], static_cast<Vertex>(v))) == 0)
                    return;
            image[t] = static_cast<Vertex>(v);
            used[v] = 1;
            if (extend(t + 1, image, used))
                found = true;
            else
                used[v] = 0;
        });
        return found;
    }

    std::optional<Embedding> finish(const std::vector<Vertex>& image) const
    {
        Embedding e;
        e.map.assign(f.order(), 0);
        for (std::size_t t = 0; t < order.size(); ++t)
            e.map[order[t]] = image[t];
        return e;
    }
};

} // namespace

std::optional<Embedding> find_embedding(const Hypergraph3& f, const Hypergraph3& h, Exec exec)
{
    if (f.order() > h.order())
        return std::nullopt;
    if (f.order() == 0)
        return Embedding{};
    const EmbeddingSearch search(f, h);
    const std::size_t k = f.order();
    const Vertex first = search.order[0];

    // Branch on the image of the first vertex; keep the least successful branch.
    const long long branches = static_cast<long long>(h.order());
    std::vector<std::vector<Vertex>> results(h.order());
    std::vector<char> ok(h.order(), 0);
    std::atomic<long long> best{branches};

#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
    for (long long b = 0; b < branches; ++b) {
        if (b > best.load(std::memory_order_relaxed))
            continue;
        const auto v = static_cast<Vertex>(b);
        if (h.degree(v) < f.degree(first))
            continue;
        std::vector<Vertex> image(k, 0);
        std::vector<char> used(h.order(), 0);
        image[0] = v;
        used[v] = 1;
        if (search.extend(1, image, used)) {
            results[b] = std::move(image);
            ok[b] = 1;
            long long cur = best.load();
            while (b < cur && !best.compare_exchange_weak(cur, b)) {
            }
        }
    }
    for (std::size_t b = 0; b < h.order(); ++b)
        if (ok[b])
            return search.finish(results[b]);
    return std::nullopt;
}

} // namespace turan

namespace turan {

std::vector<std::vector<Vertex>> automorphisms(const Hypergraph3& f)
{
    std::vector<Vertex> g(f.order());
    std::iota(g.begin(), g.end(), Vertex{0});
    std::vector<std::vector<Vertex>> out;
    do {
        bool ok = std::all_of(f.edges().begin(), f.edges().end(),
                              [&](const Triple& e) { return f.has_edge(g[e[0]], g[e[1]], g[e[2]]); });
        if (ok)
            out.push_back(g);
    } while (std::next_permutation(g.begin(), g.end()));
    return out;
}

} // namespace turan
