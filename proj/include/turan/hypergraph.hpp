#pragma once

#include "turan/bitset.hpp"
#include "turan/parallel.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace turan {

using Vertex = std::uint32_t;
using Triple = std::array<Vertex, 3>;
using Pair = std::array<Vertex, 2>;

/// A 3-uniform hypergraph on vertices 0..n-1. Immutable after construction.
///
/// Edges are kept as a lexicographically sorted list of increasing triples.
/// Alongside it sits a flat link table: for every ordered pair (a, b) the
/// bitset of third vertices c with abc an edge, so membership and the
/// counting kernels cost one bit test per query.
class Hypergraph3 {
public:
    Hypergraph3() = default;

    /// Canonicalises each triple, collapses duplicates. Throws
    /// std::invalid_argument on an out-of-range or repeated vertex.
    static Hypergraph3 make(std::size_t n, std::span<const Triple> triples);
    static Hypergraph3 make(std::size_t n, std::initializer_list<Triple> triples)
    {
        return make(n, std::span<const Triple>(triples.begin(), triples.size()));
    }

    std::size_t order() const { return n_; }
    std::size_t size() const { return edges_.size(); }
    const std::vector<Triple>& edges() const { return edges_; }

    bool has_edge(Vertex a, Vertex b, Vertex c) const
    {
        return a != b && test_bit(link(a, b), c);
    }

    /// Third vertices completing (a, b) to an edge.
    std::span<const Word> link(Vertex a, Vertex b) const
    {
        return {links_.data() + (static_cast<std::size_t>(a) * n_ + b) * words_, words_};
    }
    std::size_t link_words() const { return words_; }

    std::size_t degree(Vertex v) const { return degrees_[v]; }

    /// Pairs {u, v}, u < v, covered by at least one edge, sorted.
    std::vector<Pair> shadow() const;

    friend bool operator==(const Hypergraph3& a, const Hypergraph3& b)
    {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<Triple> edges_;
    std::vector<Word> links_;
    std::vector<std::size_t> degrees_;
};

inline Triple sorted_triple(Vertex a, Vertex b, Vertex c)
{
    if (a > b)
        std::swap(a, b);
    if (b > c)
        std::swap(b, c);
    if (a > b)
        std::swap(a, b);
    return {a, b, c};
}

// Named families. Labelings are fixed:
//   clique(t)        vertices 0..t-1, all triples
//   clique_minus4()  {012, 013, 023}; vertex 0 is the apex
//   cycle5()         {i, i+1, i+2} mod 5
//   cone(g)          apex 0, graph vertex v becomes v+1
//   star(k)          cone over K_k, so star(3) == clique_minus4()
//   fano()           lines 012 034 056 135 146 236 245
Hypergraph3 clique(std::size_t t);
Hypergraph3 clique_minus4();
Hypergraph3 cycle5();
Hypergraph3 cone(std::size_t graph_order, std::span<const Pair> graph_edges);
Hypergraph3 star(std::size_t k);
Hypergraph3 fano();

/// Parses a family name: "k<t>", "clique:<t>", "k4minus", "c5", "cycle5",
/// "s<k>", "star:<k>", "fano". Throws std::invalid_argument for unknown
/// families or invalid parameters.
Hypergraph3 named(std::string_view family);

/// An injective map V(F) -> V(H) sending edges to edges.
struct Embedding {
    std::vector<Vertex> map;
};

bool is_embedding(const Hypergraph3& f, const Hypergraph3& h, std::span<const Vertex> map);

/// Backtracking over F's vertices in descending-degree order with candidate
/// sets narrowed by the link table. Among all embeddings returns the least
/// one in that search order (the map vector read in search order), so the
/// result does not depend on the worker count.
std::optional<Embedding> find_embedding(const Hypergraph3& f, const Hypergraph3& h,
                                        Exec exec = Exec::parallel);

/// All vertex permutations g with g(E(F)) = E(F). Brute force over n!
/// permutations; intended for n <= 8.
std::vector<std::vector<Vertex>> automorphisms(const Hypergraph3& f);

/// Search order used by find_embedding: descending F-degree, ties by index.
std::vector<Vertex> embedding_order(const Hypergraph3& f);

} // namespace turan
