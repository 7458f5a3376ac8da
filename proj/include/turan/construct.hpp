#pragma once

#include "turan/hypergraph.hpp"
#include "turan/palette.hpp"
#include "turan/parallel.hpp"
#include "turan/reduced.hpp"

#include <cstdint>
#include <vector>

namespace turan {

/// A colour for every pair {x, y} of 0..n-1, drawn from a base of `colors` colours.
class PairColoring {
public:
    PairColoring() = default;
    PairColoring(std::size_t n, std::size_t colors) : n_(n), k_(colors), c_(n * n, 0) {}

    std::size_t order() const { return n_; }
    std::size_t colors() const { return k_; }
    Color color(Vertex x, Vertex y) const { return c_[static_cast<std::size_t>(x) * n_ + y]; }
    /// Throws std::invalid_argument on a loop or a colour outside the base.
    void set(Vertex x, Vertex y, Color c);

    friend bool operator==(const PairColoring&, const PairColoring&) = default;

private:
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<Color> c_;
};

/// Pairs in lexicographic order, each colour gamma with probability w(gamma).
/// One draw of Rng(seed).uniform(D) per pair, D the common weight denominator.
PairColoring random_pair_coloring(std::size_t n, const WeightedColorSet& base, std::uint64_t seed);

/// Edges xyz, x < y < z, with (phi(xy), phi(xz), phi(yz)) in P. Throws
/// std::invalid_argument if the colouring's base is larger than the palette's.
Hypergraph3 build_H(const PairColoring& phi, const Palette& p, Exec exec = Exec::parallel);

/// Cyclic triangles of a random tournament: build_H over the tournament
/// palette, colour "->" on x < y meaning x -> y.
Hypergraph3 tournament_hypergraph(std::size_t n, std::uint64_t seed);

/// ijk (i < j < k) is an edge iff ij and ik get different colours.
Hypergraph3 roedl_hypergraph(std::size_t n, std::uint64_t seed);

/// Block i is {i*h, ..., i*h + h - 1}; crossing pairs carry a vertex of
/// the class of their two blocks.
class PartitionedColoring {
public:
    PartitionedColoring() = default;
    PartitionedColoring(std::size_t parts, std::size_t block)
        : parts_(parts), block_(block), local_(parts * block * parts * block, 0)
    {
    }

    std::size_t parts() const { return parts_; }
    std::size_t block() const { return block_; }
    std::size_t order() const { return parts_ * block_; }
    Index part_of(Vertex x) const { return static_cast<Index>(x / block_); }
    Local local(Vertex x, Vertex y) const { return local_[static_cast<std::size_t>(x) * order() + y]; }
    /// Throws std::invalid_argument unless x and y lie in different blocks.
    void set(Vertex x, Vertex y, Local v);

    friend bool operator==(const PartitionedColoring&, const PartitionedColoring&) = default;

private:
    std::size_t parts_ = 0;
    std::size_t block_ = 0;
    std::vector<Local> local_;
};

/// Uniform class vertex per crossing pair, pairs in lexicographic order from Rng(seed).
PartitionedColoring random_partitioned_coloring(const ReducedHypergraph& a, std::size_t h, std::uint64_t seed);

struct Lift {
    Hypergraph3 h;
    PartitionedColoring coloring;
};

/// xyz with x, y, z in distinct blocks i, j, k is an edge iff the three pair
/// colours form an edge of the constituent of ijk.
Lift lift_reduced(const ReducedHypergraph& a, std::size_t h, std::uint64_t seed);
/// Same with a caller-supplied colouring; throws std::invalid_argument if
/// it does not fit the classes of `a`.
Lift lift_reduced(const ReducedHypergraph& a, PartitionedColoring coloring);

} // namespace turan
