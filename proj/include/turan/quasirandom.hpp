#pragma once

#include "turan/bitset.hpp"
#include "turan/construct.hpp"
#include "turan/density.hpp"
#include "turan/hypergraph.hpp"
#include "turan/parallel.hpp"
#include "turan/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace turan {

/// Bipartite graph between X = {0..x-1} and Y = {0..y-1}, stored as rows over Y.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(std::size_t x, std::size_t y) : x_(x), y_(y), words_(words_for(y)), bits_(x * words_for(y), 0) {}

    std::size_t x_size() const { return x_; }
    std::size_t y_size() const { return y_; }
    bool has(std::size_t a, std::size_t b) const { return test_bit(row(a), b); }
    /// Throws std::out_of_range for a vertex outside its side.
    void add(std::size_t a, std::size_t b);
    std::span<const Word> row(std::size_t a) const { return {bits_.data() + a * words_, words_}; }
    std::size_t size() const { return popcount(bits_); }
    /// e / (|X||Y|); 0 for an empty side.
    Rational density() const;
    BipartiteGraph complement() const;
    BipartiteGraph transpose() const;

    friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

private:
    std::size_t x_ = 0;
    std::size_t y_ = 0;
    std::size_t words_ = 0;
    std::vector<Word> bits_;
};

/// Each edge independently with probability p; rows drawn in order from Rng(seed).
BipartiteGraph random_bipartite(std::size_t x, std::size_t y, const Rational& p, std::uint64_t seed);

/// Colour class c of the blocks i and j of a lifted colouring: X is block i,
/// Y is block j, and xy is an edge iff the pair carries class vertex c.
BipartiteGraph color_class(const PartitionedColoring& phi, Index i, Index j, Local c);

/// Parts X, Y, Z with layers XY, XZ, YZ. Optional labels place the parts
/// inside V(H) for relative densities.
struct TripartiteGraph {
    BipartiteGraph xy, xz, yz;
    std::vector<Vertex> x_label, y_label, z_label;

    /// Throws std::invalid_argument if the layer sizes disagree.
    void validate() const;
    std::size_t x_size() const { return xy.x_size(); }
    std::size_t y_size() const { return xy.y_size(); }
    std::size_t z_size() const { return xz.y_size(); }
    bool labelled() const { return !x_label.empty() || !y_label.empty() || !z_label.empty(); }
};

struct QuasirandomReport {
    AuditMode mode = AuditMode::exact;
    Rational delta;
    Rational d;
    /// max over audited (A, B) of |e(A, B) - d|A||B|| / (|X||Y|)
    Rational max_deviation;
    Bitset worst_a; ///< subset of X
    Bitset worst_b; ///< subset of Y
    BigInt space;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string rng;

    bool passed() const { return max_deviation <= delta; }
};

struct QuasirandomOptions {
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 0;
    /// Exact when the smaller side has at most this many vertices.
    std::size_t exact_threshold = 20;
    Exec exec = Exec::parallel;
};

/// (delta, d)-quasirandomness. For fixed A the worst B is the set of
/// y with positive (or the set with negative) deviation, so only subsets
/// of the smaller side are enumerated (Gray code) or sampled with descent.
QuasirandomReport audit_quasirandom(const BipartiteGraph& g, const Rational& delta, const Rational& d,
                                    const QuasirandomOptions& options = {});

/// Triangles x in X, y in Y, z in Z with all three layer edges.
std::uint64_t triangle_count(const TripartiteGraph& p);

struct CountingLemmaReport {
    std::uint64_t triangles = 0;
    Rational expected;  ///< dXY dXZ dYZ |X||Y||Z|
    Rational deviation; ///< (triangles - expected) / (|X||Y||Z|), signed
    Rational delta;
    bool within = true; ///< |deviation| <= 3 delta
    /// Re-audits of the three layers at their (delta, d) parameters.
    std::vector<QuasirandomReport> layers;
    bool layers_pass = true;
};

CountingLemmaReport check_counting_lemma(const TripartiteGraph& p, const Rational& delta, const Rational& dxy,
                                         const Rational& dxz, const Rational& dyz,
                                         const QuasirandomOptions& options = {});

/// Largest normalised deviation of the three layers at their own densities:
/// the least delta for which the layers are (delta, d)-quasirandom (exact
/// when every layer is within the exact threshold).
Rational audited_delta(const TripartiteGraph& p, const QuasirandomOptions& options = {});

/// |E_H n K3(P)| / |K3(P)|, 0 when P has no triangles. Requires labels.
Rational relative_density(const Hypergraph3& h, const TripartiteGraph& p);

struct RegularityAudit {
    Rational d3;
    /// max over sampled Q of ||E_H n K3(Q)| - d3 |K3(Q)|| / |K3(P)|
    Rational max_deviation;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    bool heuristic = true; ///< Q ranges over samples only, never all subgraphs
};

/// Sampled subgraphs Q of P: every layer thinned to rate 1/4, 1/2 or 3/4,
/// or P induced on random vertex subsets. d3 defaults to d(H|P).
RegularityAudit audit_regularity_sampled(const Hypergraph3& h, const TripartiteGraph& p,
                                         std::optional<Rational> d3 = std::nullopt, std::uint64_t samples = 1000,
                                         std::uint64_t seed = 0);

} // namespace turan
