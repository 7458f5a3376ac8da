#pragma once

#include "turan/bitset.hpp"
#include "turan/hypergraph.hpp"
#include "turan/notion.hpp"
#include "turan/palette.hpp"
#include "turan/parallel.hpp"
#include "turan/rational.hpp"
#include "turan/search.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace turan {

using Index = std::uint32_t;
/// Position of a vertex inside its class; vertices are namespaced by (pair, local).
using Local = std::uint32_t;
using IndexTriple = std::array<Index, 3>;
using LocalTriple = std::array<Local, 3>;

/// Tripartite edge set of one constituent. For indices i < j < k the roles
/// are 0 = class ij, 1 = class ik, 2 = class jk. Stored as three bit cubes,
/// one per role that can be left open, so every completion query is a row.
class Constituent {
public:
    Constituent() = default;
    Constituent(std::size_t ij, std::size_t ik, std::size_t jk);

    const std::array<std::size_t, 3>& dims() const { return dims_; }
    bool has(Local a, Local b, Local c) const { return test_bit(completions(2, a, b), c); }
    bool has(const LocalTriple& t) const { return has(t[0], t[1], t[2]); }
    void set(Local a, Local b, Local c, bool on = true);
    void fill();
    std::size_t size() const { return size_; }

    /// Vertices of role `open` completing the other two roles (given in
    /// increasing role order) to an edge.
    std::span<const Word> completions(int open, Local u, Local v) const
    {
        const auto& o = others(open);
        const std::size_t w = words_[open];
        return {bits_[open].data() + (static_cast<std::size_t>(u) * dims_[o[1]] + v) * w, w};
    }

    /// Edges through each vertex of role r.
    std::vector<std::size_t> degrees(int role) const;
    /// Completion counts indexed [u * dims[second] + v] for the two roles other than `open`.
    std::vector<std::size_t> codegrees(int open) const;

    std::vector<LocalTriple> edges() const;

    friend bool operator==(const Constituent& a, const Constituent& b)
    {
        return a.dims_ == b.dims_ && a.bits_[2] == b.bits_[2];
    }

    static const std::array<int, 2>& others(int open)
    {
        static constexpr std::array<std::array<int, 2>, 3> table{{{1, 2}, {0, 2}, {0, 1}}};
        return table[open];
    }

private:
    std::array<std::size_t, 3> dims_{};
    std::array<std::size_t, 3> words_{};
    std::array<std::vector<Word>, 3> bits_;
    std::size_t size_ = 0;
};

/// Index set {0..m-1}, a nonempty class per index pair and a constituent per
/// index triple. Classes of distinct pairs are disjoint by construction since
/// vertices are addressed as (pair, local).
class ReducedHypergraph {
public:
    ReducedHypergraph() = default;
    /// All constituents empty; sizes[pair_slot(i, j)] is |P^ij|. Throws
    /// std::invalid_argument for m < 3, a wrong size count or an empty class.
    ReducedHypergraph(std::size_t m, std::vector<std::size_t> sizes);
    static ReducedHypergraph uniform(std::size_t m, std::size_t class_size);

    std::size_t indices() const { return m_; }
    std::size_t pair_count() const { return sizes_.size(); }
    std::size_t triple_count() const { return constituents_.size(); }

    /// Lexicographic rank of the pair {i, j}, any argument order.
    std::size_t pair_slot(Index i, Index j) const;
    std::size_t class_size(Index i, Index j) const { return sizes_[pair_slot(i, j)]; }
    const std::vector<std::size_t>& class_sizes() const { return sizes_; }

    /// Constituent of i < j < k.
    Constituent& constituent(Index i, Index j, Index k) { return constituents_[triple_slot(i, j, k)]; }
    const Constituent& constituent(Index i, Index j, Index k) const
    {
        return constituents_[triple_slot(i, j, k)];
    }

    /// Membership for indices in any order; locals[0..2] lie in the classes
    /// of (idx0 idx1), (idx0 idx2), (idx1 idx2).
    bool has_edge(const IndexTriple& idx, const LocalTriple& locals) const;

    /// All index triples i < j < k in lexicographic order.
    std::vector<IndexTriple> triples() const;

    friend bool operator==(const ReducedHypergraph&, const ReducedHypergraph&) = default;

private:
    std::size_t triple_slot(Index i, Index j, Index k) const;

    std::size_t m_ = 0;
    std::vector<std::size_t> sizes_;
    std::vector<Constituent> constituents_;
};

// ---------------------------------------------------------------------------
// Density checks

/// A least-dense spot. For vvv `role` is -1 and the ratio is e/(product of
/// class sizes). For ev, `vertices[0]` sits in role `role`. For ee, `role`
/// is the open role and `vertices` hold the other two roles in increasing order.
struct DenseWitness {
    IndexTriple triple{};
    int role = -1;
    std::array<Local, 2> vertices{};
    std::size_t count = 0;
    std::size_t out_of = 1;

    Rational ratio() const { return Rational(static_cast<long long>(count), static_cast<long long>(out_of)); }
    friend bool operator==(const DenseWitness&, const DenseWitness&) = default;
};

struct DenseCheck {
    bool dense = true;
    /// Minimum-ratio witness (first in triple/role/vertex order on ties); absent only without triples.
    std::optional<DenseWitness> worst;
};

/// Exact (d, star)-density of the reduced hypergraph.
DenseCheck check_dense(const ReducedHypergraph& a, Notion notion, const Rational& d, Exec exec = Exec::parallel);

/// One exceptional set: for ev the vertices of class `role` of `triple`
/// whose degree is below threshold; for ee the pairs over the two roles
/// other than `role` whose completion count is below threshold.
struct ExceptionalEntry {
    IndexTriple triple{};
    int role = 0;
    std::vector<Local> vertices;
    std::vector<std::array<Local, 2>> pairs;
    std::size_t size() const { return vertices.size() + pairs.size(); }
    /// |class| (ev) or |class| * |class| (ee) that eta is measured against.
    std::size_t base = 0;
    bool within = true;
};

struct ExceptionalSets {
    Notion kind = Notion::ev;
    std::vector<ExceptionalEntry> entries; ///< nonempty sets only, triple-major
};

struct EtaDenseCheck {
    bool dense = true;
    ExceptionalSets sets;
};

/// (d, eta, ev)- or (d, eta, ee)-density with all exceptional sets. Throws
/// std::invalid_argument for notion vvv.
EtaDenseCheck check_eta_dense(const ReducedHypergraph& a, Notion notion, const Rational& d, const Rational& eta,
                              Exec exec = Exec::parallel);

/// Removes every vertex of P^ij lying in some exceptional set X^ij_k
/// (degrees measured in the original constituents) and restricts the
/// constituents. kept[slot] lists the surviving original locals in order.
struct PurgeResult {
    ReducedHypergraph reduced;
    std::vector<std::vector<Local>> kept;
};

struct EmptyClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Throws EmptyClassError if some class loses every vertex.
PurgeResult purge_ev(const ReducedHypergraph& a, const Rational& d);

// ---------------------------------------------------------------------------
// Projection

/// psi[slot][q] is the vertex of A's class `slot` that q in B's class maps to.
using Projection = std::vector<std::vector<Local>>;

/// Reduced hypergraph B with classes of sizes psi[slot].size() and
/// constituents pulled back along psi. Throws std::invalid_argument on a
/// malformed psi.
ReducedHypergraph project(const ReducedHypergraph& a, const Projection& psi);

struct ProjectionResult {
    ReducedHypergraph reduced;
    Projection psi;
};

/// Each psi^ij: [ell] -> P^ij uniformly at random; class `slot` draws from
/// Rng(seed).split(slot).
ProjectionResult project_random(const ReducedHypergraph& a, std::size_t ell, std::uint64_t seed);

/// m^3 ell^2 (eta + exp(-eps^2 ell / 2)): bound on the probability that the
/// projection of a (d + eps, eta, ee)-dense A fails to be (d + eps/2, ee)-dense.
double projection_failure_bound(std::size_t m, std::size_t ell, double eta, double eps);

// ---------------------------------------------------------------------------
// Reduced maps

/// lambda: V(F) -> I and phi on the shadow of F (sorted by pair).
struct ReducedMap {
    std::vector<Index> lambda;
    std::vector<std::pair<Pair, Local>> phi;
    friend bool operator==(const ReducedMap&, const ReducedMap&) = default;
};

/// Checks the reduced-map conditions literally: lambda and phi total,
/// lambda(u) != lambda(v) and phi(uv) inside P^{lambda(u) lambda(v)} for
/// shadow pairs, every edge sent to a constituent edge. On failure `why`
/// (if given) receives a description.
bool check_reduced_map(const Hypergraph3& f, const ReducedHypergraph& a, const ReducedMap& map,
                       std::string* why = nullptr);

/// (lambda, psi o phi): a map into project(a, psi) becomes a map into a.
ReducedMap compose(const ReducedMap& map, const ReducedHypergraph& a, const Projection& psi);

struct ReducedMapOptions {
    std::uint64_t node_budget = 100'000'000;
    bool injective = false;
    Exec exec = Exec::parallel;
};

struct ReducedMapResult {
    Verdict verdict = Verdict::inconclusive;
    std::optional<ReducedMap> map;
    std::uint64_t nodes = 0;
};

/// Backtracking over V(F) in descending-degree order; after each index
/// choice the newly determined shadow pairs are coloured with forward
/// checking against the constituents. Top-level index choices run as
/// parallel branches folded in order, so the returned map is the one a
/// sequential search finds first.
ReducedMapResult find_reduced_map(const Hypergraph3& f, const ReducedHypergraph& a,
                                  const ReducedMapOptions& options = {});

// ---------------------------------------------------------------------------
// Greedy tetrahedron

struct PrecheckError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TetraPlan {
    std::size_t x_size = 0;     ///< ceil(1/eps) + 1
    std::size_t y_required = 0; ///< ceil(2 eps^-C(x_size, 2))
    std::size_t indices_required = 0;
};

/// Throws std::invalid_argument unless 0 < eps <= 1.
TetraPlan tetrahedron_plan(const Rational& eps);

struct TetraResult {
    ReducedMap map;                 ///< for clique(4): vertices 0..3 go to x, x', y, y'
    std::array<Index, 4> indices{}; ///< x, x', y, y'
    TetraPlan plan;
};

/// Greedy reduced image of K4: P^xy = local 0 on X x Y, then one vertex per
/// pair of X keeping the most of Y alive, then P^yy' for the two least
/// survivors. Throws PrecheckError when |I| is below the plan or A is not
/// (eps, ee)-dense; std::logic_error if a pigeonhole step fails anyway.
TetraResult tetrahedron_greedy(const ReducedHypergraph& a, const Rational& eps);

// ---------------------------------------------------------------------------
// Builders

/// m indices, each class a copy of the colours, each constituent the
/// palette (coordinates ij, ik, jk for i < j < k). Throws
/// std::invalid_argument for m < 3 or a weighted palette.
ReducedHypergraph from_palette(const Palette& p, std::size_t m);

/// Classes of size `class_size`, every constituent edge present
/// independently with probability p; triple `t` draws from Rng(seed).split(t).
ReducedHypergraph random_reduced(std::size_t m, std::size_t class_size, const Rational& p, std::uint64_t seed);

/// Adds constituent edges until every completion count reaches d times the
/// open class size, so the result is (d, ee)-dense.
void repair_ee_dense(ReducedHypergraph& a, const Rational& d, std::uint64_t seed);

/// Triples whose constituent loses more than xi * (product of class sizes)
/// edges from a to b. Throws std::invalid_argument if the classes differ.
std::vector<IndexTriple> useless_triples(const ReducedHypergraph& a, const ReducedHypergraph& b, const Rational& xi);

} // namespace turan
