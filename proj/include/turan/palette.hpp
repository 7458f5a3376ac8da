#pragma once

#include "turan/hypergraph.hpp"
#include "turan/notion.hpp"
#include "turan/rational.hpp"
#include "turan/search.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace turan {

using Color = std::uint16_t;
/// Ordered colour triple; coordinate order is (smallest pair, outer pair, largest pair).
using Pattern = std::array<Color, 3>;

/// A finite colour set with rational weights summing to exactly one.
class WeightedColorSet {
public:
    WeightedColorSet() = default;

    /// Every colour weighted 1/|colours|.
    static WeightedColorSet uniform(std::vector<std::string> names);
    /// Throws std::invalid_argument unless all weights lie in [0, 1] and sum to 1.
    static WeightedColorSet weighted(std::vector<std::string> names, std::vector<Rational> weights);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Rational>& weights() const { return weights_; }
    const std::string& name(Color c) const { return names_[c]; }
    const Rational& weight(Color c) const { return weights_[c]; }
    bool is_uniform() const;
    std::optional<Color> find(std::string_view name) const;

    friend bool operator==(const WeightedColorSet&, const WeightedColorSet&) = default;

private:
    std::vector<std::string> names_;
    std::vector<Rational> weights_;
};

/// A set of colour patterns over a weighted colour set.
class Palette {
public:
    Palette() = default;
    /// Sorts and deduplicates; throws std::invalid_argument for colours outside the base.
    Palette(WeightedColorSet base, std::vector<Pattern> patterns);

    const WeightedColorSet& base() const { return base_; }
    const std::vector<Pattern>& patterns() const { return patterns_; }
    std::size_t size() const { return patterns_.size(); }
    std::size_t colors() const { return base_.size(); }

    bool contains(Color a, Color b, Color c) const
    {
        const std::size_t k = base_.size();
        return table_[(static_cast<std::size_t>(a) * k + b) * k + c] != 0;
    }
    bool contains(const Pattern& p) const { return contains(p[0], p[1], p[2]); }

    /// Closed under all six coordinate permutations.
    bool symmetric() const { return symmetric_; }

    friend bool operator==(const Palette& a, const Palette& b)
    {
        return a.base_ == b.base_ && a.patterns_ == b.patterns_;
    }

private:
    WeightedColorSet base_;
    std::vector<Pattern> patterns_;
    std::vector<std::uint8_t> table_;
    bool symmetric_ = true;
};

/// Weighted mass of the palette: sum of w(a)w(b)w(c) over its patterns.
Rational density_vvv(const Palette& p);
/// Minimum over the three coordinates and every colour fixed there of the
/// weighted mass of completing pairs.
Rational density_ev(const Palette& p);
/// Minimum over the three coordinate pairs and every colour pair fixed there
/// of the weighted mass of completing colours.
Rational density_ee(const Palette& p);
Rational density(const Palette& p, Notion notion);

/// Least symmetric palette containing the generators. Throws
/// std::invalid_argument if a generator uses a colour outside the base.
Palette symmetric_closure(std::span<const Pattern> generators, const WeightedColorSet& base);

/// An ordering of V(F) (ordering[i] is the i-th vertex) and a colouring of
/// the shadow under which every edge reads off a palette pattern.
struct RepresentabilityCertificate {
    std::vector<Vertex> ordering;
    std::vector<std::pair<Pair, Color>> coloring; ///< sorted by pair
};

/// Re-evaluates the certificate edge by edge, independent of the search.
bool check_certificate(const Hypergraph3& f, const Palette& p, const RepresentabilityCertificate& cert);

struct SearchOptions {
    std::uint64_t node_budget = 100'000'000;
    Exec exec = Exec::parallel;
};

struct RepresentabilityResult {
    Verdict verdict = Verdict::inconclusive;
    std::optional<RepresentabilityCertificate> certificate;
    /// Number of (ordering, colouring) assignments the verdict covers:
    /// |colours|^|shadow|, times |V(F)|! when orderings are enumerated.
    BigInt space;
    std::uint64_t nodes = 0;
    std::uint64_t orderings_explored = 0;
};

/// Decides whether some H^P_phi contains F, i.e. whether F admits an
/// ordering and shadow colouring reading palette patterns on every edge.
///
/// Symmetric palettes skip the ordering loop. Otherwise orderings are
/// enumerated one per orbit of Aut(F) when |V(F)| <= 8 (all orderings
/// beyond that), each solved by a forward-checking colouring search.
/// Certificates are re-validated before being returned.
RepresentabilityResult representable(const Hypergraph3& f, const Palette& p,
                                     const std::optional<std::vector<Vertex>>& fixed_ordering = std::nullopt,
                                     const SearchOptions& options = {});

/// Ordering plus red/blue/green shadow colouring in which every edge
/// v_i v_j v_k (i < j < k) reads (red, blue, green).
RepresentabilityResult zero_density_certificate(const Hypergraph3& f, const SearchOptions& options = {});

struct PaletteClaim {
    Notion notion;
    Rational density;
    std::string statement;
};

struct BuiltinPalette {
    std::string name;
    Palette palette;
    PaletteClaim claim;
};

/// Catalogue: rainbow, tournament, star4, roedl (= roedl:2), roedl:<r>,
/// ramsey6, cycle5, ee5, ee6, ee11. Throws std::invalid_argument for
/// unknown names or r < 2.
BuiltinPalette builtin(std::string_view name);
std::vector<std::string> builtin_names();

/// DIMACS encoding of representability under one fixed ordering. Variable
/// x_{p,c} (1-based, pair-major) means "shadow pair p gets colour c".
struct CnfEncoding {
    std::vector<Vertex> ordering;
    std::vector<std::pair<Pair, Color>> variables; ///< variables[v-1] is the meaning of v
    std::vector<std::vector<int>> clauses;
};

CnfEncoding encode_cnf(const Hypergraph3& f, const Palette& p,
                       const std::optional<std::vector<Vertex>>& ordering = std::nullopt);
void write_dimacs(std::ostream& out, const CnfEncoding& cnf);

} // namespace turan
