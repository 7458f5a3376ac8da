#pragma once

#include "turan/bitset.hpp"
#include "turan/hypergraph.hpp"
#include "turan/notion.hpp"
#include "turan/parallel.hpp"
#include "turan/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace turan {

/// A set of ordered pairs over 0..n-1; loops (x, x) allowed.
class PairSet {
public:
    PairSet() = default;
    explicit PairSet(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {}

    static PairSet product(const Bitset& a, const Bitset& b);
    static PairSet all(std::size_t n);

    std::size_t order() const { return n_; }
    bool has(Vertex x, Vertex y) const { return test_bit(row(x), y); }
    void add(Vertex x, Vertex y) { bits_[x * words_ + (y >> 6)] |= Word(1) << (y & 63); }
    void remove(Vertex x, Vertex y) { bits_[x * words_ + (y >> 6)] &= ~(Word(1) << (y & 63)); }
    std::size_t size() const { return popcount(bits_); }
    /// Second coordinates y with (x, y) in the set.
    std::span<const Word> row(Vertex x) const { return {bits_.data() + static_cast<std::size_t>(x) * words_, words_}; }
    std::vector<Pair> pairs() const;

    friend bool operator==(const PairSet&, const PairSet&) = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<Word> bits_;
};

/// |{(a, b, c) in A x B x C : abc in E}|.
std::uint64_t count_vvv(const Hypergraph3& h, const Bitset& a, const Bitset& b, const Bitset& c);
/// |{(a, b, c) : a in A, (b, c) in P, abc in E}|.
std::uint64_t count_ev(const Hypergraph3& h, const Bitset& a, const PairSet& p);

struct EeCount {
    std::uint64_t kpq = 0; ///< |{(a, b, c) : (a, b) in P, (b, c) in Q}|
    std::uint64_t epq = 0; ///< those with abc in E
};
EeCount count_ee(const Hypergraph3& h, const PairSet& p, const PairSet& q);

/// Edges inside U.
std::uint64_t count_inside(const Hypergraph3& h, const Bitset& u);

// Slack of one witness: count - d * size + eta * n^3 (uniform: e(U) - d C(|U|,3) + eta n^3).
Rational slack_uniform(const Hypergraph3& h, const Bitset& u, const Rational& d, const Rational& eta);
Rational slack_vvv(const Hypergraph3& h, const Bitset& a, const Bitset& b, const Bitset& c, const Rational& d,
                   const Rational& eta);
Rational slack_ev(const Hypergraph3& h, const Bitset& a, const PairSet& p, const Rational& d, const Rational& eta);
Rational slack_ee(const Hypergraph3& h, const PairSet& p, const PairSet& q, const Rational& d, const Rational& eta);

/// exact: the minimum over the whole witness space. certified: the verdict
/// covers the whole space but min_slack is only a proven lower bound when
/// passing (a violated witness's slack when failing). sampled: heuristic.
enum class AuditMode { exact, certified, sampled };
constexpr std::string_view name(AuditMode m)
{
    switch (m) {
    case AuditMode::exact:
        return "exact";
    case AuditMode::certified:
        return "certified";
    case AuditMode::sampled:
        return "sampled";
    }
    return "?";
}

/// Minimising witness: uniform {U}; vvv {A, B, C}; ev {A} and {P}; ee {} and {P, Q}.
struct DensityWitness {
    std::vector<Bitset> sets;
    std::vector<PairSet> pair_sets;
    friend bool operator==(const DensityWitness&, const DensityWitness&) = default;
};

struct DensityReport {
    std::string notion; ///< "uniform", "vvv", "ev" or "ee"
    AuditMode mode = AuditMode::exact;
    Rational d;
    Rational eta;
    Rational min_slack;
    DensityWitness worst;
    /// Exact: size of the enumerated witness space. Sampled: number of sampled witnesses.
    BigInt space;
    std::uint64_t samples = 0;
    std::uint64_t descent_steps = 0;
    /// certified mode: outer sets minimised exactly because their bound did not clear zero.
    std::uint64_t refined = 0;
    /// certified mode: exact slack of the reported witness.
    std::optional<Rational> witness_slack;
    std::uint64_t seed = 0;
    std::string rng;

    bool passed() const { return min_slack >= 0; }
};

struct AuditOptions {
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 0;
    /// Largest n audited exactly; defaults per notion (uniform 22, vvv 10, ev 16, ee 16).
    std::optional<std::size_t> exact_threshold;
    Exec exec = Exec::parallel;
};

std::size_t default_exact_threshold(std::optional<Notion> notion);

/// Minimum over U of e(U) - d C(|U|, 3) + eta n^3. Exact by Gray-code
/// enumeration up to the threshold; otherwise sampled U plus steepest
/// single-vertex descent from the worst sample.
DensityReport audit_uniform_dense(const Hypergraph3& h, const Rational& d, const Rational& eta,
                                  const AuditOptions& options = {});

/// Minimum slack for (d, eta, notion)-density.
///
/// Each notion is minimised exactly over its inner variable: C for vvv
/// (given A, B), P for ev (given A), and Q for ee, which splits over the
/// middle vertex b into independent choices of (P_b, Q_b). The outer sets
/// are enumerated up to the threshold and sampled with descent beyond it,
/// so "exact" always means the full witness space. vvv beyond 12 vertices
/// (up to 24) with an exact threshold covering n runs in certified mode.
DensityReport audit_star_dense(const Hypergraph3& h, Notion notion, const Rational& d, const Rational& eta,
                               const AuditOptions& options = {});

} // namespace turan
