#include "oracles.hpp"

#include "turan/construct.hpp"
#include "turan/rng.hpp"

#include <gtest/gtest.h>

using namespace turan;

namespace {

// Orientation bits drawn exactly like random_pair_coloring draws two uniform colours.
std::vector<std::vector<int>> coin_flips(std::size_t n, std::uint64_t seed)
{
    std::vector<std::vector<int>> o(n, std::vector<int>(n, 0));
    Rng r(seed);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            o[x][y] = static_cast<int>(r.uniform(2));
    return o;
}

Hypergraph3 tournament_oracle(std::size_t n, std::uint64_t seed)
{
    const auto o = coin_flips(n, seed);
    std::vector<Triple> t;
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            for (Vertex z = y + 1; z < n; ++z)
                // cyclic: x->y->z->x or the reverse
                if (o[x][y] == o[y][z] && o[x][z] != o[x][y])
                    t.push_back({x, y, z});
    return Hypergraph3::make(n, t);
}

Hypergraph3 roedl_oracle(std::size_t n, std::uint64_t seed)
{
    const auto o = coin_flips(n, seed);
    std::vector<Triple> t;
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            for (Vertex z = y + 1; z < n; ++z)
                if (o[x][y] != o[x][z])
                    t.push_back({x, y, z});
    return Hypergraph3::make(n, t);
}

bool has_four_subset(const Hypergraph3& h, bool need_all_four)
{
    const auto n = static_cast<Vertex>(h.order());
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                for (Vertex d = c + 1; d < n; ++d) {
                    const int e = h.has_edge(a, b, c) + h.has_edge(a, b, d) + h.has_edge(a, c, d) + h.has_edge(b, c, d);
                    if (e >= (need_all_four ? 4 : 3))
                        return true;
                }
    return false;
}

double edge_density(const Hypergraph3& h)
{
    const double n = static_cast<double>(h.order());
    return static_cast<double>(h.size()) / (n * (n - 1) * (n - 2) / 6);
}

} // namespace

TEST(PairColoring, SetRejectsLoopsAndForeignColours)
{
    PairColoring phi(3, 2);
    EXPECT_THROW(phi.set(1, 1, 0), std::invalid_argument);
    EXPECT_THROW(phi.set(0, 1, 2), std::invalid_argument);
    phi.set(0, 2, 1);
    EXPECT_EQ(phi.color(2, 0), 1);
}

TEST(PairColoring, SingleVertexIsEmpty)
{
    const auto phi = random_pair_coloring(1, WeightedColorSet::uniform({"r", "g"}), 0);
    EXPECT_EQ(phi.order(), 1U);
}

TEST(PairColoring, ColourFrequencies)
{
    const std::size_t n = 1000;
    const double pairs = n * (n - 1) / 2.0;
    for (std::uint64_t seed : {0ULL, 1ULL}) {
        const auto u = random_pair_coloring(n, WeightedColorSet::uniform({"r", "g"}), seed);
        const auto w = random_pair_coloring(
            n, WeightedColorSet::weighted({"r", "g"}, {Rational(2, 3), Rational(1, 3)}), seed);
        double ru = 0, rw = 0;
        for (Vertex x = 0; x < n; ++x)
            for (Vertex y = x + 1; y < n; ++y) {
                ru += u.color(x, y) == 0;
                rw += w.color(x, y) == 0;
            }
        EXPECT_NEAR(ru / pairs, 0.5, 0.01);
        EXPECT_NEAR(rw / pairs, 2.0 / 3.0, 0.01);
    }
}

TEST(BuildH, ExtremePalettes)
{
    const auto base = WeightedColorSet::uniform({"r", "g"});
    std::vector<Pattern> all;
    for (Color a = 0; a < 2; ++a)
        for (Color b = 0; b < 2; ++b)
            for (Color c = 0; c < 2; ++c)
                all.push_back({a, b, c});
    const auto phi = random_pair_coloring(9, base, 3);
    EXPECT_EQ(build_H(phi, Palette(base, all)), clique(9));
    EXPECT_EQ(build_H(phi, Palette(base, {})).size(), 0U);

    const PairColoring red(5, 2);
    const std::vector<Pattern> gen{{0, 0, 1}};
    EXPECT_EQ(build_H(red, symmetric_closure(gen, base)).size(), 0U);
}

TEST(BuildH, SerialMatchesParallelAndOrderPreservingRelabel)
{
    const auto p = builtin("star4").palette;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto phi = random_pair_coloring(30, p.base(), seed);
        const auto h = build_H(phi, p, Exec::serial);
        EXPECT_EQ(h, build_H(phi, p, Exec::parallel));
        EXPECT_EQ(h, build_H(phi, p, Exec::serial));
        // embed the colouring into 0..59 on the even vertices; edges follow
        PairColoring wide(60, p.colors());
        for (Vertex x = 0; x < 30; ++x)
            for (Vertex y = x + 1; y < 30; ++y)
                wide.set(2 * x, 2 * y, phi.color(x, y));
        const auto hw = build_H(wide, p);
        for (const auto& e : h.edges())
            EXPECT_TRUE(hw.has_edge(2 * e[0], 2 * e[1], 2 * e[2]));
        std::size_t even = 0;
        for (const auto& e : hw.edges())
            even += e[0] % 2 == 0 && e[1] % 2 == 0 && e[2] % 2 == 0;
        EXPECT_EQ(even, h.size());
    }
}

TEST(Tournament, ThreeVertices)
{
    const auto p = builtin("tournament").palette;
    PairColoring cyc(3, 2), trans(3, 2);
    // 0 -> 1, 1 -> 2, 2 -> 0
    cyc.set(0, 1, 0);
    cyc.set(1, 2, 0);
    cyc.set(0, 2, 1);
    trans.set(0, 1, 0);
    trans.set(1, 2, 0);
    trans.set(0, 2, 0);
    EXPECT_EQ(build_H(cyc, p).size(), 1U);
    EXPECT_EQ(build_H(trans, p).size(), 0U);
}

TEST(Tournament, MatchesDirectOracle)
{
    for (std::size_t n : {3, 10, 50, 100})
        for (std::uint64_t seed = 0; seed < 20; ++seed)
            EXPECT_EQ(tournament_hypergraph(n, seed), tournament_oracle(n, seed)) << n << " " << seed;
}

TEST(Roedl, ThreeVerticesAndOracle)
{
    const auto p = builtin("roedl").palette;
    PairColoring phi(3, 2);
    phi.set(0, 1, 0);
    phi.set(0, 2, 1);
    EXPECT_EQ(build_H(phi, p).size(), 1U);
    phi.set(0, 2, 0);
    EXPECT_EQ(build_H(phi, p).size(), 0U);
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        EXPECT_EQ(roedl_hypergraph(40, seed), roedl_oracle(40, seed));
}

TEST(Construct, FreenessAndDensityAtFifty)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto t = tournament_hypergraph(50, seed);
        const auto r = roedl_hypergraph(50, seed);
        EXPECT_FALSE(has_four_subset(t, false)) << seed;
        EXPECT_FALSE(has_four_subset(r, true)) << seed;
        EXPECT_NEAR(edge_density(t), 0.25, 0.05);
        EXPECT_NEAR(edge_density(r), 0.5, 0.05);
    }
}

TEST(Construct, SoundnessOfPaletteCriterion)
{
    // build_H contains F only if F is representable in the palette
    Rng r(99);
    for (int i = 0; i < 30; ++i) {
        std::vector<Pattern> pats;
        for (Color a = 0; a < 2; ++a)
            for (Color b = 0; b < 2; ++b)
                for (Color c = 0; c < 2; ++c)
                    if (r.bernoulli(1, 2))
                        pats.push_back({a, b, c});
        const Palette p(WeightedColorSet::uniform({"a", "b"}), pats);
        for (std::size_t n = 4; n <= 7; ++n) {
            const auto h = build_H(random_pair_coloring(n, p.base(), r.next()), p);
            for (const auto& f : {clique(4), clique_minus4()})
                if (oracle::contains(h, f))
                    EXPECT_EQ(representable(f, p).verdict, Verdict::certificate);
        }
    }
}

TEST(Lift, ExtremeConstituents)
{
    auto full = ReducedHypergraph::uniform(4, 2);
    for (const auto& t : full.triples())
        full.constituent(t[0], t[1], t[2]).fill();
    const auto lift = lift_reduced(full, 3, 5);
    std::size_t crossing = 0;
    for (Vertex x = 0; x < 12; ++x)
        for (Vertex y = x + 1; y < 12; ++y)
            for (Vertex z = y + 1; z < 12; ++z)
                crossing += x / 3 != y / 3 && y / 3 != z / 3 && x / 3 != z / 3;
    EXPECT_EQ(lift.h.size(), crossing);
    EXPECT_EQ(lift_reduced(ReducedHypergraph::uniform(4, 2), 3, 5).h.size(), 0U);
}

TEST(Lift, ReplayEveryEdge)
{
    const auto a = random_reduced(5, 3, Rational(1, 2), 17);
    const auto lift = lift_reduced(a, 6, 4);
    const auto& phi = lift.coloring;
    std::size_t expected = 0;
    for (Vertex x = 0; x < 30; ++x)
        for (Vertex y = x + 1; y < 30; ++y)
            for (Vertex z = y + 1; z < 30; ++z) {
                const Index i = phi.part_of(x), j = phi.part_of(y), k = phi.part_of(z);
                const bool crossing = i != j && j != k;
                const bool edge = crossing && a.has_edge({i, j, k}, {phi.local(x, y), phi.local(x, z), phi.local(y, z)});
                expected += edge;
                EXPECT_EQ(lift.h.has_edge(x, y, z), edge);
            }
    EXPECT_EQ(lift.h.size(), expected);
}

TEST(Lift, TournamentReducedIsK4MinusFree)
{
    const auto a = from_palette(builtin("tournament").palette, 6);
    const auto lift = lift_reduced(a, 20, 1);
    EXPECT_GT(lift.h.size(), 0U);
    EXPECT_FALSE(find_embedding(clique_minus4(), lift.h));
}

TEST(Lift, RejectsMismatchedColouring)
{
    const auto a = ReducedHypergraph::uniform(3, 2);
    EXPECT_THROW(lift_reduced(a, PartitionedColoring(4, 2)), std::invalid_argument);
    PartitionedColoring phi(3, 2);
    phi.set(0, 2, 5);
    EXPECT_THROW(lift_reduced(a, phi), std::invalid_argument);
    EXPECT_THROW(phi.set(0, 1, 0), std::invalid_argument);
}
