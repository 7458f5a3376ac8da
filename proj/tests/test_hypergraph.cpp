#include "oracles.hpp"

#include "turan/construct.hpp"
#include "turan/hypergraph.hpp"
#include "turan/rng.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace turan;

namespace {

Hypergraph3 random_hypergraph(std::size_t n, std::uint64_t num, std::uint64_t den, std::uint64_t seed)
{
    Rng r(seed);
    std::vector<Triple> t;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                if (r.bernoulli(num, den))
                    t.push_back({a, b, c});
    return Hypergraph3::make(n, t);
}

} // namespace

TEST(Hypergraph, CanonicalStorage)
{
    const auto h = Hypergraph3::make(4, {{2, 1, 0}, {0, 1, 2}, {3, 0, 1}});
    ASSERT_EQ(h.size(), 2U);
    EXPECT_EQ(h.edges()[0], (Triple{0, 1, 2}));
    EXPECT_EQ(h.edges()[1], (Triple{0, 1, 3}));
    EXPECT_TRUE(h.has_edge(2, 0, 1));
    EXPECT_TRUE(h.has_edge(3, 1, 0));
    EXPECT_FALSE(h.has_edge(0, 2, 3));
    EXPECT_FALSE(h.has_edge(0, 0, 1));
}

TEST(Hypergraph, RejectsBadTriples)
{
    EXPECT_THROW(Hypergraph3::make(3, {{0, 1, 3}}), std::invalid_argument);
    EXPECT_THROW(Hypergraph3::make(3, {{0, 1, 1}}), std::invalid_argument);
}

TEST(Hypergraph, EmptyHasEmptyShadow)
{
    const auto h = Hypergraph3::make(3, {});
    EXPECT_EQ(h.size(), 0U);
    EXPECT_TRUE(h.shadow().empty());
}

TEST(Hypergraph, ShadowOfNamedFamilies)
{
    EXPECT_EQ(clique_minus4().shadow().size(), 6U);
    EXPECT_EQ(Hypergraph3::make(3, {{0, 1, 2}}).shadow(), (std::vector<Pair>{{0, 1}, {0, 2}, {1, 2}}));
    EXPECT_EQ(cycle5().shadow().size(), 10U);
    for (const char* name : {"k4", "k4minus", "c5", "s4", "fano", "k7"}) {
        const auto f = named(name);
        EXPECT_EQ(f.shadow(), oracle::shadow(f)) << name;
        EXPECT_LE(f.shadow().size(), 3 * f.size());
    }
}

TEST(Hypergraph, NamedFamilies)
{
    const auto k4 = clique(4);
    EXPECT_EQ(k4.order(), 4U);
    EXPECT_EQ(k4.size(), 4U);
    EXPECT_EQ(clique(7).size(), 35U);
    EXPECT_EQ(clique_minus4().size(), 3U);
    EXPECT_EQ(star(3), clique_minus4());
    EXPECT_EQ(star(4).size(), 6U);
    EXPECT_EQ(named("k4minus"), clique_minus4());
    EXPECT_EQ(named("clique:5"), clique(5));
    EXPECT_EQ(named("star:4"), star(4));
    EXPECT_THROW(named("dodecahedron"), std::invalid_argument);
    EXPECT_THROW(named("k2"), std::invalid_argument);
}

TEST(Hypergraph, FanoCoversEveryPairOnce)
{
    const auto f = fano();
    ASSERT_EQ(f.order(), 7U);
    ASSERT_EQ(f.size(), 7U);
    std::map<Pair, int> cover;
    for (const auto& e : f.edges()) {
        ++cover[{e[0], e[1]}];
        ++cover[{e[0], e[2]}];
        ++cover[{e[1], e[2]}];
    }
    EXPECT_EQ(cover.size(), 21U);
    for (const auto& [pair, c] : cover)
        EXPECT_EQ(c, 1);
}

TEST(Hypergraph, ConeOverTriangle)
{
    const std::vector<Pair> triangle{{0, 1}, {0, 2}, {1, 2}};
    const auto c = cone(3, triangle);
    EXPECT_EQ(c, clique_minus4());
}

TEST(Embedding, Basic)
{
    const auto edge = Hypergraph3::make(3, {{0, 1, 2}});
    const auto h = Hypergraph3::make(5, {{1, 3, 4}});
    const auto e = find_embedding(edge, h);
    ASSERT_TRUE(e);
    EXPECT_TRUE(is_embedding(edge, h, e->map));
    EXPECT_FALSE(find_embedding(clique(4), clique_minus4()));
}

TEST(Embedding, SelfEmbeddingAlwaysExists)
{
    for (const char* name : {"k4", "k4minus", "c5", "s4", "fano"}) {
        const auto f = named(name);
        const auto e = find_embedding(f, f);
        ASSERT_TRUE(e) << name;
        EXPECT_TRUE(is_embedding(f, f, e->map));
    }
}

TEST(Embedding, AgreesWithBruteForce)
{
    const std::vector<Hypergraph3> patterns{clique(4), clique_minus4(), cycle5(),
                                            Hypergraph3::make(4, {{0, 1, 2}, {1, 2, 3}})};
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto h = random_hypergraph(7, 2 + seed % 3, 6, seed);
        for (const auto& f : patterns) {
            const auto serial = find_embedding(f, h, Exec::serial);
            const auto parallel = find_embedding(f, h, Exec::parallel);
            EXPECT_EQ(bool(serial), oracle::contains(h, f)) << "seed " << seed;
            ASSERT_EQ(bool(serial), bool(parallel));
            if (serial) {
                EXPECT_TRUE(is_embedding(f, h, serial->map));
                EXPECT_EQ(serial->map, parallel->map);
            }
        }
    }
}

TEST(Embedding, MonotoneUnderAddingEdges)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto h = random_hypergraph(7, 1, 4, seed);
        auto edges = h.edges();
        Rng r(seed + 1000);
        for (Vertex a = 0; a < 7; ++a)
            for (Vertex b = a + 1; b < 7; ++b)
                for (Vertex c = b + 1; c < 7; ++c)
                    if (r.bernoulli(1, 5))
                        edges.push_back({a, b, c});
        const auto bigger = Hypergraph3::make(7, edges);
        for (const auto& f : {clique(4), clique_minus4()})
            if (find_embedding(f, h))
                EXPECT_TRUE(find_embedding(f, bigger));
    }
}

TEST(Embedding, TournamentsAvoidK4Minus)
{
    for (std::size_t n : {5, 10, 20, 30})
        for (std::uint64_t seed = 0; seed < 5; ++seed)
            EXPECT_FALSE(find_embedding(clique_minus4(), tournament_hypergraph(n, seed))) << n << " " << seed;
}

TEST(Automorphisms, MatchBruteCount)
{
    for (const char* name : {"k4", "k4minus", "c5", "s4", "fano"}) {
        const auto f = named(name);
        EXPECT_EQ(automorphisms(f).size(), oracle::automorphism_count(f)) << name;
    }
    EXPECT_EQ(automorphisms(fano()).size(), 168U);
    EXPECT_EQ(automorphisms(cycle5()).size(), 10U);
}

TEST(Embedding, OrderIsDescendingDegree)
{
    const auto order = embedding_order(clique_minus4());
    EXPECT_EQ(order.front(), 0U);
}
