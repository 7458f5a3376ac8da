#include "oracles.hpp"

#include "turan/construct.hpp"
#include "turan/quasirandom.hpp"
#include "turan/rng.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace turan;

namespace {

Rational R(const char* s) { return parse_rational(s); }

BipartiteGraph full(std::size_t x, std::size_t y)
{
    BipartiteGraph g(x, y);
    for (std::size_t a = 0; a < x; ++a)
        for (std::size_t b = 0; b < y; ++b)
            g.add(a, b);
    return g;
}

TripartiteGraph complete_tripartite(std::size_t x, std::size_t y, std::size_t z)
{
    TripartiteGraph p;
    p.xy = full(x, y);
    p.xz = full(x, z);
    p.yz = full(y, z);
    return p;
}

void label_consecutively(TripartiteGraph& p)
{
    Vertex next = 0;
    for (auto* side : {&p.x_label, &p.y_label, &p.z_label}) {
        const std::size_t size = side == &p.x_label ? p.x_size() : side == &p.y_label ? p.y_size() : p.z_size();
        side->clear();
        for (std::size_t i = 0; i < size; ++i)
            side->push_back(next++);
    }
}

QuasirandomOptions exact(Exec exec = Exec::parallel)
{
    QuasirandomOptions o;
    o.exact_threshold = 20;
    o.exec = exec;
    return o;
}

} // namespace

TEST(Bipartite, Basics)
{
    BipartiteGraph g(2, 3);
    g.add(1, 2);
    EXPECT_TRUE(g.has(1, 2));
    EXPECT_EQ(g.size(), 1U);
    EXPECT_EQ(g.density(), Rational(1, 6));
    EXPECT_THROW(g.add(2, 0), std::out_of_range);
    EXPECT_EQ(g.transpose().transpose(), g);
    EXPECT_TRUE(g.transpose().has(2, 1));
    EXPECT_EQ(g.complement().size(), 5U);
    EXPECT_EQ(BipartiteGraph(0, 4).density(), 0);
}

TEST(Quasirandom, TrivialCases)
{
    const auto c = audit_quasirandom(full(6, 7), 0, 1);
    EXPECT_EQ(c.mode, AuditMode::exact);
    EXPECT_TRUE(c.passed());
    EXPECT_EQ(c.max_deviation, 0);

    const auto e = audit_quasirandom(BipartiteGraph(8, 8), R("1/4"), R("1/2"));
    EXPECT_FALSE(e.passed());
    EXPECT_EQ(e.max_deviation, R("1/2"));
    EXPECT_EQ(e.worst_a.count(), 8U);
    EXPECT_EQ(e.worst_b.count(), 8U);
}

TEST(Quasirandom, ExactMatchesBruteForce)
{
    Rng r(4);
    for (int i = 0; i < 40; ++i) {
        const std::size_t x = 1 + r.uniform(6), y = 1 + r.uniform(6);
        const auto g = random_bipartite(x, y, Rational(1 + r.uniform(3), 4), r.next());
        const Rational d(static_cast<long long>(r.uniform(5)), 4);
        const auto serial = audit_quasirandom(g, R("1/10"), d, exact(Exec::serial));
        const auto parallel = audit_quasirandom(g, R("1/10"), d, exact(Exec::parallel));
        EXPECT_EQ(serial.max_deviation, oracle::max_deviation(g, d)) << i;
        EXPECT_EQ(serial.max_deviation, parallel.max_deviation);
        EXPECT_EQ(serial.worst_a, parallel.worst_a);
        EXPECT_EQ(serial.worst_b, parallel.worst_b);
    }
}

TEST(Quasirandom, TenByTenPassesQuickly)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = random_bipartite(10, 10, R("1/2"), seed);
        const auto start = std::chrono::steady_clock::now();
        const auto rep = audit_quasirandom(g, R("1/5"), R("1/2"));
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        EXPECT_EQ(rep.mode, AuditMode::exact);
        EXPECT_TRUE(rep.passed()) << seed << " " << to_string(rep.max_deviation);
        EXPECT_LT(took.count(), 2.0);
    }
}

TEST(Quasirandom, ComplementSymmetry)
{
    Rng r(9);
    for (int i = 0; i < 30; ++i) {
        const auto g = random_bipartite(1 + r.uniform(8), 1 + r.uniform(8), R("1/2"), r.next());
        const Rational d(static_cast<long long>(r.uniform(5)), 4), delta(1 + static_cast<long long>(r.uniform(4)), 16);
        const auto a = audit_quasirandom(g, delta, d);
        const auto b = audit_quasirandom(g.complement(), delta, 1 - d);
        EXPECT_EQ(a.passed(), b.passed());
        EXPECT_EQ(a.max_deviation, b.max_deviation);
    }
}

TEST(Quasirandom, SampledModeIsSeededAndBelowExact)
{
    const auto g = random_bipartite(14, 40, R("1/2"), 3);
    QuasirandomOptions o;
    o.exact_threshold = 4;
    o.samples = 3000;
    o.seed = 21;
    const auto s1 = audit_quasirandom(g, R("1/10"), R("1/2"), o);
    const auto s2 = audit_quasirandom(g, R("1/10"), R("1/2"), o);
    EXPECT_EQ(s1.mode, AuditMode::sampled);
    EXPECT_EQ(s1.rng, "splitmix64");
    EXPECT_EQ(s1.max_deviation, s2.max_deviation);
    EXPECT_EQ(s1.worst_a, s2.worst_a);
    const auto e = audit_quasirandom(g, R("1/10"), R("1/2"));
    EXPECT_EQ(e.mode, AuditMode::exact);
    EXPECT_LE(s1.max_deviation, e.max_deviation);
}

TEST(Triangles, Basics)
{
    EXPECT_EQ(triangle_count(complete_tripartite(3, 4, 5)), 60U);
    auto p = complete_tripartite(3, 4, 5);
    p.yz = BipartiteGraph(4, 5);
    EXPECT_EQ(triangle_count(p), 0U);
}

TEST(Triangles, MatchBruteForce)
{
    Rng r(200);
    for (int i = 0; i < 200; ++i) {
        const auto p =
            oracle::random_tripartite(1 + r.uniform(6), 1 + r.uniform(6), 1 + r.uniform(6), r, 1 + r.uniform(3), 4);
        EXPECT_EQ(triangle_count(p), oracle::triangles(p)) << i;
    }
}

TEST(CountingLemma, TrivialCases)
{
    const auto c = check_counting_lemma(complete_tripartite(4, 4, 4), 0, 1, 1, 1);
    EXPECT_EQ(c.deviation, 0);
    EXPECT_TRUE(c.within);
    EXPECT_TRUE(c.layers_pass);
    TripartiteGraph e;
    e.xy = BipartiteGraph(4, 4);
    e.xz = BipartiteGraph(4, 4);
    e.yz = BipartiteGraph(4, 4);
    EXPECT_EQ(check_counting_lemma(e, 0, 0, 0, 0).deviation, 0);
}

TEST(CountingLemma, SeededInstancesWithinThreeDelta)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng r(seed);
        const std::size_t n = 12 + seed % 9;
        const auto p = oracle::random_tripartite(n, n, n, r);
        const auto delta = audited_delta(p);
        const auto c = check_counting_lemma(p, delta, p.xy.density(), p.xz.density(), p.yz.density());
        EXPECT_TRUE(c.layers_pass) << seed;
        EXPECT_TRUE(c.within) << seed;
        EXPECT_LE(abs(c.deviation), 3 * delta);
        EXPECT_EQ(c.triangles, oracle::triangles(p));
    }
}

TEST(RelativeDensity, Conventions)
{
    auto p = complete_tripartite(2, 2, 2);
    label_consecutively(p);
    EXPECT_EQ(relative_density(clique(6), p), 1);
    EXPECT_EQ(relative_density(Hypergraph3::make(6, {}), p), 0);
    p.xy = BipartiteGraph(2, 2);
    EXPECT_EQ(relative_density(clique(6), p), 0);
    TripartiteGraph unlabelled = complete_tripartite(2, 2, 2);
    EXPECT_THROW(relative_density(clique(6), unlabelled), std::invalid_argument);
}

TEST(RelativeDensity, RangeAndMonotone)
{
    Rng r(33);
    for (int i = 0; i < 50; ++i) {
        auto p = oracle::random_tripartite(4, 4, 4, r, 3, 4);
        label_consecutively(p);
        std::vector<Triple> edges;
        for (Vertex a = 0; a < 12; ++a)
            for (Vertex b = a + 1; b < 12; ++b)
                for (Vertex c = b + 1; c < 12; ++c)
                    if (r.bernoulli(1, 2))
                        edges.push_back({a, b, c});
        const auto h = Hypergraph3::make(12, edges);
        const auto d = relative_density(h, p);
        EXPECT_GE(d, 0);
        EXPECT_LE(d, 1);
        for (Vertex a = 0; a < 12; ++a)
            for (Vertex b = a + 1; b < 12; ++b)
                for (Vertex c = b + 1; c < 12; ++c)
                    if (r.bernoulli(1, 4))
                        edges.push_back({a, b, c});
        EXPECT_GE(relative_density(Hypergraph3::make(12, edges), p), d);
    }
}

TEST(RelativeDensity, LiftReplay)
{
    // triad on blocks 0, 1, 2 of a lift: colour classes 0 of each pair of blocks
    const auto a = random_reduced(3, 2, R("1/2"), 8);
    const std::size_t h = 6;
    const auto lift = lift_reduced(a, h, 5);
    TripartiteGraph p;
    p.xy = color_class(lift.coloring, 0, 1, 0);
    p.xz = color_class(lift.coloring, 0, 2, 0);
    p.yz = color_class(lift.coloring, 1, 2, 0);
    for (Vertex v = 0; v < h; ++v) {
        p.x_label.push_back(v);
        p.y_label.push_back(static_cast<Vertex>(h) + v);
        p.z_label.push_back(static_cast<Vertex>(2 * h) + v);
    }
    std::uint64_t tri = 0, hits = 0;
    for (Vertex x = 0; x < h; ++x)
        for (Vertex y = 0; y < h; ++y)
            for (Vertex z = 0; z < h; ++z)
                if (p.xy.has(x, y) && p.xz.has(x, z) && p.yz.has(y, z)) {
                    ++tri;
                    hits += lift.h.has_edge(x, static_cast<Vertex>(h) + y, static_cast<Vertex>(2 * h) + z);
                }
    const Rational expect = tri ? Rational(static_cast<long long>(hits), static_cast<long long>(tri)) : Rational(0);
    EXPECT_EQ(relative_density(lift.h, p), expect);
    // every triangle of the triad reads colours (0, 0, 0)
    EXPECT_EQ(hits, a.constituent(0, 1, 2).has(0, 0, 0) ? tri : 0);
}

TEST(ColourClasses, SampledLiftsAreMostlyQuasirandom)
{
    for (std::size_t ell = 1; ell <= 4; ++ell) {
        const auto a = ReducedHypergraph::uniform(3, ell);
        int pass = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto phi = random_partitioned_coloring(a, 64, seed);
            const auto g = color_class(phi, 0, 1, 0);
            QuasirandomOptions o;
            o.samples = 2000;
            o.seed = seed;
            pass += audit_quasirandom(g, R("3/20"), Rational(1, static_cast<long long>(ell)), o).passed();
        }
        EXPECT_GE(pass, 95) << ell;
    }
}

TEST(Regularity, SampledAuditIsHeuristicAndSeeded)
{
    Rng r(1);
    auto p = oracle::random_tripartite(6, 6, 6, r);
    label_consecutively(p);
    const auto h = tournament_hypergraph(18, 4);
    const auto a = audit_regularity_sampled(h, p, std::nullopt, 200, 3);
    const auto b = audit_regularity_sampled(h, p, std::nullopt, 200, 3);
    EXPECT_TRUE(a.heuristic);
    EXPECT_EQ(a.d3, relative_density(h, p));
    EXPECT_EQ(a.max_deviation, b.max_deviation);
    EXPECT_GE(a.max_deviation, 0);
    EXPECT_LE(a.max_deviation, 1);
}
