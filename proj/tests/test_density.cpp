#include "oracles.hpp"

#include "turan/construct.hpp"
#include "turan/density.hpp"
#include "turan/rng.hpp"

#include <gtest/gtest.h>

using namespace turan;

namespace {

Rational R(const char* s) { return parse_rational(s); }

Hypergraph3 random_h(std::size_t n, std::uint64_t seed, std::uint64_t num = 1, std::uint64_t den = 2)
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

Bitset bits(std::size_t n, std::uint64_t mask) { return Bitset::from_mask(n, mask); }

PairSet pairs(std::size_t n, std::uint64_t mask)
{
    PairSet p(n);
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = 0; y < n; ++y)
            if ((mask >> (x * n + y)) & 1U)
                p.add(x, y);
    return p;
}

Bitset all(std::size_t n)
{
    Bitset b(n);
    b.set_all();
    return b;
}

AuditOptions exact_opts(std::size_t threshold, Exec exec = Exec::parallel)
{
    AuditOptions o;
    o.exact_threshold = threshold;
    o.exec = exec;
    return o;
}

} // namespace

TEST(Counts, SmallExamples)
{
    const auto k3 = clique(3), k4 = clique(4);
    EXPECT_EQ(count_vvv(k3, all(3), all(3), all(3)), 6U);
    EXPECT_EQ(count_vvv(k3, Bitset(3), all(3), all(3)), 0U);
    EXPECT_EQ(count_vvv(k4, all(4), all(4), all(4)), 24U);
    EXPECT_EQ(count_ev(k3, all(3), PairSet(3)), 0U);
    EXPECT_EQ(count_ev(k3, all(3), PairSet::all(3)), 6U);
    PairSet p12(4);
    p12.add(1, 2);
    EXPECT_EQ(count_ev(k4, bits(4, 1), p12), 1U);

    const auto ee_all = count_ee(random_h(5, 1), PairSet::all(5), PairSet::all(5));
    EXPECT_EQ(ee_all.kpq, 125U);
    const auto none = count_ee(k4, PairSet::all(4), PairSet(4));
    EXPECT_EQ(none.kpq, 0U);
    EXPECT_EQ(none.epq, 0U);
    PairSet p(4), q(4);
    p.add(0, 1);
    q.add(1, 2);
    const auto one = count_ee(k4, p, q);
    EXPECT_EQ(one.kpq, 1U);
    EXPECT_EQ(one.epq, 1U);
}

TEST(Counts, MatchOracleOnRandomSets)
{
    Rng r(3);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 3 + r.uniform(4);
        const auto h = random_h(n, r.next());
        const std::uint64_t full = (std::uint64_t{1} << n) - 1, pfull = (std::uint64_t{1} << (n * n)) - 1;
        const auto a = r.next() & full, b = r.next() & full, c = r.next() & full;
        const auto p = r.next() & pfull, q = r.next() & pfull;
        EXPECT_EQ(count_vvv(h, bits(n, a), bits(n, b), bits(n, c)), oracle::count_vvv(h, a, b, c));
        EXPECT_EQ(count_ev(h, bits(n, a), pairs(n, p)), oracle::count_ev(h, a, p));
        const auto ee = count_ee(h, pairs(n, p), pairs(n, q));
        const auto [k, e] = oracle::count_ee(h, p, q);
        EXPECT_EQ(ee.kpq, k);
        EXPECT_EQ(ee.epq, e);
    }
}

TEST(Counts, EvIdentityExhaustive)
{
    for (std::size_t n = 3; n <= 6; ++n) {
        const auto h = random_h(n, n);
        const std::uint64_t m = std::uint64_t{1} << n;
        for (std::uint64_t a = 0; a < m; ++a)
            for (std::uint64_t b = 0; b < m; ++b)
                for (std::uint64_t c = 0; c < m; ++c) {
                    const auto bs = bits(n, b), cs = bits(n, c);
                    ASSERT_EQ(count_ev(h, bits(n, a), PairSet::product(bs, cs)), count_vvv(h, bits(n, a), bs, cs));
                }
    }
}

TEST(Counts, EeIdentitiesExhaustiveOverPairSets)
{
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto h = random_h(n, 10 + n, 2, 3);
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
            const auto av = PairSet::product(bits(n, a), all(n));
            for (std::uint64_t p = 0; p < (std::uint64_t{1} << (n * n)); ++p) {
                const auto ps = pairs(n, p);
                const auto ee = count_ee(h, av, ps);
                ASSERT_EQ(ee.kpq, static_cast<std::uint64_t>(std::popcount(a) * std::popcount(p)));
                ASSERT_EQ(ee.epq, count_ev(h, bits(n, a), ps));
            }
        }
    }
}

TEST(Counts, Monotone)
{
    Rng r(8);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 5;
        const auto h = random_h(n, r.next());
        const auto a = r.next() & 31, b = r.next() & 31, c = r.next() & 31;
        const auto a2 = a | (r.next() & 31);
        EXPECT_LE(count_vvv(h, bits(n, a), bits(n, b), bits(n, c)), count_vvv(h, bits(n, a2), bits(n, b), bits(n, c)));
        const auto p = r.next() & ((1ULL << 25) - 1), q = r.next() & ((1ULL << 25) - 1);
        const auto p2 = p | (r.next() & ((1ULL << 25) - 1));
        EXPECT_LE(count_ev(h, bits(n, a), pairs(n, p)), count_ev(h, bits(n, a), pairs(n, p2)));
        const auto small = count_ee(h, pairs(n, p), pairs(n, q)), big = count_ee(h, pairs(n, p2), pairs(n, q));
        EXPECT_LE(small.kpq, big.kpq);
        EXPECT_LE(small.epq, big.epq);
    }
}

TEST(UniformAudit, TrivialCases)
{
    const auto empty = Hypergraph3::make(6, {});
    const auto r0 = audit_uniform_dense(empty, 0, R("1/10"));
    EXPECT_EQ(r0.mode, AuditMode::exact);
    EXPECT_TRUE(r0.passed());
    const auto r1 = audit_uniform_dense(clique(7), 1, 0);
    EXPECT_EQ(r1.min_slack, 0);
    EXPECT_TRUE(r1.passed());
}

TEST(UniformAudit, MatchesOracle)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 4 + seed % 6;
        const auto h = random_h(n, seed);
        const Rational d = Rational(1 + seed % 3, 4), eta = Rational(seed % 2, 100);
        const auto serial = audit_uniform_dense(h, d, eta, exact_opts(22, Exec::serial));
        const auto parallel = audit_uniform_dense(h, d, eta, exact_opts(22, Exec::parallel));
        EXPECT_EQ(serial.min_slack, oracle::min_slack_uniform(h, d, eta)) << seed;
        EXPECT_EQ(serial.min_slack, parallel.min_slack);
        EXPECT_EQ(serial.worst, parallel.worst);
        EXPECT_EQ(slack_uniform(h, serial.worst.sets.at(0), d, eta), serial.min_slack);
    }
}

TEST(UniformAudit, TournamentEighteenPasses)
{
    const auto h = tournament_hypergraph(18, 0);
    const auto r = audit_uniform_dense(h, R("1/4"), R("1/10"));
    EXPECT_EQ(r.mode, AuditMode::exact);
    EXPECT_EQ(r.space, BigInt(1) << 18);
    EXPECT_TRUE(r.passed());
}

TEST(UniformAudit, SampledModeIsSeededAndReplayable)
{
    const auto h = tournament_hypergraph(40, 3);
    AuditOptions o;
    o.samples = 2000;
    o.seed = 9;
    const auto a = audit_uniform_dense(h, R("1/4"), R("1/20"), o);
    const auto b = audit_uniform_dense(h, R("1/4"), R("1/20"), o);
    EXPECT_EQ(a.mode, AuditMode::sampled);
    EXPECT_EQ(a.rng, "splitmix64");
    EXPECT_EQ(a.min_slack, b.min_slack);
    EXPECT_EQ(a.worst, b.worst);
    EXPECT_EQ(slack_uniform(h, a.worst.sets.at(0), a.d, a.eta), a.min_slack);
    // the sampled minimum can never be below the true minimum
    o.exec = Exec::serial;
    EXPECT_EQ(audit_uniform_dense(h, R("1/4"), R("1/20"), o).min_slack, a.min_slack);
}

TEST(StarAudit, VvvMatchesOracle)
{
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::size_t n = 3 + seed % 2;
        const auto h = random_h(n, seed, 2, 3);
        const Rational d = Rational(1 + seed % 3, 5), eta = Rational(seed % 3, 50);
        const auto r = audit_star_dense(h, Notion::vvv, d, eta, exact_opts(10, Exec::serial));
        EXPECT_EQ(r.mode, AuditMode::exact);
        EXPECT_EQ(r.min_slack, oracle::min_slack_vvv(h, d, eta)) << seed;
        const auto& w = r.worst.sets;
        ASSERT_EQ(w.size(), 3U);
        EXPECT_EQ(slack_vvv(h, w[0], w[1], w[2], d, eta), r.min_slack);
        const auto p = audit_star_dense(h, Notion::vvv, d, eta, exact_opts(10, Exec::parallel));
        EXPECT_EQ(p.min_slack, r.min_slack);
        EXPECT_EQ(p.worst, r.worst);
    }
}

TEST(StarAudit, EvAndEeMatchOracle)
{
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto h = random_h(3, seed, 1, 1);
        const Rational d = Rational(1 + seed % 3, 4), eta = Rational(seed % 2, 27);
        const auto ev = audit_star_dense(h, Notion::ev, d, eta, exact_opts(16));
        const auto ee = audit_star_dense(h, Notion::ee, d, eta, exact_opts(16));
        EXPECT_EQ(ev.min_slack, oracle::min_slack_ev(h, d, eta));
        EXPECT_EQ(ee.min_slack, oracle::min_slack_ee(h, d, eta));
        EXPECT_EQ(slack_ev(h, ev.worst.sets.at(0), ev.worst.pair_sets.at(0), d, eta), ev.min_slack);
        EXPECT_EQ(slack_ee(h, ee.worst.pair_sets.at(0), ee.worst.pair_sets.at(1), d, eta), ee.min_slack);
    }
    // ev on four vertices: 2^4 sets times 2^16 pair sets
    const auto h4 = random_h(4, 42);
    EXPECT_EQ(audit_star_dense(h4, Notion::ev, R("1/3"), 0, exact_opts(16)).min_slack,
              oracle::min_slack_ev(h4, R("1/3"), 0));
}

TEST(StarAudit, TrivialCases)
{
    // complete H, d = 1, eta = 0: the deficit is the non-distinct triples
    const std::size_t n = 6;
    const auto r = audit_star_dense(clique(n), Notion::vvv, 1, 0);
    EXPECT_EQ(r.min_slack, -Rational(static_cast<long long>(n * n * n - n * (n - 1) * (n - 2))));
    EXPECT_TRUE(audit_star_dense(clique(n), Notion::vvv, 1, 1).passed());
    EXPECT_TRUE(audit_star_dense(Hypergraph3::make(5, {}), Notion::ee, 0, 0).passed());
}

TEST(StarAudit, NotionChainOnExactAudits)
{
    // ee witnesses (A x V, P) reproduce ev, and ev witnesses (A, B x C) reproduce vvv
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const std::size_t n = 4 + seed % 4;
        const auto h = random_h(n, 100 + seed);
        const Rational d = Rational(1, 2 + seed % 3), eta = Rational(1, 100);
        const auto vvv = audit_star_dense(h, Notion::vvv, d, eta, exact_opts(16)).min_slack;
        const auto ev = audit_star_dense(h, Notion::ev, d, eta, exact_opts(16)).min_slack;
        const auto ee = audit_star_dense(h, Notion::ee, d, eta, exact_opts(16)).min_slack;
        EXPECT_LE(ee, ev);
        EXPECT_LE(ev, vvv);
    }
}

TEST(StarAudit, VvvPassTransfersToUniformAtSixth)
{
    Rng r(6);
    const auto h = tournament_hypergraph(30, 1);
    const Rational d = R("1/4"), eta = R("1/10");
    for (int i = 0; i < 500; ++i) {
        const auto u = bits(30, r.next() & ((1ULL << 30) - 1));
        if (slack_vvv(h, u, u, u, d, eta) >= 0)
            EXPECT_GE(slack_uniform(h, u, d, eta / 6), 0);
    }
}

TEST(StarAudit, CertifiedVvvMode)
{
    const auto h = tournament_hypergraph(14, 2);
    AuditOptions o = exact_opts(24);
    const auto pass = audit_star_dense(h, Notion::vvv, R("1/4"), R("1/10"), o);
    EXPECT_EQ(pass.mode, AuditMode::certified);
    EXPECT_TRUE(pass.passed());
    ASSERT_TRUE(pass.witness_slack);
    EXPECT_LE(pass.min_slack, *pass.witness_slack);
    const auto& w = pass.worst.sets;
    EXPECT_EQ(slack_vvv(h, w[0], w[1], w[2], pass.d, pass.eta), *pass.witness_slack);

    const auto fail = audit_star_dense(Hypergraph3::make(13, {}), Notion::vvv, R("1/2"), R("1/100"), o);
    EXPECT_EQ(fail.mode, AuditMode::certified);
    EXPECT_FALSE(fail.passed());
    const auto& fw = fail.worst.sets;
    EXPECT_LT(slack_vvv(Hypergraph3::make(13, {}), fw[0], fw[1], fw[2], fail.d, fail.eta), 0);

    o.exec = Exec::serial;
    const auto serial = audit_star_dense(h, Notion::vvv, R("1/4"), R("1/10"), o);
    EXPECT_EQ(serial.min_slack, pass.min_slack);
    EXPECT_EQ(serial.worst, pass.worst);
}

TEST(StarAudit, RoedlSixtyEvSampled)
{
    const auto h = roedl_hypergraph(60, 0);
    AuditOptions o;
    o.seed = 1;
    const auto r = audit_star_dense(h, Notion::ev, R("1/2"), R("1/20"), o);
    EXPECT_EQ(r.mode, AuditMode::sampled);
    EXPECT_EQ(r.samples, 100'000U);
    EXPECT_TRUE(r.passed());
}

TEST(StarAudit, SampledNeverBeatsExact)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto h = random_h(9, seed);
        AuditOptions sampled;
        sampled.exact_threshold = 0;
        sampled.samples = 500;
        for (Notion n : {Notion::vvv, Notion::ev, Notion::ee}) {
            const auto exact = audit_star_dense(h, n, R("1/2"), 0, exact_opts(16));
            const auto approx = audit_star_dense(h, n, R("1/2"), 0, sampled);
            EXPECT_EQ(approx.mode, AuditMode::sampled);
            EXPECT_GE(approx.min_slack, exact.min_slack);
        }
    }
}
