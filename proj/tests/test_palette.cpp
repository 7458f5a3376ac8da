#include "oracles.hpp"

#include "turan/palette.hpp"
#include "turan/rng.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

using namespace turan;

namespace {

Rational R(const char* s) { return parse_rational(s); }

// Edge-by-edge replay of a certificate, written separately from check_certificate.
bool replay(const Hypergraph3& f, const Palette& p, const RepresentabilityCertificate& cert)
{
    if (cert.ordering.size() != f.order())
        return false;
    std::vector<std::size_t> pos(f.order());
    for (std::size_t i = 0; i < cert.ordering.size(); ++i)
        pos[cert.ordering[i]] = i;
    std::map<Pair, Color> col(cert.coloring.begin(), cert.coloring.end());
    for (const auto& e : f.edges()) {
        std::array<Vertex, 3> t = e;
        std::sort(t.begin(), t.end(), [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
        auto c = [&](Vertex u, Vertex v) {
            const auto it = col.find({std::min(u, v), std::max(u, v)});
            return it == col.end() ? Color(65535) : it->second;
        };
        const Pattern pat{c(t[0], t[1]), c(t[0], t[2]), c(t[1], t[2])};
        if (std::find(p.patterns().begin(), p.patterns().end(), pat) == p.patterns().end())
            return false;
    }
    return true;
}

Palette random_palette(std::size_t k, Rng& r)
{
    std::vector<std::string> names;
    for (std::size_t c = 0; c < k; ++c)
        names.push_back(std::to_string(c));
    std::vector<Pattern> pats;
    for (Color a = 0; a < k; ++a)
        for (Color b = 0; b < k; ++b)
            for (Color c = 0; c < k; ++c)
                if (r.bernoulli(1, 3))
                    pats.push_back({a, b, c});
    return Palette(WeightedColorSet::uniform(names), pats);
}

Hypergraph3 random_small(std::size_t n, Rng& r)
{
    std::vector<Triple> t;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                if (r.bernoulli(1, 2))
                    t.push_back({a, b, c});
    if (t.empty())
        t.push_back({0, 1, 2});
    return Hypergraph3::make(n, t);
}

} // namespace

TEST(WeightedColorSet, Validation)
{
    const auto u = WeightedColorSet::uniform({"a", "b", "c"});
    EXPECT_EQ(u.weight(1), Rational(1, 3));
    EXPECT_TRUE(u.is_uniform());
    EXPECT_THROW(WeightedColorSet::weighted({"a", "b"}, {Rational(1, 2), Rational(1, 3)}), std::invalid_argument);
    EXPECT_THROW(WeightedColorSet::weighted({"a", "b"}, {Rational(3, 2), Rational(-1, 2)}), std::invalid_argument);
    EXPECT_EQ(*u.find("b"), 1);
    EXPECT_FALSE(u.find("z"));
}

TEST(Palette, RejectsForeignColours)
{
    EXPECT_THROW(Palette(WeightedColorSet::uniform({"a", "b"}), {{0, 1, 2}}), std::invalid_argument);
}

TEST(Palette, SymmetricFlag)
{
    EXPECT_TRUE(builtin("ee5").palette.symmetric());
    EXPECT_FALSE(builtin("tournament").palette.symmetric());
    EXPECT_FALSE(builtin("rainbow").palette.symmetric());
}

TEST(Palette, BuiltinDensities)
{
    EXPECT_EQ(density_vvv(builtin("tournament").palette), R("1/4"));
    EXPECT_EQ(density_vvv(builtin("roedl").palette), R("1/2"));
    EXPECT_EQ(density_vvv(builtin("star4").palette), R("1/3"));
    EXPECT_EQ(density_vvv(builtin("ramsey6").palette), R("3/4"));
    EXPECT_EQ(density_vvv(builtin("cycle5").palette), R("4/27"));
    EXPECT_EQ(density_ee(builtin("ee5").palette), R("1/3"));
    EXPECT_EQ(density_ee(builtin("ee6").palette), R("1/2"));
    EXPECT_EQ(density_ee(builtin("ee11").palette), R("2/3"));
}

TEST(Palette, DerivedDensities)
{
    EXPECT_EQ(density_ev(builtin("tournament").palette), R("1/4"));
    EXPECT_EQ(density_ee(builtin("tournament").palette), 0);
    EXPECT_EQ(density_ev(builtin("roedl").palette), R("1/2"));
    EXPECT_EQ(builtin("roedl").palette.size(), 4U);
    EXPECT_EQ(builtin("star4").palette.size(), 9U);
    EXPECT_EQ(builtin("ramsey6").palette.size(), 6U);
    const auto full = [] {
        std::vector<Pattern> all;
        for (Color a = 0; a < 2; ++a)
            for (Color b = 0; b < 2; ++b)
                for (Color c = 0; c < 2; ++c)
                    all.push_back({a, b, c});
        return Palette(WeightedColorSet::uniform({"x", "y"}), all);
    }();
    EXPECT_EQ(density_vvv(full), 1);
    EXPECT_EQ(density_ev(full), 1);
    EXPECT_EQ(density_ee(full), 1);
    const Palette empty(WeightedColorSet::uniform({"x"}), {});
    EXPECT_EQ(density_vvv(empty), 0);
}

TEST(Palette, EveryBuiltinMatchesOracleAndClaim)
{
    for (const auto& name : builtin_names()) {
        const auto b = builtin(name);
        const auto& p = b.palette;
        EXPECT_EQ(density_vvv(p), oracle::density_vvv(p)) << name;
        EXPECT_EQ(density_ev(p), oracle::density_ev(p)) << name;
        EXPECT_EQ(density_ee(p), oracle::density_ee(p)) << name;
        EXPECT_EQ(density(p, b.claim.notion), b.claim.density) << name;
    }
}

TEST(Palette, DensityChainOnRandomPalettes)
{
    Rng r(11);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_palette(1 + r.uniform(4), r);
        const auto vvv = density_vvv(p), ev = density_ev(p), ee = density_ee(p);
        EXPECT_LE(ee, ev);
        EXPECT_LE(ev, vvv);
        EXPECT_EQ(vvv, oracle::density_vvv(p));
        EXPECT_EQ(ev, oracle::density_ev(p));
        EXPECT_EQ(ee, oracle::density_ee(p));
    }
}

TEST(SymmetricClosure, Orbits)
{
    const auto base = WeightedColorSet::uniform({"1", "2", "3"});
    const std::vector<Pattern> one{{0, 0, 1}};
    EXPECT_EQ(symmetric_closure(one, base).patterns(), (std::vector<Pattern>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
    const std::vector<Pattern> rainbow{{0, 1, 2}};
    EXPECT_EQ(symmetric_closure(rainbow, base).size(), 6U);
    const std::vector<Pattern> ee5{{0, 0, 1}, {1, 1, 2}, {2, 2, 0}};
    const auto p = symmetric_closure(ee5, base);
    EXPECT_EQ(p.size(), 9U);
    EXPECT_EQ(density_ee(p), R("1/3"));
    EXPECT_EQ(p, builtin("ee5").palette);
    const std::vector<Pattern> bad{{0, 0, 5}};
    EXPECT_THROW(symmetric_closure(bad, base), std::invalid_argument);
}

TEST(SymmetricClosure, IdempotentAndMonotone)
{
    Rng r(5);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_palette(3, r);
        const auto closed = symmetric_closure(p.patterns(), p.base());
        EXPECT_TRUE(closed.symmetric());
        EXPECT_EQ(symmetric_closure(closed.patterns(), p.base()), closed);
        auto more = p.patterns();
        more.push_back({static_cast<Color>(r.uniform(3)), static_cast<Color>(r.uniform(3)),
                        static_cast<Color>(r.uniform(3))});
        const auto bigger = symmetric_closure(more, p.base());
        for (const auto& pat : closed.patterns())
            EXPECT_TRUE(bigger.contains(pat));
    }
}

TEST(Representable, ReferenceExhaustions)
{
    auto check_free = [](const Hypergraph3& f, const char* pal, long long space) {
        const auto p = builtin(pal).palette;
        const auto res = representable(f, p);
        EXPECT_EQ(res.verdict, Verdict::free) << pal;
        EXPECT_EQ(res.space, BigInt(space)) << pal;
    };
    check_free(clique_minus4(), "tournament", 1536);
    check_free(clique(4), "roedl", 1536);
    check_free(clique(5), "ee5", 59049);
    check_free(clique(6), "ee6", 32768);
    EXPECT_EQ(oracle::count_representations(clique_minus4(), builtin("tournament").palette), 0U);
    EXPECT_EQ(oracle::count_representations(clique(4), builtin("roedl").palette), 0U);
}

TEST(Representable, PositiveCertificates)
{
    const auto ee6 = builtin("ee6").palette;
    const auto k5 = representable(clique(5), ee6);
    ASSERT_EQ(k5.verdict, Verdict::certificate);
    EXPECT_TRUE(check_certificate(clique(5), ee6, *k5.certificate));
    EXPECT_TRUE(replay(clique(5), ee6, *k5.certificate));
    EXPECT_GT(oracle::count_representations(clique(5), ee6, false), 0U);

    const auto fano_cert = zero_density_certificate(fano(), {1'000'000, Exec::parallel});
    ASSERT_EQ(fano_cert.verdict, Verdict::certificate);
    EXPECT_LE(fano_cert.nodes, 1'000'000U);
    EXPECT_TRUE(replay(fano(), builtin("rainbow").palette, *fano_cert.certificate));

    const auto edge = zero_density_certificate(Hypergraph3::make(3, {{0, 1, 2}}));
    EXPECT_EQ(edge.verdict, Verdict::certificate);
    EXPECT_EQ(zero_density_certificate(clique_minus4()).verdict, Verdict::free);
}

TEST(Representable, K10InEe11)
{
    const auto p = builtin("ee11").palette;
    const auto res = representable(clique(10), p);
    ASSERT_EQ(res.verdict, Verdict::certificate);
    EXPECT_TRUE(replay(clique(10), p, *res.certificate));
}

TEST(Representable, BudgetGivesInconclusive)
{
    const auto res = representable(clique(6), builtin("ee6").palette, std::nullopt, {100, Exec::serial});
    EXPECT_EQ(res.verdict, Verdict::inconclusive);
    EXPECT_FALSE(res.certificate);
}

TEST(Representable, AgreesWithNaiveEnumeration)
{
    Rng r(2024);
    for (int i = 0; i < 100; ++i) {
        const auto f = random_small(3 + r.uniform(2), r);
        const auto p = random_palette(1 + r.uniform(3), r);
        const bool brute = oracle::count_representations(f, p) > 0;
        const auto serial = representable(f, p, std::nullopt, {100'000'000, Exec::serial});
        const auto parallel = representable(f, p, std::nullopt, {100'000'000, Exec::parallel});
        ASSERT_NE(serial.verdict, Verdict::inconclusive);
        EXPECT_EQ(serial.verdict == Verdict::certificate, brute) << "instance " << i;
        EXPECT_EQ(serial.verdict, parallel.verdict);
        EXPECT_EQ(serial.nodes, parallel.nodes);
        if (serial.certificate) {
            EXPECT_TRUE(replay(f, p, *serial.certificate));
            EXPECT_EQ(serial.certificate->ordering, parallel.certificate->ordering);
            EXPECT_EQ(serial.certificate->coloring, parallel.certificate->coloring);
        }
    }
}

TEST(Representable, SymmetricPalettesIgnoreOrdering)
{
    Rng r(77);
    for (int i = 0; i < 40; ++i) {
        const auto f = random_small(3 + r.uniform(3), r);
        const auto base = random_palette(2 + r.uniform(2), r);
        const auto p = symmetric_closure(base.patterns(), base.base());
        std::vector<Vertex> order(f.order());
        std::iota(order.begin(), order.end(), 0);
        const auto first = representable(f, p, order).verdict;
        do {
            EXPECT_EQ(representable(f, p, order).verdict, first);
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST(Representable, CertificateCheckerRejectsTampering)
{
    const auto p = builtin("ee6").palette;
    auto cert = *representable(clique(5), p).certificate;
    ASSERT_TRUE(check_certificate(clique(5), p, cert));
    // an all-one colouring has no matching pattern in ee6
    for (auto& [pair, c] : cert.coloring)
        c = 0;
    EXPECT_FALSE(check_certificate(clique(5), p, cert));
    cert.coloring.pop_back();
    EXPECT_FALSE(check_certificate(clique(5), p, cert));
}

TEST(Cnf, ShapeAndSatisfiedByCertificate)
{
    const auto p = builtin("ee6").palette;
    const auto f = clique(5);
    const auto cnf = encode_cnf(f, p);
    EXPECT_EQ(cnf.variables.size(), 10U * 2U);
    const auto cert = *representable(f, p).certificate;
    // the certificate's assignment satisfies every clause
    std::map<std::pair<Pair, Color>, bool> truth;
    for (const auto& [pair, c] : cert.coloring)
        truth[{pair, c}] = true;
    for (const auto& clause : cnf.clauses) {
        bool sat = false;
        for (int lit : clause) {
            const auto& var = cnf.variables[std::abs(lit) - 1];
            const bool value = truth.count(var) > 0;
            sat = sat || (lit > 0 ? value : !value);
        }
        EXPECT_TRUE(sat);
    }
    std::ostringstream out;
    write_dimacs(out, cnf);
    EXPECT_NE(out.str().find("\np cnf 20 " + std::to_string(cnf.clauses.size()) + "\n"), std::string::npos);
}

TEST(Builtins, UnknownNamesThrow)
{
    EXPECT_THROW(builtin("nope"), std::invalid_argument);
    EXPECT_THROW(builtin("roedl:1"), std::invalid_argument);
    EXPECT_EQ(density_vvv(builtin("roedl:3").palette), R("2/3"));
    EXPECT_EQ(density_vvv(builtin("roedl:4").palette), R("3/4"));
}
