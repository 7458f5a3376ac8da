#include "turan/io.hpp"
#include "turan/rng.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace turan;
using namespace turan::io;

namespace {

Rational R(const char* s) { return parse_rational(s); }

template <class F>
ParseError parse_error(F&& f)
{
    try {
        f();
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no ParseError";
    return ParseError("none");
}

} // namespace

TEST(IoHypergraph, TextAndJsonRoundTrip)
{
    const auto h = tournament_hypergraph(12, 3);
    EXPECT_EQ(parse_hypergraph(to_text(h)), h);
    EXPECT_EQ(parse_hypergraph(to_json(h).dump()), h);
    EXPECT_EQ(hypergraph_from_json(to_json(h)), h);
    EXPECT_EQ(parse_hypergraph("# a comment\n4 2\n2 1 0 # inline\n0 1 3\n"),
              Hypergraph3::make(4, {{0, 1, 2}, {0, 1, 3}}));
}

TEST(IoHypergraph, ErrorsCarryPositions)
{
    const auto e = parse_error([] { parse_hypergraph("3 1\n0 1 x\n"); });
    EXPECT_EQ(e.line, 2U);
    EXPECT_EQ(e.column, 5U);
    // truncated input points past the last line
    EXPECT_EQ(parse_error([] { parse_hypergraph("3 2\n0 1 2\n"); }).line, 3U);
    parse_error([] { parse_hypergraph("3 1\n0 1 3\n"); });
    const auto j = parse_error([] { parse_hypergraph("{\"n\": 3,\n \"edges\": [[0, 1, 2]\n"); });
    EXPECT_GE(j.line, 2U);
    const auto missing = parse_error([] { parse_hypergraph("{\"edges\": []}"); });
    EXPECT_NE(std::string(missing.what()).find("n"), std::string::npos);
}

TEST(IoPalette, RoundTripEveryBuiltin)
{
    for (const auto& name : builtin_names()) {
        const auto p = builtin(name).palette;
        EXPECT_EQ(parse_palette(to_json(p).dump()), p) << name;
    }
}

TEST(IoPalette, NamesIndicesAndWeights)
{
    const auto p = parse_palette(
        R"({"colors": ["red", "green"], "weights": ["2/3", "1/3"], "patterns": [["red", "red", "green"]]})");
    EXPECT_EQ(p, builtin("cycle5").palette);
    const auto q = parse_palette(R"({"colors": ["a", "b"], "patterns": [[0, 1, 0]]})");
    EXPECT_EQ(q.patterns(), (std::vector<Pattern>{{0, 1, 0}}));
    parse_error([] { parse_palette(R"({"colors": ["a"], "patterns": [["b", "a", "a"]]})"); });
    parse_error([] { parse_palette(R"({"colors": ["a", "b"], "weights": ["1/2", "1/3"], "patterns": []})"); });
    parse_error([] { parse_palette(R"({"colors": ["a", "b"], "weights": ["0.5", "0.5"], "patterns": []})"); });
}

TEST(IoPalette, GeneratorsAreClosed)
{
    const auto p = parse_generators(R"({"colors": ["1", "2", "3"], "patterns": [["1","1","2"], ["2","2","3"], ["3","3","1"]]})");
    EXPECT_EQ(p, builtin("ee5").palette);
}

TEST(IoReduced, RoundTrip)
{
    const auto a = random_reduced(4, 3, R("1/2"), 7);
    EXPECT_EQ(parse_reduced(to_json(a).dump()), a);
    std::vector<std::size_t> sizes{1, 2, 3, 1, 2, 3};
    ReducedHypergraph b(4, sizes);
    b.constituent(0, 1, 3).set(0, 1, 0);
    EXPECT_EQ(reduced_from_json(to_json(b)), b);
    parse_error([] { parse_reduced(R"({"indices": 3, "classes": {"0,1": 1}, "constituents": {}})"); });
    parse_error([] {
        parse_reduced(R"({"indices": 3, "classes": {"0,1": 1, "0,2": 1, "1,2": 1}, "constituents": {"0,1,2": [[0, 0, 4]]}})");
    });
}

TEST(IoGraphs, BipartiteAndTripartite)
{
    const auto g = random_bipartite(5, 7, R("1/2"), 1);
    EXPECT_EQ(parse_bipartite(to_text(g)), g);
    EXPECT_EQ(parse_bipartite(to_json(g).dump()), g);
    parse_error([] { parse_bipartite("2 2 1\n0 2\n"); });

    TripartiteGraph p;
    p.xy = random_bipartite(2, 3, R("1/2"), 1);
    p.xz = random_bipartite(2, 4, R("1/2"), 2);
    p.yz = random_bipartite(3, 4, R("1/2"), 3);
    p.x_label = {0, 1};
    p.y_label = {2, 3, 4};
    p.z_label = {5, 6, 7, 8};
    for (const auto& q : {parse_tripartite(to_text(p)), parse_tripartite(to_json(p).dump())}) {
        EXPECT_EQ(q.xy, p.xy);
        EXPECT_EQ(q.xz, p.xz);
        EXPECT_EQ(q.yz, p.yz);
        EXPECT_EQ(q.z_label, p.z_label);
    }
    p.x_label.clear();
    p.y_label.clear();
    p.z_label.clear();
    EXPECT_FALSE(parse_tripartite(to_text(p)).labelled());
}

TEST(IoCertificates, RoundTrip)
{
    const auto p = builtin("ee6").palette;
    const auto cert = *representable(clique(5), p).certificate;
    const auto back = certificate_from_json(parse_json(to_json(cert, p).dump()), p);
    EXPECT_EQ(back.ordering, cert.ordering);
    EXPECT_EQ(back.coloring, cert.coloring);

    const auto a = from_palette(p, 5);
    const auto map = *find_reduced_map(clique(5), a).map;
    EXPECT_EQ(reduced_map_from_json(parse_json(to_json(map).dump())), map);
}

TEST(IoReports, StableFields)
{
    const auto r = audit_uniform_dense(tournament_hypergraph(8, 1), R("1/4"), R("1/10"));
    const auto j = to_json(r);
    EXPECT_EQ(j["notion"], "uniform");
    EXPECT_EQ(j["mode"], "exact");
    EXPECT_EQ(j["d"], "1/4");
    EXPECT_EQ(j["rng"], "splitmix64");
    EXPECT_EQ(j["passed"], r.passed());
    EXPECT_EQ(j["min_slack"], to_string(r.min_slack));
    EXPECT_EQ(to_json(Rational(3)), "3/1");
}

TEST(IoFiles, MissingFileIsIoError)
{
    EXPECT_THROW(read_file("/nonexistent/dir/file.txt"), IoError);
    const auto path = std::filesystem::temp_directory_path() / "turan_io_test.txt";
    write_file(path, "3 1\n0 1 2\n");
    EXPECT_EQ(parse_hypergraph(read_file(path)), clique(3));
    std::filesystem::remove(path);
}

TEST(IoColoring, DumpFormat)
{
    PairColoring phi(3, 2);
    phi.set(0, 2, 1);
    const auto text = coloring_dump(phi, WeightedColorSet::uniform({"->", "<-"}));
    EXPECT_EQ(text, "0 1 ->\n0 2 <-\n1 2 ->\n");
}
