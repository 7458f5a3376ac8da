#include "turan/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace turan::io {

ParseError::ParseError(const std::string& what, std::size_t line_, std::size_t column_)
    : std::runtime_error(line_ == 0 ? what
                                    : what + " at line " + std::to_string(line_) + ", column " +
                                          std::to_string(column_)),
      line(line_), column(column_)
{
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << contents;
    if (!out)
        throw IoError("write failed for " + path.string());
}

namespace {

std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset)
{
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

bool looks_like_json(std::string_view text)
{
    const auto p = text.find_first_not_of(" \t\r\n");
    return p != std::string_view::npos && text[p] == '{';
}

/// Whitespace-separated tokens with positions; '#' starts a comment.
class Tokens {
public:
    explicit Tokens(std::string_view text) : text_(text) {}

    bool done()
    {
        skip();
        return pos_ >= text_.size();
    }

    std::string_view word()
    {
        skip();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        start_ = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return text_.substr(start_, pos_ - start_);
    }

    std::uint64_t number(std::string_view what)
    {
        const auto w = word();
        std::uint64_t v = 0;
        const auto [end, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
        if (ec != std::errc() || end != w.data() + w.size())
            fail("expected " + std::string(what) + ", got '" + std::string(w) + "'");
        return v;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        const auto [line, column] = locate(text_, start_);
        throw ParseError(what, line, column);
    }

private:
    void skip()
    {
        while (pos_ < text_.size()) {
            if (text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else {
                break;
            }
        }
        start_ = pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t start_ = 0;
};

[[noreturn]] void bad(const std::string& key, const std::string& what)
{
    throw ParseError(key + ": " + what);
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object())
        bad("document", "expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end())
        bad(key, "missing");
    return *it;
}

std::uint64_t unsigned_of(const Json& j, const std::string& key)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        bad(key, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

Rational rational_of(const Json& j, const std::string& key)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (!j.is_string())
        bad(key, "expected a \"p/q\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        bad(key, e.what());
    }
}

template <class F>
auto rethrow(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::vector<Pair> pair_list(const Json& j, const std::string& key)
{
    if (!j.is_array())
        bad(key, "expected an array of pairs");
    std::vector<Pair> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        const std::string at = key + "[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2)
            bad(at, "expected [a, b]");
        out.push_back({static_cast<Vertex>(unsigned_of(e[0], at)), static_cast<Vertex>(unsigned_of(e[1], at))});
    }
    return out;
}

Json pair_list(const BipartiteGraph& g)
{
    Json edges = Json::array();
    for (std::size_t a = 0; a < g.x_size(); ++a)
        for_each_bit(g.row(a), [&](std::size_t b) { edges.push_back({a, b}); });
    return edges;
}

BipartiteGraph bipartite_of(std::size_t x, std::size_t y, const std::vector<Pair>& edges, const std::string& key)
{
    BipartiteGraph g(x, y);
    for (const auto& [a, b] : edges) {
        if (a >= x || b >= y)
            bad(key, "edge " + std::to_string(a) + " " + std::to_string(b) + " outside its sides");
        g.add(a, b);
    }
    return g;
}

BipartiteGraph bipartite_text(Tokens& t, std::size_t x, std::size_t y)
{
    const auto m = t.number("edge count");
    BipartiteGraph g(x, y);
    for (std::uint64_t e = 0; e < m; ++e) {
        const auto a = t.number("vertex");
        const auto b = t.number("vertex");
        if (a >= x || b >= y)
            t.fail("edge " + std::to_string(a) + " " + std::to_string(b) + " outside its sides");
        g.add(a, b);
    }
    return g;
}

void text_edges(std::ostringstream& out, const BipartiteGraph& g)
{
    out << g.size() << '\n';
    for (std::size_t a = 0; a < g.x_size(); ++a)
        for_each_bit(g.row(a), [&](std::size_t b) { out << a << ' ' << b << '\n'; });
}

std::optional<Color> color_of(const Json& j, const WeightedColorSet& base)
{
    if (j.is_string())
        return base.find(j.get<std::string>());
    if (j.is_number_unsigned() && j.get<std::uint64_t>() < base.size())
        return static_cast<Color>(j.get<std::uint64_t>());
    return std::nullopt;
}

} // namespace

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("invalid JSON", line, column);
    }
}

// ---------------------------------------------------------------------------
// Hypergraphs

Hypergraph3 parse_hypergraph(std::string_view text)
{
    if (looks_like_json(text))
        return hypergraph_from_json(parse_json(text));
    Tokens t(text);
    const auto n = t.number("vertex count");
    const auto m = t.number("edge count");
    std::vector<Triple> edges;
    edges.reserve(m);
    for (std::uint64_t e = 0; e < m; ++e) {
        Triple tr{};
        for (auto& v : tr) {
            const auto x = t.number("vertex");
            if (x >= n)
                t.fail("vertex " + std::to_string(x) + " outside 0.." + std::to_string(n - 1));
            v = static_cast<Vertex>(x);
        }
        if (tr[0] == tr[1] || tr[0] == tr[2] || tr[1] == tr[2])
            t.fail("edge repeats a vertex");
        edges.push_back(tr);
    }
    if (!t.done())
        t.fail("trailing data after " + std::to_string(m) + " edges");
    return Hypergraph3::make(n, edges);
}

Hypergraph3 hypergraph_from_json(const Json& j)
{
    const auto n = unsigned_of(field(j, "n"), "n");
    const auto& e = field(j, "edges");
    if (!e.is_array())
        bad("edges", "expected an array");
    std::vector<Triple> edges;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const std::string at = "edges[" + std::to_string(i) + "]";
        if (!e[i].is_array() || e[i].size() != 3)
            bad(at, "expected [a, b, c]");
        edges.push_back({static_cast<Vertex>(unsigned_of(e[i][0], at)), static_cast<Vertex>(unsigned_of(e[i][1], at)),
                         static_cast<Vertex>(unsigned_of(e[i][2], at))});
    }
    return rethrow([&] { return Hypergraph3::make(n, edges); });
}

Json to_json(const Hypergraph3& h)
{
    Json edges = Json::array();
    for (const auto& e : h.edges())
        edges.push_back(e);
    return Json{{"n", h.order()}, {"edges", edges}};
}

std::string to_text(const Hypergraph3& h)
{
    std::ostringstream out;
    out << h.order() << ' ' << h.size() << '\n';
    for (const auto& e : h.edges())
        out << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Palettes

namespace {

std::pair<WeightedColorSet, std::vector<Pattern>> palette_parts(const Json& j)
{
    const auto& cs = field(j, "colors");
    if (!cs.is_array() || cs.empty())
        bad("colors", "expected a nonempty array of names");
    std::vector<std::string> names;
    for (const auto& c : cs) {
        if (!c.is_string())
            bad("colors", "colour names must be strings");
        names.push_back(c.get<std::string>());
    }
    WeightedColorSet base = rethrow([&] {
        if (!j.contains("weights"))
            return WeightedColorSet::uniform(names);
        const auto& ws = j["weights"];
        if (!ws.is_array())
            bad("weights", "expected an array of \"p/q\" strings");
        std::vector<Rational> weights;
        for (std::size_t i = 0; i < ws.size(); ++i)
            weights.push_back(rational_of(ws[i], "weights[" + std::to_string(i) + "]"));
        return WeightedColorSet::weighted(names, weights);
    });
    const auto& ps = field(j, "patterns");
    if (!ps.is_array())
        bad("patterns", "expected an array of colour triples");
    std::vector<Pattern> patterns;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string at = "patterns[" + std::to_string(i) + "]";
        if (!ps[i].is_array() || ps[i].size() != 3)
            bad(at, "expected three colours");
        Pattern p{};
        for (std::size_t c = 0; c < 3; ++c) {
            const auto col = color_of(ps[i][c], base);
            if (!col)
                bad(at, "unknown colour " + ps[i][c].dump());
            p[c] = *col;
        }
        patterns.push_back(p);
    }
    return {std::move(base), std::move(patterns)};
}

} // namespace

Palette parse_palette(std::string_view text) { return palette_from_json(parse_json(text)); }

Palette palette_from_json(const Json& j)
{
    auto [base, patterns] = palette_parts(j);
    return rethrow([&] { return Palette(std::move(base), std::move(patterns)); });
}

Palette parse_generators(std::string_view text)
{
    auto [base, patterns] = palette_parts(parse_json(text));
    return rethrow([&] { return symmetric_closure(patterns, base); });
}

Json to_json(const Palette& p)
{
    Json weights = Json::array();
    for (const auto& w : p.base().weights())
        weights.push_back(to_string(w));
    Json patterns = Json::array();
    for (const auto& pat : p.patterns())
        patterns.push_back({p.base().name(pat[0]), p.base().name(pat[1]), p.base().name(pat[2])});
    return Json{{"colors", p.base().names()}, {"weights", weights}, {"patterns", patterns}};
}

// ---------------------------------------------------------------------------
// Reduced hypergraphs

namespace {

std::vector<Index> index_key(const std::string& key, std::size_t arity, std::size_t m)
{
    std::vector<Index> out;
    std::size_t pos = 0;
    while (pos <= key.size()) {
        const auto comma = std::min(key.find(',', pos), key.size());
        const std::string_view part(key.data() + pos, comma - pos);
        Index v = 0;
        const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || end != part.data() + part.size() || v >= m)
            bad(key, "expected " + std::to_string(arity) + " indices below " + std::to_string(m));
        out.push_back(v);
        pos = comma + 1;
    }
    if (out.size() != arity || !std::is_sorted(out.begin(), out.end()) ||
        std::adjacent_find(out.begin(), out.end()) != out.end())
        bad(key, "expected " + std::to_string(arity) + " increasing indices");
    return out;
}

} // namespace

ReducedHypergraph parse_reduced(std::string_view text) { return reduced_from_json(parse_json(text)); }

ReducedHypergraph reduced_from_json(const Json& j)
{
    const auto m = unsigned_of(field(j, "indices"), "indices");
    if (m < 3)
        bad("indices", "need at least 3 indices");
    const auto& cls = field(j, "classes");
    if (!cls.is_object())
        bad("classes", "expected an object keyed \"i,j\"");
    std::vector<std::size_t> sizes(m * (m - 1) / 2, 0);
    for (const auto& [key, value] : cls.items()) {
        const auto ij = index_key(key, 2, m);
        const std::size_t slot = ij[0] * (2 * m - ij[0] - 1) / 2 + (ij[1] - ij[0] - 1);
        sizes[slot] = unsigned_of(value, "classes." + key);
        if (sizes[slot] == 0)
            bad("classes." + key, "class must be nonempty");
    }
    for (Index i = 0; i < m; ++i)
        for (Index k = i + 1; k < m; ++k)
            if (sizes[i * (2 * m - i - 1) / 2 + (k - i - 1)] == 0)
                bad("classes", "missing class " + std::to_string(i) + "," + std::to_string(k));
    ReducedHypergraph a(m, sizes);
    if (j.contains("constituents")) {
        const auto& cons = j["constituents"];
        if (!cons.is_object())
            bad("constituents", "expected an object keyed \"i,j,k\"");
        for (const auto& [key, value] : cons.items()) {
            const auto ijk = index_key(key, 3, m);
            auto& c = a.constituent(ijk[0], ijk[1], ijk[2]);
            if (!value.is_array())
                bad("constituents." + key, "expected an array of local triples");
            for (std::size_t e = 0; e < value.size(); ++e) {
                const std::string at = "constituents." + key + "[" + std::to_string(e) + "]";
                if (!value[e].is_array() || value[e].size() != 3)
                    bad(at, "expected [a, b, c]");
                LocalTriple t{};
                for (int r = 0; r < 3; ++r) {
                    t[r] = static_cast<Local>(unsigned_of(value[e][r], at));
                    if (t[r] >= c.dims()[r])
                        bad(at, "local vertex outside its class");
                }
                c.set(t[0], t[1], t[2]);
            }
        }
    }
    return a;
}

Json to_json(const ReducedHypergraph& a)
{
    const auto m = static_cast<Index>(a.indices());
    Json classes = Json::object();
    for (Index i = 0; i < m; ++i)
        for (Index j = i + 1; j < m; ++j)
            classes[std::to_string(i) + "," + std::to_string(j)] = a.class_size(i, j);
    Json cons = Json::object();
    for (const auto& t : a.triples()) {
        Json edges = Json::array();
        for (const auto& e : a.constituent(t[0], t[1], t[2]).edges())
            edges.push_back(e);
        cons[std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2])] = edges;
    }
    return Json{{"indices", m}, {"classes", classes}, {"constituents", cons}};
}

// ---------------------------------------------------------------------------
// Bipartite and tripartite graphs

BipartiteGraph parse_bipartite(std::string_view text)
{
    if (looks_like_json(text)) {
        const auto j = parse_json(text);
        const auto x = unsigned_of(field(j, "x"), "x");
        const auto y = unsigned_of(field(j, "y"), "y");
        return bipartite_of(x, y, pair_list(field(j, "edges"), "edges"), "edges");
    }
    Tokens t(text);
    const auto x = t.number("size of X");
    const auto y = t.number("size of Y");
    auto g = bipartite_text(t, x, y);
    if (!t.done())
        t.fail("trailing data");
    return g;
}

Json to_json(const BipartiteGraph& g)
{
    return Json{{"x", g.x_size()}, {"y", g.y_size()}, {"edges", pair_list(g)}};
}

std::string to_text(const BipartiteGraph& g)
{
    std::ostringstream out;
    out << g.x_size() << ' ' << g.y_size() << ' ';
    text_edges(out, g);
    return out.str();
}

TripartiteGraph parse_tripartite(std::string_view text)
{
    TripartiteGraph p;
    if (looks_like_json(text)) {
        const auto j = parse_json(text);
        const auto& parts = field(j, "parts");
        if (!parts.is_array() || parts.size() != 3)
            bad("parts", "expected [x, y, z]");
        const auto x = unsigned_of(parts[0], "parts"), y = unsigned_of(parts[1], "parts"),
                   z = unsigned_of(parts[2], "parts");
        p.xy = bipartite_of(x, y, pair_list(field(j, "xy"), "xy"), "xy");
        p.xz = bipartite_of(x, z, pair_list(field(j, "xz"), "xz"), "xz");
        p.yz = bipartite_of(y, z, pair_list(field(j, "yz"), "yz"), "yz");
        if (j.contains("labels")) {
            const auto& l = j["labels"];
            if (!l.is_array() || l.size() != 3)
                bad("labels", "expected three arrays");
            for (int part = 0; part < 3; ++part) {
                auto& out = part == 0 ? p.x_label : part == 1 ? p.y_label : p.z_label;
                for (const auto& v : l[part])
                    out.push_back(static_cast<Vertex>(unsigned_of(v, "labels")));
            }
        }
    } else {
        Tokens t(text);
        const auto x = t.number("size of X");
        const auto y = t.number("size of Y");
        const auto z = t.number("size of Z");
        p.xy = bipartite_text(t, x, y);
        p.xz = bipartite_text(t, x, z);
        p.yz = bipartite_text(t, y, z);
        if (!t.done()) {
            if (t.word() != "labels")
                t.fail("expected 'labels' or end of input");
            for (auto* out : {&p.x_label, &p.y_label, &p.z_label}) {
                const std::size_t count = out == &p.x_label ? x : out == &p.y_label ? y : z;
                for (std::size_t i = 0; i < count; ++i)
                    out->push_back(static_cast<Vertex>(t.number("vertex label")));
            }
            if (!t.done())
                t.fail("trailing data");
        }
    }
    rethrow([&] {
        p.validate();
        return 0;
    });
    return p;
}

Json to_json(const TripartiteGraph& p)
{
    Json j{{"parts", {p.x_size(), p.y_size(), p.z_size()}},
           {"xy", pair_list(p.xy)},
           {"xz", pair_list(p.xz)},
           {"yz", pair_list(p.yz)}};
    if (p.labelled())
        j["labels"] = {p.x_label, p.y_label, p.z_label};
    return j;
}

std::string to_text(const TripartiteGraph& p)
{
    std::ostringstream out;
    out << p.x_size() << ' ' << p.y_size() << ' ' << p.z_size() << '\n';
    text_edges(out, p.xy);
    text_edges(out, p.xz);
    text_edges(out, p.yz);
    if (p.labelled()) {
        out << "labels\n";
        for (const auto* l : {&p.x_label, &p.y_label, &p.z_label}) {
            for (std::size_t i = 0; i < l->size(); ++i)
                out << (i ? " " : "") << (*l)[i];
            out << '\n';
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Colourings and certificates

std::string coloring_dump(const PairColoring& phi, const WeightedColorSet& base)
{
    std::ostringstream out;
    const auto n = static_cast<Vertex>(phi.order());
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            out << x << ' ' << y << ' ' << base.name(phi.color(x, y)) << '\n';
    return out.str();
}

std::string coloring_dump(const PartitionedColoring& phi)
{
    std::ostringstream out;
    const auto n = static_cast<Vertex>(phi.order());
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            if (phi.part_of(x) != phi.part_of(y))
                out << x << ' ' << y << ' ' << phi.local(x, y) << '\n';
    return out.str();
}

Json to_json(const RepresentabilityCertificate& cert, const Palette& p)
{
    Json coloring = Json::array();
    for (const auto& [pair, c] : cert.coloring)
        coloring.push_back({pair[0], pair[1], p.base().name(c)});
    return Json{{"ordering", cert.ordering}, {"coloring", coloring}};
}

RepresentabilityCertificate certificate_from_json(const Json& j, const Palette& p)
{
    RepresentabilityCertificate cert;
    const auto& ord = field(j, "ordering");
    if (!ord.is_array())
        bad("ordering", "expected an array of vertices");
    for (const auto& v : ord)
        cert.ordering.push_back(static_cast<Vertex>(unsigned_of(v, "ordering")));
    const auto& col = field(j, "coloring");
    if (!col.is_array())
        bad("coloring", "expected an array of [x, y, colour]");
    for (std::size_t i = 0; i < col.size(); ++i) {
        const std::string at = "coloring[" + std::to_string(i) + "]";
        if (!col[i].is_array() || col[i].size() != 3)
            bad(at, "expected [x, y, colour]");
        const auto c = color_of(col[i][2], p.base());
        if (!c)
            bad(at, "unknown colour " + col[i][2].dump());
        cert.coloring.push_back(
            {{static_cast<Vertex>(unsigned_of(col[i][0], at)), static_cast<Vertex>(unsigned_of(col[i][1], at))}, *c});
    }
    return cert;
}

Json to_json(const ReducedMap& map)
{
    Json phi = Json::array();
    for (const auto& [pair, v] : map.phi)
        phi.push_back({pair[0], pair[1], v});
    return Json{{"lambda", map.lambda}, {"phi", phi}};
}

ReducedMap reduced_map_from_json(const Json& j)
{
    ReducedMap map;
    const auto& l = field(j, "lambda");
    if (!l.is_array())
        bad("lambda", "expected an array of indices");
    for (const auto& v : l)
        map.lambda.push_back(static_cast<Index>(unsigned_of(v, "lambda")));
    const auto& phi = field(j, "phi");
    if (!phi.is_array())
        bad("phi", "expected an array of [u, v, local]");
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const std::string at = "phi[" + std::to_string(i) + "]";
        if (!phi[i].is_array() || phi[i].size() != 3)
            bad(at, "expected [u, v, local]");
        map.phi.push_back({{static_cast<Vertex>(unsigned_of(phi[i][0], at)),
                            static_cast<Vertex>(unsigned_of(phi[i][1], at))},
                           static_cast<Local>(unsigned_of(phi[i][2], at))});
    }
    return map;
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const Rational& r) { return to_string(r); }
Json to_json(const BigInt& n) { return n.str(); }
Json to_json(const Bitset& s) { return s.members(); }

Json to_json(const DensityReport& r)
{
    Json sets = Json::array();
    for (const auto& s : r.worst.sets)
        sets.push_back(to_json(s));
    Json pair_sets = Json::array();
    for (const auto& ps : r.worst.pair_sets) {
        Json pairs = Json::array();
        for (const auto& p : ps.pairs())
            pairs.push_back(p);
        pair_sets.push_back(pairs);
    }
    return Json{{"notion", r.notion},
                {"mode", name(r.mode)},
                {"d", to_json(r.d)},
                {"eta", to_json(r.eta)},
                {"passed", r.passed()},
                {"min_slack", to_json(r.min_slack)},
                {"witness", {{"sets", sets}, {"pair_sets", pair_sets}}},
                {"space", to_json(r.space)},
                {"samples", r.samples},
                {"descent_steps", r.descent_steps},
                {"refined", r.refined},
                {"witness_slack", r.witness_slack ? to_json(*r.witness_slack) : Json(nullptr)},
                {"seed", r.seed},
                {"rng", r.rng}};
}

Json to_json(const QuasirandomReport& r)
{
    return Json{{"mode", name(r.mode)},
                {"delta", to_json(r.delta)},
                {"d", to_json(r.d)},
                {"passed", r.passed()},
                {"max_deviation", to_json(r.max_deviation)},
                {"witness", {{"a", to_json(r.worst_a)}, {"b", to_json(r.worst_b)}}},
                {"space", to_json(r.space)},
                {"samples", r.samples},
                {"seed", r.seed},
                {"rng", r.rng}};
}

Json to_json(const CountingLemmaReport& r)
{
    Json layers = Json::array();
    for (const auto& l : r.layers)
        layers.push_back(to_json(l));
    return Json{{"triangles", r.triangles},       {"expected", to_json(r.expected)},
                {"deviation", to_json(r.deviation)}, {"delta", to_json(r.delta)},
                {"within", r.within},             {"layers_pass", r.layers_pass},
                {"layers", layers}};
}

namespace {

Json witness_json(const DenseWitness& w)
{
    return Json{{"triple", w.triple},   {"role", w.role},       {"vertices", w.vertices},
                {"count", w.count},     {"out_of", w.out_of},   {"ratio", to_json(w.ratio())}};
}

} // namespace

Json to_json(const DenseCheck& c)
{
    Json j{{"dense", c.dense}};
    j["worst"] = c.worst ? witness_json(*c.worst) : Json(nullptr);
    return j;
}

Json to_json(const EtaDenseCheck& c)
{
    Json entries = Json::array();
    for (const auto& e : c.sets.entries) {
        Json pairs = Json::array();
        for (const auto& p : e.pairs)
            pairs.push_back(p);
        entries.push_back(Json{{"triple", e.triple},
                               {"role", e.role},
                               {"vertices", e.vertices},
                               {"pairs", pairs},
                               {"size", e.size()},
                               {"base", e.base},
                               {"within", e.within}});
    }
    return Json{{"dense", c.dense}, {"kind", name(c.sets.kind)}, {"exceptional", entries}};
}

Json cnf_sidecar(const CnfEncoding& cnf, const Palette& p)
{
    Json vars = Json::array();
    for (std::size_t v = 0; v < cnf.variables.size(); ++v) {
        const auto& [pair, c] = cnf.variables[v];
        vars.push_back(Json{{"var", v + 1}, {"pair", pair}, {"color", p.base().name(c)}});
    }
    return Json{{"ordering", cnf.ordering},
                {"variables", vars},
                {"clauses", cnf.clauses.size()},
                {"meaning", "variable x means shadow pair `pair` gets colour `color`"}};
}

} // namespace turan::io
