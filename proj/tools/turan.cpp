#include "turan/construct.hpp"
#include "turan/density.hpp"
#include "turan/hypergraph.hpp"
#include "turan/io.hpp"
#include "turan/palette.hpp"
#include "turan/parallel.hpp"
#include "turan/quasirandom.hpp"
#include "turan/reduced.hpp"
#include "turan/rng.hpp"
#include "turan/table.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifndef TURAN_VERSION
#define TURAN_VERSION "0.0.0"
#endif

using namespace turan;
using io::Json;

namespace {

// Exit codes: a verdict either way is 0; everything below is the exception.
constexpr int exit_mismatch = 1;     // table row or certificate check disagrees
constexpr int exit_inconclusive = 2; // budget ran out
constexpr int exit_usage = 64;
constexpr int exit_data = 65;
constexpr int exit_io = 66;
constexpr int exit_internal = 70;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Rational rational_flag(const std::string& text, const std::string& flag)
{
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError("--" + flag + ": " + e.what() + " (write rationals as p/q)");
    }
}

/// Paths that do not exist are IO errors; anything else may still be a name.
bool looks_like_path(const std::string& source)
{
    return source.find('/') != std::string::npos || source.find('.') != std::string::npos;
}

Hypergraph3 load_hypergraph(const std::string& source)
{
    if (!std::filesystem::exists(source)) {
        if (looks_like_path(source))
            throw io::IoError("cannot open " + source);
        try {
            return named(source);
        } catch (const std::invalid_argument& e) {
            throw UsageError("'" + source + "' is neither a file nor a known family: " + e.what());
        }
    }
    return io::parse_hypergraph(io::read_file(source));
}

struct LoadedPalette {
    Palette palette;
    std::optional<PaletteClaim> claim;
    std::string name;
};

LoadedPalette load_palette(const std::string& source)
{
    if (!std::filesystem::exists(source)) {
        if (looks_like_path(source))
            throw io::IoError("cannot open " + source);
        try {
            auto b = builtin(source);
            return {std::move(b.palette), b.claim, b.name};
        } catch (const std::invalid_argument& e) {
            throw UsageError("'" + source + "' is neither a file nor a builtin palette: " + e.what());
        }
    }
    return {io::parse_palette(io::read_file(source)), std::nullopt, source};
}

std::vector<Vertex> vertex_list(const std::string& text, const std::string& flag)
{
    std::vector<Vertex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const auto v = std::stoul(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            out.push_back(static_cast<Vertex>(v));
        } catch (const std::exception&) {
            throw UsageError("--" + flag + ": expected comma-separated vertices, got '" + text + "'");
        }
    }
    return out;
}

std::string rat(const Rational& r) { return to_string(r); }

/// Shared state of one invocation; leaf commands fill `result` and set `code`.
struct Run {
    std::string command;
    Json result = Json::object();
    int code = 0;
    std::string json_path;
    std::uint64_t seed = 0;
    bool seeded = false;
    Exec exec = Exec::parallel;
};

Json inputs_of(const CLI::App* app)
{
    Json in = Json::object();
    for (const auto* a = app; a != nullptr; a = a->get_parent())
        for (const auto* opt : a->get_options()) {
            if (opt->count() == 0 || opt->get_name() == "--help" || opt->get_name() == "--json")
                continue;
            const auto& res = opt->results();
            auto key = opt->get_name();
            while (!key.empty() && key.front() == '-')
                key.erase(key.begin());
            if (!opt->get_expected_min())
                in[key] = true;
            else if (res.size() == 1)
                in[key] = res.front();
            else
                in[key] = res;
        }
    return in;
}

const CLI::App* leaf(const CLI::App* app)
{
    for (const auto* sub : app->get_subcommands())
        return leaf(sub);
    return app;
}

std::string command_path(const CLI::App* app)
{
    std::string path;
    for (const auto* a = app; a->get_parent() != nullptr; a = a->get_parent())
        path = a->get_name() + (path.empty() ? "" : " " + path);
    return path;
}

void emit(const Run& run, const CLI::App& app, double seconds)
{
    if (run.json_path.empty())
        return;
    Json report{{"tool", "turan"},
                {"version", TURAN_VERSION},
                {"command", run.command},
                {"inputs", inputs_of(leaf(&app))},
                {"seed", run.seeded ? Json(run.seed) : Json(nullptr)},
                {"exit_code", run.code},
                {"result", run.result},
                {"timings", {{"seconds", seconds}}}};
    io::write_file(run.json_path, report.dump(2) + "\n");
}

void write_output(const std::string& path, const std::string& contents)
{
    if (path.empty() || path == "-")
        std::cout << contents;
    else
        io::write_file(path, contents);
}

std::string hypergraph_text(const Hypergraph3& h, const std::string& format)
{
    return format == "json" ? io::to_json(h).dump() + "\n" : io::to_text(h);
}

// ---------------------------------------------------------------------------
// palette

void cmd_palette_info(Run& run, const std::string& source)
{
    const auto lp = load_palette(source);
    const auto& p = lp.palette;
    const Rational v = density_vvv(p), e = density_ev(p), ee = density_ee(p);
    std::cout << "palette " << lp.name << ": " << p.colors() << " colours, " << p.size() << " patterns, "
              << (p.symmetric() ? "symmetric" : "not symmetric") << "\n";
    for (std::size_t c = 0; c < p.colors(); ++c)
        std::cout << "  colour " << p.base().name(static_cast<Color>(c)) << " weight "
                  << rat(p.base().weight(static_cast<Color>(c))) << "\n";
    std::cout << "density ⋯ " << rat(v) << "\ndensity ·: " << rat(e) << "\ndensity :: " << rat(ee) << "\n";
    run.result = {{"palette", io::to_json(p)},
                  {"symmetric", p.symmetric()},
                  {"patterns", p.size()},
                  {"density", {{"vvv", rat(v)}, {"ev", rat(e)}, {"ee", rat(ee)}}}};
    if (lp.claim) {
        std::cout << "claim: (" << rat(lp.claim->density) << ", " << symbol(lp.claim->notion) << ")-dense, "
                  << lp.claim->statement << "\n";
        run.result["claim"] = {{"notion", name(lp.claim->notion)},
                               {"density", rat(lp.claim->density)},
                               {"statement", lp.claim->statement}};
    }
}

void cmd_palette_closure(Run& run, const std::string& generators, const std::string& out)
{
    const auto p = io::parse_generators(io::read_file(generators));
    write_output(out, io::to_json(p).dump(2) + "\n");
    if (!out.empty() && out != "-")
        std::cout << "closed palette with " << p.size() << " patterns written to " << out << "\n";
    run.result = {{"patterns", p.size()}, {"palette", io::to_json(p)}};
}

// ---------------------------------------------------------------------------
// certify

struct CertifyArgs {
    std::string family;
    std::string palette;
    std::string reduced;
    std::string ordering;
    std::string emit_cnf;
    std::string verify;
    std::uint64_t budget = 100'000'000;
    bool allow_inconclusive = false;
    bool injective = false;
};

int verdict_code(Verdict v, bool allow_inconclusive)
{
    return v == Verdict::inconclusive && !allow_inconclusive ? exit_inconclusive : 0;
}

void certify_reduced(Run& run, const CertifyArgs& a, const Hypergraph3& f)
{
    const auto red = io::parse_reduced(io::read_file(a.reduced));
    if (!a.verify.empty()) {
        auto j = io::parse_json(io::read_file(a.verify));
        if (j.contains("result") && j["result"].contains("map"))
            j = j["result"]["map"];
        const auto map = io::reduced_map_from_json(j);
        std::string why;
        const bool ok = check_reduced_map(f, red, map, &why);
        std::cout << (ok ? "valid reduced map" : "invalid reduced map: " + why) << "\n";
        run.result = {{"valid", ok}, {"reason", why}};
        run.code = ok ? 0 : exit_mismatch;
        return;
    }
    ReducedMapOptions opt;
    opt.node_budget = a.budget;
    opt.injective = a.injective;
    opt.exec = run.exec;
    const auto r = find_reduced_map(f, red, opt);
    std::cout << "verdict " << name(r.verdict) << " after " << r.nodes << " nodes\n";
    run.result = {{"verdict", name(r.verdict)}, {"nodes", r.nodes}, {"budget", a.budget}};
    run.result["map"] = r.map ? io::to_json(*r.map) : Json(nullptr);
    run.code = verdict_code(r.verdict, a.allow_inconclusive);
}

void cmd_certify(Run& run, const CertifyArgs& a)
{
    const auto f = load_hypergraph(a.family);
    if (!a.reduced.empty())
        return certify_reduced(run, a, f);
    if (a.palette.empty())
        throw UsageError("certify needs --palette or --reduced");
    const auto lp = load_palette(a.palette);
    std::optional<std::vector<Vertex>> ordering;
    if (!a.ordering.empty())
        ordering = vertex_list(a.ordering, "ordering");

    if (!a.verify.empty()) {
        auto j = io::parse_json(io::read_file(a.verify));
        if (j.contains("result") && j["result"].contains("certificate"))
            j = j["result"]["certificate"];
        const auto cert = io::certificate_from_json(j, lp.palette);
        const bool ok = check_certificate(f, lp.palette, cert);
        std::cout << (ok ? "valid certificate" : "invalid certificate") << "\n";
        run.result = {{"valid", ok}};
        run.code = ok ? 0 : exit_mismatch;
        return;
    }

    const auto r = representable(f, lp.palette, ordering, {a.budget, run.exec});
    std::cout << "verdict " << name(r.verdict) << " (space " << r.space << ", " << r.nodes << " nodes, "
              << r.orderings_explored << " orderings)\n";
    if (r.verdict == Verdict::free && lp.claim)
        std::cout << "F is not representable in " << lp.name << ", so π" << symbol(lp.claim->notion)
                  << "(F) ≥ " << rat(lp.claim->density) << "\n";
    run.result = {{"verdict", name(r.verdict)},
                  {"space", io::to_json(r.space)},
                  {"nodes", r.nodes},
                  {"orderings_explored", r.orderings_explored},
                  {"budget", a.budget},
                  {"palette", lp.name}};
    run.result["certificate"] = r.certificate ? io::to_json(*r.certificate, lp.palette) : Json(nullptr);
    if (!a.emit_cnf.empty()) {
        const auto cnf = encode_cnf(f, lp.palette, ordering ? ordering : (r.certificate ? std::optional(r.certificate->ordering) : std::nullopt));
        std::ostringstream out;
        write_dimacs(out, cnf);
        io::write_file(a.emit_cnf, out.str());
        io::write_file(a.emit_cnf + ".json", io::cnf_sidecar(cnf, lp.palette).dump(2) + "\n");
        std::cout << "CNF with " << cnf.variables.size() << " variables and " << cnf.clauses.size()
                  << " clauses written to " << a.emit_cnf << "\n";
        run.result["cnf"] = {{"path", a.emit_cnf},
                             {"sidecar", a.emit_cnf + ".json"},
                             {"variables", cnf.variables.size()},
                             {"clauses", cnf.clauses.size()}};
    }
    run.code = verdict_code(r.verdict, a.allow_inconclusive);
}

// ---------------------------------------------------------------------------
// table

void cmd_table(Run& run, std::uint64_t budget, const std::string& csv)
{
    Json rows = Json::array();
    std::ostringstream table;
    table << "family,palette,notion,density,verdict,space,nodes,statement,matches\n";
    bool all = true;
    for (const auto& e : bounds_table()) {
        const auto row = run_table_entry(e, {budget, run.exec});
        all = all && row.matches;
        std::cout << (row.matches ? "" : "MISMATCH ") << e.palette << " ⇒ " << row.statement << "  ["
                  << name(row.result.verdict) << ", space " << row.result.space << "]\n";
        rows.push_back(Json{{"family", e.family},
                            {"palette", e.palette},
                            {"notion", name(e.notion)},
                            {"density", rat(row.density)},
                            {"expected_density", rat(e.density)},
                            {"verdict", name(row.result.verdict)},
                            {"expected_verdict", name(e.expected)},
                            {"pending", row.pending},
                            {"space", io::to_json(row.result.space)},
                            {"nodes", row.result.nodes},
                            {"statement", row.statement},
                            {"matches", row.matches}});
        table << e.family << ',' << e.palette << ',' << name(e.notion) << ',' << rat(row.density) << ','
              << name(row.result.verdict) << ',' << row.result.space << ',' << row.result.nodes << ",\""
              << row.statement << "\"," << (row.matches ? "yes" : "no") << '\n';
    }
    if (!csv.empty())
        io::write_file(csv, table.str());
    run.result = {{"rows", rows}, {"all_match", all}, {"budget", budget}};
    run.code = all ? 0 : exit_mismatch;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    std::size_t n = 0;
    std::string out;
    std::string format = "text";
    std::string coloring;
    std::string palette;
    std::string reduced;
    std::size_t block = 0;
    std::string class_spec;
    std::string class_out;
    std::size_t m = 0;
    std::size_t class_size = 0;
    std::string p = "1/2";
    std::string repair;
    std::size_t x = 0, y = 0, z = 0;
};

void report_hypergraph(Run& run, const Hypergraph3& h, const GenArgs& g)
{
    write_output(g.out, hypergraph_text(h, g.format));
    const Rational dens = h.order() < 3 ? Rational(0)
                                        : Rational(static_cast<long long>(h.size()),
                                                   static_cast<long long>(h.order() * (h.order() - 1) *
                                                                          (h.order() - 2) / 6));
    if (!g.out.empty() && g.out != "-")
        std::cout << "n " << h.order() << ", " << h.size() << " edges, edge density " << rat(dens) << " ≈ "
                  << to_double(dens) << ", seed " << run.seed << ", written to " << g.out << "\n";
    run.result = {{"n", h.order()}, {"edges", h.size()}, {"edge_density", rat(dens)}, {"output", g.out}};
}

void cmd_gen_palette(Run& run, const GenArgs& g, const std::string& source)
{
    const auto lp = load_palette(source);
    const auto phi = random_pair_coloring(g.n, lp.palette.base(), run.seed);
    const auto h = build_H(phi, lp.palette, run.exec);
    report_hypergraph(run, h, g);
    run.result["palette"] = lp.name;
    if (!g.coloring.empty()) {
        io::write_file(g.coloring, io::coloring_dump(phi, lp.palette.base()));
        run.result["coloring"] = g.coloring;
    }
}

ReducedHypergraph reduced_source(const GenArgs& g, std::uint64_t seed)
{
    if (!g.reduced.empty())
        return io::parse_reduced(io::read_file(g.reduced));
    if (!g.palette.empty()) {
        if (g.m < 3)
            throw UsageError("--m must be at least 3");
        return from_palette(load_palette(g.palette).palette, g.m);
    }
    if (g.m < 3 || g.class_size == 0)
        throw UsageError("a random reduced hypergraph needs --m >= 3 and --class-size >= 1");
    auto a = random_reduced(g.m, g.class_size, rational_flag(g.p, "p"), seed);
    if (!g.repair.empty())
        repair_ee_dense(a, rational_flag(g.repair, "repair-ee"), seed);
    return a;
}

void cmd_gen_lift(Run& run, const GenArgs& g)
{
    if (g.block == 0)
        throw UsageError("--block must be at least 1");
    const auto a = reduced_source(g, run.seed);
    const auto lift = lift_reduced(a, g.block, run.seed);
    report_hypergraph(run, lift.h, g);
    run.result["indices"] = a.indices();
    run.result["block"] = g.block;
    if (!g.coloring.empty()) {
        io::write_file(g.coloring, io::coloring_dump(lift.coloring));
        run.result["coloring"] = g.coloring;
    }
    if (!g.class_out.empty()) {
        const auto idx = vertex_list(g.class_spec.empty() ? "0,1,0" : g.class_spec, "class");
        if (idx.size() != 3)
            throw UsageError("--class expects i,j,colour");
        if (idx[0] >= a.indices() || idx[1] >= a.indices() || idx[0] == idx[1] ||
            idx[2] >= a.class_size(idx[0], idx[1]))
            throw UsageError("--class names no colour class of the reduced hypergraph");
        const auto cls = color_class(lift.coloring, idx[0], idx[1], idx[2]);
        io::write_file(g.class_out, io::to_text(cls));
        run.result["class"] = {{"path", g.class_out}, {"edges", cls.size()}, {"density", rat(cls.density())}};
    }
}

void cmd_gen_reduced(Run& run, const GenArgs& g)
{
    const auto a = reduced_source(g, run.seed);
    write_output(g.out, io::to_json(a).dump() + "\n");
    std::size_t edges = 0;
    for (const auto& t : a.triples())
        edges += a.constituent(t[0], t[1], t[2]).size();
    if (!g.out.empty() && g.out != "-")
        std::cout << a.indices() << " indices, " << edges << " constituent edges, written to " << g.out << "\n";
    run.result = {{"indices", a.indices()}, {"constituent_edges", edges}, {"output", g.out}};
}

void cmd_gen_bipartite(Run& run, const GenArgs& g)
{
    const auto gr = random_bipartite(g.x, g.y, rational_flag(g.p, "p"), run.seed);
    write_output(g.out, g.format == "json" ? io::to_json(gr).dump() + "\n" : io::to_text(gr));
    run.result = {{"x", g.x}, {"y", g.y}, {"edges", gr.size()}, {"output", g.out}};
}

void cmd_gen_tripartite(Run& run, const GenArgs& g)
{
    const auto p = rational_flag(g.p, "p");
    const Rng base(run.seed);
    TripartiteGraph t;
    t.xy = random_bipartite(g.x, g.y, p, base.split(0).next());
    t.xz = random_bipartite(g.x, g.z, p, base.split(1).next());
    t.yz = random_bipartite(g.y, g.z, p, base.split(2).next());
    write_output(g.out, g.format == "json" ? io::to_json(t).dump() + "\n" : io::to_text(t));
    run.result = {{"parts", {g.x, g.y, g.z}}, {"triangles", triangle_count(t)}, {"output", g.out}};
}

// ---------------------------------------------------------------------------
// audit

struct AuditArgs {
    std::string input;
    std::string notion;
    std::string d;
    std::string eta = "0";
    std::string delta;
    std::string dxy, dxz, dyz;
    std::string hypergraph;
    std::uint64_t samples = 100'000;
    std::optional<std::size_t> exact_threshold;
    bool exact = false;
    bool sampled = false;
    std::size_t first = 0;
};

Hypergraph3 restrict_first(const Hypergraph3& h, std::size_t first)
{
    if (first == 0 || first >= h.order())
        return h;
    std::vector<Triple> kept;
    for (const auto& e : h.edges())
        if (e[2] < first)
            kept.push_back(e);
    return Hypergraph3::make(first, kept);
}

AuditOptions audit_options(const Run& run, const AuditArgs& a, std::size_t n)
{
    if (a.exact && a.sampled)
        throw UsageError("--exact and --sampled exclude each other");
    AuditOptions o;
    o.samples = a.samples;
    o.seed = run.seed;
    o.exec = run.exec;
    o.exact_threshold = a.exact_threshold;
    if (a.exact)
        o.exact_threshold = n;
    if (a.sampled)
        o.exact_threshold = 0;
    return o;
}

void print_density(const DensityReport& r)
{
    std::cout << r.notion << " audit (" << name(r.mode) << "): d " << rat(r.d) << ", η " << rat(r.eta)
              << ", min slack " << rat(r.min_slack) << " -> " << (r.passed() ? "pass" : "FAIL") << "\n";
    if (r.mode == AuditMode::exact)
        std::cout << "  enumerated space " << r.space << "\n";
    else if (r.mode == AuditMode::certified)
        std::cout << "  verdict covers space " << r.space << "; slack is a proven lower bound, " << r.refined
                  << " outer sets refined exactly, witness slack " << rat(*r.witness_slack) << "\n";
    else
        std::cout << "  " << r.samples << " samples, " << r.descent_steps << " descent steps, seed " << r.seed
                  << " (" << r.rng << ")\n";
}

void cmd_audit_density(Run& run, const AuditArgs& a, std::optional<Notion> notion)
{
    if (a.input.empty())
        throw UsageError("audit needs --input");
    if (a.d.empty())
        throw UsageError("audit needs --d");
    const auto h = restrict_first(load_hypergraph(a.input), a.first);
    const auto d = rational_flag(a.d, "d"), eta = rational_flag(a.eta, "eta");
    const auto opt = audit_options(run, a, h.order());
    const auto r = notion ? audit_star_dense(h, *notion, d, eta, opt) : audit_uniform_dense(h, d, eta, opt);
    print_density(r);
    run.result = io::to_json(r);
    run.result["n"] = h.order();
}

QuasirandomOptions qr_options(const Run& run, const AuditArgs& a)
{
    if (a.exact && a.sampled)
        throw UsageError("--exact and --sampled exclude each other");
    QuasirandomOptions o;
    o.samples = a.samples;
    o.seed = run.seed;
    o.exec = run.exec;
    if (a.exact_threshold)
        o.exact_threshold = *a.exact_threshold;
    if (a.exact)
        o.exact_threshold = 40;
    if (a.sampled)
        o.exact_threshold = 0;
    return o;
}

void cmd_audit_quasirandom(Run& run, const AuditArgs& a)
{
    if (a.input.empty() || a.delta.empty())
        throw UsageError("audit quasirandom needs --input and --delta");
    const auto delta = rational_flag(a.delta, "delta");
    const auto given_d = a.d.empty() ? std::nullopt : std::optional(rational_flag(a.d, "d"));
    const auto g = io::parse_bipartite(io::read_file(a.input));
    const auto d = given_d ? *given_d : g.density();
    const auto r = audit_quasirandom(g, delta, d, qr_options(run, a));
    std::cout << "quasirandom audit (" << name(r.mode) << ") of " << g.x_size() << "x" << g.y_size() << ": d "
              << rat(d) << ", δ " << rat(r.delta) << ", max deviation " << rat(r.max_deviation) << " ≈ "
              << to_double(r.max_deviation) << " -> " << (r.passed() ? "pass" : "FAIL") << "\n";
    run.result = io::to_json(r);
}

void cmd_audit_counting(Run& run, const AuditArgs& a)
{
    if (a.input.empty())
        throw UsageError("audit counting-lemma needs --input");
    // reject malformed rationals before touching the input
    for (const auto& [text, flag] : {std::pair{a.delta, "delta"}, {a.dxy, "dxy"}, {a.dxz, "dxz"}, {a.dyz, "dyz"}})
        if (!text.empty())
            rational_flag(text, flag);
    const auto p = io::parse_tripartite(io::read_file(a.input));
    const auto opt = qr_options(run, a);
    const auto delta = a.delta.empty() ? audited_delta(p, opt) : rational_flag(a.delta, "delta");
    const auto pick = [](const std::string& s, const BipartiteGraph& g, const char* flag) {
        return s.empty() ? g.density() : rational_flag(s, flag);
    };
    const auto r = check_counting_lemma(p, delta, pick(a.dxy, p.xy, "dxy"), pick(a.dxz, p.xz, "dxz"),
                                        pick(a.dyz, p.yz, "dyz"), opt);
    std::cout << r.triangles << " triangles, expected " << rat(r.expected) << ", deviation " << rat(r.deviation)
              << " vs 3δ = " << rat(3 * delta) << " -> " << (r.within ? "within" : "OUTSIDE")
              << "; layers " << (r.layers_pass ? "pass" : "fail") << " at δ " << rat(delta) << "\n";
    run.result = io::to_json(r);
    if (!a.hypergraph.empty()) {
        const auto h = load_hypergraph(a.hypergraph);
        const auto rel = relative_density(h, p);
        const auto reg = audit_regularity_sampled(h, p, std::nullopt, std::min<std::uint64_t>(a.samples, 1000),
                                                  run.seed);
        std::cout << "d(H|P) = " << rat(rel) << "; sampled regularity deviation " << rat(reg.max_deviation)
                  << " (heuristic, " << reg.samples << " subgraphs)\n";
        run.result["relative_density"] = rat(rel);
        run.result["regularity"] = {{"d3", rat(reg.d3)},
                                    {"max_deviation", rat(reg.max_deviation)},
                                    {"samples", reg.samples},
                                    {"heuristic", true}};
    }
}

// ---------------------------------------------------------------------------
// reduced

struct ReducedArgs {
    std::string input;
    std::string notion = "ee";
    std::string d;
    std::string eta;
    std::string out;
    std::size_t ell = 0;
    std::string eps;
    std::string family;
    std::uint64_t budget = 100'000'000;
    bool cross_check = false;
};

void cmd_reduced_check(Run& run, const ReducedArgs& r)
{
    const auto a = io::parse_reduced(io::read_file(r.input));
    const auto notion = parse_notion(r.notion);
    if (!notion)
        throw UsageError("--notion must be vvv, ev or ee");
    if (r.d.empty())
        throw UsageError("reduced check needs --d");
    const auto d = rational_flag(r.d, "d");
    if (!r.eta.empty()) {
        const auto c = check_eta_dense(a, *notion, d, rational_flag(r.eta, "eta"), run.exec);
        std::size_t total = 0;
        for (const auto& e : c.sets.entries)
            total += e.size();
        std::cout << "(" << rat(d) << ", " << r.eta << ", " << symbol(*notion) << ")-dense: "
                  << (c.dense ? "yes" : "no") << " (" << c.sets.entries.size() << " exceptional sets, " << total
                  << " members)\n";
        run.result = io::to_json(c);
        return;
    }
    const auto c = check_dense(a, *notion, d, run.exec);
    std::cout << "(" << rat(d) << ", " << symbol(*notion) << ")-dense: " << (c.dense ? "yes" : "no");
    if (c.worst)
        std::cout << "; least ratio " << rat(c.worst->ratio()) << " at triple " << c.worst->triple[0] << ","
                  << c.worst->triple[1] << "," << c.worst->triple[2];
    std::cout << "\n";
    run.result = io::to_json(c);
}

void cmd_reduced_purge(Run& run, const ReducedArgs& r)
{
    const auto a = io::parse_reduced(io::read_file(r.input));
    if (r.d.empty())
        throw UsageError("reduced purge needs --d");
    const auto res = purge_ev(a, rational_flag(r.d, "d"));
    std::size_t before = 0, after = 0;
    for (auto s : a.class_sizes())
        before += s;
    for (auto s : res.reduced.class_sizes())
        after += s;
    write_output(r.out, io::to_json(res.reduced).dump() + "\n");
    std::cout << "purged " << before - after << " of " << before << " class vertices\n";
    run.result = {{"removed", before - after}, {"kept", res.kept}, {"output", r.out}};
}

void cmd_reduced_project(Run& run, const ReducedArgs& r)
{
    const auto a = io::parse_reduced(io::read_file(r.input));
    if (r.ell == 0)
        throw UsageError("--ell must be at least 1");
    const auto res = project_random(a, r.ell, run.seed);
    write_output(r.out, io::to_json(res.reduced).dump() + "\n");
    std::cout << "projected onto classes of size " << r.ell << ", seed " << run.seed << "\n";
    run.result = {{"ell", r.ell}, {"psi", res.psi}, {"output", r.out}};
}

void cmd_reduced_map(Run& run, const ReducedArgs& r, bool injective, bool allow_inconclusive)
{
    const auto f = load_hypergraph(r.family);
    const auto a = io::parse_reduced(io::read_file(r.input));
    ReducedMapOptions opt;
    opt.node_budget = r.budget;
    opt.injective = injective;
    opt.exec = run.exec;
    const auto res = find_reduced_map(f, a, opt);
    std::cout << "verdict " << name(res.verdict) << " after " << res.nodes << " nodes\n";
    run.result = {{"verdict", name(res.verdict)}, {"nodes", res.nodes}, {"budget", r.budget}};
    run.result["map"] = res.map ? io::to_json(*res.map) : Json(nullptr);
    run.code = verdict_code(res.verdict, allow_inconclusive);
}

void cmd_reduced_tetra(Run& run, const ReducedArgs& r)
{
    const auto a = io::parse_reduced(io::read_file(r.input));
    if (r.eps.empty())
        throw UsageError("reduced tetra needs --eps");
    const auto eps = rational_flag(r.eps, "eps");
    const auto plan = tetrahedron_plan(eps);
    try {
        const auto t = tetrahedron_greedy(a, eps);
        const bool valid = check_reduced_map(clique(4), a, t.map);
        std::cout << "tetrahedron on indices " << t.indices[0] << "," << t.indices[1] << "," << t.indices[2]
                  << "," << t.indices[3] << " (|X| " << plan.x_size << ", |Y| " << plan.y_required << "), "
                  << (valid ? "valid" : "INVALID") << "\n";
        run.result = {{"verdict", "certificate"}, {"indices", t.indices}, {"map", io::to_json(t.map)}, {"valid", valid}};
        run.code = valid ? 0 : exit_internal;
    } catch (const PrecheckError& e) {
        std::cout << "precheck failed: " << e.what() << "\n";
        run.result = {{"verdict", "precheck_failed"}, {"reason", e.what()}};
        run.code = exit_data;
    }
    run.result["plan"] = {{"x_size", plan.x_size}, {"y_required", plan.y_required},
                          {"indices_required", plan.indices_required}};
    if (r.cross_check) {
        const auto res = find_reduced_map(clique(4), a, {r.budget, false, run.exec});
        std::cout << "backtracking search: " << name(res.verdict) << " after " << res.nodes << " nodes\n";
        run.result["search"] = {{"verdict", name(res.verdict)}, {"nodes", res.nodes}};
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Palette constructions, certificates and density audits for 3-uniform hypergraph Turán problems",
                 "turan"};
    app.set_version_flag("--version", TURAN_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    Run run;
    int workers = 0;
    bool serial = false;
    app.add_option("--json", run.json_path, "Write a machine-readable report here");
    app.add_option("--workers", workers, "OpenMP worker count (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_flag("--serial", serial, "Use the serial reference kernels");
    app.add_option("--seed", run.seed, "64-bit seed for randomized commands");

    std::function<void()> action;

    // palette
    auto* palette = app.add_subcommand("palette", "Inspect and close palettes")->require_subcommand(1);
    std::string palette_source, generators, closure_out;
    auto* pinfo = palette->add_subcommand("info", "Densities, symmetry and patterns of a palette");
    pinfo->add_option("--builtin,--palette,--file", palette_source, "Builtin name or palette JSON")->required();
    pinfo->callback([&] { action = [&] { cmd_palette_info(run, palette_source); }; });
    auto* pclose = palette->add_subcommand("closure", "Symmetric closure of generator patterns");
    pclose->add_option("--generators", generators, "Generator JSON")->required()->check(CLI::ExistingFile);
    pclose->add_option("--out", closure_out, "Output palette JSON (stdout if absent)");
    pclose->callback([&] { action = [&] { cmd_palette_closure(run, generators, closure_out); }; });
    auto* plist = palette->add_subcommand("list", "Builtin palette names");
    plist->callback([&] {
        action = [&] {
            for (const auto& n : builtin_names())
                std::cout << n << "\n";
            run.result = {{"builtins", builtin_names()}};
        };
    });

    // certify
    CertifyArgs cert;
    auto* certify = app.add_subcommand("certify", "Decide representability of F in a palette or reduced hypergraph");
    certify->add_option("--F", cert.family, "Family name (k4, k4minus, fano, ...) or hypergraph file")->required();
    certify->add_option("--palette", cert.palette, "Builtin name or palette JSON");
    certify->add_option("--reduced", cert.reduced, "Reduced hypergraph JSON (searches for a reduced map)");
    certify->add_option("--ordering", cert.ordering, "Fixed vertex ordering, comma separated");
    certify->add_option("--emit-cnf", cert.emit_cnf, "Write the DIMACS instance and a .json variable map");
    certify->add_option("--budget", cert.budget, "Search node budget")->capture_default_str();
    certify->add_option("--verify", cert.verify, "Revalidate a certificate or report JSON instead of searching");
    certify->add_flag("--allow-inconclusive", cert.allow_inconclusive, "Exit 0 when the budget runs out");
    certify->add_flag("--injective", cert.injective, "Reduced maps must use distinct indices");
    certify->callback([&] { action = [&] { cmd_certify(run, cert); }; });

    // table
    std::uint64_t table_budget = 100'000'000;
    std::string table_csv;
    auto* table = app.add_subcommand("table", "Reproduce the lower-bound certificate table");
    table->add_option("--budget", table_budget, "Node budget per row")->capture_default_str();
    table->add_option("--csv", table_csv, "Also write the rows as CSV");
    table->callback([&] { action = [&] { cmd_table(run, table_budget, table_csv); }; });

    // gen
    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Seeded constructions")->require_subcommand(1);
    auto out_opts = [&](CLI::App* c) {
        c->add_option("--out", gen.out, "Output file (stdout if absent)");
        c->add_option("--format", gen.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };
    auto* gt = g->add_subcommand("tournament", "Cyclic triangles of a random tournament");
    gt->add_option("--n", gen.n)->required()->check(CLI::Range(3, 100000));
    out_opts(gt);
    gt->callback([&] {
        action = [&] {
            run.seeded = true;
            report_hypergraph(run, tournament_hypergraph(gen.n, run.seed), gen);
        };
    });
    auto* gr = g->add_subcommand("roedl", "Rödl's construction: ij and ik coloured differently");
    gr->add_option("--n", gen.n)->required()->check(CLI::Range(3, 100000));
    out_opts(gr);
    gr->callback([&] {
        action = [&] {
            run.seeded = true;
            report_hypergraph(run, roedl_hypergraph(gen.n, run.seed), gen);
        };
    });
    auto* gp = g->add_subcommand("palette", "H^P_phi for a random colouring phi");
    gp->add_option("--palette", gen.palette, "Builtin name or palette JSON")->required();
    gp->add_option("--n", gen.n)->required()->check(CLI::Range(1, 100000));
    gp->add_option("--coloring", gen.coloring, "Write the colouring as 'x y colour' lines");
    out_opts(gp);
    gp->callback([&] {
        action = [&] {
            run.seeded = true;
            cmd_gen_palette(run, gen, gen.palette);
        };
    });
    auto reduced_source_opts = [&](CLI::App* c) {
        c->add_option("--reduced", gen.reduced, "Reduced hypergraph JSON");
        c->add_option("--palette", gen.palette, "Build from a palette with --m indices");
        c->add_option("--m", gen.m, "Number of indices");
        c->add_option("--class-size", gen.class_size, "Class size of a random reduced hypergraph");
        c->add_option("--p", gen.p, "Constituent edge probability (p/q)")->capture_default_str();
        c->add_option("--repair-ee", gen.repair, "Top up to (d, ::)-density");
    };
    auto* gl = g->add_subcommand("lift", "Lift a reduced hypergraph through a random partitioned colouring");
    reduced_source_opts(gl);
    gl->add_option("--block", gen.block, "Vertices per index")->required();
    gl->add_option("--coloring", gen.coloring, "Write the colouring as 'x y local' lines");
    gl->add_option("--class", gen.class_spec, "Colour class i,j,c to extract (default 0,1,0)");
    gl->add_option("--class-out", gen.class_out, "Write that colour class as a bipartite graph");
    out_opts(gl);
    gl->callback([&] {
        action = [&] {
            run.seeded = true;
            cmd_gen_lift(run, gen);
        };
    });
    auto* gred = g->add_subcommand("reduced", "Reduced hypergraph from a palette or at random");
    reduced_source_opts(gred);
    gred->add_option("--out", gen.out, "Output JSON (stdout if absent)");
    gred->callback([&] {
        action = [&] {
            run.seeded = gen.palette.empty() && gen.reduced.empty();
            cmd_gen_reduced(run, gen);
        };
    });
    auto* gb = g->add_subcommand("bipartite", "Random bipartite graph");
    gb->add_option("--x", gen.x)->required();
    gb->add_option("--y", gen.y)->required();
    gb->add_option("--p", gen.p)->capture_default_str();
    out_opts(gb);
    gb->callback([&] {
        action = [&] {
            run.seeded = true;
            cmd_gen_bipartite(run, gen);
        };
    });
    auto* gtri = g->add_subcommand("tripartite", "Random tripartite graph");
    gtri->add_option("--x", gen.x)->required();
    gtri->add_option("--y", gen.y)->required();
    gtri->add_option("--z", gen.z)->required();
    gtri->add_option("--p", gen.p)->capture_default_str();
    out_opts(gtri);
    gtri->callback([&] {
        action = [&] {
            run.seeded = true;
            cmd_gen_tripartite(run, gen);
        };
    });

    // audit
    AuditArgs au;
    auto* audit = app.add_subcommand("audit", "Density and quasirandomness audits");
    audit->require_subcommand(0, 1);
    auto audit_common = [&](CLI::App* c) {
        c->add_option("--input", au.input, "Input file (or family name for hypergraphs)");
        c->add_option("--samples", au.samples, "Samples in sampled mode")->capture_default_str();
        c->add_option("--exact-threshold", au.exact_threshold, "Largest size audited exactly");
        c->add_flag("--exact", au.exact, "Force exhaustive enumeration");
        c->add_flag("--sampled", au.sampled, "Force sampling");
    };
    auto density_opts = [&](CLI::App* c) {
        c->add_option("--d", au.d, "Density d (p/q)");
        c->add_option("--eta", au.eta, "Error η (p/q)")->capture_default_str();
        c->add_option("--first", au.first, "Audit the subhypergraph induced on the first N vertices");
    };
    audit_common(audit);
    density_opts(audit);
    audit->add_option("--notion", au.notion, "uniform, vvv, ev or ee");
    auto* au_uniform = audit->add_subcommand("uniform", "Uniform (d, η)-density");
    au_uniform->callback([&] { action = [&] { cmd_audit_density(run, au, std::nullopt); }; });
    auto* au_star = audit->add_subcommand("star", "(d, η, ⋆)-density");
    au_star->callback([&] {
        action = [&] {
            const auto n = parse_notion(au.notion);
            if (!n)
                throw UsageError("--notion must be vvv, ev or ee");
            cmd_audit_density(run, au, n);
        };
    });
    auto* au_qr = audit->add_subcommand("quasirandom", "(δ, d)-quasirandomness of a bipartite graph");
    au_qr->add_option("--delta", au.delta, "δ (p/q)");
    au_qr->callback([&] { action = [&] { cmd_audit_quasirandom(run, au); }; });
    auto* au_cl = audit->add_subcommand("counting-lemma", "Triangle count of a tripartite graph against 3δ");
    au_cl->add_option("--delta", au.delta, "δ (default: audited from the layers)");
    au_cl->add_option("--dxy", au.dxy);
    au_cl->add_option("--dxz", au.dxz);
    au_cl->add_option("--dyz", au.dyz);
    au_cl->add_option("--hypergraph", au.hypergraph, "H for d(H|P) and a sampled regularity audit (needs labels)");
    au_cl->callback([&] { action = [&] { cmd_audit_counting(run, au); }; });
    audit->callback([&] {
        if (audit->get_subcommands().empty()) {
            action = [&] {
                if (au.notion.empty() || au.notion == "uniform")
                    return cmd_audit_density(run, au, std::nullopt);
                const auto n = parse_notion(au.notion);
                if (!n)
                    throw UsageError("--notion must be uniform, vvv, ev or ee");
                cmd_audit_density(run, au, n);
            };
        }
        run.seeded = true;
    });

    // reduced
    ReducedArgs ra;
    bool injective = false, allow_inconclusive = false;
    auto* red = app.add_subcommand("reduced", "Reduced hypergraph operations")->require_subcommand(1);
    auto rin = [&](CLI::App* c) { c->add_option("--input", ra.input, "Reduced hypergraph JSON")->required(); };
    auto* rc = red->add_subcommand("check", "(d, ⋆)- or (d, η, ⋆)-density");
    rin(rc);
    rc->add_option("--notion", ra.notion)->capture_default_str();
    rc->add_option("--d", ra.d);
    rc->add_option("--eta", ra.eta, "Also list exceptional sets against η");
    rc->callback([&] { action = [&] { cmd_reduced_check(run, ra); }; });
    auto* rp = red->add_subcommand("purge", "Remove vertices of low ·: degree");
    rin(rp);
    rp->add_option("--d", ra.d);
    rp->add_option("--out", ra.out);
    rp->callback([&] { action = [&] { cmd_reduced_purge(run, ra); }; });
    auto* rpr = red->add_subcommand("project", "Random projection onto classes of size ℓ");
    rin(rpr);
    rpr->add_option("--ell", ra.ell)->required();
    rpr->add_option("--out", ra.out);
    rpr->callback([&] {
        action = [&] {
            run.seeded = true;
            cmd_reduced_project(run, ra);
        };
    });
    auto* rm = red->add_subcommand("map", "Search for a reduced map of F");
    rin(rm);
    rm->add_option("--F", ra.family)->required();
    rm->add_option("--budget", ra.budget)->capture_default_str();
    rm->add_flag("--injective", injective);
    rm->add_flag("--allow-inconclusive", allow_inconclusive);
    rm->callback([&] { action = [&] { cmd_reduced_map(run, ra, injective, allow_inconclusive); }; });
    auto* rt = red->add_subcommand("tetra", "Greedy reduced tetrahedron for (ε, ::)-dense inputs");
    rin(rt);
    rt->add_option("--eps", ra.eps)->required();
    rt->add_flag("--cross-check", ra.cross_check, "Also run the backtracking map search");
    rt->add_option("--budget", ra.budget)->capture_default_str();
    rt->callback([&] { action = [&] { cmd_reduced_tetra(run, ra); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    set_workers(workers);
    run.exec = serial ? Exec::serial : Exec::parallel;
    run.command = command_path(leaf(&app));
    const auto start = std::chrono::steady_clock::now();
    try {
        if (!action)
            throw UsageError("nothing to do");
        action();
        emit(run, app, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        return run.code;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_data;
    } catch (const io::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const PrecheckError& e) {
        std::cerr << "precheck failed: " << e.what() << "\n";
        return exit_data;
    } catch (const EmptyClassError& e) {
        std::cerr << "purge emptied a class: " << e.what() << "\n";
        return exit_data;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}
