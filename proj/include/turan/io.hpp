#pragma once

#include "turan/construct.hpp"
#include "turan/density.hpp"
#include "turan/hypergraph.hpp"
#include "turan/palette.hpp"
#include "turan/quasirandom.hpp"
#include "turan/reduced.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace turan::io {

using Json = nlohmann::ordered_json;

/// Malformed input. line and column are 1-based; 0 when unknown (JSON
/// content errors report the offending key instead).
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
    std::size_t line;
    std::size_t column;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Parses JSON, converting syntax errors to ParseError with line and column.
Json parse_json(std::string_view text);

// Hypergraphs: text "n m" then m lines "a b c", or {"n": .., "edges": [[a, b, c], ..]}.
// The readers pick the format from the first non-blank character.
Hypergraph3 parse_hypergraph(std::string_view text);
Hypergraph3 hypergraph_from_json(const Json& j);
Json to_json(const Hypergraph3& h);
std::string to_text(const Hypergraph3& h);

// Palettes: {"colors": [..], "weights": ["2/3", ..], "patterns": [["red", "red", "green"], ..]}.
// "weights" is optional (uniform). Patterns use colour names or indices.
Palette parse_palette(std::string_view text);
Palette palette_from_json(const Json& j);
Json to_json(const Palette& p);
/// Generator file: same shape; the patterns are closed symmetrically.
Palette parse_generators(std::string_view text);

// Reduced hypergraphs: {"indices": m, "classes": {"i,j": size}, "constituents": {"i,j,k": [[a, b, c], ..]}}.
ReducedHypergraph parse_reduced(std::string_view text);
ReducedHypergraph reduced_from_json(const Json& j);
Json to_json(const ReducedHypergraph& a);

// Bipartite: text "x y m" then m lines "a b", or {"x": .., "y": .., "edges": [[a, b], ..]}.
BipartiteGraph parse_bipartite(std::string_view text);
Json to_json(const BipartiteGraph& g);
std::string to_text(const BipartiteGraph& g);

// Tripartite: text "x y z" then the layers xy, xz, yz, each as "m" and m
// lines "a b", optionally followed by "labels" and x + y + z vertices of H.
// JSON: {"parts": [x, y, z], "xy": [[a, b], ..], "xz": .., "yz": .., "labels": [[..], [..], [..]]}.
TripartiteGraph parse_tripartite(std::string_view text);
Json to_json(const TripartiteGraph& p);
std::string to_text(const TripartiteGraph& p);

/// "x y color" per pair x < y, colours by name.
std::string coloring_dump(const PairColoring& phi, const WeightedColorSet& base);
/// "x y local" per crossing pair x < y.
std::string coloring_dump(const PartitionedColoring& phi);

Json to_json(const RepresentabilityCertificate& cert, const Palette& p);
/// Reads a certificate back; colours by name or index.
RepresentabilityCertificate certificate_from_json(const Json& j, const Palette& p);
Json to_json(const ReducedMap& map);
ReducedMap reduced_map_from_json(const Json& j);

Json to_json(const DensityReport& r);
Json to_json(const QuasirandomReport& r);
Json to_json(const CountingLemmaReport& r);
Json to_json(const DenseCheck& c);
Json to_json(const EtaDenseCheck& c);

/// Variable map for a DIMACS export: one entry per variable.
Json cnf_sidecar(const CnfEncoding& cnf, const Palette& p);

Json to_json(const Rational& r);
Json to_json(const BigInt& n);
Json to_json(const Bitset& s);

} // namespace turan::io
