#pragma once

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "bgm/basis.hpp"
#include "bgm/graph.hpp"
#include "bgm/model.hpp"
#include "bgm/special.hpp"
#include "bgm/structural.hpp"

namespace bgm {

using Json = nlohmann::json;

// Graphs. Text: first line n, then one "u v" pair per line (0-based). Blank lines and
// lines starting with '#' are ignored. JSON: {"n": int, "edges": [[u, v], ...]}.
Graph parse_graph_text(const std::string& text);
std::string graph_to_text(const Graph& g);
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);
/// Picks JSON when the first non-blank character is '{'.
Graph parse_graph(const std::string& text);
Graph read_graph_file(const std::string& path);

// Tables. Text: one "bitstring count" per line. JSON: {"n": int, "entries": {"0101": 2}}.
Table parse_table_text(const std::string& text);
std::string table_to_text(const Table& t);
Json table_to_json(const Table& t);
Table table_from_json(const Json& j);

// Moves in tableau notation, one bracketed row per unit on each side:
//   [ 1 0 1 1 ]   [ 1 1 1 1 ]
//   [ 1 1 1 0 ] - [ 1 0 1 0 ]
// The minus sign sits on one row; several moves are separated by blank lines.
std::string move_to_tableau(const Move& m);
std::vector<Move> parse_tableaux(const std::string& text);
Move parse_tableau(const std::string& text);
Json move_to_json(const Move& m);
Move move_from_json(const Json& j);

Json basis_report_to_json(const BasisReport& r);
BasisReport basis_report_from_json(const Json& j);

Json certificate_to_json(const Graph& g, const ReductionCertificate& c);
std::pair<Graph, ReductionCertificate> certificate_from_json(const Json& j);

Json candidate_to_json(const GeneratorCandidate& c);
GeneratorCandidate candidate_from_json(const Json& j);

/// Throws ParseError (line 0) when the text is not valid JSON.
Json parse_json(const std::string& text);
/// Throws ArgumentError when the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace bgm
