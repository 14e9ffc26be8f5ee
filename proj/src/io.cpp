#include "bgm/io.hpp"

#include <fstream>
#include <sstream>

#include "bgm/errors.hpp"

namespace bgm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

bool skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

// Converts a JSON type or range error into ParseError.
template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what(), 0);
  } catch (const ArgumentError& e) {
    throw ParseError(std::string(what) + ": " + e.what(), 0);
  }
}

bool all_bits(const std::string& s) {
  return !s.empty() && s.find_first_not_of("01") == std::string::npos;
}

}  // namespace

Graph parse_graph_text(const std::string& text) {
  const auto lines = lines_of(text);
  int n = -1;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (skippable(lines[i])) continue;
    const int lineno = static_cast<int>(i + 1);
    std::istringstream in(lines[i]);
    if (n < 0) {
      if (!(in >> n) || n < 0) throw ParseError("expected a vertex count", lineno);
      std::string rest;
      if (in >> rest) throw ParseError("unexpected text after the vertex count", lineno);
      continue;
    }
    int u = 0, v = 0;
    std::string rest;
    if (!(in >> u >> v) || (in >> rest)) throw ParseError("expected an edge 'u v'", lineno);
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("edge endpoint out of range", lineno);
    if (u == v) throw ParseError("loop edge", lineno);
    for (const Edge& e : edges)
      if (e == Edge(u, v)) throw ParseError("repeated edge", lineno);
    edges.emplace_back(u, v);
  }
  if (n < 0) throw ParseError("empty graph file", 0);
  return Graph(n, std::move(edges));
}

std::string graph_to_text(const Graph& g) {
  std::ostringstream out;
  out << g.order() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.order()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  return guarded("graph", [&] {
    const int n = j.at("n").get<int>();
    if (n < 0) throw ParseError("graph: negative vertex count", 0);
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (e.size() != 2) throw ParseError("graph: an edge needs two endpoints", 0);
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph(n, std::move(edges));
  });
}

Graph parse_graph(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t[0] == '{') return graph_from_json(parse_json(text));
  return parse_graph_text(text);
}

Graph read_graph_file(const std::string& path) { return parse_graph(read_file(path)); }

Table parse_table_text(const std::string& text) {
  const auto lines = lines_of(text);
  std::optional<Table> t;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (skippable(lines[i])) continue;
    const int lineno = static_cast<int>(i + 1);
    std::istringstream in(lines[i]);
    std::string bits, rest;
    long long count = 0;
    if (!(in >> bits >> count) || (in >> rest)) throw ParseError("expected 'bitstring count'", lineno);
    if (!all_bits(bits)) throw ParseError("index string must consist of 0 and 1", lineno);
    if (count < 0) throw ParseError("negative count", lineno);
    if (!t) t.emplace(static_cast<int>(bits.size()));
    if (static_cast<int>(bits.size()) != t->width()) throw ParseError("index strings differ in length", lineno);
    t->add(IndexString(bits), static_cast<std::uint64_t>(count));
  }
  if (!t) throw ParseError("empty table", 0);
  return *t;
}

std::string table_to_text(const Table& t) {
  std::ostringstream out;
  for (const auto& [s, k] : t.entries()) out << s.str() << ' ' << k << '\n';
  return out.str();
}

Json table_to_json(const Table& t) {
  Json entries = Json::object();
  for (const auto& [s, k] : t.entries()) entries[s.str()] = k;
  return {{"n", t.width()}, {"entries", entries}};
}

Table table_from_json(const Json& j) {
  return guarded("table", [&] {
    Table t(j.at("n").get<int>());
    for (const auto& [bits, k] : j.at("entries").items()) {
      if (!all_bits(bits) || static_cast<int>(bits.size()) != t.width())
        throw ParseError("table: bad index string " + bits, 0);
      t.add(IndexString(bits), k.get<std::uint64_t>());
    }
    return t;
  });
}

std::string move_to_tableau(const Move& m) {
  const auto plus = m.plus.units();
  const auto minus = m.minus.units();
  const std::size_t rows = std::max(plus.size(), minus.size());
  const int width = std::max(m.plus.width(), m.minus.width());
  auto row = [width](const std::vector<IndexString>& side, std::size_t i) {
    if (i >= side.size()) return std::string(2 * width + 3, ' ');
    std::string s = "[";
    for (char c : side[i].str()) s += std::string(" ") + c;
    return s + " ]";
  };
  std::string out;
  for (std::size_t i = 0; i < rows; ++i) {
    out += row(plus, i);
    out += i == (rows - 1) / 2 ? " - " : "   ";
    out += row(minus, i);
    out += '\n';
  }
  return out;
}

std::vector<Move> parse_tableaux(const std::string& text) {
  const auto lines = lines_of(text);
  std::vector<Move> out;
  std::vector<std::string> plus, minus;
  int signs = 0;
  int first_line = 0;
  auto flush = [&] {
    if (plus.empty() && minus.empty()) return;
    if (signs != 1) throw ParseError("a tableau needs exactly one minus sign", first_line);
    if (plus.empty() || minus.empty()) throw ParseError("a tableau side is empty", first_line);
    const int n = static_cast<int>(plus.front().size());
    Move m{Table(n), Table(n)};
    for (const auto& s : plus) m.plus.add(IndexString(s));
    for (const auto& s : minus) m.minus.add(IndexString(s));
    out.push_back(std::move(m));
    plus.clear();
    minus.clear();
    signs = 0;
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int lineno = static_cast<int>(i + 1);
    const std::string line = trim(lines[i]);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    if (plus.empty() && minus.empty()) first_line = lineno;
    // Split into bracket groups and the text between them.
    std::vector<std::string> groups;
    std::string between;
    std::size_t pos = 0;
    while (pos < line.size()) {
      const char c = line[pos];
      if (c == '[') {
        const auto close = line.find(']', pos);
        if (close == std::string::npos) throw ParseError("unclosed bracket", lineno);
        std::string bits;
        for (char b : line.substr(pos + 1, close - pos - 1)) {
          if (b == '0' || b == '1') bits += b;
          else if (b != ' ' && b != ',' && b != '\t') throw ParseError("unexpected character in a row", lineno);
        }
        if (bits.empty()) throw ParseError("empty row", lineno);
        groups.push_back(bits);
        pos = close + 1;
      } else {
        if (c != ' ' && c != '\t') {
          if (groups.size() != 1) throw ParseError("unexpected character outside rows", lineno);
          between += c;
        }
        ++pos;
      }
    }
    if (!between.empty() && between != "-") throw ParseError("only '-' may separate the two sides", lineno);
    if (between == "-") ++signs;
    const auto width_ok = [&](const std::string& s) {
      const auto& ref = !plus.empty() ? plus.front() : !minus.empty() ? minus.front() : s;
      return s.size() == ref.size();
    };
    if (groups.size() != 2) throw ParseError("expected two bracketed rows", lineno);
    if (!width_ok(groups[0]) || !width_ok(groups[1])) throw ParseError("rows differ in length", lineno);
    plus.push_back(groups[0]);
    minus.push_back(groups[1]);
  }
  flush();
  return out;
}

Move parse_tableau(const std::string& text) {
  auto moves = parse_tableaux(text);
  if (moves.size() != 1) throw ParseError("expected exactly one tableau", 0);
  return moves.front();
}

Json move_to_json(const Move& m) {
  return {{"plus", table_to_json(m.plus)}, {"minus", table_to_json(m.minus)}};
}

Move move_from_json(const Json& j) {
  return guarded("move", [&] { return Move{table_from_json(j.at("plus")), table_from_json(j.at("minus"))}; });
}

Json basis_report_to_json(const BasisReport& r) {
  Json degrees = Json::object();
  for (const auto& [d, res] : r.per_degree) {
    Json reps = Json::array();
    for (const Move& m : res.reps) reps.push_back(move_to_json(m));
    degrees[std::to_string(d)] = {{"count", res.count},
                                  {"reps", reps},
                                  {"monomials", res.monomials},
                                  {"nontrivial_fibers", res.nontrivial_fibers}};
  }
  return {{"graph", graph_to_json(r.graph)},
          {"degrees", degrees},
          {"width", {{"exact", r.width.exact}, {"value", r.width.value}, {"certificate", r.width.certificate}}},
          {"partial", r.partial},
          {"skipped", r.skipped}};
}

BasisReport basis_report_from_json(const Json& j) {
  return guarded("basis report", [&] {
    BasisReport r;
    r.graph = graph_from_json(j.at("graph"));
    for (const auto& [key, val] : j.at("degrees").items()) {
      DegreeResult d;
      d.degree = std::stoi(key);
      d.count = val.at("count").get<std::uint64_t>();
      for (const auto& m : val.at("reps")) d.reps.push_back(move_from_json(m));
      d.monomials = val.value("monomials", std::uint64_t{0});
      d.nontrivial_fibers = val.value("nontrivial_fibers", std::uint64_t{0});
      r.per_degree[d.degree] = std::move(d);
    }
    const auto& w = j.at("width");
    r.width.exact = w.at("exact").get<bool>();
    r.width.value = w.at("value").get<int>();
    r.width.certificate = w.value("certificate", std::string{});
    r.partial = j.value("partial", false);
    r.skipped = j.value("skipped", std::vector<int>{});
    return r;
  });
}

Json certificate_to_json(const Graph& g, const ReductionCertificate& c) {
  Json path = Json::array();
  for (const PathStep& s : c.path) path.push_back({{"sign", s.sign}, {"move", move_to_json(s.move)}});
  return {{"graph", graph_to_json(g)}, {"start", table_to_json(c.start)}, {"end", table_to_json(c.end)}, {"path", path}};
}

std::pair<Graph, ReductionCertificate> certificate_from_json(const Json& j) {
  return guarded("certificate", [&] {
    ReductionCertificate c;
    c.start = table_from_json(j.at("start"));
    c.end = table_from_json(j.at("end"));
    for (const auto& s : j.at("path")) {
      const int sign = s.at("sign").get<int>();
      if (sign != 1 && sign != -1) throw ParseError("certificate: sign must be +1 or -1", 0);
      c.path.push_back({move_from_json(s.at("move")), sign});
    }
    return std::make_pair(graph_from_json(j.at("graph")), std::move(c));
  });
}

namespace {

const char* kind_name(Provenance::Kind k) {
  switch (k) {
    case Provenance::Kind::Pullback: return "pullback";
    case Provenance::Kind::Partition: return "partition";
    case Provenance::Kind::Coloring: return "coloring";
  }
  return "?";
}

}  // namespace

Json candidate_to_json(const GeneratorCandidate& c) {
  Json p = {{"kind", kind_name(c.provenance.kind)}, {"vertex_map", c.provenance.vertex_map}};
  if (c.provenance.kind == Provenance::Kind::Coloring) {
    p["first"] = c.provenance.first;
    p["second"] = c.provenance.second;
  }
  Json out = {{"move", move_to_json(c.move)}, {"provenance", p}};
  out["minimal"] = c.minimal ? Json(*c.minimal) : Json(nullptr);
  return out;
}

GeneratorCandidate candidate_from_json(const Json& j) {
  return guarded("candidate", [&] {
    GeneratorCandidate c;
    c.move = move_from_json(j.at("move"));
    const auto& p = j.at("provenance");
    const std::string kind = p.at("kind").get<std::string>();
    if (kind == "pullback") c.provenance.kind = Provenance::Kind::Pullback;
    else if (kind == "partition") c.provenance.kind = Provenance::Kind::Partition;
    else if (kind == "coloring") c.provenance.kind = Provenance::Kind::Coloring;
    else throw ParseError("candidate: unknown provenance kind " + kind, 0);
    c.provenance.vertex_map = p.at("vertex_map").get<std::vector<int>>();
    c.provenance.first = p.value("first", Coloring{});
    c.provenance.second = p.value("second", Coloring{});
    if (!j.at("minimal").is_null()) c.minimal = j.at("minimal").get<bool>();
    return c;
  });
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bgm
