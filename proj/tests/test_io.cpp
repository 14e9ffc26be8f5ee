#include <doctest.h>

#include "bgm/errors.hpp"
#include "bgm/harness.hpp"
#include "bgm/io.hpp"
#include "bgm/special.hpp"

using namespace bgm;

namespace {

Table table_of(int n, std::initializer_list<const char*> units) {
  Table t(n);
  for (const char* u : units) t.add(IndexString(u));
  return t;
}

int parse_error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("graph formats") {
  const Graph g = graphs::cycle(5);
  CHECK(parse_graph_text(graph_to_text(g)) == g);
  CHECK(graph_from_json(graph_to_json(g)) == g);
  CHECK(parse_graph(graph_to_json(g).dump()) == g);
  CHECK(parse_graph("# comment\n3\n\n0 1\n1 2\n") == graphs::path(3));
  CHECK(graph_to_json(graphs::path(3)) == Json::parse(R"({"n": 3, "edges": [[0, 1], [1, 2]]})"));

  CHECK(parse_error_line([] { parse_graph_text("3\n0 1\n0 5\n"); }) == 3);
  CHECK(parse_error_line([] { parse_graph_text("3\n0 1\n1 0\n"); }) == 3);
  CHECK(parse_error_line([] { parse_graph_text("3\n0 0\n"); }) == 2);
  CHECK(parse_error_line([] { parse_graph_text("x\n"); }) == 1);
  CHECK(parse_error_line([] { parse_graph_text("4\n0 1 2\n"); }) == 2);
  CHECK_THROWS_AS(parse_graph_text(""), ParseError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2})")), ParseError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2, "edges": [[0, 2]]})")), ParseError);
  CHECK_THROWS_AS(parse_graph("{ not json"), ParseError);
}

TEST_CASE("table formats") {
  const Table t = table_of(4, {"0000", "0110", "0110", "1011"});
  CHECK(table_to_text(t) == "0000 1\n0110 2\n1011 1\n");
  CHECK(parse_table_text(table_to_text(t)) == t);
  CHECK(table_from_json(table_to_json(t)) == t);
  CHECK(parse_error_line([] { parse_table_text("0101 1\n012 1\n"); }) == 2);
  CHECK(parse_error_line([] { parse_table_text("0101 1\n011 1\n"); }) == 2);
  CHECK(parse_error_line([] { parse_table_text("0101 -1\n"); }) == 1);
  CHECK_THROWS_AS(table_from_json(Json::parse(R"({"n": 2, "entries": {"011": 1}})")), ParseError);
}

TEST_CASE("tableau notation") {
  // p_1011 p_1110 - p_1111 p_1010
  const Move m{table_of(4, {"1011", "1110"}), table_of(4, {"1111", "1010"})};
  const std::string text = move_to_tableau(m);
  CHECK(text == "[ 1 0 1 1 ] - [ 1 0 1 0 ]\n[ 1 1 1 0 ]   [ 1 1 1 1 ]\n");
  CHECK(parse_tableau(text) == m);

  // repeated rows carry exponents
  const Move sq{table_of(3, {"000", "000", "111"}), table_of(3, {"001", "010", "100"})};
  const std::string t2 = move_to_tableau(sq);
  CHECK(t2 == "[ 0 0 0 ]   [ 0 0 1 ]\n[ 0 0 0 ] - [ 0 1 0 ]\n[ 1 1 1 ]   [ 1 0 0 ]\n");
  CHECK(parse_tableau(t2) == sq);

  const auto both = parse_tableaux(text + "\n" + t2);
  REQUIRE(both.size() == 2);
  CHECK(both[0] == m);
  CHECK(both[1] == sq);
  CHECK(parse_tableau("[1,0,1,1] - [1,0,1,0]\n[1,1,1,0]   [1,1,1,1]\n") == m);

  CHECK(parse_error_line([] { parse_tableau("[ 1 0 ]   [ 0 1 ]\n[ 0 1 ]   [ 1 0 ]\n"); }) == 1);
  CHECK(parse_error_line([] { parse_tableau("[ 1 0 ] - [ 0 1 ]\n[ 0 1 ] - [ 1 0 ]\n"); }) == 1);
  CHECK(parse_error_line([] { parse_tableau("[ 1 0 ] - [ 0 1 ]\n[ 0 1 ] + [ 1 0 ]\n"); }) == 2);
  CHECK(parse_error_line([] { parse_tableau("[ 1 0 ] - [ 0 1 ]\n[ 0 1 1 ]   [ 1 0 ]\n"); }) == 2);
  CHECK(parse_error_line([] { parse_tableau("[ 1 2 ] - [ 0 1 ]\n"); }) == 1);
  CHECK(parse_error_line([] { parse_tableau("[ 1 0 ] - [ 0 1\n"); }) == 1);
}

TEST_CASE("move and report JSON round trips") {
  const Graph c4 = graphs::cycle(4);
  const BasisReport r = markov_basis_up_to(c4, 4);
  const Json j = basis_report_to_json(r);
  CHECK(j.at("degrees").at("2").at("count") == 8);
  CHECK(j.at("degrees").at("4").at("count") == 8);
  CHECK(j.at("width") .at("exact") == true);
  CHECK(j.at("width").at("value") == 4);
  const BasisReport back = basis_report_from_json(Json::parse(j.dump()));
  CHECK(back.graph == r.graph);
  CHECK(back.width.exact == r.width.exact);
  CHECK(back.width.value == r.width.value);
  CHECK(back.partial == r.partial);
  CHECK(back.skipped == r.skipped);
  REQUIRE(back.per_degree.size() == r.per_degree.size());
  for (const auto& [d, res] : r.per_degree) {
    CHECK(back.per_degree.at(d).count == res.count);
    CHECK(back.per_degree.at(d).reps == res.reps);
    CHECK(back.per_degree.at(d).monomials == res.monomials);
    CHECK(basis_report_to_json(back) == j);
  }
  for (const auto& [d, res] : r.per_degree)
    for (const Move& m : res.reps) {
      CHECK(move_from_json(move_to_json(m)) == m);
      CHECK(parse_tableau(move_to_tableau(m)) == m);
    }
}

TEST_CASE("certificate and candidate JSON round trips") {
  const auto qs = cycle_quartics(5);
  const ReductionCertificate cert = cycle_reduce(5, qs[3].plus, qs[3].minus);
  const Json j = certificate_to_json(graphs::cycle(5), cert);
  const auto [g, back] = certificate_from_json(Json::parse(j.dump()));
  CHECK(g == graphs::cycle(5));
  CHECK(back.start == cert.start);
  CHECK(back.end == cert.end);
  CHECK(back.path == cert.path);
  Json bad = j;
  bad["path"][0]["sign"] = 2;
  CHECK_THROWS_AS(certificate_from_json(bad), ParseError);

  const auto res = pullback_candidates(graphs::triangular_prism(), 3);
  REQUIRE_FALSE(res.candidates.empty());
  for (std::size_t i = 0; i < std::min<std::size_t>(res.candidates.size(), 20); ++i) {
    const auto& c = res.candidates[i];
    const auto c2 = candidate_from_json(Json::parse(candidate_to_json(c).dump()));
    CHECK(c2.move == c.move);
    CHECK(c2.provenance.kind == c.provenance.kind);
    CHECK(c2.provenance.vertex_map == c.provenance.vertex_map);
    CHECK(c2.minimal == c.minimal);
  }
  GeneratorCandidate col;
  col.move = qs[0];
  col.provenance.kind = Provenance::Kind::Coloring;
  col.provenance.vertex_map = {0, 1, -1, 2, 0};
  col.provenance.first = {0, 1, 2};
  col.provenance.second = {0, 2, 1};
  const auto col2 = candidate_from_json(candidate_to_json(col));
  CHECK(col2.provenance.first == col.provenance.first);
  CHECK(col2.provenance.second == col.provenance.second);
  CHECK_FALSE(col2.minimal.has_value());
}

TEST_CASE("table reproduction harness") {
  std::vector<TableColumn> cols;
  for (const auto& c : generator_table())
    if (c.name == "K3" || c.name == "C4" || c.name == "K4") cols.push_back(c);
  REQUIRE(cols.size() == 3);
  const auto ok = reproduce_table(cols);
  CHECK_FALSE(ok.mismatch);
  CHECK_FALSE(ok.partial);
  for (const auto& c : ok.columns) {
    CHECK(c.width.exact);
    CHECK(c.width.value == c.expected_width);
  }
  const Json j = table_comparison_to_json(ok);
  CHECK(j.at("columns").at(0).at("status") == "match");
  const std::string csv = table_comparison_to_csv(ok);
  CHECK(csv.rfind("degree,K3,C4,K4\n2,0,8,0\n", 0) == 0);
  CHECK(csv.find("total,1,16,60\nwidth,4,4,6\n") != std::string::npos);

  auto wrong = cols;
  wrong[1].counts[4] = 9;
  const auto bad = reproduce_table(wrong);
  CHECK(bad.mismatch);
  CHECK(bad.columns[1].mismatch);
  CHECK(table_comparison_to_csv(bad).find("8!=9") != std::string::npos);

  ReproduceOptions tight;
  tight.engine.monomial_budget = 1000;
  const auto skipped = reproduce_table(cols, tight);
  CHECK_FALSE(skipped.mismatch);
  CHECK(skipped.partial);
  CHECK(skipped.columns[2].partial);
  CHECK_FALSE(skipped.columns[2].degrees.at(6).computed.has_value());

  ReproduceOptions only;
  only.only = {"K3"};
  const auto one = reproduce_table(cols, only);
  CHECK_FALSE(one.columns[0].skipped);
  CHECK(one.columns[1].skipped);
}
