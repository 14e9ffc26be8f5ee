#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "bgm/basis.hpp"
#include "bgm/errors.hpp"

using namespace bgm;

namespace {

Graph named(const char* s) { return *graphs::by_name(s); }

Table table_of(int n, std::initializer_list<const char*> units) {
  Table t(n);
  for (const char* u : units) t.add(IndexString(u));
  return t;
}

// every degree-d table grouped by marginals, using only the model layer
std::map<MarginalVector, std::vector<Table>> brute_fibers(const Graph& g, int d) {
  std::map<MarginalVector, std::vector<Table>> out;
  const Cell cells = Cell{1} << g.order();
  std::vector<Cell> cur;
  std::function<void(Cell)> rec = [&](Cell from) {
    if (static_cast<int>(cur.size()) == d) {
      Table t = Table::from_cells(g.order(), cur);
      out[marginals_of(g, t)].push_back(t);
      return;
    }
    for (Cell c = from; c < cells; ++c) {
      cur.push_back(c);
      rec(c);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// minimal generator count from the definition: tables of one fiber are joined when some
// pair of them differs by a move of lower degree that stays nonnegative, found by BFS.
std::uint64_t brute_count(const Graph& g, int d, const MoveSet& lower) {
  std::uint64_t total = 0;
  for (const auto& [mv, tables] : brute_fibers(g, d)) {
    if (tables.size() < 2) continue;
    std::vector<int> comp(tables.size(), -1);
    int k = 0;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (comp[i] >= 0) continue;
      comp[i] = k;
      for (std::size_t j = i + 1; j < tables.size(); ++j)
        if (comp[j] < 0 && find_path(tables[i], tables[j], lower)) comp[j] = k;
      ++k;
    }
    total += k - 1;
  }
  return total;
}

Graph relabel(const Graph& g, const std::vector<int>& p) {
  std::vector<Edge> es;
  for (const Edge& e : g.edges()) es.emplace_back(p[e.u], p[e.v]);
  return Graph(g.order(), es);
}

}  // namespace

TEST_CASE("monomial counts") {
  CHECK(monomial_count(3, 4) == 330);
  CHECK(monomial_count(6, 4) == 766480);
  CHECK(monomial_count(6, 6) == 119877472);
  CHECK(monomial_count(2, 0) == 1);
}

TEST_CASE("degree-d fibers") {
  const Graph k3 = named("K3");
  const auto d1 = degree_d_fibers(k3, 1);
  CHECK(d1.size() == 8);
  for (const auto& [_, ts] : d1) CHECK(ts.size() == 1);

  const auto d4 = degree_d_fibers(k3, 4);
  std::size_t big = 0;
  for (const auto& [_, ts] : d4) {
    if (ts.size() >= 2) {
      ++big;
      CHECK(ts.size() == 2);
    }
  }
  CHECK(big == 1);
  CHECK(d4 == brute_fibers(k3, 4));

  for (const char* name : {"C4", "example", "E3", "P3"}) {
    for (int d = 0; d <= 3; ++d) CHECK(degree_d_fibers(named(name), d) == brute_fibers(named(name), d));
  }
  const auto d0 = degree_d_fibers(named("C4"), 0);
  REQUIRE(d0.size() == 1);
  CHECK(d0.begin()->second == std::vector<Table>{Table(4)});
  CHECK_THROWS_AS(degree_d_fibers(named("C6"), 6), BudgetExceeded);
  CHECK_THROWS_AS(degree_d_fibers(named("C6"), 6), CapabilityError);
}

TEST_CASE("minimal generators: reference counts") {
  CHECK(minimal_generators_at_degree(named("K3"), 4, {}).count == 1);
  CHECK(minimal_generators_at_degree(named("C4"), 2, {}).count == 8);
  CHECK(minimal_generators_at_degree(named("C4"), 4, {}).count == 8);
  CHECK(minimal_generators_at_degree(named("K2,3"), 2, {}).count == 44);
  CHECK(minimal_generators_at_degree(named("K2,3"), 4, {}).count == 420);
  const auto q = minimal_generators_at_degree(named("K3"), 4, {});
  REQUIRE(q.reps.size() == 1);
  CHECK(q.reps[0] == Move{table_of(3, {"000", "011", "101", "110"}), table_of(3, {"001", "010", "100", "111"})});
}

TEST_CASE("minimal generators agree with a path-search oracle") {
  for (const char* name : {"K3", "C4", "example", "P4", "E2"}) {
    const Graph g = named(name);
    MoveSet lower;
    for (int d = 2; d <= 4; ++d) {
      const auto r = minimal_generators_at_degree(g, d, lower, {}, ComponentRoute::Both);
      CHECK_MESSAGE(r.count == brute_count(g, d, lower), (std::string(name) + " d=" + std::to_string(d)));
      CHECK(r.reps.size() == r.count);
      for (const Move& m : r.reps) {
        CHECK(is_move(g, m));
        CHECK(is_minimal_generator(g, m));
      }
      lower.insert(lower.end(), r.reps.begin(), r.reps.end());
      // the enlarged set connects everything up to this degree
      CHECK(verify_all_fibers(g, lower, d).ok);
    }
  }
}

TEST_CASE("incomplete lower sets are rejected") {
  const Graph c4 = named("C4");
  const auto quadrics = minimal_generators_at_degree(c4, 2, {}).reps;
  MoveSet partial(quadrics.begin(), quadrics.begin() + 4);
  CHECK_THROWS_AS(minimal_generators_at_degree(c4, 3, partial, {}, ComponentRoute::Both), PreconditionViolation);
  CHECK_NOTHROW(minimal_generators_at_degree(c4, 3, quadrics, {}, ComponentRoute::Both));
  CHECK(minimal_generators_at_degree(c4, 3, quadrics, {}, ComponentRoute::LowerMoves).count == 0);
}

TEST_CASE("counts are stable under relabelling") {
  std::mt19937 rng(17);
  for (const char* name : {"C5", "K2,3", "K4~"}) {
    const Graph g = named(name);
    const auto base = minimal_generators_at_degree(g, 4, {}).count;
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> p(g.order());
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      CHECK(minimal_generators_at_degree(relabel(g, p), 4, {}).count == base);
    }
  }
}

TEST_CASE("basis reports and widths") {
  const auto c5 = markov_basis_up_to(named("C5"), 4);
  CHECK(c5.per_degree.at(2).count == 80);
  CHECK(c5.per_degree.at(3).count == 0);
  CHECK(c5.per_degree.at(4).count == 40);
  CHECK(c5.width.exact);
  CHECK(c5.width.value == 4);

  const auto k4 = markov_basis_up_to(named("K4"), 6);
  CHECK(k4.per_degree.at(4).count == 20);
  CHECK(k4.per_degree.at(6).count == 40);
  CHECK(k4.width.exact);
  CHECK(k4.width.value == 6);

  const auto k4_short = markov_basis_up_to(named("K4"), 4);
  CHECK_FALSE(k4_short.width.exact);
  CHECK(k4_short.width.value == 4);

  const auto p4 = markov_basis_up_to(graphs::path(4), 4);
  CHECK(p4.width.exact);
  CHECK(p4.width.value == 2);

  EngineOptions tight;
  tight.monomial_budget = 1000;
  const auto partial = markov_basis_up_to(named("C5"), 4, tight);
  CHECK(partial.partial);
  CHECK_FALSE(partial.width.exact);
  CHECK(partial.skipped == std::vector<int>{3, 4});
}

TEST_CASE("known width bounds") {
  CHECK(known_width_bound(Graph(1))->bound == 0);
  CHECK(known_width_bound(graphs::path(2))->bound == 0);
  CHECK(known_width_bound(graphs::star(3))->bound == 2);
  CHECK(known_width_bound(named("C7"))->bound == 4);
  CHECK(known_width_bound(named("K2,5"))->bound == 4);
  CHECK(known_width_bound(named("K5"))->bound == 10);
  // K_4 with a pendant vertex glues K_4 to an edge
  const Graph glued(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}});
  CHECK(known_width_bound(glued)->bound == 6);
  CHECK_FALSE(known_width_bound(named("prism")).has_value());
}

TEST_CASE("verification of move sets") {
  const Graph c4 = named("C4");
  MoveSet basis = minimal_generators_at_degree(c4, 2, {}).reps;
  const MoveSet quadrics = basis;
  const auto quartics = minimal_generators_at_degree(c4, 4, {}).reps;
  basis.insert(basis.end(), quartics.begin(), quartics.end());
  CHECK(basis.size() == 16);

  for (int d = 2; d <= 5; ++d) {
    std::vector<MarginalVector> fibers;
    for (const auto& [mv, ts] : degree_d_fibers(c4, d)) fibers.push_back(mv);
    for (const auto& v : verify_markov_basis(c4, basis, fibers)) {
      CHECK(v.connected);
      CHECK_FALSE(v.skipped);
    }
  }
  CHECK(verify_all_fibers(c4, basis, 6).ok);

  const auto quartic_fiber = marginals_of(c4, quartics.front().plus);
  const auto v = verify_markov_basis(c4, quadrics, std::span(&quartic_fiber, 1));
  REQUIRE(v.size() == 1);
  CHECK_FALSE(v[0].connected);
  REQUIRE(v[0].separated);
  CHECK_FALSE(find_path(v[0].separated->first, v[0].separated->second, quadrics).has_value());
  const auto sweep = verify_all_fibers(c4, quadrics, 4);
  CHECK_FALSE(sweep.ok);

  // a singleton fiber is connected by anything
  const auto single = marginals_of(c4, table_of(4, {"0110"}));
  CHECK(verify_markov_basis(c4, {}, std::span(&single, 1))[0].connected);
}

TEST_CASE("path witnesses replay") {
  const Graph c4 = named("C4");
  MoveSet basis = minimal_generators_at_degree(c4, 2, {}).reps;
  for (const auto& m : minimal_generators_at_degree(c4, 4, {}).reps) basis.push_back(m);
  for (const auto& [mv, ts] : degree_d_fibers(c4, 4)) {
    if (ts.size() < 2) continue;
    const auto path = find_path(ts.front(), ts.back(), basis);
    REQUIRE(path);
    Table cur = ts.front();
    for (const auto& step : *path) cur = apply_step(cur, step);
    CHECK(cur == ts.back());
  }
}

TEST_CASE("random walk") {
  const Graph k3 = named("K3");
  const Move quartic{table_of(3, {"000", "011", "101", "110"}), table_of(3, {"001", "010", "100", "111"})};
  const auto still = random_walk(k3, {}, quartic.plus, 50, 1);
  CHECK(still.final_table == quartic.plus);
  CHECK(still.visits.size() == 1);

  const auto both = random_walk(k3, {quartic}, quartic.plus, 100, 1);
  CHECK(both.visits.size() == 2);

  const Graph c4 = named("C4");
  MoveSet basis = minimal_generators_at_degree(c4, 2, {}).reps;
  for (const auto& m : minimal_generators_at_degree(c4, 4, {}).reps) basis.push_back(m);
  const Table start = table_of(4, {"0000", "0101", "1010", "1111"});
  const auto fiber = enumerate_fiber(c4, marginals_of(c4, start));
  const auto walk = random_walk(c4, basis, start, 10000, 42);
  CHECK(walk.visits.size() == fiber.size());
  for (const auto& [t, _] : walk.visits) CHECK(marginals_of(c4, t) == marginals_of(c4, start));
  const auto again = random_walk(c4, basis, start, 10000, 42);
  CHECK(again.visits == walk.visits);
  CHECK(walk.accepted + walk.rejected == 10000);
}

TEST_CASE("random walk with applicable proposals is uniform on the fiber") {
  const Graph c4 = named("C4");
  MoveSet basis = minimal_generators_at_degree(c4, 2, {}).reps;
  for (const auto& m : minimal_generators_at_degree(c4, 4, {}).reps) basis.push_back(m);
  const Table start = table_of(4, {"0000", "0101", "1010", "1111"});
  const auto fiber = enumerate_fiber(c4, marginals_of(c4, start));
  const std::uint64_t steps = 200'000;
  const auto walk = random_walk(c4, basis, start, steps, 3, WalkProposal::Applicable);
  REQUIRE(walk.visits.size() == fiber.size());
  const double expected = static_cast<double>(steps + 1) / static_cast<double>(fiber.size());
  for (const auto& [t, k] : walk.visits) {
    CHECK(marginals_of(c4, t) == marginals_of(c4, start));
    CHECK(std::abs(static_cast<double>(k) - expected) < 0.1 * expected);
  }
  CHECK(walk.accepted + walk.rejected == steps);
  CHECK(random_walk(c4, basis, start, 1000, 3, WalkProposal::Applicable).visits ==
        random_walk(c4, basis, start, 1000, 3, WalkProposal::Applicable).visits);
  // no applicable step: the walk stays put
  const auto stuck = random_walk(c4, basis, table_of(4, {"0000"}), 20, 1, WalkProposal::Applicable);
  CHECK(stuck.visits.size() == 1);
  CHECK(stuck.rejected == 20);
}
