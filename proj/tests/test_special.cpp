#include <doctest.h>

#include <random>
#include <set>
#include <tuple>

#include "bgm/basis.hpp"
#include "bgm/errors.hpp"
#include "bgm/special.hpp"
#include "bgm/structural.hpp"

using namespace bgm;

namespace {

Table table_of(int n, std::initializer_list<const char*> units) {
  Table t(n);
  for (const char* u : units) t.add(IndexString(u));
  return t;
}

// Distinct tables from a common fiber, seeded by a random table of degree 2..dmax.
std::vector<std::pair<Table, Table>> random_pairs(const Graph& g, int dmax, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Table, Table>> out;
  while (static_cast<int>(out.size()) < count) {
    const int d = 2 + static_cast<int>(rng() % (dmax - 1));
    std::vector<Cell> cells;
    for (int i = 0; i < d; ++i) cells.push_back(static_cast<Cell>(rng() % (Cell{1} << g.order())));
    const auto fiber = enumerate_fiber(g, marginals_of(g, Table::from_cells(g.order(), cells)));
    if (fiber.size() < 2) continue;
    const std::size_t i = rng() % fiber.size();
    std::size_t j = rng() % (fiber.size() - 1);
    if (j >= i) ++j;
    out.emplace_back(fiber[i], fiber[j]);
  }
  return out;
}

// marginals by direct counting, independent of the model layer
std::array<int, 4> pair_counts(const Table& t, int a, int b) {
  std::array<int, 4> c{};
  for (const auto& [s, k] : t.entries()) c[2 * (s.str()[a] - '0') + (s.str()[b] - '0')] += static_cast<int>(k);
  return c;
}

}  // namespace

TEST_CASE("cycle quartics") {
  const std::vector<std::pair<int, std::size_t>> expected{{3, 1}, {4, 8}, {5, 40}, {6, 160}};
  for (const auto& [n, count] : expected) {
    const auto qs = cycle_quartics(n);
    CHECK_MESSAGE(qs.size() == count, n);
    const Graph g = graphs::cycle(n);
    for (const Move& q : qs) {
      CHECK(is_move(g, q));
      CHECK(q.degree() == 4);
      CHECK(q.plus < q.minus);
    }
    const auto all = all_minimal_generators_at_degree(g, 4);
    CHECK(std::set<Move>(qs.begin(), qs.end()) == std::set<Move>(all.begin(), all.end()));
  }
  CHECK_THROWS_AS(cycle_quartics(2), ArgumentError);
  CHECK_THROWS_AS(cycle_quartics(7), CapabilityError);
}

TEST_CASE("quadrics and cycle quartics form a Markov basis") {
  for (int n = 4; n <= 6; ++n) {
    const Graph g = graphs::cycle(n);
    MoveSet moves = cycle_quartics(n);
    for (const auto& c : degree2_classes(g)) {
      const auto orb = MoveCanonicalizer(g).orbit(c.move);
      moves.insert(moves.end(), orb.begin(), orb.end());
    }
    const int dmax = n == 6 ? 5 : 6;
    EngineOptions opt;
    opt.monomial_budget = 20'000'000;
    const auto r = verify_all_fibers(g, moves, dmax, opt);
    CHECK_MESSAGE(r.ok, n);
    CHECK(r.degrees_checked == dmax - 1);
  }
  for (int n = 4; n <= 6; ++n) {
    const auto rep = markov_basis_up_to(graphs::cycle(n), 4);
    CHECK(rep.width.exact);
    CHECK(rep.width.value == 4);
  }
  const auto k23 = markov_basis_up_to(graphs::complete_bipartite(2, 3), 4);
  CHECK(k23.width.exact);
  CHECK(k23.width.value == 4);
}

TEST_CASE("cycle reduction certificates") {
  const Graph c4 = graphs::cycle(4);
  const Table t = table_of(4, {"0000", "0110", "1011"});
  CHECK(cycle_reduce(4, t, t).path.empty());
  for (const Move& q : cycle_quartics(5)) {
    const auto cert = cycle_reduce(5, q.plus, q.minus);
    CHECK(cert.path.size() == 1);
    CHECK(replay_certificate(graphs::cycle(5), cert).ok);
  }
  CHECK_THROWS_AS(cycle_reduce(4, table_of(4, {"0000"}), table_of(4, {"1111"})), ArgumentError);

  for (int n : {5, 6}) {
    const Graph g = graphs::cycle(n);
    std::size_t fallbacks = 0;
    for (const auto& [a, b] : random_pairs(g, 6, 200, 100 + n)) {
      ReductionStats st;
      const auto cert = cycle_reduce(n, a, b, &st);
      const auto r = replay_certificate(g, cert);
      CHECK_MESSAGE(r.ok, r.reason);
      CHECK(r.max_degree <= 4);
      CHECK(cert.start == a);
      CHECK(cert.end == b);
      fallbacks += st.fallback_searches;
    }
    CHECK(fallbacks == 0);
  }
}

TEST_CASE("K_{2,n} reduction certificates") {
  const Table t = table_of(5, {"00000", "11011"});
  CHECK(k2n_reduce(3, t, t).path.empty());
  CHECK_THROWS_AS(k2n_reduce(3, table_of(5, {"00000"}), table_of(5, {"11111"})), ArgumentError);

  const std::vector<std::tuple<int, int, int>> runs{{3, 6, 200}, {4, 4, 100}, {5, 6, 50}};
  for (const auto& [n, dmax, count] : runs) {
    const Graph g = graphs::complete_bipartite(2, n);
    std::size_t longest = 0;
    for (const auto& [a, b] : random_pairs(g, dmax, count, 7 * n)) {
      const auto cert = k2n_reduce(n, a, b);
      const auto r = replay_certificate(g, cert);
      CHECK_MESSAGE(r.ok, r.reason);
      CHECK(r.max_degree <= 4);
      longest = std::max(longest, cert.path.size());
    }
    MESSAGE("K_{2," << n << "} longest certificate: " << longest);
  }
}

TEST_CASE("certificate replay rejects bad paths") {
  const Graph c4 = graphs::cycle(4);
  const Move q = cycle_quartics(4).front();
  ReductionCertificate cert{q.plus, q.minus, {{q, -1}}};
  CHECK(replay_certificate(c4, cert).ok);
  cert.path[0].sign = 1;
  CHECK_FALSE(replay_certificate(c4, cert).ok);
  cert.path[0].sign = -1;
  CHECK_FALSE(replay_certificate(c4, cert, 2).ok);
  cert.end = q.plus;
  CHECK_FALSE(replay_certificate(c4, cert).ok);
}

TEST_CASE("complete graph witnesses") {
  CHECK_THROWS_AS(km_witness(2), ArgumentError);
  const Move k3 = km_witness(3);
  CHECK(k3.degree() == 4);
  const auto k3q = all_minimal_generators_at_degree(graphs::complete(3), 4);
  REQUIRE(k3q.size() == 1);
  CHECK(sign_normalized(k3) == k3q[0]);

  const Move k4 = km_witness(4);
  CHECK(k4.plus == table_of(4, {"0000", "0000", "0111", "1011", "1101", "1110"}));
  CHECK(k4.minus == table_of(4, {"1111", "1111", "1000", "0100", "0010", "0001"}));
  for (int m = 3; m <= 6; ++m) {
    const Move w = km_witness(m);
    CHECK(w.degree() == static_cast<std::uint64_t>(2 * m - 2));
    CHECK(is_move(graphs::complete(m), w));
  }
  for (int m = 3; m <= 4; ++m) {
    const Graph g = graphs::complete(m);
    const Move w = km_witness(m);
    const auto fiber = enumerate_fiber(g, marginals_of(g, w.plus));
    CHECK(fiber.size() == 2);
    CHECK(is_minimal_generator(g, w));
  }
}

TEST_CASE("complete bipartite witnesses") {
  CHECK_THROWS_AS(kmn_witness(1), ArgumentError);
  CHECK_THROWS_AS(kmn_witness(5), CapabilityError);

  const auto w2 = kmn_witness(2);
  CHECK(w2.graph.order() == 3);
  CHECK(w2.move.degree() == 2);
  CHECK(is_move(w2.graph, w2.move));

  for (int m = 3; m <= 4; ++m) {
    const auto w = kmn_witness(m);
    const int big_n = m * (m - 1) / 2 * (1 << (m - 2));
    CHECK(static_cast<int>(w.w_labels.size()) == big_n);
    CHECK(std::is_sorted(w.w_labels.begin(), w.w_labels.end()));
    CHECK(w.graph.order() == m + big_n);
    CHECK(w.move.degree() == (1u << (m - 1)));
    CHECK(is_move(w.graph, w.move));
    // marginal recipe per (v_j, w_I): 11 i_j, 01 2-i_j, 10 2^{m-2}-i_j, 00 2^{m-2}-2+i_j
    const int h = 1 << (m - 2);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < big_n; ++k) {
        const int i = w.w_labels[k][j] - '0';
        const std::array<int, 4> want{h - 2 + i, 2 - i, h - i, i};
        CHECK(pair_counts(w.move.plus, j, m + k) == want);
        CHECK(pair_counts(w.move.minus, j, m + k) == want);
      }
  }
  const auto w3 = kmn_witness(3);
  CHECK(w3.graph.order() == 9);
  CHECK(enumerate_fiber(w3.graph, marginals_of(w3.graph, w3.move.plus)).size() == 2);
}
