#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "bgm/canonical.hpp"
#include "bgm/decompose.hpp"
#include "bgm/errors.hpp"
#include "bgm/minors.hpp"

using namespace bgm;

namespace {

Graph permuted(const Graph& g, const std::vector<int>& p) {
  std::vector<Edge> es;
  for (const Edge& e : g.edges()) es.emplace_back(p[e.u], p[e.v]);
  return Graph(g.order(), es);
}

// isomorphism by trying every permutation
bool brute_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  std::vector<int> p(a.order());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (permuted(a, p) == b) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

std::size_t brute_automorphism_count(const Graph& g) {
  std::vector<int> p(g.order());
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    count += permuted(g, p) == g;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// every graph reachable by delete/contract sequences, exact labelled dedupe
std::vector<Graph> replay_all_minors(const Graph& g) {
  std::vector<Graph> seen{g};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    const Graph cur = seen[i];
    std::vector<Graph> next;
    if (cur.order() > 1)
      for (Vertex v = 0; v < cur.order(); ++v) next.push_back(delete_vertex(cur, v));
    for (const Edge& e : cur.edges()) next.push_back(contract_edge(cur, e));
    for (auto& h : next)
      if (std::find(seen.begin(), seen.end(), h) == seen.end()) seen.push_back(h);
  }
  std::vector<Graph> classes;
  for (const auto& h : seen) {
    bool found = false;
    for (const auto& c : classes) found = found || brute_isomorphic(c, h);
    if (!found) classes.push_back(h);
  }
  return classes;
}

Graph named(const char* s) { return *graphs::by_name(s); }

}  // namespace

TEST_CASE("vertex deletion") {
  CHECK(delete_vertex(named("K3"), 1) == Graph(2, {{0, 1}}));
  // C_4 on 0-1-2-3-0, drop vertex 0: path 1-2-3 relabelled 0-1-2
  CHECK(delete_vertex(named("C4"), 0) == graphs::path(3));
  CHECK(delete_vertex(named("example"), 3) == graphs::path(3));
  CHECK_THROWS_AS(delete_vertex(named("K3"), 3), ArgumentError);
}

TEST_CASE("edge contraction") {
  CHECK(isomorphic(contract_edge(named("C4"), {0, 1}), named("K3")));
  CHECK(contract_edge(named("K3"), {0, 2}) == Graph(2, {{0, 1}}));
  const Graph c6 = named("C6");
  const Graph once = contract_edge(c6, {0, 1});
  // vertices 2,3 of C_6 are now 1,2
  const Graph twice = contract_edge(once, {1, 2});
  CHECK(isomorphic(twice, named("C4")));
  CHECK_THROWS_AS(contract_edge(named("C4"), {0, 2}), ArgumentError);
}

TEST_CASE("minor enumeration matches exhaustive replay") {
  for (const char* name : {"K3", "C4", "K4", "P4", "example", "C5", "K2,3"}) {
    const Graph g = named(name);
    const auto ms = enumerate_minors(g);
    CHECK_FALSE(ms.truncated);
    const auto oracle = replay_all_minors(g);
    CHECK_MESSAGE(ms.minors.size() == oracle.size(), std::string(name));
    for (const auto& m : ms.minors) {
      std::vector<int> map;
      CHECK(m.trace.replay(&map) == m.graph);
      CHECK(map == m.trace.vertex_map);
      bool found = false;
      for (const auto& o : oracle) found = found || brute_isomorphic(o, m.graph);
      CHECK(found);
    }
  }
  const auto k3 = enumerate_minors(named("K3"));
  CHECK(k3.minors.size() == 3);
  CHECK(enumerate_minors(Graph(1)).minors.size() == 1);
  CHECK(enumerate_minors(named("K5"), 2).truncated);
}

TEST_CASE("minors of complete graphs are complete") {
  for (int n = 1; n <= 5; ++n) {
    const auto ms = enumerate_minors(graphs::complete(n));
    CHECK(ms.minors.size() == static_cast<std::size_t>(n));
    for (const auto& m : ms.minors) CHECK(m.graph.size() == m.graph.order() * (m.graph.order() - 1) / 2u);
  }
}

TEST_CASE("minor embeddings realise their traces") {
  for (const char* name : {"K3", "C4", "example", "P4"}) {
    const Graph g = named(name);
    const auto embs = enumerate_minor_embeddings(g);
    std::set<CanonicalForm> forms;
    for (const auto& emb : embs) {
      const MinorTrace t = trace_of(g, emb);
      std::vector<int> map;
      const Graph h = t.replay(&map);
      CHECK(h == emb.minor);
      CHECK(map == emb.group_of);
      forms.insert(canonical_form(emb.minor));
    }
    CHECK(forms.size() == enumerate_minors(g).minors.size());
  }
}

TEST_CASE("automorphism groups") {
  CHECK(automorphisms(named("K3")).size() == 6);
  CHECK(automorphisms(named("C4")).size() == 8);
  CHECK(automorphisms(graphs::path(3)).size() == 2);
  for (const char* name : {"K2,3", "prism", "example", "G151", "BP", "E3"}) {
    const Graph g = named(name);
    const auto auts = automorphisms(g);
    CHECK(auts.size() == brute_automorphism_count(g));
    std::vector<int> id(g.order());
    std::iota(id.begin(), id.end(), 0);
    CHECK(auts.front() == id);
    // closed under composition
    std::set<std::vector<int>> group(auts.begin(), auts.end());
    for (const auto& a : auts)
      for (const auto& b : auts) {
        std::vector<int> ab(g.order());
        for (int v = 0; v < g.order(); ++v) ab[v] = a[b[v]];
        CHECK(group.count(ab));
      }
  }
}

TEST_CASE("canonical form is invariant under relabelling") {
  std::mt19937 rng(7);
  for (const char* name : {"K4~", "SP", "BP", "G129", "G151", "G153", "G154", "C6", "K2,4", "prism"}) {
    const Graph g = named(name);
    const auto f = canonical_form(g);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> p(g.order());
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      CHECK(canonical_form(permuted(g, p)) == f);
    }
  }
  CHECK_FALSE(isomorphic(named("G151"), named("G153")));
  CHECK_FALSE(isomorphic(named("C6"), named("prism")));
}

TEST_CASE("graph classes on small vertex counts") {
  // numbers of isomorphism classes of graphs on n vertices
  const std::size_t expected[] = {1, 1, 2, 4, 11, 34, 156};
  for (int n = 0; n <= 6; ++n) CHECK(all_graphs(n).size() == expected[n]);
}

TEST_CASE("decompositions") {
  const Graph bowtie(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  bool shared_vertex = false;
  for (const auto& d : find_decompositions(bowtie))
    shared_vertex = shared_vertex || (d.kind == Decomposition::Kind::Vertex && d.s == std::vector<Vertex>{2});
  CHECK(shared_vertex);

  CHECK(find_decompositions(named("C5")).empty());
  const Graph u = disjoint_union(named("K3"), named("C4"));
  bool has_empty = false;
  for (const auto& d : find_decompositions(u)) has_empty = has_empty || d.kind == Decomposition::Kind::Empty;
  CHECK(has_empty);

  for (const char* name : {"K3", "C4", "K4", "C5", "K2,3", "K4~", "SP", "BP", "K5", "C6", "K2,4", "G129", "G151",
                           "G153", "G154"}) {
    CHECK_MESSAGE(find_decompositions(named(name)).empty(), std::string(name));
  }
}

TEST_CASE("every reported decomposition is valid") {
  for (int n = 2; n <= 5; ++n) {
    for (const Graph& g : all_graphs(n)) {
      for (const auto& d : find_decompositions(g)) {
        CHECK_FALSE(d.v1.empty());
        CHECK_FALSE(d.v2.empty());
        for (Vertex a : d.v1)
          for (Vertex b : d.v2) CHECK_FALSE(g.adjacent(a, b));
        if (d.kind == Decomposition::Kind::Edge) CHECK(g.adjacent(d.s[0], d.s[1]));
        CHECK(d.v1.size() + d.s.size() + d.v2.size() == static_cast<std::size_t>(n));
      }
    }
  }
}

namespace {

// reducibility straight from the definition: try every labelling of vertices as V1, S, V2
bool reducible_by_definition(const Graph& g) {
  const int n = g.order();
  std::vector<int> side(n, 0);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    std::vector<Vertex> s;
    int n1 = 0, n2 = 0;
    for (int v = 0; v < n; ++v) {
      side[v] = static_cast<int>(c % 3);
      c /= 3;
      if (side[v] == 0) ++n1;
      if (side[v] == 1) s.push_back(v);
      if (side[v] == 2) ++n2;
    }
    if (n1 == 0 || n2 == 0) continue;
    if (s.size() > 2 || (s.size() == 2 && !g.adjacent(s[0], s[1]))) continue;
    bool crossing = false;
    for (const Edge& e : g.edges()) crossing = crossing || (side[e.u] + side[e.v] == 2 && side[e.u] != 1);
    if (!crossing) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("irreducible graph counts") {
  auto irreducible = [](int n, std::size_t max_edges) {
    std::size_t count = 0;
    for (const Graph& g : all_graphs(n)) {
      const bool red = is_reducible(g);
      CHECK(red == reducible_by_definition(g));
      count += g.size() <= max_edges && !red;
    }
    return count;
  };
  CHECK(irreducible(3, 99) == 1);
  CHECK(irreducible(4, 99) == 2);
  CHECK(irreducible(5, 99) == 6);
  CHECK(irreducible(6, 8) == 6);
  // exhaustive check of the definition gives 30 classes on six vertices
  CHECK(irreducible(6, 99) == 30);
}

TEST_CASE("forests and treewidth") {
  CHECK(is_forest(graphs::path(4)));
  CHECK(treewidth(graphs::path(4)) == 1);
  CHECK_FALSE(is_forest(named("C5")));
  CHECK(treewidth(named("C5")) == 2);
  CHECK(treewidth(named("K4")) == 3);
  CHECK(treewidth(named("K2,3")) == 2);
  CHECK(treewidth(Graph(3)) == 0);
  CHECK_THROWS_AS(treewidth(graphs::path(13)), CapabilityError);
}
