#include "bgm/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "bgm/errors.hpp"

namespace bgm {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw ArgumentError("negative vertex count");
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.v >= n) {
      throw ArgumentError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          "} has an endpoint outside 0.." + std::to_string(n - 1));
    }
    if (e.u == e.v) throw ArgumentError("loop at vertex " + std::to_string(e.u));
    auto& cell = adj_[static_cast<std::size_t>(e.u) * n + e.v];
    if (cell) {
      throw ArgumentError("repeated edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    }
    cell = 1;
    adj_[static_cast<std::size_t>(e.v) * n + e.u] = 1;
  }
  std::sort(edges_.begin(), edges_.end());
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  if (!has_vertex(a) || !has_vertex(b)) return false;
  return adj_[static_cast<std::size_t>(a) * n_ + b] != 0;
}

int Graph::degree(Vertex v) const {
  if (!has_vertex(v)) throw ArgumentError("unknown vertex " + std::to_string(v));
  int d = 0;
  for (Vertex w = 0; w < n_; ++w) d += adj_[static_cast<std::size_t>(v) * n_ + w];
  return d;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  if (!has_vertex(v)) throw ArgumentError("unknown vertex " + std::to_string(v));
  std::vector<Vertex> out;
  for (Vertex w = 0; w < n_; ++w) {
    if (adj_[static_cast<std::size_t>(v) * n_ + w]) out.push_back(w);
  }
  return out;
}

std::vector<Vertex> Graph::isolated_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n_; ++v) {
    if (degree(v) == 0) out.push_back(v);
  }
  return out;
}

Graph Graph::induced(std::span<const Vertex> vs) const {
  std::vector<Edge> es;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!has_vertex(vs[i])) throw ArgumentError("unknown vertex " + std::to_string(vs[i]));
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (adjacent(vs[i], vs[j])) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return Graph(static_cast<int>(vs.size()), std::move(es));
}

Graph graph_from_one_based(int n, std::span<const std::pair<int, int>> edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (auto [a, b] : edges) es.emplace_back(a - 1, b - 1);
  return Graph(n, std::move(es));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> es = a.edges();
  for (const Edge& e : b.edges()) es.emplace_back(e.u + a.order(), e.v + a.order());
  return Graph(a.order() + b.order(), std::move(es));
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<int> comp(g.order(), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (Vertex w : g.neighbors(members[i])) {
        if (comp[w] < 0) {
          comp[w] = comp[s];
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

bool is_forest(const Graph& g) {
  // acyclic iff |E| = |V| - #components
  return g.size() + connected_components(g).size() == static_cast<std::size_t>(g.order());
}

namespace graphs {

Graph empty(int n) { return Graph(n); }

Graph path(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph(n, std::move(es));
}

Graph cycle(int n) {
  if (n < 3) throw ArgumentError("cycle needs at least 3 vertices");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(es));
}

Graph complete(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph(n, std::move(es));
}

Graph complete_bipartite(int m, int n) {
  std::vector<Edge> es;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) es.emplace_back(i, m + j);
  return Graph(m + n, std::move(es));
}

Graph star(int leaves) { return complete_bipartite(1, leaves); }

Graph triangular_prism() {
  return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

namespace {

using P = std::pair<int, int>;

const std::map<std::string, std::pair<int, std::vector<P>>>& table_graphs() {
  static const std::map<std::string, std::pair<int, std::vector<P>>> g = {
      {"K4~", {5, {{1, 2}, {1, 5}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}}}},
      {"SP", {5, {{1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}}}},
      {"BP", {5, {{1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}}},
      {"G129", {6, {{1, 2}, {1, 5}, {2, 3}, {2, 6}, {3, 4}, {4, 5}, {5, 6}}}},
      {"G151", {6, {{1, 2}, {1, 4}, {2, 3}, {2, 6}, {3, 4}, {3, 6}, {4, 5}, {5, 6}}}},
      {"G153", {6, {{1, 2}, {1, 5}, {1, 6}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {5, 6}}}},
      {"G154", {6, {{1, 2}, {1, 4}, {2, 3}, {2, 5}, {3, 4}, {3, 6}, {4, 5}, {5, 6}}}},
      {"example", {4, {{1, 2}, {2, 3}}}},
  };
  return g;
}

std::optional<int> parse_int(const std::string& s) {
  if (s.empty() || s.size() > 3) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

std::optional<Graph> by_name(const std::string& name) {
  if (auto it = table_graphs().find(name); it != table_graphs().end()) {
    return graph_from_one_based(it->second.first, it->second.second);
  }
  if (name == "prism") return triangular_prism();
  if (name.size() < 2) return std::nullopt;
  const char kind = name[0];
  const std::string rest = name.substr(1);
  if (kind == 'K') {
    if (auto comma = rest.find(','); comma != std::string::npos) {
      auto m = parse_int(rest.substr(0, comma));
      auto n = parse_int(rest.substr(comma + 1));
      if (!m || !n) return std::nullopt;
      return complete_bipartite(*m, *n);
    }
    if (auto n = parse_int(rest)) return complete(*n);
    return std::nullopt;
  }
  auto n = parse_int(rest);
  if (!n) return std::nullopt;
  switch (kind) {
    case 'C':
      return *n >= 3 ? std::optional<Graph>(cycle(*n)) : std::nullopt;
    case 'P':
      return path(*n);
    case 'S':
      return star(*n);
    case 'E':
      return empty(*n);
    default:
      return std::nullopt;
  }
}

std::vector<std::string> known_names() {
  std::vector<std::string> out = {"K<n>", "C<n>", "P<n>", "S<n>", "E<n>", "K<m>,<n>", "prism"};
  for (const auto& [k, _] : table_graphs()) out.push_back(k);
  return out;
}

}  // namespace graphs

}  // namespace bgm
