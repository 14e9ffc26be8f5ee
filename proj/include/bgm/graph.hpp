#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bgm {

using Vertex = int;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Simple undirected graph on vertices 0..n-1.
///
/// Vertex ids are dense. Operations that remove vertices (deletion, contraction)
/// renumber the survivors by shifting every id above the removed one down by one,
/// so relative order is always preserved.
class Graph {
 public:
  Graph() = default;
  /// Throws ArgumentError on loops, repeated edges or endpoints outside [0, n).
  explicit Graph(int n, std::vector<Edge> edges = {});

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool adjacent(Vertex a, Vertex b) const;
  bool has_edge(const Edge& e) const { return adjacent(e.u, e.v); }
  bool has_vertex(Vertex v) const { return v >= 0 && v < n_; }
  int degree(Vertex v) const;
  std::vector<Vertex> neighbors(Vertex v) const;
  /// Vertices incident to no edge, ascending.
  std::vector<Vertex> isolated_vertices() const;

  /// Induced subgraph; vertex i of the result is vs[i].
  Graph induced(std::span<const Vertex> vs) const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adj_;
};

/// Builds a graph from 1-based edge pairs such as "12", "23".
Graph graph_from_one_based(int n, std::span<const std::pair<int, int>> edges);

Graph disjoint_union(const Graph& a, const Graph& b);

/// Connected components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
bool is_forest(const Graph& g);

namespace graphs {
Graph empty(int n);
Graph path(int n);               ///< path on n vertices
Graph cycle(int n);              ///< n >= 3
Graph complete(int n);
Graph complete_bipartite(int m, int n);  ///< parts {0..m-1}, {m..m+n-1}
Graph star(int leaves);          ///< K_{1,leaves}, centre 0
Graph triangular_prism();        ///< triangles 012, 345; rungs i -- i+3

/// Named graphs used throughout the tests and CLI: "K3", "C5", "P4", "S3", "E2",
/// "K2,3", "prism", "K4~", "SP", "BP", "G129", "G151", "G153", "G154", "example".
std::optional<Graph> by_name(const std::string& name);
std::vector<std::string> known_names();
}  // namespace graphs

}  // namespace bgm
