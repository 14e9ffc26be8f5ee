#pragma once

#include <vector>

#include "bgm/graph.hpp"

namespace bgm {

/// A split (V1, S, V2) of the vertex set with no V1-V2 edges, S empty, one vertex, or an
/// edge. V1 and V2 are nonempty; V1 holds the smallest vertex outside S.
struct Decomposition {
  enum class Kind { Empty, Vertex, Edge };
  std::vector<Vertex> v1, s, v2;
  Kind kind = Kind::Empty;

  bool operator==(const Decomposition&) const = default;
};

std::vector<Decomposition> find_decompositions(const Graph& g);
inline bool is_reducible(const Graph& g) { return !find_decompositions(g).empty(); }

/// The two induced pieces G[V1 u S] and G[V2 u S] (vertex i of each piece is the i-th
/// smallest of its vertex set).
std::pair<Graph, Graph> pieces(const Graph& g, const Decomposition& d);

/// Exact treewidth by dynamic programming over elimination orders. |V| <= 12.
int treewidth(const Graph& g);

}  // namespace bgm
