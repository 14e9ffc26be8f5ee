#pragma once

#include <cstddef>
#include <vector>

#include "bgm/graph.hpp"

namespace bgm {

/// g minus v and its incident edges. Vertices above v shift down by one.
Graph delete_vertex(const Graph& g, Vertex v);

/// Merges e.v into e.u (e.u < e.v); parallel edges collapse, the contracted edge disappears.
/// Vertices above e.v shift down by one.
Graph contract_edge(const Graph& g, const Edge& e);

struct MinorStep {
  enum class Kind { DeleteVertex, ContractEdge };
  Kind kind = Kind::DeleteVertex;
  Vertex a = 0;  // vertex to delete, or lower endpoint of the contracted edge
  Vertex b = 0;  // upper endpoint (contraction only)

  bool operator==(const MinorStep&) const = default;
};

/// A replayable derivation of a minor. Step vertex ids refer to the graph as it stands
/// just before that step.
struct MinorTrace {
  Graph base;
  std::vector<MinorStep> steps;
  /// base vertex -> result vertex, or -1 when deleted
  std::vector<int> vertex_map;

  /// Re-applies every step to `base`; the vertex map is recomputed alongside.
  Graph replay(std::vector<int>* map_out = nullptr) const;
};

/// Starts a trace at `g` with no steps.
MinorTrace trivial_trace(const Graph& g);
MinorTrace then_delete(const MinorTrace& t, const Graph& current, Vertex v);
MinorTrace then_contract(const MinorTrace& t, const Graph& current, const Edge& e);

struct Minor {
  Graph graph;
  MinorTrace trace;
};

struct MinorSet {
  std::vector<Minor> minors;
  bool truncated = false;
};

/// All nonempty minors (vertex deletion and edge contraction only) up to isomorphism, each
/// with one witnessing trace, in breadth-first discovery order. Stops once `max_out`
/// classes have been found and sets `truncated`.
MinorSet enumerate_minors(const Graph& g, std::size_t max_out = 100000);

/// A concrete minor: the kept vertices of g partitioned into connected groups, one group per
/// minor vertex. Distinct embeddings can yield isomorphic minors.
struct MinorEmbedding {
  /// base vertex -> minor vertex, -1 when deleted; minor vertices numbered by smallest member
  std::vector<int> group_of;
  Graph minor;
};

/// Every distinct embedding with at least one kept vertex. |V(g)| <= 9.
std::vector<MinorEmbedding> enumerate_minor_embeddings(const Graph& g);

/// A trace realising an embedding (deletions first, then contractions inside groups).
MinorTrace trace_of(const Graph& g, const MinorEmbedding& emb);

}  // namespace bgm
