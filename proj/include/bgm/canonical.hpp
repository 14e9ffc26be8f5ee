#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "bgm/graph.hpp"

namespace bgm {

/// Isomorphism-invariant label of a graph. Equal iff the graphs are isomorphic.
struct CanonicalForm {
  int order = 0;
  std::vector<int> colour_profile;   // refined vertex colours in canonical position order
  std::vector<std::uint64_t> code;   // adjacency bits, column by column

  auto operator<=>(const CanonicalForm&) const = default;
};

struct CanonicalLabeling {
  CanonicalForm form;
  /// position[v] = canonical position of vertex v
  std::vector<int> position;
};

/// Search is exhaustive over colour-respecting orderings; throws CapabilityError when the
/// refined colour classes leave more than ~10^7 orderings to try.
CanonicalLabeling canonical_labeling(const Graph& g);
CanonicalForm canonical_form(const Graph& g);
/// The graph relabelled into canonical positions.
Graph canonical_graph(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

using Permutation = std::vector<Vertex>;

/// All permutations p with {p(u),p(v)} in E whenever {u,v} in E. The identity comes first.
std::vector<Permutation> automorphisms(const Graph& g);

/// One representative per isomorphism class of graphs on n vertices, in canonical
/// relabelled form, sorted by (edge count, canonical form). n <= 7.
std::vector<Graph> all_graphs(int n);

}  // namespace bgm
