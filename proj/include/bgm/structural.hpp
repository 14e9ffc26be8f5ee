#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bgm/canonical.hpp"
#include "bgm/graph.hpp"
#include "bgm/minors.hpp"
#include "bgm/model.hpp"

namespace bgm {

/// Vertex (S, T) of the fundamental graph; subsets of {1..d} as bit masks (bit j-1 = j).
struct FundamentalVertex {
  std::uint32_t s = 0;
  std::uint32_t t = 0;
  bool operator==(const FundamentalVertex&) const = default;
};

/// "({1},{2})".
std::string to_string(const FundamentalVertex& v);

struct FundamentalGraph {
  int d = 0;
  Graph graph;
  /// labels[i] is vertex i; ordered by |S|, then S, then T (subsets compared as sorted lists).
  std::vector<FundamentalVertex> labels;
};

/// 2 <= d <= 6.
FundamentalGraph fundamental_graph(int d);

/// The binomial whose j-th plus row has a 1 at (S,T) iff j in S and whose j-th minus row
/// has a 1 iff j in T.
Move distinguished_generator(const FundamentalGraph& x);

/// Acts on moves of a fixed graph by bit flips and automorphisms. |V| <= 12.
class MoveCanonicalizer {
 public:
  explicit MoveCanonicalizer(const Graph& g);

  /// Least element of the orbit of m, with m and its negation identified. Throws
  /// ArgumentError if m is not a move of the graph.
  Move canonicalize(const Move& m) const;
  /// Distinct images of m, each stored as the lesser of itself and its negation.
  std::vector<Move> orbit(const Move& m) const;
  std::size_t group_order() const { return auts_.size() << n_; }

  /// Image of a table under flip mask `flips` (bit v = flip vertex v) then automorphism a.
  Table act(const Table& t, std::uint32_t flips, const Permutation& a) const;

 private:
  Graph g_;
  int n_ = 0;
  std::vector<Permutation> auts_;
};

Move canonicalize_move(const Graph& g, const Move& m);
/// The lesser of m and its negation.
Move sign_normalized(const Move& m);

/// One degree-2 class: vertex parts (0 = V1, 1 = V2, 2 = V3) and its move.
struct PartitionClass {
  std::vector<int> part;
  Move move;
};

/// Partitions V1 u V2 u V3 with V1, V2 nonempty and no V1-V2 edge, up to swapping V1 and
/// V2 (V1 holds the smallest vertex of V1 u V2).
std::vector<PartitionClass> degree2_classes(const Graph& g);

/// Proper 3-colourings use colours 0, 1, 2; coloring[v] is the colour of v.
using Coloring = std::vector<int>;

struct ColoringComponent {
  Coloring representative;  ///< least member in lexicographic order
  std::size_t size = 0;
};

/// Components of the 3-colouring graph, ordered by representative. |V| <= 10.
std::vector<ColoringComponent> coloring_graph_components(const Graph& g);
/// At least two components; false when g has no proper 3-colouring.
bool is_3rigid(const Graph& g);

struct Provenance {
  enum class Kind { Pullback, Partition, Coloring };
  Kind kind = Kind::Pullback;
  /// Pullback: vertex -> fundamental-graph vertex, -1 for deleted vertices.
  /// Partition: vertex -> part. Coloring: vertex -> group of the 3-rigid minor (-1 deleted).
  std::vector<int> vertex_map;
  /// Coloring only: the two colourings of the minor.
  Coloring first, second;

  std::string describe() const;
};

struct GeneratorCandidate {
  Move move;
  Provenance provenance;
  std::optional<bool> minimal;  ///< empty until certified
};

/// All homomorphisms g -> h (adjacent vertices go to adjacent vertices), in lexicographic
/// order of the image vectors. Stops after `max_out` and sets *truncated.
std::vector<std::vector<Vertex>> homomorphisms(const Graph& g, const Graph& h, std::uint64_t max_out = 1'000'000,
                                               bool* truncated = nullptr);

struct PipelineOptions {
  bool certify = true;
  std::uint64_t max_maps = 50'000'000;
  /// Decide minimality on the image subgraph by the triangular-prism criterion instead of
  /// the fiber test (d = 3 only).
  bool prism_criterion = false;
};

struct PipelineResult {
  std::vector<GeneratorCandidate> candidates;  ///< distinct up to sign
  std::uint64_t maps_examined = 0;
  bool truncated = false;
};

/// Degree-d pullbacks of the distinguished generator along every minor of g and every
/// homomorphism into X_d, kept when the image on the image subgraph is minimal. Each
/// composite (minor, homomorphism) is a map V(g) -> V(X_d) u {deleted} under which
/// adjacent kept vertices have equal or adjacent images; deleted columns are set to 0.
/// The image test is necessary only: a homomorphism gluing nonadjacent vertices can pass
/// it with a pullback that is not minimal in g, so `minimal` is the verdict that counts.
PipelineResult pullback_candidates(const Graph& g, int d, const PipelineOptions& opt = {});

/// Whether the image of f_d on the subgraph (vertices, edges) of X_d is minimal there.
bool image_is_minimal(const FundamentalGraph& x, const std::vector<Vertex>& vertices, const std::vector<Edge>& edges);
/// Whether the subgraph contains a triangular prism (not necessarily induced).
bool contains_prism(const Graph& r);
/// Number of triangular-prism subgraphs of g.
std::size_t count_prism_subgraphs(const Graph& g);

/// Cubic moves from 3-rigid minors: for every minor embedding whose minor is 3-rigid and
/// every colouring component after the first, the move comparing the two representatives.
std::vector<GeneratorCandidate> degree3_generators(const Graph& g, bool certify = false);

}  // namespace bgm
