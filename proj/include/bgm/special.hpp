#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bgm/basis.hpp"
#include "bgm/graph.hpp"
#include "bgm/model.hpp"

namespace bgm {

/// A move path joining two tables of one fiber.
struct ReductionCertificate {
  Table start;
  Table end;
  std::vector<PathStep> path;
};

struct ReplayResult {
  bool ok = true;
  std::string reason;
  std::size_t max_degree = 0;
};

/// Replays the path on g: every step must be a move of g of degree <= max_degree that
/// keeps the table nonnegative, and the walk must end at `end`.
ReplayResult replay_certificate(const Graph& g, const ReductionCertificate& cert, std::size_t max_degree = 4);

/// Degree-4 minimal generators of C_n (vertices 0..n-1 in cyclic order) given by the block
/// tableau with columns V1, x1, V2, x2: every placement of x1, x2 and every choice of the
/// A_i and B, kept when the instance is a minimal generator, each stored with its lesser
/// side first. 3 <= n <= 8.
std::vector<Move> cycle_quartics(int n);

struct ReductionStats {
  std::size_t shared_extractions = 0;  ///< times a common cell was divided out
  std::size_t local_steps = 0;         ///< moves found by the bounded local search
  std::size_t fallback_searches = 0;   ///< fiber searches after the local search gave up
};

/// Path from t1 to t2 on C_n using only degree-2 moves and cycle quartics. Anchors the
/// closest pair of cells across the two tables and clears their disagreements with local
/// moves of depth <= 3, then divides out the shared cell. Throws ArgumentError unless both
/// tables lie in one fiber of C_n. 3 <= n <= 8.
ReductionCertificate cycle_reduce(int n, const Table& t1, const Table& t2, ReductionStats* stats = nullptr);

/// Path from t1 to t2 on K_{2,n} (vertices v1 = 0, v2 = 1, w_l = l + 1) using degree-2
/// moves and the degree-4 shuffle: both tables are reduced until neither the shuffle nor the
/// 10/01 -> 11/00 exchange applies, then a common cell is produced by case analysis and
/// divided out. Throws ArgumentError unless both tables lie in one fiber. 1 <= n <= 30.
ReductionCertificate k2n_reduce(int n, const Table& t1, const Table& t2, ReductionStats* stats = nullptr);

/// p_0^{m-2} prod_i p_{1-e_i} - p_1^{m-2} prod_i p_{e_i} on K_m, degree 2m-2. m >= 3.
Move km_witness(int m);

struct KmnWitness {
  Graph graph;                          ///< K_{m,N}, N = C(m,2) 2^{m-2}
  std::vector<std::string> w_labels;    ///< index string I of each w vertex, ascending
  Move move;                            ///< degree 2^{m-1}: even-weight minus odd-weight
};

/// 2 <= m <= 4.
KmnWitness kmn_witness(int m);

}  // namespace bgm
