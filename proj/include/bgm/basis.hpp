#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bgm/graph.hpp"
#include "bgm/model.hpp"

namespace bgm {

using MoveSet = std::vector<Move>;

struct EngineOptions {
  /// Largest number of degree-d monomials a single (graph, degree) job may enumerate.
  std::uint64_t monomial_budget = 5'000'000;
  /// Monomials held in memory per pass; larger jobs are split into hash-sharded passes.
  std::uint64_t pass_size = 8'000'000;
};

/// Number of degree-d monomials in 2^n variables, saturating at UINT64_MAX.
std::uint64_t monomial_count(int n, int d);

/// Packed monomial: up to 16 cells of 8 bits, first (smallest) cell in the top byte.
using PackedMonomial = unsigned __int128;

/// Streams the degree-d fibers of g that hold at least `min_size` tables. Each call gets
/// the fiber's monomials in ascending order. Fibers arrive grouped by pass; within a pass
/// they are ordered by an internal key. Requires |V| <= 8 and d <= 16. Throws
/// BudgetExceeded when monomial_count exceeds the budget.
void for_each_fiber(const Graph& g, int d, const EngineOptions& opt, std::size_t min_size,
                    const std::function<void(std::span<const PackedMonomial>)>& visit);

std::vector<Cell> unpack(PackedMonomial m, int d);
Table unpack_table(PackedMonomial m, int n, int d);

/// Tables of one degree grouped by marginal vector (singletons included).
std::map<MarginalVector, std::vector<Table>> degree_d_fibers(const Graph& g, int d,
                                                             const EngineOptions& opt = {});

/// Connected components of the graph on `tables` joining two tables that share a cell.
/// Returns the component id of each table; ids are numbered in order of first appearance.
std::vector<int> gcd_components(std::span<const Table> tables);

/// True when the two sides lie in different components of that graph on their fiber, so
/// the move is not generated by moves of lower degree.
bool is_minimal_generator(const Graph& g, const Move& m, const FiberOptions& opt = {});

enum class ComponentRoute {
  Gcd,         ///< join tables sharing a cell (needs no lower moves)
  LowerMoves,  ///< join tables related by a move of `lower`
  Both,        ///< run both and insist they agree
};

struct DegreeResult {
  int degree = 0;
  std::uint64_t count = 0;
  /// One move per generator: (least table of the first component, least table of another).
  std::vector<Move> reps;
  std::uint64_t monomials = 0;
  std::uint64_t nontrivial_fibers = 0;
};

/// Throws PreconditionViolation when `lower` fails to join what lower-degree moves join.
DegreeResult minimal_generators_at_degree(const Graph& g, int d, const MoveSet& lower,
                                          const EngineOptions& opt = {},
                                          ComponentRoute route = ComponentRoute::Gcd);

/// Every move u - v with u, v in different components of a degree-d fiber: the union of
/// all minimal generating sets in that degree.
std::vector<Move> all_minimal_generators_at_degree(const Graph& g, int d, const EngineOptions& opt = {});

struct WidthBound {
  int bound = 0;
  std::string certificate;
};

/// An upper bound on the Markov width that is known without computation: forests, cycles,
/// K_{2,n}, reducible graphs (maximum over pieces) and graphs in the reference table.
std::optional<WidthBound> known_width_bound(const Graph& g);

struct WidthStatus {
  bool exact = false;
  int value = 0;  ///< largest degree with a generator; a lower bound unless exact
  std::string certificate;
};

struct BasisReport {
  Graph graph;
  std::map<int, DegreeResult> per_degree;
  WidthStatus width;
  bool partial = false;
  std::vector<int> skipped;  ///< degrees not computed because of the budget
};

/// Counts for degrees 1..dmax (degree 1 never has generators and is omitted).
BasisReport markov_basis_up_to(const Graph& g, int dmax, const EngineOptions& opt = {});

/// One applied move: the table changes by +(plus - minus) when sign is +1, the reverse
/// when sign is -1.
struct PathStep {
  Move move;
  int sign = 1;
  bool operator==(const PathStep&) const = default;
};

/// Applies a step, throwing ArgumentError if an entry would go negative.
Table apply_step(const Table& t, const PathStep& s);

/// Shortest move path from a to b inside their fiber, or nullopt if none exists.
/// Throws BudgetExceeded after exploring max_nodes tables.
std::optional<std::vector<PathStep>> find_path(const Table& a, const Table& b, const MoveSet& moves,
                                               std::uint64_t max_nodes = 1'000'000);

struct FiberVerdict {
  MarginalVector fiber;
  std::size_t tables = 0;
  bool connected = false;
  bool skipped = false;
  std::string reason;  ///< why skipped
  std::optional<std::pair<Table, Table>> separated;  ///< two tables no path joins
};

/// Exhaustive check of each listed fiber.
std::vector<FiberVerdict> verify_markov_basis(const Graph& g, const MoveSet& moves,
                                              std::span<const MarginalVector> fibers,
                                              const FiberOptions& opt = {});

struct SweepResult {
  bool ok = true;
  int degrees_checked = 0;
  std::uint64_t fibers_checked = 0;
  std::optional<std::pair<Table, Table>> separated;
};

/// Whether `moves` connects every fiber of degree <= dmax. Degrees are processed upwards;
/// a fiber whose tables are already joined through shared cells is connected by the
/// moves once all lower degrees are, so only the remaining fibers are walked.
SweepResult verify_all_fibers(const Graph& g, const MoveSet& moves, int dmax, const EngineOptions& opt = {});

struct WalkResult {
  Table final_table;
  std::map<Table, std::uint64_t> visits;  ///< includes the start
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
};

enum class WalkProposal {
  Uniform,     ///< any move and sign; proposals that would go negative are rejected
  Applicable,  ///< only steps that stay nonnegative, with a Hastings correction
};

/// Metropolis walk on the fiber of `start`; both proposals leave the uniform distribution
/// on the fiber stationary.
WalkResult random_walk(const Graph& g, const MoveSet& moves, const Table& start, std::uint64_t steps,
                       std::uint64_t seed, WalkProposal proposal = WalkProposal::Uniform);

}  // namespace bgm
