#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bgm/graph.hpp"

namespace bgm {

/// Cell number of an index string read as a binary number, vertex 0 most significant.
using Cell = std::uint32_t;

/// Binary index string i_1 ... i_n, one character per vertex. Ordering is lexicographic,
/// which for equal lengths is the binary-number order.
class IndexString {
 public:
  IndexString() = default;
  /// Throws ArgumentError unless every character is '0' or '1'.
  explicit IndexString(std::string bits);
  static IndexString from_cell(int n, Cell c);

  int size() const { return static_cast<int>(bits_.size()); }
  bool bit(int v) const { return bits_[v] == '1'; }
  /// Requires size() <= 32.
  Cell to_cell() const;
  const std::string& str() const { return bits_; }

  auto operator<=>(const IndexString&) const = default;

 private:
  std::string bits_;
};

/// Nonnegative integer table on {0,1}^n; absent cells are zero.
class Table {
 public:
  Table() = default;
  explicit Table(int n) : n_(n) {}
  static Table from_cells(int n, std::span<const Cell> cells);

  int width() const { return n_; }
  std::uint64_t degree() const { return degree_; }
  bool empty() const { return degree_ == 0; }
  std::uint64_t at(const IndexString& s) const;
  const std::map<IndexString, std::uint64_t>& entries() const { return entries_; }

  void add(const IndexString& s, std::uint64_t k = 1);
  /// Throws ArgumentError if the entry would go negative.
  void remove(const IndexString& s, std::uint64_t k = 1);

  /// Multiset of cells in ascending order (width() <= 32).
  std::vector<Cell> cells() const;
  /// Multiset of index strings in ascending order, one per unit.
  std::vector<IndexString> units() const;
  /// Componentwise >=.
  bool contains(const Table& other) const;
  bool shares_support(const Table& other) const;

  Table& operator+=(const Table& other);
  /// Throws ArgumentError if the result would be negative somewhere.
  Table& operator-=(const Table& other);

  bool operator==(const Table& o) const { return n_ == o.n_ && entries_ == o.entries_; }
  /// Width first, then lexicographic on the ascending unit sequence.
  std::strong_ordering operator<=>(const Table& o) const;

 private:
  int n_ = 0;
  std::uint64_t degree_ = 0;
  std::map<IndexString, std::uint64_t> entries_;
};

Table operator+(Table a, const Table& b);
Table operator-(Table a, const Table& b);

/// The binomial p^plus - p^minus.
struct Move {
  Table plus;
  Table minus;

  std::uint64_t degree() const { return plus.degree(); }
  Move negated() const { return {minus, plus}; }

  bool operator==(const Move&) const = default;
  auto operator<=>(const Move& o) const {
    if (auto c = plus <=> o.plus; c != 0) return c;
    return minus <=> o.minus;
  }
};

/// Image of a table under the marginal map: per edge the counts of cells 00,01,10,11 on
/// its endpoints, per isolated vertex the counts of 0 and 1. Blocks follow the sorted edge
/// list and the ascending isolated-vertex list of the graph.
struct MarginalVector {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::array<std::uint64_t, 4>> edge_counts;
  std::vector<Vertex> isolated;
  std::vector<std::array<std::uint64_t, 2>> vertex_counts;

  /// Common total of every block (0 for a graph without vertices).
  std::uint64_t degree() const;
  /// Byte string that determines the vector; used as a hash key.
  std::string serialize() const;

  MarginalVector& operator+=(const MarginalVector& other);
  auto operator<=>(const MarginalVector&) const = default;
};

/// Zero marginal vector shaped for g.
MarginalVector zero_marginals(const Graph& g);

using Matrix = std::vector<std::vector<int>>;

/// A_G: rows are edge blocks (cells 00,01,10,11) in sorted edge order, then isolated
/// vertex blocks (0,1); columns are the 2^n cells in binary-number order. n <= 12.
Matrix marginal_matrix(const Graph& g);
/// Human-readable row names, e.g. "{0,1}:10" or "{3}:1".
std::vector<std::string> marginal_row_labels(const Graph& g);

/// Throws ArgumentError when t.width() != g.order().
MarginalVector marginals_of(const Graph& g, const Table& t);

/// Nonzero sides of equal width n = |V(g)|, disjoint supports, equal marginals.
bool is_move(const Graph& g, const Move& m);

struct FiberOptions {
  std::uint64_t max_tables = 1'000'000;
};

/// Every table with marginals mv, ascending. Throws BudgetExceeded (progress = tables
/// found) when more than max_tables exist.
std::vector<Table> enumerate_fiber(const Graph& g, const MarginalVector& mv,
                                   const FiberOptions& opt = {});

/// Exact rank over the rationals.
int integer_rank(const Matrix& m);

/// dim conv(columns of A_G) = rank(A_G) - 1.
int polytope_dimension(const Graph& g);
/// Whether the columns of A_G with a zero in `row` span a face of dimension dim - 1.
/// Throws CapabilityError unless g is a forest.
bool claimed_facet_is_facet(const Graph& g, int row);

}  // namespace bgm
