#include "bgm/model.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

#include "bgm/errors.hpp"

namespace bgm {

IndexString::IndexString(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') throw ArgumentError("index string '" + bits_ + "' is not binary");
  }
}

IndexString IndexString::from_cell(int n, Cell c) {
  std::string s(n, '0');
  for (int v = 0; v < n; ++v)
    if (c >> (n - 1 - v) & 1) s[v] = '1';
  IndexString out;
  out.bits_ = std::move(s);
  return out;
}

Cell IndexString::to_cell() const {
  if (bits_.size() > 32) throw CapabilityError("index string too wide for a cell number");
  Cell c = 0;
  for (char ch : bits_) c = c << 1 | (ch == '1');
  return c;
}

Table Table::from_cells(int n, std::span<const Cell> cells) {
  Table t(n);
  for (Cell c : cells) t.add(IndexString::from_cell(n, c));
  return t;
}

std::uint64_t Table::at(const IndexString& s) const {
  auto it = entries_.find(s);
  return it == entries_.end() ? 0 : it->second;
}

void Table::add(const IndexString& s, std::uint64_t k) {
  if (s.size() != n_) {
    throw ArgumentError("index string '" + s.str() + "' has length " + std::to_string(s.size()) +
                        ", expected " + std::to_string(n_));
  }
  if (k == 0) return;
  entries_[s] += k;
  degree_ += k;
}

void Table::remove(const IndexString& s, std::uint64_t k) {
  if (k == 0) return;
  auto it = entries_.find(s);
  if (it == entries_.end() || it->second < k) {
    throw ArgumentError("entry " + s.str() + " would become negative");
  }
  it->second -= k;
  degree_ -= k;
  if (it->second == 0) entries_.erase(it);
}

std::vector<Cell> Table::cells() const {
  std::vector<Cell> out;
  out.reserve(degree_);
  for (const auto& [s, k] : entries_) out.insert(out.end(), k, s.to_cell());
  return out;
}

std::vector<IndexString> Table::units() const {
  std::vector<IndexString> out;
  out.reserve(degree_);
  for (const auto& [s, k] : entries_) out.insert(out.end(), k, s);
  return out;
}

bool Table::contains(const Table& other) const {
  for (const auto& [s, k] : other.entries_)
    if (at(s) < k) return false;
  return true;
}

bool Table::shares_support(const Table& other) const {
  auto a = entries_.begin(), b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first == b->first) return true;
    if (a->first < b->first) ++a;
    else ++b;
  }
  return false;
}

Table& Table::operator+=(const Table& other) {
  if (other.n_ != n_) throw ArgumentError("table width mismatch");
  for (const auto& [s, k] : other.entries_) add(s, k);
  return *this;
}

Table& Table::operator-=(const Table& other) {
  if (other.n_ != n_) throw ArgumentError("table width mismatch");
  if (!contains(other)) throw ArgumentError("table subtraction would go negative");
  for (const auto& [s, k] : other.entries_) remove(s, k);
  return *this;
}

std::strong_ordering Table::operator<=>(const Table& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  auto a = entries_.begin(), b = o.entries_.begin();
  std::uint64_t ka = a == entries_.end() ? 0 : a->second;
  std::uint64_t kb = b == o.entries_.end() ? 0 : b->second;
  // walk the two unit sequences in step
  while (a != entries_.end() && b != o.entries_.end()) {
    if (auto c = a->first <=> b->first; c != 0) return c;
    const std::uint64_t step = std::min(ka, kb);
    ka -= step;
    kb -= step;
    if (ka == 0 && ++a != entries_.end()) ka = a->second;
    if (kb == 0 && ++b != o.entries_.end()) kb = b->second;
  }
  const bool a_done = a == entries_.end(), b_done = b == o.entries_.end();
  if (a_done && b_done) return std::strong_ordering::equal;
  return a_done ? std::strong_ordering::less : std::strong_ordering::greater;
}

Table operator+(Table a, const Table& b) { return a += b; }
Table operator-(Table a, const Table& b) { return a -= b; }

std::uint64_t MarginalVector::degree() const {
  if (!edge_counts.empty()) {
    const auto& c = edge_counts.front();
    return c[0] + c[1] + c[2] + c[3];
  }
  if (!vertex_counts.empty()) return vertex_counts.front()[0] + vertex_counts.front()[1];
  return 0;
}

std::string MarginalVector::serialize() const {
  std::string out;
  auto put = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(x >> (8 * i) & 0xff));
  };
  put(static_cast<std::uint64_t>(n));
  put(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    put(static_cast<std::uint64_t>(edges[i].u));
    put(static_cast<std::uint64_t>(edges[i].v));
    for (auto x : edge_counts[i]) put(x);
  }
  put(isolated.size());
  for (std::size_t i = 0; i < isolated.size(); ++i) {
    put(static_cast<std::uint64_t>(isolated[i]));
    for (auto x : vertex_counts[i]) put(x);
  }
  return out;
}

MarginalVector& MarginalVector::operator+=(const MarginalVector& o) {
  if (n != o.n || edges != o.edges || isolated != o.isolated) {
    throw ArgumentError("marginal vectors belong to different graphs");
  }
  for (std::size_t i = 0; i < edge_counts.size(); ++i)
    for (int k = 0; k < 4; ++k) edge_counts[i][k] += o.edge_counts[i][k];
  for (std::size_t i = 0; i < vertex_counts.size(); ++i)
    for (int k = 0; k < 2; ++k) vertex_counts[i][k] += o.vertex_counts[i][k];
  return *this;
}

MarginalVector zero_marginals(const Graph& g) {
  MarginalVector mv;
  mv.n = g.order();
  mv.edges = g.edges();
  mv.edge_counts.assign(mv.edges.size(), {0, 0, 0, 0});
  mv.isolated = g.isolated_vertices();
  mv.vertex_counts.assign(mv.isolated.size(), {0, 0});
  return mv;
}

Matrix marginal_matrix(const Graph& g) {
  const int n = g.order();
  if (n > 12) throw CapabilityError("marginal_matrix supports at most 12 vertices");
  const auto iso = g.isolated_vertices();
  const std::size_t rows = 4 * g.size() + 2 * iso.size();
  const Cell cols = Cell{1} << n;
  Matrix a(rows, std::vector<int>(cols, 0));
  for (Cell c = 0; c < cols; ++c) {
    auto bit = [&](Vertex v) { return static_cast<int>(c >> (n - 1 - v) & 1); };
    std::size_t r = 0;
    for (const Edge& e : g.edges()) {
      a[r + 2 * bit(e.u) + bit(e.v)][c] = 1;
      r += 4;
    }
    for (Vertex v : iso) {
      a[r + bit(v)][c] = 1;
      r += 2;
    }
  }
  return a;
}

std::vector<std::string> marginal_row_labels(const Graph& g) {
  std::vector<std::string> out;
  for (const Edge& e : g.edges()) {
    for (const char* cell : {"00", "01", "10", "11"}) {
      out.push_back("{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}:" + cell);
    }
  }
  for (Vertex v : g.isolated_vertices()) {
    for (const char* cell : {"0", "1"}) out.push_back("{" + std::to_string(v) + "}:" + cell);
  }
  return out;
}

MarginalVector marginals_of(const Graph& g, const Table& t) {
  if (t.width() != g.order()) {
    throw ArgumentError("table width " + std::to_string(t.width()) + " does not match graph order " +
                        std::to_string(g.order()));
  }
  MarginalVector mv = zero_marginals(g);
  for (const auto& [s, k] : t.entries()) {
    for (std::size_t i = 0; i < mv.edges.size(); ++i) {
      mv.edge_counts[i][2 * s.bit(mv.edges[i].u) + s.bit(mv.edges[i].v)] += k;
    }
    for (std::size_t i = 0; i < mv.isolated.size(); ++i) {
      mv.vertex_counts[i][s.bit(mv.isolated[i])] += k;
    }
  }
  return mv;
}

bool is_move(const Graph& g, const Move& m) {
  if (m.plus.width() != g.order() || m.minus.width() != g.order()) return false;
  if (m.plus.empty() || m.minus.empty()) return false;
  if (m.plus.shares_support(m.minus)) return false;
  return marginals_of(g, m.plus) == marginals_of(g, m.minus);
}

namespace {

struct FiberSearch {
  int n = 0;
  Cell cells = 0;
  // per cell: indices into the flat remaining-count array
  std::vector<std::vector<std::uint32_t>> slots;
  std::vector<std::uint64_t> remaining;
  std::vector<Cell> chosen;
  std::vector<Table> out;
  std::uint64_t cap = 0;

  bool fits(Cell c) const {
    for (auto s : slots[c])
      if (remaining[s] == 0) return false;
    return true;
  }

  void take(Cell c, int sign) {
    for (auto s : slots[c]) remaining[s] -= sign;
  }

  void run(Cell from, std::uint64_t left) {
    if (left == 0) {
      if (out.size() >= cap) throw BudgetExceeded("fiber has more than " + std::to_string(cap) + " tables", out.size());
      out.push_back(Table::from_cells(n, chosen));
      return;
    }
    for (Cell c = from; c < cells; ++c) {
      if (!fits(c)) continue;
      take(c, 1);
      chosen.push_back(c);
      run(c, left - 1);
      chosen.pop_back();
      take(c, -1);
    }
  }
};

}  // namespace

std::vector<Table> enumerate_fiber(const Graph& g, const MarginalVector& mv, const FiberOptions& opt) {
  const int n = g.order();
  if (mv.n != n || mv.edges != g.edges() || mv.isolated != g.isolated_vertices()) {
    throw ArgumentError("marginal vector does not belong to this graph");
  }
  if (n > 20) throw CapabilityError("enumerate_fiber supports at most 20 vertices");
  const std::uint64_t d = mv.degree();
  for (const auto& c : mv.edge_counts)
    if (c[0] + c[1] + c[2] + c[3] != d) return {};
  for (const auto& c : mv.vertex_counts)
    if (c[0] + c[1] != d) return {};

  FiberSearch s;
  s.n = n;
  s.cells = Cell{1} << n;
  s.cap = opt.max_tables;
  s.slots.resize(s.cells);
  for (const auto& c : mv.edge_counts) s.remaining.insert(s.remaining.end(), c.begin(), c.end());
  for (const auto& c : mv.vertex_counts) s.remaining.insert(s.remaining.end(), c.begin(), c.end());
  for (Cell c = 0; c < s.cells; ++c) {
    auto bit = [&](Vertex v) { return static_cast<std::uint32_t>(c >> (n - 1 - v) & 1); };
    std::uint32_t base = 0;
    for (const Edge& e : mv.edges) {
      s.slots[c].push_back(base + 2 * bit(e.u) + bit(e.v));
      base += 4;
    }
    for (Vertex v : mv.isolated) {
      s.slots[c].push_back(base + bit(v));
      base += 2;
    }
  }
  if (n == 0) {
    // single cell, no constraints: only the zero table is well defined
    return {Table(0)};
  }
  s.run(0, d);
  return std::move(s.out);
}

int integer_rank(const Matrix& m) {
  using boost::multiprecision::cpp_int;
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  // rank(M) = rank(M M^T); the Gram matrix is small even when M is wide
  std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i; j < rows; ++j) {
      long long dot = 0;
      for (std::size_t k = 0; k < cols; ++k) dot += static_cast<long long>(m[i][k]) * m[j][k];
      a[i][j] = a[j][i] = dot;
    }
  }
  // Bareiss fraction-free elimination
  int rank = 0;
  cpp_int prev = 1;
  std::vector<char> used(rows, 0);
  for (std::size_t col = 0; col < rows && rank < static_cast<int>(rows); ++col) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < rows; ++c) {
        a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

int polytope_dimension(const Graph& g) { return integer_rank(marginal_matrix(g)) - 1; }

bool claimed_facet_is_facet(const Graph& g, int row) {
  if (!is_forest(g)) throw CapabilityError("facet check requires a forest");
  const Matrix a = marginal_matrix(g);
  if (row < 0 || static_cast<std::size_t>(row) >= a.size()) throw ArgumentError("row out of range");
  Matrix face(a.size());
  for (std::size_t c = 0; c < a[row].size(); ++c) {
    if (a[row][c] != 0) continue;
    for (std::size_t r = 0; r < a.size(); ++r) face[r].push_back(a[r][c]);
  }
  if (face.front().empty()) return false;
  // columns lie on an affine hyperplane, so affine dimension = rank - 1
  return integer_rank(face) - 1 == polytope_dimension(g) - 1;
}

}  // namespace bgm
