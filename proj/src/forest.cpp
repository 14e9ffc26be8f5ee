#include "bgm/forest.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>

#include "bgm/errors.hpp"

namespace bgm {

std::optional<BigInt> DegreeMemo::find(const CanonicalForm& key) const {
  std::lock_guard guard(lock_);
  auto it = table_.find(key);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void DegreeMemo::insert(const CanonicalForm& key, const BigInt& value) {
  std::lock_guard guard(lock_);
  table_.emplace(key, value);
}

std::size_t DegreeMemo::size() const {
  std::lock_guard guard(lock_);
  return table_.size();
}

namespace {

DegreeMemo& shared_memo() {
  static DegreeMemo memo;
  return memo;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Graph without_edge(const Graph& g, std::size_t skip) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (i != skip) es.push_back(g.edges()[i]);
  return Graph(g.order(), std::move(es));
}

BigInt tree_degree(const Graph& tree, DegreeMemo& memo);

BigInt degree_rec(const Graph& g, DegreeMemo& memo) {
  const auto comps = connected_components(g);
  if (comps.size() == 1) return tree_degree(g, memo);
  BigInt result = 1;
  int dim = 0;
  for (const auto& c : comps) {
    const Graph part = g.induced(c);
    const int d = part.order() + static_cast<int>(part.size());
    result *= binomial(dim + d, d) * tree_degree(part, memo);
    dim += d;
  }
  return result;
}

BigInt tree_degree(const Graph& tree, DegreeMemo& memo) {
  if (tree.size() == 0) return 1;
  const CanonicalForm key = canonical_form(tree);
  if (auto hit = memo.find(key)) return *hit;
  BigInt sum = 0;
  for (std::size_t i = 0; i < tree.size(); ++i) sum += degree_rec(without_edge(tree, i), memo);
  const BigInt value = sum / 2;
  memo.insert(key, value);
  return value;
}

void require_forest(const Graph& g) {
  if (!is_forest(g)) throw CapabilityError("degree formula needs a forest");
}

// Relabels so that labels grow along every path leaving the least vertex of a component.
Graph breadth_first_labelled(const Graph& g) {
  std::vector<int> label(g.order(), -1);
  int next = 0;
  for (Vertex root = 0; root < g.order(); ++root) {
    if (label[root] >= 0) continue;
    std::vector<Vertex> queue{root};
    label[root] = next++;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (Vertex w : g.neighbors(queue[i]))
        if (label[w] < 0) {
          label[w] = next++;
          queue.push_back(w);
        }
  }
  std::vector<Edge> es;
  for (const Edge& e : g.edges()) es.emplace_back(label[e.u], label[e.v]);
  return Graph(g.order(), std::move(es));
}

}  // namespace

BigInt forest_degree(const Graph& g, DegreeMemo* memo) {
  require_forest(g);
  if (g.order() == 0) return 1;
  return degree_rec(g, memo ? *memo : shared_memo());
}

std::vector<BigInt> deletion_terms(const Graph& tree, DegreeMemo* memo) {
  require_forest(tree);
  if (!is_connected(tree)) throw ArgumentError("deletion terms need a tree");
  DegreeMemo& m = memo ? *memo : shared_memo();
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < tree.size(); ++i) out.push_back(degree_rec(without_edge(tree, i), m));
  return out;
}

BigInt chain_degree(int n) {
  if (n < 1) throw ArgumentError("chain length must be positive");
  std::vector<BigInt> d(n + 1);
  d[1] = 1;
  for (int m = 1; m < n; ++m) {
    BigInt s = 0;
    for (int i = 1; i <= m; ++i) s += binomial(2 * m, 2 * i - 1) * d[i] * d[m + 1 - i];
    d[m + 1] = s / 2;
  }
  return d[n];
}

BigInt star_degree(int n) {
  if (n < 0) throw ArgumentError("leaf count must be nonnegative");
  const BigInt f = factorial(n);
  return f * f;
}

std::vector<BigInt> tangent_numbers(int count) {
  if (count < 1) throw ArgumentError("series length must be positive");
  // successive derivatives of tan as polynomials in tan: d/dz t^j = j t^{j-1} (1 + t^2)
  const int top = 2 * count;
  std::vector<BigInt> out;
  std::vector<BigInt> p(top + 2, 0);
  p[1] = 1;
  for (int k = 1; k <= 2 * count - 1; ++k) {
    std::vector<BigInt> q(top + 2, 0);
    for (int j = 1; j <= top; ++j) {
      if (p[j] == 0) continue;
      q[j - 1] += j * p[j];
      q[j + 1] += j * p[j];
    }
    p = std::move(q);
    if (k % 2 == 1) out.push_back(p[0]);
  }
  return out;
}

RationalSeries chain_series(int count) {
  if (count < 1) throw ArgumentError("series length must be positive");
  RationalSeries out;
  for (int n = 1; n <= count; ++n) out.emplace_back(chain_degree(n), factorial(2 * n - 1));
  return out;
}

RationalSeries scaled_tangent_series(int count) {
  const auto t = tangent_numbers(count);
  RationalSeries out;
  for (int n = 1; n <= count; ++n) {
    const BigInt den = factorial(2 * n - 1) * (BigInt(1) << (n - 1));
    out.emplace_back(t[n - 1], den);
  }
  return out;
}

bool gf_check(int count) { return chain_series(count) == scaled_tangent_series(count); }

BigInt degree_oracle(const Graph& input) {
  require_forest(input);
  // The quadrics are a grevlex Groebner basis only for suitable labellings.
  const Graph g = breadth_first_labelled(input);
  const int n = g.order();
  const int clique = n + static_cast<int>(g.size()) + 1;
  if (n > 6 || clique > 12) throw CapabilityError("degree oracle limited to 6 vertices");
  const int cells = 1 << n;
  auto bit = [n](int c, int v) { return (c >> (n - 1 - v)) & 1; };

  // Degree-2 fibers keyed by vertex and edge marginals.
  std::map<std::vector<int>, std::vector<std::pair<int, int>>> fibers;
  for (int a = 0; a < cells; ++a)
    for (int b = a; b < cells; ++b) {
      std::vector<int> key;
      for (int v = 0; v < n; ++v) key.push_back(bit(a, v) + bit(b, v));
      for (const Edge& e : g.edges()) {
        std::array<int, 4> c{};
        ++c[2 * bit(a, e.u) + bit(a, e.v)];
        ++c[2 * bit(b, e.u) + bit(b, e.v)];
        key.insert(key.end(), c.begin(), c.end());
      }
      fibers[key].emplace_back(a, b);
    }

  // grevlex with cell 0 the smallest variable: of two squarefree quadrics the one holding
  // the smallest variable is the smaller monomial.
  std::vector<std::uint64_t> compatible(cells, ~std::uint64_t{0} >> (64 - cells));
  for (int c = 0; c < cells; ++c) compatible[c] &= ~(std::uint64_t{1} << c);
  for (const auto& [key, monos] : fibers) {
    if (monos.size() < 2) continue;
    const int lowest = std::min_element(monos.begin(), monos.end())->first;
    for (const auto& [a, b] : monos) {
      if (a == lowest) continue;
      if (a == b) throw PreconditionViolation("square in a nontrivial degree-2 fiber");
      compatible[a] &= ~(std::uint64_t{1} << b);
      compatible[b] &= ~(std::uint64_t{1} << a);
    }
  }

  BigInt count = 0;
  auto extend = [&](auto&& self, std::uint64_t candidates, int depth) -> void {
    if (depth == clique) {
      ++count;
      return;
    }
    if (std::popcount(candidates) < clique - depth) return;
    while (candidates) {
      const int v = std::countr_zero(candidates);
      candidates &= candidates - 1;
      self(self, candidates & compatible[v], depth + 1);
    }
  };
  extend(extend, cells == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells) - 1, 0);
  return count;
}

}  // namespace bgm
