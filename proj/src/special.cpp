#include "bgm/special.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>

#include "bgm/errors.hpp"
#include "bgm/structural.hpp"

namespace bgm {

namespace {

using Multiset = std::vector<Cell>;  // ascending

void erase_one(Multiset& s, Cell c) {
  auto it = std::lower_bound(s.begin(), s.end(), c);
  if (it == s.end() || *it != c) throw std::logic_error("cell not present");
  s.erase(it);
}

void insert_one(Multiset& s, Cell c) { s.insert(std::upper_bound(s.begin(), s.end(), c), c); }

// Removes the multiset intersection from both sides.
void strip_common(Multiset& a, Multiset& b, std::size_t* count) {
  Multiset ra, rb;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      ra.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      rb.push_back(b[j++]);
    } else {
      ++i, ++j;
      if (count) ++*count;
    }
  }
  a = std::move(ra);
  b = std::move(rb);
}

// Records a replacement of cells `from` by `to` as a step of the catalogue move.
PathStep step_for(int n, Multiset from, Multiset to) {
  std::sort(from.begin(), from.end());
  std::sort(to.begin(), to.end());
  Move m{Table::from_cells(n, from), Table::from_cells(n, to)};
  // sign +1 adds plus - minus
  if (m.minus < m.plus) return {m.negated(), +1};
  return {m, -1};
}

void apply_cells(Multiset& s, const Multiset& from, const Multiset& to) {
  for (Cell c : from) erase_one(s, c);
  for (Cell c : to) insert_one(s, c);
}

void check_same_fiber(const Graph& g, const Table& t1, const Table& t2) {
  if (t1.width() != g.order() || t2.width() != g.order())
    throw ArgumentError("table width does not match the graph");
  if (marginals_of(g, t1) != marginals_of(g, t2)) throw ArgumentError("tables lie in different fibers");
}

ReductionCertificate assemble(const Table& t1, const Table& t2, std::vector<PathStep> fwd,
                              const std::vector<PathStep>& bwd) {
  ReductionCertificate cert{t1, t2, std::move(fwd)};
  for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) cert.path.push_back({it->move, -it->sign});
  return cert;
}

// Connected pieces of g restricted to the vertex mask (vertex v is cell bit n-1-v).
std::vector<Cell> pieces_of(const Graph& g, Cell mask) {
  const int n = g.order();
  std::vector<Cell> out;
  Cell left = mask;
  while (left) {
    const int top = std::countl_zero(left) - (32 - n);
    Cell piece = 0;
    std::vector<int> stack{top};
    piece |= Cell{1} << (n - 1 - top);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (Vertex u : g.neighbors(v)) {
        const Cell bit = Cell{1} << (n - 1 - u);
        if ((mask & bit) && !(piece & bit)) {
          piece |= bit;
          stack.push_back(u);
        }
      }
    }
    out.push_back(piece);
    left &= ~piece;
  }
  return out;
}

int potential(const Multiset& a, const Multiset& b) {
  int best = 64;
  for (Cell x : a)
    for (Cell y : b) best = std::min(best, std::popcount(x ^ y));
  return best;
}

struct Neighbor {
  Multiset from, to;
};

struct LocalCatalogue {
  const Graph& g;
  std::vector<std::pair<Multiset, Multiset>> quartics;  // both orientations

  std::vector<Neighbor> neighbors(const Multiset& s) const {
    std::vector<Neighbor> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0 && s[i] == s[i - 1]) continue;
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (s[j] == s[i] || s[j] == s[j - 1]) continue;
        const Cell x = s[i], y = s[j];
        const auto ps = pieces_of(g, x ^ y);
        // W and its complement give the same pair, so the last piece stays put
        for (Cell sub = 1; sub < (Cell{1} << (ps.size() - 1)); ++sub) {
          Cell w = 0;
          for (std::size_t k = 0; k + 1 < ps.size(); ++k)
            if (sub >> k & 1) w |= ps[k];
          out.push_back({{x, y}, {x ^ w, y ^ w}});
        }
      }
    }
    for (const auto& [from, to] : quartics)
      if (std::includes(s.begin(), s.end(), from.begin(), from.end())) out.push_back({from, to});
    return out;
  }

  // Breadth-first search from s for a state closer to `other`; appends the steps taken.
  bool improve(Multiset& s, const Multiset& other, std::vector<PathStep>& steps, int max_depth) const {
    const int n = g.order();
    const int phi = potential(s, other);
    struct Node {
      Multiset state;
      int parent;
      Neighbor via;
      int depth;
    };
    std::vector<Node> nodes{{s, -1, {}, 0}};
    std::set<Multiset> seen{s};
    for (std::size_t head = 0; head < nodes.size(); ++head) {
      if (nodes[head].depth == max_depth) continue;
      for (Neighbor& nb : neighbors(nodes[head].state)) {
        Multiset next = nodes[head].state;
        apply_cells(next, nb.from, nb.to);
        if (!seen.insert(next).second) continue;
        nodes.push_back({next, static_cast<int>(head), std::move(nb), nodes[head].depth + 1});
        if (potential(next, other) < phi) {
          std::vector<const Node*> chain;
          for (int k = static_cast<int>(nodes.size()) - 1; k > 0; k = nodes[k].parent) chain.push_back(&nodes[k]);
          for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            steps.push_back(step_for(n, (*it)->via.from, (*it)->via.to));
          s = nodes.back().state;
          return true;
        }
      }
    }
    return false;
  }
};

}  // namespace

ReplayResult replay_certificate(const Graph& g, const ReductionCertificate& cert, std::size_t max_degree) {
  ReplayResult r;
  Table cur = cert.start;
  for (std::size_t i = 0; i < cert.path.size(); ++i) {
    const PathStep& s = cert.path[i];
    if (!is_move(g, s.move)) return {false, "step " + std::to_string(i) + " is not a move", r.max_degree};
    r.max_degree = std::max<std::size_t>(r.max_degree, s.move.degree());
    if (s.move.degree() > max_degree) return {false, "step " + std::to_string(i) + " exceeds the degree bound", r.max_degree};
    if (s.sign != 1 && s.sign != -1) return {false, "step " + std::to_string(i) + " has a bad sign", r.max_degree};
    const Table& take = s.sign > 0 ? s.move.minus : s.move.plus;
    if (!cur.contains(take)) return {false, "step " + std::to_string(i) + " goes negative", r.max_degree};
    cur = apply_step(cur, s);
  }
  if (cur != cert.end) return {false, "path does not reach the end table", r.max_degree};
  return r;
}

std::vector<Move> cycle_quartics(int n) {
  if (n < 3) throw ArgumentError("cycle_quartics needs n >= 3");
  if (n > 6) throw CapabilityError("cycle_quartics supports n <= 6");
  const Graph g = graphs::cycle(n);
  auto bit = [n](int v) { return Cell{1} << (n - 1 - v); };
  std::set<std::pair<Multiset, Multiset>> raw;
  for (int p = 0; p < n; ++p) {
    for (int b = 1; b <= n - 2; ++b) {  // V2 empty makes both sides equal
      const int a = n - 2 - b;
      const int q = (p + 1 + b) % n;
      std::vector<int> v1, v2;
      for (int i = 0; i < b; ++i) v2.push_back((p + 1 + i) % n);
      for (int i = 0; i < a; ++i) v1.push_back((q + 1 + i) % n);
      for (std::uint32_t av = 0; av < (1u << (4 * a)); ++av) {
        for (std::uint32_t bv = 0; bv < (1u << b); ++bv) {
          auto row = [&](int ai, bool x1, bool flip_b, bool x2) {
            Cell c = 0;
            for (int i = 0; i < a; ++i)
              if (av >> (ai * a + i) & 1) c |= bit(v1[i]);
            if (x1) c |= bit(p);
            for (int i = 0; i < b; ++i)
              if (static_cast<bool>(bv >> i & 1) != flip_b) c |= bit(v2[i]);
            if (x2) c |= bit(q);
            return c;
          };
          Multiset plus{row(0, 1, false, 1), row(1, 1, true, 0), row(2, 0, true, 1), row(3, 0, false, 0)};
          Multiset minus{row(0, 1, true, 1), row(1, 1, false, 0), row(2, 0, false, 1), row(3, 0, true, 0)};
          std::sort(plus.begin(), plus.end());
          std::sort(minus.begin(), minus.end());
          if (minus < plus) std::swap(plus, minus);
          raw.emplace(std::move(plus), std::move(minus));
        }
      }
    }
  }
  std::vector<Move> out;
  for (const auto& [plus, minus] : raw) {
    Move m{Table::from_cells(n, plus), Table::from_cells(n, minus)};
    if (is_minimal_generator(g, m)) out.push_back(std::move(m));
  }
  return out;
}

ReductionCertificate cycle_reduce(int n, const Table& t1, const Table& t2, ReductionStats* stats) {
  if (n < 3 || n > 6) throw CapabilityError("cycle_reduce supports 3 <= n <= 6");
  const Graph g = graphs::cycle(n);
  check_same_fiber(g, t1, t2);
  static std::mutex cache_lock;
  static std::map<int, std::vector<Move>> cache;
  std::vector<Move> quartics;
  {
    std::lock_guard<std::mutex> hold(cache_lock);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, cycle_quartics(n)).first;
    quartics = it->second;
  }
  LocalCatalogue cat{g, {}};
  MoveSet catalogue;
  for (const Move& q : quartics) {
    cat.quartics.emplace_back(q.plus.cells(), q.minus.cells());
    cat.quartics.emplace_back(q.minus.cells(), q.plus.cells());
    catalogue.push_back(q);
  }
  ReductionStats local;
  Multiset a = t1.cells(), b = t2.cells();
  std::vector<PathStep> fwd, bwd;
  while (true) {
    strip_common(a, b, &local.shared_extractions);
    if (a.empty()) break;
    if (a.size() <= 4) {
      // the remaining difference may itself be a catalogue move
      bool direct = false;
      for (const Neighbor& nb : cat.neighbors(a)) {
        Multiset to = nb.to;
        std::sort(to.begin(), to.end());
        if (nb.from.size() == a.size() && to == b) {
          fwd.push_back(step_for(n, nb.from, nb.to));
          direct = true;
          break;
        }
      }
      if (direct) break;
    }
    const std::size_t before = fwd.size() + bwd.size();
    if (cat.improve(b, a, bwd, 3) || cat.improve(a, b, fwd, 3)) {
      local.local_steps += fwd.size() + bwd.size() - before;
      continue;
    }
    if (catalogue.size() == cat.quartics.size() / 2) {
      const auto quads = all_minimal_generators_at_degree(g, 2);
      catalogue.insert(catalogue.end(), quads.begin(), quads.end());
    }
    ++local.fallback_searches;
    auto path = find_path(Table::from_cells(n, a), Table::from_cells(n, b), catalogue);
    if (!path) throw std::logic_error("cycle_reduce: degree 2 and 4 moves do not connect the fiber");
    fwd.insert(fwd.end(), path->begin(), path->end());
    a = b;
  }
  if (stats) *stats = local;
  return assemble(t1, t2, std::move(fwd), bwd);
}

namespace {

// K_{2,n} bookkeeping on cells: the top two bits are (v1, v2), bit n - l is w_l.
struct K2n {
  int n;
  std::vector<PathStep>* steps;

  int group(Cell c) const { return static_cast<int>(c >> n); }
  Cell wbit(int l) const { return Cell{1} << (n - l); }
  bool digit(Cell c, int l) const { return c & wbit(l); }

  bool has(const Multiset& m, int ij, int l, bool d) const {
    for (Cell c : m)
      if (group(c) == ij && digit(c, l) == d) return true;
    return false;
  }
  bool any(const Multiset& m, int ij) const {
    for (Cell c : m)
      if (group(c) == ij) return true;
    return false;
  }
  Cell find(const Multiset& m, int ij, int l, bool d) const {
    for (Cell c : m)
      if (group(c) == ij && digit(c, l) == d) return c;
    throw std::logic_error("k2n: missing cell");
  }

  void apply(Multiset& m, Multiset from, Multiset to) const {
    apply_cells(m, from, to);
    steps->push_back(step_for(n + 2, std::move(from), std::move(to)));
  }

  // Quadratic swaps of single w-columns inside block ij until a cell equals target.
  void realize(Multiset& m, Cell target) const {
    const int ij = group(target);
    Cell x = 0;
    int best = 64;
    for (Cell c : m)
      if (group(c) == ij && std::popcount(c ^ target) < best) {
        best = std::popcount(c ^ target);
        x = c;
      }
    if (best == 64) throw std::logic_error("k2n: empty block");
    for (int l = 1; l <= n; ++l) {
      if (digit(x, l) == digit(target, l)) continue;
      const Cell y = find(m, ij, l, digit(target, l));
      apply(m, {x, y}, {x ^ wbit(l), y ^ wbit(l)});
      x ^= wbit(l);
    }
  }

  // 1 in c01 and c10, 0 in c00 and c11 at column l: flip w_l in one cell of each block.
  bool shuffle(Multiset& m) const {
    for (int l = 1; l <= n; ++l) {
      if (!(has(m, 0b01, l, true) && has(m, 0b10, l, true) && has(m, 0b00, l, false) && has(m, 0b11, l, false)))
        continue;
      Multiset from{find(m, 0b11, l, false), find(m, 0b10, l, true), find(m, 0b01, l, true), find(m, 0b00, l, false)};
      Multiset to;
      for (Cell c : from) to.push_back(c ^ wbit(l));
      apply(m, from, to);
      return true;
    }
    return false;
  }

  // A common digit per column in c01 and c10: trade a 10 and a 01 cell for 11 and 00.
  bool exchange(Multiset& m) const {
    Cell w = 0;
    for (int l = 1; l <= n; ++l) {
      if (has(m, 0b01, l, false) && has(m, 0b10, l, false)) continue;
      if (has(m, 0b01, l, true) && has(m, 0b10, l, true)) {
        w |= wbit(l);
        continue;
      }
      return false;
    }
    const Cell c10 = (Cell{0b10} << n) | w, c01 = (Cell{0b01} << n) | w;
    realize(m, c10);
    realize(m, c01);
    apply(m, {c10, c01}, {(Cell{0b11} << n) | w, w});
    return true;
  }

  void reduce(Multiset& m) const {
    while (shuffle(m) || exchange(m)) {
    }
  }

  // w-string whose digits occur in block ij of both tables, if every column has one.
  std::optional<Cell> common_string(const Multiset& a, const Multiset& b, int ij) const {
    Cell w = 0;
    for (int l = 1; l <= n; ++l) {
      if (has(a, ij, l, false) && has(b, ij, l, false)) continue;
      if (has(a, ij, l, true) && has(b, ij, l, true)) {
        w |= wbit(l);
        continue;
      }
      return std::nullopt;
    }
    return (Cell{static_cast<Cell>(ij)} << n) | w;
  }
};

}  // namespace

ReductionCertificate k2n_reduce(int n, const Table& t1, const Table& t2, ReductionStats* stats) {
  if (n < 1 || n > 30) throw CapabilityError("k2n_reduce supports 1 <= n <= 30");
  const Graph g = graphs::complete_bipartite(2, n);
  check_same_fiber(g, t1, t2);
  ReductionStats local;
  Multiset a = t1.cells(), b = t2.cells();
  std::vector<PathStep> fwd, bwd;
  const K2n ka{n, &fwd}, kb{n, &bwd};
  while (true) {
    strip_common(a, b, &local.shared_extractions);
    if (a.empty()) break;
    ka.reduce(a);
    kb.reduce(b);
    strip_common(a, b, &local.shared_extractions);
    if (a.empty()) break;
    const bool a11 = ka.any(a, 0b11), b11 = ka.any(b, 0b11);
    int block;
    if (a11 && b11) {
      block = 0b11;
    } else if (a11 != b11) {
      throw std::logic_error("k2n_reduce: reduced tables disagree on the 11 block");
    } else if (ka.any(a, 0b10)) {
      block = 0b10;
    } else if (ka.any(a, 0b01)) {
      block = 0b01;
    } else {
      block = 0b00;
    }
    const auto target = ka.common_string(a, b, block);
    if (!target) throw std::logic_error("k2n_reduce: no common cell in a reduced block");
    ka.realize(a, *target);
    kb.realize(b, *target);
  }
  if (stats) *stats = local;
  return assemble(t1, t2, std::move(fwd), bwd);
}

Move km_witness(int m) {
  if (m < 3) throw ArgumentError("km_witness needs m >= 3");
  if (m > 31) throw CapabilityError("km_witness supports m <= 31");
  const Cell ones = (Cell{1} << m) - 1;
  Multiset plus(m - 2, 0), minus(m - 2, ones);
  for (int i = 0; i < m; ++i) {
    const Cell e = Cell{1} << (m - 1 - i);
    plus.push_back(ones ^ e);
    minus.push_back(e);
  }
  return {Table::from_cells(m, plus), Table::from_cells(m, minus)};
}

KmnWitness kmn_witness(int m) {
  if (m < 2) throw ArgumentError("kmn_witness needs m >= 2");
  if (m > 4) throw CapabilityError("kmn_witness supports m <= 4");
  KmnWitness w;
  // strings over {0,1,2} with exactly two 1s, ascending
  int total = 1;
  for (int i = 0; i < m; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::string s(m, '0');
    int x = code;
    for (int i = m - 1; i >= 0; --i, x /= 3) s[i] = static_cast<char>('0' + x % 3);
    if (std::count(s.begin(), s.end(), '1') == 2) w.w_labels.push_back(s);
  }
  const int big_n = static_cast<int>(w.w_labels.size());
  const int width = m + big_n;
  w.graph = graphs::complete_bipartite(m, big_n);
  Table even(width), odd(width);
  for (std::uint32_t v = 0; v < (1u << m); ++v) {
    std::string s(width, '0');
    for (int j = 0; j < m; ++j)
      if (v >> (m - 1 - j) & 1) s[j] = '1';
    // w_I is 1 exactly when v is 0 where I is 0 and 1 where I is 2
    for (int k = 0; k < big_n; ++k) {
      bool on = true;
      for (int j = 0; j < m; ++j) {
        const char c = w.w_labels[k][j];
        if ((c == '0' && s[j] == '1') || (c == '2' && s[j] == '0')) on = false;
      }
      if (on) s[m + k] = '1';
    }
    (std::popcount(v) % 2 == 0 ? even : odd).add(IndexString(s));
  }
  w.move = {std::move(even), std::move(odd)};
  return w;
}

}  // namespace bgm
