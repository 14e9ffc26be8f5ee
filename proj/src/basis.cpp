#include "bgm/basis.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_map>

#include "bgm/canonical.hpp"
#include "bgm/decompose.hpp"
#include "bgm/errors.hpp"
#include "bgm/fixture.hpp"

namespace bgm {

namespace {

using u128 = unsigned __int128;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

struct Entry {
  u128 key;
  u128 mono;
  bool operator<(const Entry& o) const { return key != o.key ? key < o.key : mono < o.mono; }
};

std::uint64_t mix(u128 k) {
  std::uint64_t x = static_cast<std::uint64_t>(k) ^ static_cast<std::uint64_t>(k >> 64) * 0x9e3779b97f4a7c15ULL;
  x ^= x >> 31;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 29;
  return x;
}

struct Kernel {
  int n = 0;
  int d = 0;
  Cell cells = 0;
  std::vector<u128> cell_key;

  Kernel(const Graph& g, int degree) : n(g.order()), d(degree), cells(Cell{1} << g.order()) {
    const int bits = std::bit_width(static_cast<unsigned>(d));
    const int fields = n + static_cast<int>(g.size());
    if (fields * bits > 128) throw CapabilityError("fiber key does not fit in 128 bits");
    cell_key.assign(cells, 0);
    for (Cell c = 0; c < cells; ++c) {
      auto bit = [&](Vertex v) { return (c >> (n - 1 - v)) & 1; };
      u128 k = 0;
      int shift = 0;
      // one-count per vertex, then 11-count per edge; together they fix every block
      for (Vertex v = 0; v < n; ++v, shift += bits)
        if (bit(v)) k |= u128{1} << shift;
      for (const Edge& e : g.edges()) {
        if (bit(e.u) && bit(e.v)) k |= u128{1} << shift;
        shift += bits;
      }
      cell_key[c] = k;
    }
  }

  // Monomials whose cells split as counts[g] cells from each contiguous group of
  // group_size cells.
  template <class F>
  void enumerate(const std::vector<int>& counts, Cell group_size, F&& emit) const {
    std::vector<u128> key(d + 1, 0), mono(d + 1, 0);
    std::vector<Cell> lo(d), hi(d);
    std::vector<char> opens(d, 0);
    for (int p = 0, g = 0; g < static_cast<int>(counts.size()); ++g) {
      for (int k = 0; k < counts[g]; ++k, ++p) {
        lo[p] = g * group_size;
        hi[p] = (g + 1) * group_size;
        opens[p] = k == 0;
      }
    }
    auto rec = [&](auto&& self, int pos, Cell prev) -> void {
      if (pos == d) {
        emit(key[d], mono[d]);
        return;
      }
      const int shift = 8 * (15 - pos);
      for (Cell c = opens[pos] ? lo[pos] : prev; c < hi[pos]; ++c) {
        key[pos + 1] = key[pos] + cell_key[c];
        mono[pos + 1] = mono[pos] | (u128{c} << shift);
        self(self, pos + 1, c);
      }
    };
    rec(rec, 0, 0);
  }
};

}  // namespace

std::uint64_t monomial_count(int n, int d) {
  // C(N + d - 1, d) with N = 2^n
  if (n >= 63) return UINT64_MAX;
  const u128 cells = u128{1} << n;
  u128 r = 1;
  for (int i = 1; i <= d; ++i) {
    r = r * (cells + i - 1) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<Cell> unpack(PackedMonomial m, int d) {
  std::vector<Cell> out(d);
  for (int i = 0; i < d; ++i) out[i] = static_cast<Cell>((m >> (8 * (15 - i))) & 0xff);
  return out;
}

Table unpack_table(PackedMonomial m, int n, int d) {
  const auto cells = unpack(m, d);
  return Table::from_cells(n, cells);
}

void for_each_fiber(const Graph& g, int d, const EngineOptions& opt, std::size_t min_size,
                    const std::function<void(std::span<const PackedMonomial>)>& visit) {
  if (g.order() > 8) throw CapabilityError("fiber sweep supports at most 8 vertices");
  if (d < 0 || d > 16) throw CapabilityError("fiber sweep supports degrees 0..16");
  const std::uint64_t total = monomial_count(g.order(), d);
  if (total > opt.monomial_budget) {
    throw BudgetExceeded("degree " + std::to_string(d) + " needs " + std::to_string(total) +
                             " monomials, budget is " + std::to_string(opt.monomial_budget),
                         0);
  }
  if (d == 0) {
    if (min_size <= 1) {
      const PackedMonomial zero = 0;
      visit(std::span<const PackedMonomial>(&zero, 1));
    }
    return;
  }
  const Kernel k(g, d);
  // Split cells by their leading vertex bits. How many cells of a monomial fall in each
  // group is fixed by the marginals when the leading bits are one vertex, or two adjacent
  // vertices, so every fiber sits inside one split and splits are processed separately.
  const int lead = g.order() >= 2 && g.adjacent(0, 1) ? 2 : 1;
  const int groups = 1 << lead;
  const Cell group_size = k.cells >> lead;
  std::vector<Entry> entries;
  std::vector<PackedMonomial> group;
  std::vector<int> counts(groups, 0);
  auto split = [&](auto&& self, int gi, int left) -> void {
    if (gi == groups - 1) {
      counts[gi] = left;
      std::uint64_t size = 1;
      for (int c : counts) size *= monomial_count(g.order() - lead, c);
      const std::uint64_t passes = std::max<std::uint64_t>(1, (size + opt.pass_size - 1) / opt.pass_size);
      for (std::uint64_t pass = 0; pass < passes; ++pass) {
        entries.clear();
        entries.reserve(passes == 1 ? size : size / passes * 11 / 10 + 16);
        k.enumerate(counts, group_size, [&](u128 key, u128 mono) {
          if (passes == 1 || mix(key) % passes == pass) entries.push_back({key, mono});
        });
        std::sort(entries.begin(), entries.end());
        for (std::size_t i = 0; i < entries.size();) {
          std::size_t j = i + 1;
          while (j < entries.size() && entries[j].key == entries[i].key) ++j;
          if (j - i >= min_size) {
            group.clear();
            for (std::size_t t = i; t < j; ++t) group.push_back(entries[t].mono);
            visit(group);
          }
          i = j;
        }
      }
      return;
    }
    for (int c = left; c >= 0; --c) {
      counts[gi] = c;
      self(self, gi + 1, left - c);
    }
  };
  split(split, 0, d);
}

std::map<MarginalVector, std::vector<Table>> degree_d_fibers(const Graph& g, int d, const EngineOptions& opt) {
  std::map<MarginalVector, std::vector<Table>> out;
  for_each_fiber(g, d, opt, 1, [&](std::span<const PackedMonomial> monos) {
    std::vector<Table> tables;
    for (auto m : monos) tables.push_back(unpack_table(m, g.order(), d));
    auto mv = marginals_of(g, tables.front());
    out.emplace(std::move(mv), std::move(tables));
  });
  return out;
}

namespace {

// component ids (in order of first appearance) for tables given as sorted cell lists
std::vector<int> components_by_shared_cell(const std::vector<std::vector<Cell>>& tables) {
  UnionFind uf(tables.size());
  std::unordered_map<Cell, int> first;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (Cell c : tables[i]) {
      auto [it, fresh] = first.emplace(c, static_cast<int>(i));
      if (!fresh) uf.unite(it->second, static_cast<int>(i));
    }
  }
  std::vector<int> id(tables.size());
  std::unordered_map<int, int> rename;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    auto [it, _] = rename.emplace(uf.find(static_cast<int>(i)), static_cast<int>(rename.size()));
    id[i] = it->second;
  }
  return id;
}

// Same for packed monomials of one fiber, with a stamp array instead of a hash map.
struct PackedComponents {
  std::vector<int> first_seen = std::vector<int>(256, -1);
  std::vector<int> touched;

  std::vector<int> operator()(std::span<const PackedMonomial> monos, int d) {
    UnionFind uf(monos.size());
    for (std::size_t i = 0; i < monos.size(); ++i) {
      for (int p = 0; p < d; ++p) {
        const int c = static_cast<int>((monos[i] >> (8 * (15 - p))) & 0xff);
        if (first_seen[c] < 0) {
          first_seen[c] = static_cast<int>(i);
          touched.push_back(c);
        } else {
          uf.unite(first_seen[c], static_cast<int>(i));
        }
      }
    }
    for (int c : touched) first_seen[c] = -1;
    touched.clear();
    std::vector<int> id(monos.size());
    std::vector<int> rename(monos.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < monos.size(); ++i) {
      const int r = uf.find(static_cast<int>(i));
      if (rename[r] < 0) rename[r] = next++;
      id[i] = rename[r];
    }
    return id;
  }
};

// oriented lower moves as sorted cell lists
struct CellMove {
  std::vector<Cell> minus, plus;
};

std::vector<CellMove> oriented(const MoveSet& moves) {
  std::vector<CellMove> out;
  for (const Move& m : moves) {
    out.push_back({m.minus.cells(), m.plus.cells()});
    out.push_back({m.plus.cells(), m.minus.cells()});
  }
  return out;
}

// multiset difference a - b followed by union with c; empty optional if b is not in a
std::optional<std::vector<Cell>> apply_cells(const std::vector<Cell>& a, const CellMove& m) {
  if (m.minus.size() > a.size()) return std::nullopt;
  std::vector<Cell> rest;
  rest.reserve(a.size());
  std::size_t j = 0;
  for (Cell c : a) {
    if (j < m.minus.size() && m.minus[j] == c) {
      ++j;
    } else {
      if (j < m.minus.size() && m.minus[j] < c) return std::nullopt;
      rest.push_back(c);
    }
  }
  if (j != m.minus.size()) return std::nullopt;
  std::vector<Cell> out;
  out.reserve(a.size());
  std::merge(rest.begin(), rest.end(), m.plus.begin(), m.plus.end(), std::back_inserter(out));
  return out;
}

PackedMonomial pack(const std::vector<Cell>& cells) {
  PackedMonomial m = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) m |= PackedMonomial{cells[i]} << (8 * (15 - i));
  return m;
}

// component ids of a fiber under the given moves
std::vector<int> components_by_moves(std::span<const PackedMonomial> monos, int d, const std::vector<CellMove>& moves) {
  std::unordered_map<std::uint64_t, std::vector<std::pair<PackedMonomial, int>>> index;
  auto h = [](PackedMonomial m) { return static_cast<std::uint64_t>(m) ^ static_cast<std::uint64_t>(m >> 64) * 31; };
  for (std::size_t i = 0; i < monos.size(); ++i) index[h(monos[i])].push_back({monos[i], static_cast<int>(i)});
  auto lookup = [&](PackedMonomial m) {
    auto it = index.find(h(m));
    if (it != index.end())
      for (auto& [k, i] : it->second)
        if (k == m) return i;
    return -1;
  };
  UnionFind uf(monos.size());
  for (std::size_t i = 0; i < monos.size(); ++i) {
    const auto cells = unpack(monos[i], d);
    for (const CellMove& m : moves) {
      if (auto next = apply_cells(cells, m)) {
        const int j = lookup(pack(*next));
        if (j < 0) throw PreconditionViolation("a supplied move leaves the fiber; it is not a move of this graph");
        uf.unite(static_cast<int>(i), j);
      }
    }
  }
  std::vector<int> id(monos.size()), rename(monos.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    const int r = uf.find(static_cast<int>(i));
    if (rename[r] < 0) rename[r] = next++;
    id[i] = rename[r];
  }
  return id;
}

}  // namespace

std::vector<int> gcd_components(std::span<const Table> tables) {
  std::vector<std::vector<Cell>> cells;
  cells.reserve(tables.size());
  // strings may be wider than a cell number; rank the distinct strings instead
  std::map<IndexString, Cell> rank;
  for (const Table& t : tables)
    for (const auto& [s, _] : t.entries()) rank.emplace(s, 0);
  Cell next = 0;
  for (auto& [_, r] : rank) r = next++;
  for (const Table& t : tables) {
    std::vector<Cell> cs;
    for (const auto& [s, _] : t.entries()) cs.push_back(rank.at(s));
    cells.push_back(std::move(cs));
  }
  return components_by_shared_cell(cells);
}

bool is_minimal_generator(const Graph& g, const Move& m, const FiberOptions& opt) {
  if (!is_move(g, m)) return false;
  const auto fiber = enumerate_fiber(g, marginals_of(g, m.plus), opt);
  const auto comp = gcd_components(fiber);
  const auto a = std::lower_bound(fiber.begin(), fiber.end(), m.plus) - fiber.begin();
  const auto b = std::lower_bound(fiber.begin(), fiber.end(), m.minus) - fiber.begin();
  return comp[a] != comp[b];
}

DegreeResult minimal_generators_at_degree(const Graph& g, int d, const MoveSet& lower, const EngineOptions& opt,
                                          ComponentRoute route) {
  DegreeResult r;
  r.degree = d;
  r.monomials = monomial_count(g.order(), d);
  const int n = g.order();
  PackedComponents gcd;
  const auto lower_moves = route == ComponentRoute::Gcd ? std::vector<CellMove>{} : oriented(lower);
  for (const Move& m : lower) {
    if (m.degree() >= static_cast<std::uint64_t>(d)) {
      throw ArgumentError("lower move set contains a move of degree " + std::to_string(m.degree()));
    }
  }
  for_each_fiber(g, d, opt, 2, [&](std::span<const PackedMonomial> monos) {
    ++r.nontrivial_fibers;
    std::vector<int> comp;
    if (route != ComponentRoute::LowerMoves) comp = gcd(monos, d);
    if (route != ComponentRoute::Gcd) {
      auto by_moves = components_by_moves(monos, d, lower_moves);
      const int a = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end());
      const int b = *std::max_element(by_moves.begin(), by_moves.end());
      if (!comp.empty() && b > a) {
        throw PreconditionViolation("lower move set does not connect a fiber of degree " + std::to_string(d) +
                                    " that lower-degree moves connect; it is incomplete");
      }
      comp = std::move(by_moves);
    }
    const int k = *std::max_element(comp.begin(), comp.end()) + 1;
    r.count += k - 1;
    // monos are ascending, so the first member of each component is its least table
    std::vector<char> seen(k, 0);
    seen[comp[0]] = 1;
    const Table base = unpack_table(monos[0], n, d);
    for (std::size_t i = 1; i < monos.size(); ++i) {
      if (seen[comp[i]]) continue;
      seen[comp[i]] = 1;
      r.reps.push_back({base, unpack_table(monos[i], n, d)});
    }
  });
  std::sort(r.reps.begin(), r.reps.end());
  return r;
}

std::vector<Move> all_minimal_generators_at_degree(const Graph& g, int d, const EngineOptions& opt) {
  std::vector<Move> out;
  PackedComponents gcd;
  for_each_fiber(g, d, opt, 2, [&](std::span<const PackedMonomial> monos) {
    const auto comp = gcd(monos, d);
    for (std::size_t i = 0; i < monos.size(); ++i)
      for (std::size_t j = i + 1; j < monos.size(); ++j)
        if (comp[i] != comp[j])
          out.push_back({unpack_table(monos[i], g.order(), d), unpack_table(monos[j], g.order(), d)});
  });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool is_cycle_graph(const Graph& g) {
  if (g.order() < 3 || g.size() != static_cast<std::size_t>(g.order()) || !is_connected(g)) return false;
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) != 2) return false;
  return true;
}

bool is_k2n(const Graph& g) {
  // K_{2,n}: two nonadjacent vertices joined to all n >= 1 others, no other edges
  const int n = g.order();
  if (n < 3 || g.size() != 2u * (n - 2)) return false;
  std::vector<Vertex> hubs;
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) == n - 2) hubs.push_back(v);
  for (std::size_t i = 0; i < hubs.size(); ++i) {
    for (std::size_t j = i + 1; j < hubs.size(); ++j) {
      const Vertex a = hubs[i], b = hubs[j];
      if (g.adjacent(a, b)) continue;
      bool ok = true;
      for (Vertex v = 0; v < n && ok; ++v)
        if (v != a && v != b) ok = g.adjacent(a, v) && g.adjacent(b, v) && g.degree(v) == 2;
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<WidthBound> known_width_bound(const Graph& g) {
  const int n = g.order();
  if (n <= 1 || (n == 2 && g.size() == 1)) return WidthBound{0, "toric ideal is zero"};
  if (is_forest(g)) return WidthBound{2, "forest: generated by quadrics"};
  if (is_cycle_graph(g)) return WidthBound{4, "cycle: generated in degrees 2 and 4"};
  if (is_k2n(g)) return WidthBound{4, "K_{2,n}: generated in degrees 2 and 4"};
  for (const auto& col : generator_table()) {
    if (col.graph.order() == n && col.graph.size() == g.size() && isomorphic(col.graph, g)) {
      return WidthBound{col.width, "reference table column " + col.name};
    }
  }
  const auto ds = find_decompositions(g);
  if (!ds.empty()) {
    const auto [g1, g2] = pieces(g, ds.front());
    auto a = known_width_bound(g1), b = known_width_bound(g2);
    if (a && b) {
      return WidthBound{std::max(a->bound, b->bound),
                        "reducible: max of pieces (" + a->certificate + "; " + b->certificate + ")"};
    }
  }
  return std::nullopt;
}

BasisReport markov_basis_up_to(const Graph& g, int dmax, const EngineOptions& opt) {
  BasisReport rep;
  rep.graph = g;
  int highest = 0;
  for (int d = 2; d <= dmax; ++d) {
    try {
      auto r = minimal_generators_at_degree(g, d, {}, opt);
      if (r.count > 0) highest = d;
      rep.per_degree.emplace(d, std::move(r));
    } catch (const BudgetExceeded&) {
      rep.partial = true;
      rep.skipped.push_back(d);
    }
  }
  rep.width.value = highest;
  const auto bound = known_width_bound(g);
  if (bound && bound->bound <= dmax) {
    bool covered = true;
    for (int d : rep.skipped) covered = covered && d > bound->bound;
    if (covered) {
      rep.width.exact = true;
      rep.width.certificate = bound->certificate;
    }
  }
  if (!rep.width.exact) {
    rep.width.certificate = bound ? "computed degrees do not reach the known bound " + std::to_string(bound->bound)
                                  : "no upper bound known; value is a lower bound";
  }
  return rep;
}

Table apply_step(const Table& t, const PathStep& s) {
  const Move m = s.sign > 0 ? s.move : s.move.negated();
  return t - m.minus + m.plus;
}

std::optional<std::vector<PathStep>> find_path(const Table& a, const Table& b, const MoveSet& moves,
                                               std::uint64_t max_nodes) {
  if (a == b) return std::vector<PathStep>{};
  std::map<Table, std::pair<const Table*, PathStep>> parent;
  std::deque<const Table*> queue;
  auto [root, _] = parent.emplace(a, std::make_pair(nullptr, PathStep{}));
  queue.push_back(&root->first);
  while (!queue.empty()) {
    const Table* cur = queue.front();
    queue.pop_front();
    for (const Move& m : moves) {
      for (int sign : {1, -1}) {
        const Table& take = sign > 0 ? m.minus : m.plus;
        if (!cur->contains(take)) continue;
        Table next = apply_step(*cur, {m, sign});
        if (parent.count(next)) continue;
        if (parent.size() >= max_nodes) throw BudgetExceeded("path search exceeded node budget", parent.size());
        auto [it, fresh] = parent.emplace(std::move(next), std::make_pair(cur, PathStep{m, sign}));
        if (it->first == b) {
          std::vector<PathStep> path;
          for (const Table* t = &it->first; parent.at(*t).first; t = parent.at(*t).first) {
            path.push_back(parent.at(*t).second);
          }
          std::reverse(path.begin(), path.end());
          return path;
        }
        queue.push_back(&it->first);
      }
    }
  }
  return std::nullopt;
}

std::vector<FiberVerdict> verify_markov_basis(const Graph& g, const MoveSet& moves,
                                              std::span<const MarginalVector> fibers, const FiberOptions& opt) {
  std::vector<FiberVerdict> out;
  for (const MarginalVector& mv : fibers) {
    FiberVerdict v;
    v.fiber = mv;
    std::vector<Table> tables;
    try {
      tables = enumerate_fiber(g, mv, opt);
    } catch (const BudgetExceeded& e) {
      v.skipped = true;
      v.reason = e.what();
      out.push_back(std::move(v));
      continue;
    }
    v.tables = tables.size();
    UnionFind uf(tables.size());
    for (std::size_t i = 0; i < tables.size(); ++i) {
      for (const Move& m : moves) {
        for (int sign : {1, -1}) {
          const Table& take = sign > 0 ? m.minus : m.plus;
          if (take.width() != tables[i].width() || !tables[i].contains(take)) continue;
          const Table next = apply_step(tables[i], {m, sign});
          const auto j = std::lower_bound(tables.begin(), tables.end(), next) - tables.begin();
          if (static_cast<std::size_t>(j) < tables.size() && tables[j] == next) uf.unite(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    v.connected = true;
    for (std::size_t i = 1; i < tables.size() && v.connected; ++i) {
      if (uf.find(static_cast<int>(i)) != uf.find(0)) {
        v.connected = false;
        v.separated = std::make_pair(tables[0], tables[i]);
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

SweepResult verify_all_fibers(const Graph& g, const MoveSet& moves, int dmax, const EngineOptions& opt) {
  SweepResult res;
  const int n = g.order();
  const auto cell_moves = oriented(moves);
  PackedComponents gcd;
  for (int d = 2; d <= dmax && res.ok; ++d) {
    std::vector<CellMove> usable;
    for (const auto& m : cell_moves)
      if (static_cast<int>(m.minus.size()) <= d) usable.push_back(m);
    for_each_fiber(g, d, opt, 2, [&](std::span<const PackedMonomial> monos) {
      if (!res.ok) return;
      ++res.fibers_checked;
      const auto comp = gcd(monos, d);
      if (*std::max_element(comp.begin(), comp.end()) == 0) return;
      // join the shared-cell components through the moves
      const auto by_moves = components_by_moves(monos, d, usable);
      UnionFind uf(monos.size());
      std::vector<int> first_a(monos.size(), -1), first_b(monos.size(), -1);
      for (std::size_t i = 0; i < monos.size(); ++i) {
        const int me = static_cast<int>(i);
        if (first_a[comp[i]] < 0) first_a[comp[i]] = me;
        if (first_b[by_moves[i]] < 0) first_b[by_moves[i]] = me;
        uf.unite(me, first_a[comp[i]]);
        uf.unite(me, first_b[by_moves[i]]);
      }
      for (std::size_t i = 1; i < monos.size(); ++i) {
        if (uf.find(static_cast<int>(i)) != uf.find(0)) {
          res.ok = false;
          res.separated = std::make_pair(unpack_table(monos[0], n, d), unpack_table(monos[i], n, d));
          return;
        }
      }
    });
    ++res.degrees_checked;
  }
  return res;
}

namespace {

std::vector<PathStep> applicable_steps(const Table& t, const MoveSet& moves) {
  std::vector<PathStep> out;
  for (const Move& m : moves) {
    if (t.contains(m.minus)) out.push_back({m, 1});
    if (t.contains(m.plus)) out.push_back({m, -1});
  }
  return out;
}

}  // namespace

WalkResult random_walk(const Graph& g, const MoveSet& moves, const Table& start, std::uint64_t steps,
                       std::uint64_t seed, WalkProposal proposal) {
  for (const Move& m : moves)
    if (!is_move(g, m)) throw ArgumentError("random_walk: supplied move fails is_move");
  WalkResult r;
  r.final_table = start;
  r.visits[start] = 1;
  if (moves.empty()) return r;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<PathStep> here;
  if (proposal == WalkProposal::Applicable) here = applicable_steps(start, moves);
  for (std::uint64_t s = 0; s < steps; ++s) {
    if (proposal == WalkProposal::Uniform) {
      const std::uint64_t pick = rng() % (2 * moves.size());
      const PathStep step{moves[pick / 2], pick % 2 == 0 ? 1 : -1};
      const Table& take = step.sign > 0 ? step.move.minus : step.move.plus;
      if (r.final_table.contains(take)) {
        r.final_table = apply_step(r.final_table, step);
        ++r.accepted;
      } else {
        ++r.rejected;
      }
    } else if (here.empty()) {
      ++r.rejected;
    } else {
      // Hastings ratio |steps(x)| / |steps(y)| keeps the uniform distribution stationary.
      const PathStep& step = here[rng() % here.size()];
      Table next = apply_step(r.final_table, step);
      auto there = applicable_steps(next, moves);
      if (coin(rng) * static_cast<double>(there.size()) <= static_cast<double>(here.size())) {
        r.final_table = std::move(next);
        here = std::move(there);
        ++r.accepted;
      } else {
        ++r.rejected;
      }
    }
    ++r.visits[r.final_table];
  }
  return r;
}

}  // namespace bgm
