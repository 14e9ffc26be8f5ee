#include "bgm/structural.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bgm/basis.hpp"
#include "bgm/errors.hpp"

namespace bgm {

namespace {

std::vector<int> members(std::uint32_t mask) {
  std::vector<int> out;
  for (int j = 0; mask; ++j, mask >>= 1)
    if (mask & 1) out.push_back(j + 1);
  return out;
}

std::string subset_text(std::uint32_t mask) {
  std::string s = "{";
  bool first = true;
  for (int j : members(mask)) {
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  return s + "}";
}

// Pair of ascending cell lists; compares like the Move order for equal widths.
using CellPair = std::pair<std::vector<Cell>, std::vector<Cell>>;

CellPair normalized_pair(std::vector<Cell> a, std::vector<Cell> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

bool disjoint_sorted(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    a[i] < b[j] ? ++i : ++j;
  }
  return true;
}

std::string pair_key(const CellPair& p) {
  std::string k;
  k.reserve(4 * (p.first.size() + p.second.size()) + 1);
  auto put = [&](Cell c) { k.append(reinterpret_cast<const char*>(&c), sizeof c); };
  for (Cell c : p.first) put(c);
  k.push_back('|');
  for (Cell c : p.second) put(c);
  return k;
}

Move move_from_pair(int n, const CellPair& p) {
  return {Table::from_cells(n, p.first), Table::from_cells(n, p.second)};
}

}  // namespace

std::string to_string(const FundamentalVertex& v) { return "(" + subset_text(v.s) + "," + subset_text(v.t) + ")"; }

FundamentalGraph fundamental_graph(int d) {
  if (d < 2) throw ArgumentError("fundamental graph needs d >= 2");
  if (d > 6) throw CapabilityError("fundamental graph supports d <= 6");
  FundamentalGraph x;
  x.d = d;
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t m = 1; m < (1u << d); ++m) subsets.push_back(m);
  auto list_less = [](std::uint32_t a, std::uint32_t b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return members(a) < members(b);
  };
  std::sort(subsets.begin(), subsets.end(), list_less);
  for (std::uint32_t s : subsets) {
    const int k = std::popcount(s);
    if (2 * k > d) continue;
    if (2 * k == d && !(s & 1u)) continue;
    for (std::uint32_t t : subsets)
      if (std::popcount(t) == k) x.labels.push_back({s, t});
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < x.labels.size(); ++i)
    for (std::size_t j = i + 1; j < x.labels.size(); ++j) {
      const auto& a = x.labels[i];
      const auto& b = x.labels[j];
      if (std::popcount(a.s & b.s) == std::popcount(a.t & b.t))
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  x.graph = Graph(static_cast<int>(x.labels.size()), std::move(edges));
  return x;
}

Move distinguished_generator(const FundamentalGraph& x) {
  const int n = x.graph.order();
  Move m{Table(n), Table(n)};
  for (int j = 0; j < x.d; ++j) {
    std::string plus(n, '0'), minus(n, '0');
    for (int i = 0; i < n; ++i) {
      if (x.labels[i].s >> j & 1) plus[i] = '1';
      if (x.labels[i].t >> j & 1) minus[i] = '1';
    }
    m.plus.add(IndexString(plus));
    m.minus.add(IndexString(minus));
  }
  return m;
}

// ---------------------------------------------------------------------------------------

MoveCanonicalizer::MoveCanonicalizer(const Graph& g) : g_(g), n_(g.order()), auts_(automorphisms(g)) {
  if (n_ > 24) throw CapabilityError("move canonicalization supports at most 24 vertices");
}

Table MoveCanonicalizer::act(const Table& t, std::uint32_t flips, const Permutation& a) const {
  Table out(n_);
  for (const auto& [s, k] : t.entries()) {
    std::string img(n_, '0');
    for (int v = 0; v < n_; ++v)
      if (s.bit(v) != static_cast<bool>(flips >> v & 1)) img[a[v]] = '1';
    out.add(IndexString(img), k);
  }
  return out;
}

namespace {

Cell permute_cell(Cell c, int n, const Permutation& a) {
  Cell out = 0;
  for (int v = 0; v < n; ++v)
    if (c >> (n - 1 - v) & 1) out |= Cell{1} << (n - 1 - a[v]);
  return out;
}

template <class Visit>
void for_each_image(int n, const std::vector<Permutation>& auts, const std::vector<Cell>& plus,
                    const std::vector<Cell>& minus, Visit&& visit) {
  std::vector<Cell> pp(plus.size()), pm(minus.size()), ip(plus.size()), im(minus.size());
  for (const Permutation& a : auts) {
    for (std::size_t i = 0; i < plus.size(); ++i) pp[i] = permute_cell(plus[i], n, a);
    for (std::size_t i = 0; i < minus.size(); ++i) pm[i] = permute_cell(minus[i], n, a);
    // permuting a flipped cell equals flipping the permuted cell by the permuted mask
    for (Cell f = 0; f < (Cell{1} << n); ++f) {
      for (std::size_t i = 0; i < pp.size(); ++i) ip[i] = pp[i] ^ f;
      for (std::size_t i = 0; i < pm.size(); ++i) im[i] = pm[i] ^ f;
      std::sort(ip.begin(), ip.end());
      std::sort(im.begin(), im.end());
      visit(ip, im);
    }
  }
}

}  // namespace

Move MoveCanonicalizer::canonicalize(const Move& m) const {
  if (!is_move(g_, m)) throw ArgumentError("canonicalize: not a move of this graph");
  const auto plus = m.plus.cells();
  const auto minus = m.minus.cells();
  CellPair best;
  bool have = false;
  for_each_image(n_, auts_, plus, minus, [&](const std::vector<Cell>& a, const std::vector<Cell>& b) {
    const bool swap = b < a;
    const auto& lo = swap ? b : a;
    const auto& hi = swap ? a : b;
    if (!have || std::tie(lo, hi) < std::tie(best.first, best.second)) {
      best = {lo, hi};
      have = true;
    }
  });
  return move_from_pair(n_, best);
}

std::vector<Move> MoveCanonicalizer::orbit(const Move& m) const {
  if (!is_move(g_, m)) throw ArgumentError("orbit: not a move of this graph");
  std::set<CellPair> seen;
  for_each_image(n_, auts_, m.plus.cells(), m.minus.cells(),
                 [&](const std::vector<Cell>& a, const std::vector<Cell>& b) { seen.insert(normalized_pair(a, b)); });
  std::vector<Move> out;
  out.reserve(seen.size());
  for (const auto& p : seen) out.push_back(move_from_pair(n_, p));
  return out;
}

Move canonicalize_move(const Graph& g, const Move& m) { return MoveCanonicalizer(g).canonicalize(m); }

Move sign_normalized(const Move& m) {
  Move neg = m.negated();
  return neg < m ? neg : m;
}

// ---------------------------------------------------------------------------------------

std::vector<PartitionClass> degree2_classes(const Graph& g) {
  const int n = g.order();
  if (n > 16) throw CapabilityError("degree2_classes supports at most 16 vertices");
  std::vector<PartitionClass> out;
  std::vector<int> part(n, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int v = n - 1; v >= 0; --v, c /= 3) part[v] = static_cast<int>(c % 3);
    int first = -1;
    bool has1 = false, has2 = false;
    for (int v = 0; v < n; ++v) {
      if (part[v] == 0) has1 = true;
      if (part[v] == 1) has2 = true;
      if (first < 0 && part[v] != 2) first = v;
    }
    if (!has1 || !has2 || part[first] != 0) continue;
    bool ok = true;
    for (const Edge& e : g.edges())
      if (part[e.u] + part[e.v] == 1) ok = false;
    if (!ok) continue;
    std::string p1(n, '0'), p2(n, '0'), m1(n, '1'), m2(n, '0');
    for (int v = 0; v < n; ++v) {
      p1[v] = part[v] == 1 ? '0' : '1';
      p2[v] = part[v] == 0 ? '0' : '1';
      if (part[v] == 2) m2[v] = '1';
    }
    Move m{Table(n), Table(n)};
    m.plus.add(IndexString(p1));
    m.plus.add(IndexString(p2));
    m.minus.add(IndexString(m1));
    m.minus.add(IndexString(m2));
    out.push_back({part, std::move(m)});
  }
  return out;
}

// ---------------------------------------------------------------------------------------

std::vector<ColoringComponent> coloring_graph_components(const Graph& g) {
  const int n = g.order();
  if (n > 10) throw CapabilityError("3-colouring graphs support at most 10 vertices");
  std::vector<Coloring> cols;
  Coloring cur(n, 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      cols.push_back(cur);
      return;
    }
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (Vertex u : g.neighbors(v))
        if (u < v && cur[u] == c) ok = false;
      if (!ok) continue;
      cur[v] = c;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  auto code = [&](const Coloring& c) {
    std::uint32_t k = 0;
    for (int x : c) k = 3 * k + x;
    return k;
  };
  std::unordered_map<std::uint32_t, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index.emplace(code(cols[i]), i);
  std::vector<std::size_t> parent(cols.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (int fixed = 0; fixed < 3; ++fixed) {
      std::vector<char> seen(n, 0);
      for (Vertex s = 0; s < n; ++s) {
        if (seen[s] || cols[i][s] == fixed) continue;
        Coloring next = cols[i];
        std::vector<Vertex> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
          const Vertex v = stack.back();
          stack.pop_back();
          next[v] = 3 - fixed - next[v];
          for (Vertex u : g.neighbors(v))
            if (!seen[u] && cols[i][u] != fixed) {
              seen[u] = 1;
              stack.push_back(u);
            }
        }
        const std::size_t a = find(i), b = find(index.at(code(next)));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  // roots are the least index, and colourings were generated in lexicographic order
  std::map<std::size_t, std::size_t> size;
  for (std::size_t i = 0; i < cols.size(); ++i) ++size[find(i)];
  std::vector<ColoringComponent> out;
  for (const auto& [root, k] : size) out.push_back({cols[root], k});
  return out;
}

bool is_3rigid(const Graph& g) { return coloring_graph_components(g).size() >= 2; }

// ---------------------------------------------------------------------------------------

std::string Provenance::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Pullback:
      os << "pullback";
      break;
    case Kind::Partition:
      os << "partition";
      break;
    case Kind::Coloring:
      os << "colouring";
      break;
  }
  os << " map=[";
  for (std::size_t i = 0; i < vertex_map.size(); ++i) os << (i ? " " : "") << vertex_map[i];
  os << "]";
  if (kind == Kind::Coloring) {
    os << " first=";
    for (int c : first) os << c;
    os << " second=";
    for (int c : second) os << c;
  }
  return os.str();
}

std::vector<std::vector<Vertex>> homomorphisms(const Graph& g, const Graph& h, std::uint64_t max_out,
                                               bool* truncated) {
  const int n = g.order();
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> img(n, 0);
  bool cut = false;
  auto rec = [&](auto&& self, int v) -> void {
    if (cut) return;
    if (v == n) {
      if (out.size() >= max_out) {
        cut = true;
        return;
      }
      out.push_back(img);
      return;
    }
    for (Vertex y = 0; y < h.order(); ++y) {
      bool ok = true;
      for (Vertex u : g.neighbors(v))
        if (u < v && !h.adjacent(img[u], y)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      img[v] = y;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  if (truncated) *truncated = cut;
  return out;
}

bool image_is_minimal(const FundamentalGraph& x, const std::vector<Vertex>& vertices, const std::vector<Edge>& edges) {
  const int k = static_cast<int>(vertices.size());
  std::vector<int> local(x.graph.order(), -1);
  for (int i = 0; i < k; ++i) local[vertices[i]] = i;
  std::vector<Edge> es;
  for (const Edge& e : edges) es.emplace_back(local[e.u], local[e.v]);
  const Graph r(k, std::move(es));
  Move m{Table(k), Table(k)};
  for (int j = 0; j < x.d; ++j) {
    std::string plus(k, '0'), minus(k, '0');
    for (int i = 0; i < k; ++i) {
      if (x.labels[vertices[i]].s >> j & 1) plus[i] = '1';
      if (x.labels[vertices[i]].t >> j & 1) minus[i] = '1';
    }
    m.plus.add(IndexString(plus));
    m.minus.add(IndexString(minus));
  }
  return is_minimal_generator(r, m);
}

std::size_t count_prism_subgraphs(const Graph& g) {
  const Graph prism = graphs::triangular_prism();
  const int n = g.order();
  std::vector<Vertex> img(6, -1);
  std::vector<char> used(n, 0);
  std::size_t maps = 0;
  auto rec = [&](auto&& self, int v) -> void {
    if (v == 6) {
      ++maps;
      return;
    }
    for (Vertex y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (Vertex u : prism.neighbors(v))
        if (u < v && !g.adjacent(img[u], y)) ok = false;
      if (!ok) continue;
      used[y] = 1;
      img[v] = y;
      self(self, v + 1);
      used[y] = 0;
    }
  };
  rec(rec, 0);
  return maps / automorphisms(prism).size();
}

bool contains_prism(const Graph& r) { return r.order() >= 6 && r.size() >= 9 && count_prism_subgraphs(r) > 0; }

namespace {

struct PipelineState {
  const Graph& g;
  const FundamentalGraph& x;
  const PipelineOptions& opt;
  PipelineResult& result;
  std::vector<int> psi;
  std::unordered_set<std::string> seen;
  std::unordered_map<std::string, bool> verdicts;

  bool verdict_for(const std::vector<Vertex>& vs, const std::vector<Edge>& es) {
    std::string key;
    for (Vertex v : vs) key += std::to_string(v) + ",";
    key += "|";
    for (const Edge& e : es) key += std::to_string(e.u) + "-" + std::to_string(e.v) + ",";
    auto it = verdicts.find(key);
    if (it != verdicts.end()) return it->second;
    bool ok;
    if (opt.prism_criterion) {
      std::vector<int> local(x.graph.order(), -1);
      for (std::size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<int>(i);
      std::vector<Edge> le;
      for (const Edge& e : es) le.emplace_back(local[e.u], local[e.v]);
      ok = contains_prism(Graph(static_cast<int>(vs.size()), std::move(le)));
    } else {
      ok = image_is_minimal(x, vs, es);
    }
    verdicts.emplace(std::move(key), ok);
    return ok;
  }

  void emit() {
    ++result.maps_examined;
    const int n = g.order();
    std::vector<Cell> plus(x.d, 0), minus(x.d, 0);
    bool any = false;
    for (int v = 0; v < n; ++v) {
      if (psi[v] < 0) continue;
      any = true;
      const auto& lab = x.labels[psi[v]];
      for (int j = 0; j < x.d; ++j) {
        if (lab.s >> j & 1) plus[j] |= Cell{1} << (n - 1 - v);
        if (lab.t >> j & 1) minus[j] |= Cell{1} << (n - 1 - v);
      }
    }
    if (!any) return;
    CellPair p = normalized_pair(plus, minus);
    if (!disjoint_sorted(p.first, p.second)) return;
    if (!seen.insert(pair_key(p)).second) return;
    std::vector<Vertex> vs;
    for (int v = 0; v < n; ++v)
      if (psi[v] >= 0) vs.push_back(psi[v]);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::set<Edge> es;
    for (const Edge& e : g.edges())
      if (psi[e.u] >= 0 && psi[e.v] >= 0 && psi[e.u] != psi[e.v]) es.emplace(psi[e.u], psi[e.v]);
    if (!verdict_for(vs, std::vector<Edge>(es.begin(), es.end()))) return;
    GeneratorCandidate c;
    c.move = move_from_pair(n, p);
    c.provenance.kind = Provenance::Kind::Pullback;
    c.provenance.vertex_map = psi;
    if (opt.certify) c.minimal = is_minimal_generator(g, c.move);
    result.candidates.push_back(std::move(c));
  }

  void rec(int v) {
    if (result.truncated) return;
    if (v == g.order()) {
      if (result.maps_examined >= opt.max_maps) {
        result.truncated = true;
        return;
      }
      emit();
      return;
    }
    for (int y = -1; y < x.graph.order(); ++y) {
      bool ok = true;
      if (y >= 0)
        for (Vertex u : g.neighbors(v))
          if (u < v && psi[u] >= 0 && psi[u] != y && !x.graph.adjacent(psi[u], y)) {
            ok = false;
            break;
          }
      if (!ok) continue;
      psi[v] = y;
      rec(v + 1);
    }
    psi[v] = -1;
  }
};

}  // namespace

PipelineResult pullback_candidates(const Graph& g, int d, const PipelineOptions& opt) {
  if (opt.prism_criterion && d != 3) throw ArgumentError("the prism criterion applies to degree 3 only");
  if (g.order() > 31) throw CapabilityError("pullback_candidates supports at most 31 vertices");
  const FundamentalGraph x = fundamental_graph(d);
  PipelineResult result;
  PipelineState st{g, x, opt, result, std::vector<int>(g.order(), -1), {}, {}};
  st.rec(0);
  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const GeneratorCandidate& a, const GeneratorCandidate& b) { return a.move < b.move; });
  return result;
}

std::vector<GeneratorCandidate> degree3_generators(const Graph& g, bool certify) {
  const int n = g.order();
  std::map<CellPair, GeneratorCandidate> found;
  for (const MinorEmbedding& emb : enumerate_minor_embeddings(g)) {
    if (emb.minor.order() < 2) continue;
    const auto comps = coloring_graph_components(emb.minor);
    if (comps.size() < 2) continue;
    auto rows = [&](const Coloring& col) {
      std::vector<Cell> r(3, 0);
      for (int v = 0; v < n; ++v)
        for (int j = 0; j < 3; ++j)
          if (emb.group_of[v] < 0 || col[emb.group_of[v]] == j) r[j] |= Cell{1} << (n - 1 - v);
      return r;
    };
    const auto base = rows(comps[0].representative);
    for (std::size_t i = 1; i < comps.size(); ++i) {
      CellPair p = normalized_pair(base, rows(comps[i].representative));
      if (!disjoint_sorted(p.first, p.second) || found.count(p)) continue;
      GeneratorCandidate c;
      c.move = move_from_pair(n, p);
      c.provenance.kind = Provenance::Kind::Coloring;
      c.provenance.vertex_map = emb.group_of;
      c.provenance.first = comps[0].representative;
      c.provenance.second = comps[i].representative;
      if (certify) c.minimal = is_minimal_generator(g, c.move);
      found.emplace(std::move(p), std::move(c));
    }
  }
  std::vector<GeneratorCandidate> out;
  for (auto& [k, c] : found) out.push_back(std::move(c));
  return out;
}

}  // namespace bgm
