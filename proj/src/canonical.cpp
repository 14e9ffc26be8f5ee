#include "bgm/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bgm/errors.hpp"

namespace bgm {

namespace {

// Weisfeiler-Leman colour refinement; colours are ranks of sorted signatures, so the
// result is isomorphism invariant.
std::vector<int> refine_colours(const Graph& g) {
  const int n = g.order();
  std::vector<int> colour(n);
  for (Vertex v = 0; v < n; ++v) colour[v] = g.degree(v);
  std::size_t classes = 0;
  while (true) {
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (Vertex w : g.neighbors(v)) sig[v].second.push_back(colour[w]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Vertex v = 0; v < n; ++v) {
      colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    }
    if (sorted.size() == classes) break;
    classes = sorted.size();
  }
  return colour;
}

struct LabelSearch {
  const Graph& g;
  int n;
  std::vector<int> slot_colour;              // colour required at each position
  std::vector<std::vector<Vertex>> by_colour;
  std::vector<Vertex> at;                    // vertex placed at each position
  std::vector<char> used;
  std::vector<std::uint8_t> bits, best_bits;
  std::vector<Vertex> best_at;

  std::uint64_t generation = 0;

  // cmp: 0 = prefix equals best, 1 = prefix already greater (or no best yet)
  void place(int p, int cmp) {
    if (p == n) {
      if (cmp == 1) {
        best_bits = bits;
        best_at = at;
        ++generation;
      }
      return;
    }
    const std::size_t col_start = static_cast<std::size_t>(p) * (p - 1) / 2;
    for (Vertex v : by_colour[slot_colour[p]]) {
      if (used[v]) continue;
      int c = cmp;
      bool pruned = false;
      for (int q = 0; q < p; ++q) {
        const std::uint8_t b = g.adjacent(at[q], v) ? 1 : 0;
        bits[col_start + q] = b;
        if (c == 0) {
          const std::uint8_t ref = best_bits[col_start + q];
          if (b < ref) {
            pruned = true;
            break;
          }
          if (b > ref) c = 1;
        }
      }
      if (pruned) continue;
      used[v] = 1;
      at[p] = v;
      const std::uint64_t before = generation;
      place(p + 1, c);
      used[v] = 0;
      // a new best found below shares this prefix
      if (generation != before) cmp = 0;
    }
  }
};

double orderings_bound(const std::vector<std::vector<Vertex>>& classes) {
  double total = 1;
  for (const auto& c : classes)
    for (std::size_t k = 2; k <= c.size(); ++k) total *= static_cast<double>(k);
  return total;
}

}  // namespace

CanonicalLabeling canonical_labeling(const Graph& g) {
  const int n = g.order();
  const std::vector<int> colour = refine_colours(g);
  LabelSearch s{g, n, {}, {}, std::vector<Vertex>(n), std::vector<char>(n, 0), {}, {}, {}, 0};
  const int ncol = n == 0 ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
  s.by_colour.resize(ncol);
  for (Vertex v = 0; v < n; ++v) s.by_colour[colour[v]].push_back(v);
  if (orderings_bound(s.by_colour) > 4e7) {
    throw CapabilityError("canonical form: colour classes too symmetric for exhaustive search (n=" +
                          std::to_string(n) + ")");
  }
  for (int c = 0; c < ncol; ++c)
    for (std::size_t k = 0; k < s.by_colour[c].size(); ++k) s.slot_colour.push_back(c);
  s.bits.assign(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2, 0);
  s.place(0, 1);

  CanonicalLabeling out;
  out.form.order = n;
  out.form.colour_profile = s.slot_colour;
  out.form.code.assign((s.best_bits.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < s.best_bits.size(); ++i) {
    if (s.best_bits[i]) out.form.code[i / 64] |= std::uint64_t{1} << (63 - i % 64);
  }
  out.position.assign(n, 0);
  for (int p = 0; p < n; ++p) out.position[s.best_at[p]] = p;
  return out;
}

CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }

Graph canonical_graph(const Graph& g) {
  const auto lab = canonical_labeling(g);
  std::vector<Edge> es;
  for (const Edge& e : g.edges()) es.emplace_back(lab.position[e.u], lab.position[e.v]);
  return Graph(g.order(), std::move(es));
}

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

std::vector<Permutation> automorphisms(const Graph& g) {
  const int n = g.order();
  const std::vector<int> colour = refine_colours(g);
  std::vector<Permutation> out;
  Permutation image(n, -1);
  std::vector<char> used(n, 0);
  auto extend = [&](auto&& self, Vertex v) -> void {
    if (v == n) {
      out.push_back(image);
      return;
    }
    for (Vertex w = 0; w < n; ++w) {
      if (used[w] || colour[w] != colour[v]) continue;
      bool ok = true;
      for (Vertex u = 0; u < v && ok; ++u) ok = g.adjacent(u, v) == g.adjacent(image[u], w);
      if (!ok) continue;
      used[w] = 1;
      image[v] = w;
      self(self, v + 1);
      used[w] = 0;
    }
  };
  extend(extend, 0);
  // identity is produced first because candidates are tried in ascending order
  return out;
}

std::vector<Graph> all_graphs(int n) {
  if (n < 0 || n > 6) throw CapabilityError("all_graphs supports n <= 6");
  std::vector<Edge> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::map<std::pair<std::size_t, CanonicalForm>, Graph> seen;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Edge> es;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1) es.push_back(pairs[k]);
    Graph g(n, std::move(es));
    auto key = std::make_pair(g.size(), canonical_form(g));
    if (!seen.count(key)) seen.emplace(std::move(key), canonical_graph(g));
  }
  std::vector<Graph> out;
  out.reserve(seen.size());
  for (auto& [_, g] : seen) out.push_back(std::move(g));
  return out;
}

}  // namespace bgm
