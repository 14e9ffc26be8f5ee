#include "bgm/decompose.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "bgm/errors.hpp"

namespace bgm {

namespace {

std::vector<std::vector<Vertex>> components_avoiding(const Graph& g, const std::vector<Vertex>& sep) {
  std::vector<char> blocked(g.order(), 0);
  for (Vertex v : sep) blocked[v] = 1;
  std::vector<char> seen(g.order(), 0);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (blocked[s] || seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex w : g.neighbors(comp[i])) {
        if (!blocked[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

std::vector<Decomposition> find_decompositions(const Graph& g) {
  std::vector<std::pair<Decomposition::Kind, std::vector<Vertex>>> separators;
  separators.push_back({Decomposition::Kind::Empty, {}});
  for (Vertex v = 0; v < g.order(); ++v) separators.push_back({Decomposition::Kind::Vertex, {v}});
  for (const Edge& e : g.edges()) separators.push_back({Decomposition::Kind::Edge, {e.u, e.v}});

  std::vector<Decomposition> out;
  for (const auto& [kind, sep] : separators) {
    const auto comps = components_avoiding(g, sep);
    if (comps.size() < 2) continue;
    if (comps.size() > 20) throw CapabilityError("find_decompositions: too many components");
    // comps[0] holds the smallest free vertex and always goes to V1
    const std::uint32_t rest = static_cast<std::uint32_t>(comps.size() - 1);
    for (std::uint32_t mask = 0; mask + 1 < (1u << rest); ++mask) {
      Decomposition d;
      d.kind = kind;
      d.s = sep;
      d.v1 = comps[0];
      for (std::uint32_t i = 0; i < rest; ++i) {
        auto& side = (mask >> i & 1) ? d.v1 : d.v2;
        side.insert(side.end(), comps[i + 1].begin(), comps[i + 1].end());
      }
      std::sort(d.v1.begin(), d.v1.end());
      std::sort(d.v2.begin(), d.v2.end());
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::pair<Graph, Graph> pieces(const Graph& g, const Decomposition& d) {
  auto side = [&](const std::vector<Vertex>& part) {
    std::vector<Vertex> vs = part;
    vs.insert(vs.end(), d.s.begin(), d.s.end());
    std::sort(vs.begin(), vs.end());
    return g.induced(vs);
  };
  return {side(d.v1), side(d.v2)};
}

int treewidth(const Graph& g) {
  const int n = g.order();
  if (n > 12) throw CapabilityError("treewidth supports at most 12 vertices");
  if (n == 0) return -1;
  std::vector<std::uint32_t> nbr(n, 0);
  for (const Edge& e : g.edges()) {
    nbr[e.u] |= 1u << e.v;
    nbr[e.v] |= 1u << e.u;
  }
  // q(S, v): vertices outside S + v reachable from v through S
  auto q = [&](std::uint32_t s, int v) {
    std::uint32_t reached = 1u << v, frontier = 1u << v, out = 0;
    while (frontier) {
      const int x = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint32_t nb = nbr[x] & ~reached;
      reached |= nb;
      out |= nb & ~s;
      frontier |= nb & s;
    }
    return std::popcount(out);
  };
  const std::uint32_t full = (1u << n) - 1;
  std::vector<int> tw(std::size_t{1} << n, n);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t prev = s & ~(1u << v);
      tw[s] = std::min(tw[s], std::max(tw[prev], q(prev, v)));
    }
  }
  return tw[full];
}

}  // namespace bgm
