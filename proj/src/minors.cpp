#include "bgm/minors.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "bgm/canonical.hpp"
#include "bgm/errors.hpp"

namespace bgm {

Graph delete_vertex(const Graph& g, Vertex v) {
  if (!g.has_vertex(v)) throw ArgumentError("delete_vertex: unknown vertex " + std::to_string(v));
  std::vector<Edge> es;
  for (const Edge& e : g.edges()) {
    if (e.u == v || e.v == v) continue;
    es.emplace_back(e.u - (e.u > v), e.v - (e.v > v));
  }
  return Graph(g.order() - 1, std::move(es));
}

Graph contract_edge(const Graph& g, const Edge& e) {
  if (!g.has_edge(e)) {
    throw ArgumentError("contract_edge: {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                        "} is not an edge");
  }
  auto image = [&](Vertex x) {
    if (x == e.v) x = e.u;
    return x - (x > e.v);
  };
  std::set<Edge> es;
  for (const Edge& f : g.edges()) {
    const Vertex a = image(f.u), b = image(f.v);
    if (a != b) es.emplace(a, b);
  }
  return Graph(g.order() - 1, std::vector<Edge>(es.begin(), es.end()));
}

Graph MinorTrace::replay(std::vector<int>* map_out) const {
  Graph cur = base;
  std::vector<int> map(base.order());
  for (int i = 0; i < base.order(); ++i) map[i] = i;
  for (const MinorStep& s : steps) {
    if (s.kind == MinorStep::Kind::DeleteVertex) {
      cur = delete_vertex(cur, s.a);
      for (int& m : map) {
        if (m == s.a) m = -1;
        else if (m > s.a) --m;
      }
    } else {
      const Edge e(s.a, s.b);
      cur = contract_edge(cur, e);
      for (int& m : map) {
        if (m == e.v) m = e.u;
        if (m > e.v) --m;
      }
    }
  }
  if (map_out) *map_out = std::move(map);
  return cur;
}

MinorTrace trivial_trace(const Graph& g) {
  MinorTrace t;
  t.base = g;
  t.vertex_map.resize(g.order());
  for (int i = 0; i < g.order(); ++i) t.vertex_map[i] = i;
  return t;
}

MinorTrace then_delete(const MinorTrace& t, const Graph& current, Vertex v) {
  if (!current.has_vertex(v)) throw ArgumentError("then_delete: unknown vertex");
  MinorTrace out = t;
  out.steps.push_back({MinorStep::Kind::DeleteVertex, v, 0});
  for (int& m : out.vertex_map) {
    if (m == v) m = -1;
    else if (m > v) --m;
  }
  return out;
}

MinorTrace then_contract(const MinorTrace& t, const Graph& current, const Edge& e) {
  if (!current.has_edge(e)) throw ArgumentError("then_contract: not an edge");
  MinorTrace out = t;
  out.steps.push_back({MinorStep::Kind::ContractEdge, e.u, e.v});
  for (int& m : out.vertex_map) {
    if (m == e.v) m = e.u;
    if (m > e.v) --m;
  }
  return out;
}

MinorSet enumerate_minors(const Graph& g, std::size_t max_out) {
  MinorSet out;
  if (g.order() == 0 || max_out == 0) {
    out.truncated = g.order() != 0;
    return out;
  }
  std::set<CanonicalForm> seen;
  std::deque<std::size_t> queue;
  seen.insert(canonical_form(g));
  out.minors.push_back({g, trivial_trace(g)});
  queue.push_back(0);
  auto offer = [&](Graph h, MinorTrace t) {
    if (h.order() == 0) return true;
    if (!seen.insert(canonical_form(h)).second) return true;
    if (out.minors.size() >= max_out) {
      out.truncated = true;
      return false;
    }
    out.minors.push_back({std::move(h), std::move(t)});
    queue.push_back(out.minors.size() - 1);
    return true;
  };
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    const Graph cur = out.minors[idx].graph;
    const MinorTrace trace = out.minors[idx].trace;
    for (Vertex v = 0; v < cur.order(); ++v) {
      if (!offer(delete_vertex(cur, v), then_delete(trace, cur, v))) return out;
    }
    for (const Edge& e : cur.edges()) {
      if (!offer(contract_edge(cur, e), then_contract(trace, cur, e))) return out;
    }
  }
  return out;
}

namespace {

bool block_connected(const Graph& g, const std::vector<Vertex>& block) {
  if (block.size() <= 1) return true;
  std::vector<char> reached(block.size(), 0);
  std::vector<std::size_t> stack{0};
  reached[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < block.size(); ++j) {
      if (!reached[j] && g.adjacent(block[i], block[j])) {
        reached[j] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == block.size();
}

}  // namespace

std::vector<MinorEmbedding> enumerate_minor_embeddings(const Graph& g) {
  const int n = g.order();
  if (n > 9) throw CapabilityError("enumerate_minor_embeddings supports at most 9 vertices");
  std::vector<MinorEmbedding> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> kept;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) kept.push_back(v);
    // restricted growth strings over `kept`
    std::vector<int> rgs(kept.size(), 0);
    auto emit = [&]() {
      const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
      std::vector<std::vector<Vertex>> members(blocks);
      for (std::size_t i = 0; i < kept.size(); ++i) members[rgs[i]].push_back(kept[i]);
      for (const auto& b : members)
        if (!block_connected(g, b)) return;
      MinorEmbedding emb;
      emb.group_of.assign(n, -1);
      for (std::size_t i = 0; i < kept.size(); ++i) emb.group_of[kept[i]] = rgs[i];
      std::set<Edge> es;
      for (const Edge& e : g.edges()) {
        const int a = emb.group_of[e.u], b = emb.group_of[e.v];
        if (a >= 0 && b >= 0 && a != b) es.emplace(a, b);
      }
      emb.minor = Graph(blocks, std::vector<Edge>(es.begin(), es.end()));
      out.push_back(std::move(emb));
    };
    auto rec = [&](auto&& self, std::size_t i, int maxb) -> void {
      if (i == kept.size()) {
        emit();
        return;
      }
      for (int b = 0; b <= maxb + 1; ++b) {
        rgs[i] = b;
        self(self, i + 1, std::max(maxb, b));
      }
    };
    rgs[0] = 0;
    rec(rec, 1, 0);
  }
  return out;
}

MinorTrace trace_of(const Graph& g, const MinorEmbedding& emb) {
  MinorTrace t = trivial_trace(g);
  Graph cur = g;
  for (Vertex v = g.order() - 1; v >= 0; --v) {
    if (emb.group_of[v] < 0) {
      t = then_delete(t, cur, t.vertex_map[v]);
      cur = delete_vertex(cur, t.steps.back().a);
    }
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (const Edge& e : g.edges()) {
      const int gu = emb.group_of[e.u], gv = emb.group_of[e.v];
      if (gu < 0 || gu != gv) continue;
      const Vertex a = t.vertex_map[e.u], b = t.vertex_map[e.v];
      if (a == b) continue;
      const Edge ce(a, b);
      t = then_contract(t, cur, ce);
      cur = contract_edge(cur, ce);
      progress = true;
    }
  }
  return t;
}

}  // namespace bgm
