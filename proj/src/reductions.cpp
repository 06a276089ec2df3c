#include "elimdeg/reductions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "elimdeg/errors.hpp"

namespace elimdeg {

const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::RedNeighborBound: return "red-neighbor-bound";
    case RejectReason::RedPathBound: return "red-path-bound";
  }
  return "?";
}

long long red_neighbor_bound(int k, int d) {
  const long long cap = 1LL << 40;
  long long b = 1;
  for (int i = 0; i < k; ++i) {
    b *= (k + d);
    if (b > cap) return cap;
  }
  return b;
}

long long quotient_depth_bound(int k) { return k >= 40 ? (1LL << 41) : (1LL << (k + 1)) - 1; }

PruneOutcome reject_by_red_neighbors(const Graph& g, int k, int d) {
  PruneOutcome out;
  auto q = contract(g, k, d);
  const long long bound = red_neighbor_bound(k, d);
  for (auto& node : q.nodes) {
    if (static_cast<long long>(node.ports.size()) > bound) {
      out.reject = true;
      out.reason = RejectReason::RedNeighborBound;
      out.witness = node.vertices;
      out.reds = node.ports;
      return out;
    }
  }
  return out;
}

PruneOutcome quotient_dfs_order(const QuotientGraph& gq, int k) {
  PruneOutcome out;
  Graph qg = gq.as_graph();
  const int n = qg.size();
  const long long bound = quotient_depth_bound(k);
  std::vector<int> parent(n, -2), depth(n, 0);
  std::vector<std::pair<int, int>> stack;  // node, next neighbour position
  for (int root = 0; root < n; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [v, pos] = stack.back();
      auto nb = qg.neighbors(v);
      if (pos == static_cast<int>(nb.size())) {
        stack.pop_back();
        continue;
      }
      int w = nb[pos++];
      if (parent[w] != -2) continue;
      parent[w] = v;
      depth[w] = depth[v] + 1;
      if (depth[w] > bound) {
        out.reject = true;
        out.reason = RejectReason::RedPathBound;
        for (int x = w; x >= 0; x = parent[x]) out.witness.push_back(x);
        std::reverse(out.witness.begin(), out.witness.end());
        for (int x : out.witness)
          if (gq.is_red(x)) out.reds.push_back(gq.reds[x]);
        return out;
      }
      stack.emplace_back(w, 0);
    }
  }
  std::map<VertexId, std::optional<VertexId>> par;
  for (int v = 0; v < n; ++v) par[v] = parent[v] < 0 ? std::nullopt : std::optional<VertexId>(parent[v]);
  out.order = TreeOrder(std::move(par));
  return out;
}

std::vector<VertexId> expand_quotient_path(const Graph& g, const QuotientGraph& gq, const std::vector<int>& path) {
  std::vector<VertexId> out;
  for (std::size_t t = 0; t < path.size(); ++t) {
    int x = path[t];
    if (gq.is_red(x)) {
      out.push_back(gq.reds[x]);
      continue;
    }
    const auto& node = gq.nodes[x - gq.num_reds()];
    VertexSet inside(g.size());
    for (VertexId v : node.vertices) inside.set(g.index_of(v));
    auto touches = [&](int red_node) {
      VertexSet s(g.size());
      if (red_node < 0) return inside;
      int r = g.index_of(gq.reds[red_node]);
      for (int w : g.neighbors(r))
        if (inside.test(w)) s.set(w);
      return s;
    };
    VertexSet from = touches(t > 0 ? path[t - 1] : -1);
    VertexSet to = touches(t + 1 < path.size() ? path[t + 1] : -1);
    // BFS inside the component from any vertex of `from` to `to`.
    std::vector<int> prev(g.size(), -2);
    std::deque<int> queue;
    from.for_each([&](int v) {
      prev[v] = -1;
      queue.push_back(v);
    });
    int hit = -1;
    while (!queue.empty() && hit < 0) {
      int v = queue.front();
      queue.pop_front();
      if (to.test(v)) {
        hit = v;
        break;
      }
      for (int w : g.neighbors(v))
        if (inside.test(w) && prev[w] == -2) {
          prev[w] = v;
          queue.push_back(w);
        }
    }
    if (hit < 0) throw InputError("quotient path is not realisable in the graph");
    std::vector<VertexId> seg;
    for (int v = hit; v >= 0; v = prev[v]) seg.push_back(g.id(v));
    std::reverse(seg.begin(), seg.end());
    out.insert(out.end(), seg.begin(), seg.end());
  }
  return out;
}

bool validate_red_neighbor_certificate(const Graph& g, int k, int d, const std::vector<VertexId>& component) {
  if (component.empty()) return false;
  VertexSet in(g.size());
  for (VertexId v : component) {
    int i = g.index_of(v);
    if (i < 0 || in.test(i)) return false;
    in.set(i);
  }
  auto red = [&](int i) { return g.degree(i) > k + d; };
  std::set<int> reds;
  bool ok = true;
  in.for_each([&](int v) {
    if (red(v)) ok = false;
    for (int w : g.neighbors(v)) {
      if (red(w))
        reds.insert(w);
      else if (!in.test(w))
        ok = false;  // not a whole component of G - R
    }
  });
  if (!ok) return false;
  if (component_sets(g, in).size() != 1) return false;
  return static_cast<long long>(reds.size()) > red_neighbor_bound(k, d);
}

bool validate_red_path_certificate(const Graph& g, int k, int d, const std::vector<VertexId>& path) {
  std::set<VertexId> seen;
  long long reds = 0;
  for (std::size_t t = 0; t < path.size(); ++t) {
    int i = g.index_of(path[t]);
    if (i < 0 || !seen.insert(path[t]).second) return false;
    if (t > 0 && !g.adjacent(path[t - 1], path[t])) return false;
    if (g.degree(i) > k + d) ++reds;
  }
  return k < 62 && reds >= (1LL << k);
}

}  // namespace elimdeg
