#pragma once

// Builders and independent reference implementations shared by the tests.
// Nothing here calls into the library's search code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "elimdeg/graph.hpp"
#include "elimdeg/grid_minor.hpp"

namespace ts {

using elimdeg::Edge;
using elimdeg::Graph;

inline std::string data(const std::string& name) { return std::string(ELIMDEG_TEST_DATA) + "/" + name; }

inline Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return Graph(n, e);
}

inline Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

// Centre 0, leaves 1..leaves.
inline Graph star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

inline Graph edgeless(int n) { return Graph(n, {}); }

// m x m grid, vertex (r, c) (0-based) is r*m + c.
inline Graph grid(int m) {
  std::vector<Edge> e;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      if (c + 1 < m) e.emplace_back(r * m + c, r * m + c + 1);
      if (r + 1 < m) e.emplace_back(r * m + c, (r + 1) * m + c);
    }
  return Graph(m * m, e);
}

inline elimdeg::MinorModel identity_model(int m) {
  elimdeg::MinorModel mm;
  mm.m = m;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) mm.cell[r * m + c] = {r + 1, c + 1};
  return mm;
}

inline Graph random_graph(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph(n, e);
}

// --- small graphs as adjacency bitmasks (n <= 16) ---------------------------

struct Small {
  int n = 0;
  std::vector<std::uint32_t> adj;

  static Small of(const Graph& g) {
    Small s;
    s.n = g.size();
    s.adj.assign(s.n, 0);
    for (auto [u, v] : g.edges()) {
      int a = g.index_of(u), b = g.index_of(v);
      s.adj[a] |= 1u << b;
      s.adj[b] |= 1u << a;
    }
    return s;
  }

  Graph graph() const {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (adj[i] >> j & 1u) e.emplace_back(i, j);
    return Graph(n, e);
  }

  std::vector<std::uint32_t> components(std::uint32_t mask) const {
    std::vector<std::uint32_t> out;
    while (mask) {
      std::uint32_t comp = mask & (~mask + 1), frontier = comp;
      while (frontier) {
        int v = __builtin_ctz(frontier);
        frontier &= frontier - 1;
        std::uint32_t fresh = adj[v] & mask & ~comp;
        comp |= fresh;
        frontier |= fresh;
      }
      out.push_back(comp);
      mask &= ~comp;
    }
    return out;
  }

  int max_degree(std::uint32_t mask) const {
    int best = 0;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1u) best = std::max(best, __builtin_popcount(adj[v] & mask));
    return best;
  }
};

// The recursive definition of ed_d, evaluated literally with a memo on
// vertex subsets: 0 when max degree <= d, max over components when
// disconnected, otherwise 1 + min over single deletions.
inline int naive_ed(const Graph& g, int d) {
  Small s = Small::of(g);
  std::unordered_map<std::uint32_t, int> memo;
  std::function<int(std::uint32_t)> ed = [&](std::uint32_t mask) -> int {
    if (s.max_degree(mask) <= d) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    auto comps = s.components(mask);
    int value;
    if (comps.size() > 1) {
      value = 0;
      for (auto c : comps) value = std::max(value, ed(c));
    } else {
      value = 1 << 20;
      for (int v = 0; v < s.n; ++v)
        if (mask >> v & 1u) value = std::min(value, 1 + ed(mask & ~(1u << v)));
    }
    memo[mask] = value;
    return value;
  };
  return ed(s.n == 32 ? ~0u : (1u << s.n) - 1);
}

// Vertex-counting treedepth by bottom-up subset dynamic programming: one
// vertex has treedepth 1, the empty graph 0.
inline int vertex_counting_treedepth(const Graph& g) {
  Small s = Small::of(g);
  const std::uint32_t full = (1u << s.n) - 1;
  std::vector<int> td(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    auto comps = s.components(mask);
    if (comps.size() > 1) {
      int best = 0;
      for (auto c : comps) best = std::max(best, td[c]);
      td[mask] = best;
    } else {
      int best = 1 << 20;
      for (int v = 0; v < s.n; ++v)
        if (mask >> v & 1u) best = std::min(best, 1 + td[mask & ~(1u << v)]);
      td[mask] = best;
    }
    if (mask == full) break;
  }
  return td[full];
}

// --- canonical enumeration ------------------------------------------------

// Canonical code: the smallest upper-triangle bit string over all vertex
// orders that sort vertices by (degree, sorted neighbour degrees).
inline std::uint64_t canonical_code(const Small& s) {
  std::vector<std::pair<int, std::vector<int>>> inv(s.n);
  for (int v = 0; v < s.n; ++v) {
    inv[v].first = __builtin_popcount(s.adj[v]);
    for (int w = 0; w < s.n; ++w)
      if (s.adj[v] >> w & 1u) inv[v].second.push_back(__builtin_popcount(s.adj[w]));
    std::sort(inv[v].second.begin(), inv[v].second.end());
  }
  std::vector<int> order(s.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return inv[a] < inv[b]; });
  // Class boundaries.
  std::vector<std::pair<int, int>> classes;
  for (int i = 0; i < s.n;) {
    int j = i;
    while (j < s.n && inv[order[j]] == inv[order[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::uint64_t best = ~std::uint64_t{0};
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == classes.size()) {
      std::uint64_t code = 0;
      for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j) code = code << 1 | (s.adj[order[i]] >> order[j] & 1u);
      best = std::min(best, code);
      return;
    }
    auto [lo, hi] = classes[c];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      rec(c + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(0);
  return best;
}

// One representative per isomorphism class of graphs on exactly n vertices
// (connected ones only when asked), built by attaching a new vertex to each
// class on n-1 vertices in every possible way. Complete because every graph
// has a vertex whose removal leaves a graph of the same kind (a non-cut
// vertex in the connected case).
inline std::vector<std::vector<Small>> enumerate_graphs(int max_n, bool connected) {
  std::vector<std::vector<Small>> out(max_n + 1);
  if (max_n >= 1) {
    Small one;
    one.n = 1;
    one.adj = {0};
    out[1].push_back(one);
  }
  for (int n = 2; n <= max_n; ++n) {
    std::set<std::uint64_t> seen;
    for (const auto& base : out[n - 1]) {
      for (std::uint32_t nb = connected ? 1 : 0; nb < (1u << (n - 1)); ++nb) {
        Small s = base;
        s.n = n;
        s.adj.push_back(nb);
        for (int v = 0; v < n - 1; ++v)
          if (nb >> v & 1u) s.adj[v] |= 1u << (n - 1);
        if (seen.insert(canonical_code(s)).second) out[n].push_back(s);
      }
    }
  }
  return out;
}

// Brute force: the largest number of vertices with degree > k+d on one
// simple path of g.
inline int max_reds_on_path(const Graph& g, int k, int d) {
  Small s = Small::of(g);
  std::vector<char> red(s.n);
  for (int v = 0; v < s.n; ++v) red[v] = __builtin_popcount(s.adj[v]) > k + d;
  int best = 0;
  std::function<void(int, std::uint32_t, int)> walk = [&](int v, std::uint32_t used, int reds) {
    best = std::max(best, reds);
    for (int w = 0; w < s.n; ++w)
      if ((s.adj[v] >> w & 1u) && !(used >> w & 1u)) walk(w, used | 1u << w, reds + red[w]);
  };
  for (int v = 0; v < s.n; ++v) walk(v, 1u << v, red[v]);
  return best;
}

// Independent safe-window check: every cell within Chebyshev distance
// radius of (row, col) holds only vertices of degree <= d (and, when
// ported_blocks is set, no vertex the predicate marks).
inline bool naive_window_clear(const Graph& g, const elimdeg::MinorModel& mm, int row, int col, int radius, int d,
                               const std::function<bool(elimdeg::VertexId)>& blocks = nullptr) {
  for (auto& [v, c] : mm.cell) {
    if (std::abs(c.row - row) > radius || std::abs(c.col - col) > radius) continue;
    int i = g.index_of(v);
    if (g.degree(i) >= d + 1) return false;
    if (blocks && blocks(v)) return false;
  }
  return true;
}

}  // namespace ts
