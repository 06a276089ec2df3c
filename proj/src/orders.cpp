#include "elimdeg/orders.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "elimdeg/errors.hpp"

namespace elimdeg {

TreeOrder::TreeOrder(std::map<VertexId, std::optional<VertexId>> parent) : parent_(std::move(parent)) {
  for (auto& [v, p] : parent_)
    if (p) ++child_count_[*p];
}

std::vector<VertexId> TreeOrder::vertices() const {
  std::vector<VertexId> out;
  out.reserve(parent_.size());
  for (auto& kv : parent_) out.push_back(kv.first);
  return out;
}

std::optional<VertexId> TreeOrder::parent(VertexId v) const {
  auto it = parent_.find(v);
  if (it == parent_.end()) throw InputError("vertex " + std::to_string(v) + " not in order");
  return it->second;
}

std::vector<VertexId> TreeOrder::strict_predecessors(VertexId v) const {
  std::vector<VertexId> chain;
  for (auto p = parent(v); p; p = parent(*p)) {
    chain.push_back(*p);
    if (chain.size() > parent_.size()) throw InputError("parent relation has a cycle");
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

int TreeOrder::depth(VertexId v) const { return static_cast<int>(strict_predecessors(v).size()); }

int TreeOrder::depth() const {
  int best = 0;
  for (auto& kv : parent_) best = std::max(best, depth(kv.first));
  return best;
}

bool TreeOrder::leq(VertexId u, VertexId v) const {
  if (u == v) return true;
  std::size_t steps = 0;
  for (auto p = parent(v); p; p = parent(*p)) {
    if (*p == u) return true;
    if (++steps > parent_.size()) throw InputError("parent relation has a cycle");
  }
  return false;
}

bool TreeOrder::is_maximal(VertexId v) const {
  auto it = child_count_.find(v);
  return it == child_count_.end() || it->second == 0;
}

std::vector<VertexId> TreeOrder::children(VertexId v) const {
  std::vector<VertexId> out;
  for (auto& [u, p] : parent_)
    if (p && *p == v) out.push_back(u);
  return out;
}

namespace {

void require_same_vertices(const Graph& g, const TreeOrder& o) {
  if (o.parents().size() != static_cast<std::size_t>(g.size()))
    throw InputError("order covers " + std::to_string(o.parents().size()) + " vertices, graph has " +
                     std::to_string(g.size()));
  for (auto& [v, p] : o.parents())
    if (!g.contains(v)) throw InputError("order mentions vertex " + std::to_string(v) + " not in graph");
}

bool acyclic(const TreeOrder& o) {
  // 0 unvisited, 1 on stack, 2 done
  std::map<VertexId, int> state;
  for (auto& kv : o.parents()) {
    std::vector<VertexId> path;
    VertexId v = kv.first;
    while (true) {
      int& s = state[v];
      if (s == 2) break;
      if (s == 1) return false;
      s = 1;
      path.push_back(v);
      auto p = o.parents().at(v);
      if (!p) break;
      v = *p;
    }
    for (VertexId u : path) state[u] = 2;
  }
  return true;
}

}  // namespace

bool check_tree_order(const Graph& g, const TreeOrder& o) {
  require_same_vertices(g, o);
  for (auto& [v, p] : o.parents())
    if (p && !o.contains(*p)) return false;
  return acyclic(o);
}

bool is_tree_order_relation(const Graph& g, const std::vector<Edge>& less) {
  const int n = g.size();
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) le[i][i] = 1;
  for (auto [u, v] : less) {
    int a = g.index_of(u), b = g.index_of(v);
    if (a < 0 || b < 0) throw InputError("relation mentions a vertex outside the graph");
    le[a][b] = 1;
  }
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a)
      if (le[a][m])
        for (int b = 0; b < n; ++b)
          if (le[m][b]) le[a][b] = 1;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (le[a][b] && le[b][a]) return false;
  for (int v = 0; v < n; ++v)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (le[a][v] && le[b][v] && !le[a][b] && !le[b][a]) return false;
  return true;
}

EliminationOrderReport check_elimination_to_degree(const Graph& g, const TreeOrder& o, int d) {
  if (!check_tree_order(g, o)) throw InputError("not a tree order");
  EliminationOrderReport rep;
  std::map<VertexId, std::vector<VertexId>> preds;
  for (VertexId v : o.vertices()) preds[v] = o.strict_predecessors(v);
  for (int i = 0; i < g.size(); ++i) {
    VertexId v = g.id(i);
    rep.depth = std::max(rep.depth, static_cast<int>(preds[v].size()));
    std::vector<VertexId> s;
    for (int j : g.neighbors(i))
      if (!o.comparable(v, g.id(j))) s.push_back(g.id(j));
    if (o.is_maximal(v)) rep.maximal_sets[v] = s;
    if (s.empty()) continue;
    if (!o.is_maximal(v)) {
      rep.violations.emplace_back(v, "has incomparable neighbour " + std::to_string(s.front()) +
                                         " but is not maximal");
      continue;
    }
    if (static_cast<int>(s.size()) > d)
      rep.violations.emplace_back(v, std::to_string(s.size()) + " incomparable neighbours exceed d=" +
                                         std::to_string(d));
    for (VertexId u : s)
      if (preds[u] != preds[v]) {
        rep.violations.emplace_back(v, "incomparable neighbour " + std::to_string(u) +
                                           " has different predecessors");
        break;
      }
  }
  rep.valid = rep.violations.empty();
  return rep;
}

TreeOrder canonicalize(const Graph& g, const TreeOrder& o, int d) {
  if (!check_elimination_to_degree(g, o, d).valid) throw InputError("input is not an elimination order to degree d");
  std::map<VertexId, std::optional<VertexId>> parent;
  std::map<VertexId, int> old_depth;
  for (VertexId v : o.vertices()) old_depth[v] = o.depth(v);

  std::function<void(const VertexSet&, std::optional<VertexId>)> place = [&](const VertexSet& x,
                                                                           std::optional<VertexId> above) {
    for (auto& comp : component_sets(g, x)) {
      std::vector<VertexId> ids;
      comp.for_each([&](int i) { ids.push_back(g.id(i)); });
      // A component is either a block of sibling leaves or has a unique
      // minimal element; the latter becomes the new root.
      std::optional<VertexId> root;
      for (VertexId v : ids) {
        bool minimal = true;
        for (VertexId u : ids)
          if (u != v && o.leq(u, v)) {
            minimal = false;
            break;
          }
        if (minimal && !o.is_maximal(v)) {
          if (!root || old_depth[v] < old_depth[*root]) root = v;
        }
      }
      if (!root) {
        for (VertexId v : ids) parent[v] = above;
        continue;
      }
      parent[*root] = above;
      VertexSet rest = comp;
      rest.reset(g.index_of(*root));
      place(rest, root);
    }
  };
  place(g.all(), std::nullopt);
  return TreeOrder(std::move(parent));
}

bool has_incomparable_components(const Graph& g, const TreeOrder& o) {
  auto check = [&](const VertexSet& keep) {
    auto comps = component_sets(g, keep);
    for (std::size_t a = 0; a < comps.size(); ++a)
      for (std::size_t b = a + 1; b < comps.size(); ++b) {
        bool bad = false;
        comps[a].for_each([&](int x) {
          comps[b].for_each([&](int y) {
            if (!bad && o.comparable(g.id(x), g.id(y))) bad = true;
          });
        });
        if (bad) return false;
      }
    return true;
  };
  if (!check(g.all())) return false;
  for (int i = 0; i < g.size(); ++i) {
    VertexSet keep = g.all();
    keep.reset(i);
    for (VertexId u : o.strict_predecessors(g.id(i))) keep.reset(g.index_of(u));
    if (!check(keep)) return false;
  }
  return true;
}

TreeOrder parse_tree_order(std::istream& in) {
  std::map<VertexId, std::optional<VertexId>> parent;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    auto fail = [&](const std::string& what) {
      throw InputError("order line " + std::to_string(lineno) + ": " + what);
    };
    if (!(ls >> b) || (ls >> extra)) fail("expected `v parent`");
    try {
      std::size_t pos = 0;
      VertexId v = std::stoi(a, &pos);
      if (pos != a.size()) fail("bad vertex `" + a + "`");
      std::optional<VertexId> p;
      if (b != "-") {
        p = std::stoi(b, &pos);
        if (pos != b.size()) fail("bad parent `" + b + "`");
      }
      if (!parent.emplace(v, p).second) fail("vertex listed twice");
    } catch (const std::logic_error&) {
      fail("expected integers");
    }
  }
  return TreeOrder(std::move(parent));
}

TreeOrder read_tree_order(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return parse_tree_order(in);
}

void write_tree_order(std::ostream& out, const TreeOrder& o) {
  for (auto& [v, p] : o.parents()) {
    out << v << " ";
    if (p)
      out << *p;
    else
      out << "-";
    out << "\n";
  }
}

}  // namespace elimdeg
