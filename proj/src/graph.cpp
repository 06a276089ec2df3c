#include "elimdeg/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "elimdeg/errors.hpp"
#include "elimdeg/union_find.hpp"

namespace elimdeg {

namespace {

std::vector<VertexId> iota_ids(int n) {
  if (n < 0) throw InputError("negative vertex count");
  std::vector<VertexId> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

}  // namespace

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(iota_ids(n), edges) {}

Graph::Graph(std::vector<VertexId> ids, const std::vector<Edge>& edges) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
    throw InputError("duplicate vertex id");
  const int n = size();
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    int a = index_of(u), b = index_of(v);
    if (a < 0 || b < 0)
      throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                       "} has an endpoint outside the vertex set");
    if (a == b) throw InputError("self-loop at vertex " + std::to_string(u));
    arcs.emplace_back(a, b);
    arcs.emplace_back(b, a);
  }
  std::sort(arcs.begin(), arcs.end());
  if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end()) {
    auto it = std::adjacent_find(arcs.begin(), arcs.end());
    throw InputError("parallel edge {" + std::to_string(ids_[it->first]) + "," +
                     std::to_string(ids_[it->second]) + "}");
  }
  offsets_.assign(n + 1, 0);
  for (auto& a : arcs) ++offsets_[a.first + 1];
  for (int i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  nbrs_.resize(arcs.size());
  for (std::size_t t = 0; t < arcs.size(); ++t) nbrs_[t] = arcs[t].second;
}

int Graph::index_of(VertexId v) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) return -1;
  return static_cast<int>(it - ids_.begin());
}

int Graph::max_degree() const {
  int best = 0;
  for (int i = 0; i < size(); ++i) best = std::max(best, degree(i));
  return best;
}

bool Graph::adjacent_local(int a, int b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool Graph::adjacent(VertexId u, VertexId v) const {
  int a = index_of(u), b = index_of(v);
  return a >= 0 && b >= 0 && adjacent_local(a, b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (int i = 0; i < size(); ++i)
    for (int j : neighbors(i))
      if (i < j) out.emplace_back(ids_[i], ids_[j]);
  return out;
}

Graph Graph::induced(const VertexSet& keep) const {
  Graph h;
  std::vector<int> remap(size(), -1);
  keep.for_each([&](int i) {
    remap[i] = static_cast<int>(h.ids_.size());
    h.ids_.push_back(ids_[i]);
  });
  h.offsets_.assign(h.ids_.size() + 1, 0);
  int idx = 0;
  keep.for_each([&](int i) {
    for (int j : neighbors(i))
      if (remap[j] >= 0) h.nbrs_.push_back(remap[j]);
    h.offsets_[++idx] = static_cast<int>(h.nbrs_.size());
  });
  return h;
}

std::vector<VertexSet> component_sets(const Graph& g, const VertexSet& within) {
  std::vector<VertexSet> out;
  VertexSet seen(g.size());
  std::vector<int> stack;
  within.for_each([&](int s) {
    if (seen.test(s)) return;
    VertexSet comp(g.size());
    seen.set(s);
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.set(v);
      for (int w : g.neighbors(v))
        if (within.test(w) && !seen.test(w)) {
          seen.set(w);
          stack.push_back(w);
        }
    }
    out.push_back(std::move(comp));
  });
  return out;
}

std::vector<std::vector<VertexId>> components(const Graph& g) {
  std::vector<std::vector<VertexId>> out;
  for (auto& c : component_sets(g, g.all())) {
    std::vector<VertexId> ids;
    c.for_each([&](int i) { ids.push_back(g.id(i)); });
    out.push_back(std::move(ids));
  }
  return out;
}

Graph delete_vertices(const Graph& g, const std::vector<VertexId>& s) {
  VertexSet keep = g.all();
  for (VertexId v : s) {
    int i = g.index_of(v);
    if (i < 0) throw InputError("cannot delete unknown vertex " + std::to_string(v));
    keep.reset(i);
  }
  return g.induced(keep);
}

int max_degree_within(const Graph& g, const VertexSet& within) {
  int best = 0;
  within.for_each([&](int v) {
    int deg = 0;
    for (int w : g.neighbors(v))
      if (within.test(w)) ++deg;
    best = std::max(best, deg);
  });
  return best;
}

std::vector<DegreeClass> classify(const Graph& g, int k, int d) {
  std::vector<DegreeClass> out(g.size());
  for (int i = 0; i < g.size(); ++i) {
    int deg = g.degree(i);
    out[i] = deg <= d ? DegreeClass::Blue : deg <= k + d ? DegreeClass::White : DegreeClass::Red;
  }
  return out;
}

const char* to_string(DegreeClass c) {
  switch (c) {
    case DegreeClass::Red: return "red";
    case DegreeClass::White: return "white";
    case DegreeClass::Blue: return "blue";
  }
  return "?";
}

int QuotientGraph::red_index(VertexId v) const {
  auto it = std::lower_bound(reds.begin(), reds.end(), v);
  if (it == reds.end() || *it != v) return -1;
  return static_cast<int>(it - reds.begin());
}

Graph QuotientGraph::as_graph() const {
  std::vector<Edge> edges;
  for (auto [u, v] : red_edges) edges.emplace_back(red_index(u), red_index(v));
  for (std::size_t c = 0; c < nodes.size(); ++c)
    for (VertexId r : nodes[c].ports) edges.emplace_back(num_reds() + static_cast<int>(c), red_index(r));
  return Graph(num_nodes(), edges);
}

QuotientGraph contract(const Graph& g, int k, int d) {
  QuotientGraph q;
  auto cls = classify(g, k, d);
  VertexSet rest(g.size());
  for (int i = 0; i < g.size(); ++i) {
    if (cls[i] == DegreeClass::Red)
      q.reds.push_back(g.id(i));
    else
      rest.set(i);
  }
  for (int i = 0; i < g.size(); ++i) {
    if (cls[i] != DegreeClass::Red) continue;
    for (int j : g.neighbors(i))
      if (i < j && cls[j] == DegreeClass::Red) q.red_edges.emplace_back(g.id(i), g.id(j));
  }
  for (auto& comp : component_sets(g, rest)) {
    ComponentNode node;
    comp.for_each([&](int v) {
      node.vertices.push_back(g.id(v));
      for (int w : g.neighbors(v))
        if (cls[w] == DegreeClass::Red) node.ports.push_back(g.id(w));
    });
    std::sort(node.ports.begin(), node.ports.end());
    node.ports.erase(std::unique(node.ports.begin(), node.ports.end()), node.ports.end());
    q.nodes.push_back(std::move(node));
  }
  return q;
}

Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  int declared = 0;
  int max_id = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto fail = [&](const std::string& what) {
      throw InputError("edge list line " + std::to_string(lineno) + ": " + what);
    };
    if (first == "n") {
      long long cnt;
      if (!(ls >> cnt) || cnt < 0 || cnt > 100000000) fail("bad vertex count");
      declared = std::max(declared, static_cast<int>(cnt));
    } else {
      long long u, v;
      std::istringstream fs(first);
      if (!(fs >> u) || !fs.eof() || !(ls >> v)) fail("expected `u v`");
      if (u < 0 || v < 0 || u > 100000000 || v > 100000000) fail("vertex id out of range");
      edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
      max_id = std::max<int>(max_id, static_cast<int>(std::max(u, v)));
    }
    std::string extra;
    if (ls >> extra) fail("trailing token `" + extra + "`");
  }
  return Graph(std::max(declared, max_id + 1), edges);
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  int n = g.empty() ? 0 : g.ids().back() + 1;
  out << "n " << n << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

}  // namespace elimdeg
