#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elimdeg/vertex_set.hpp"

namespace elimdeg {

using VertexId = int;
using Edge = std::pair<VertexId, VertexId>;

// Immutable simple undirected graph. Vertices carry stable ids that survive
// deletion; internally they are addressed by dense local indices in
// ascending id order. Adjacency is stored in CSR form.
class Graph {
 public:
  Graph() = default;
  // Vertices 0..n-1.
  Graph(int n, const std::vector<Edge>& edges);
  // Arbitrary distinct ids; every edge endpoint must be one of them.
  Graph(std::vector<VertexId> ids, const std::vector<Edge>& edges);

  int size() const { return static_cast<int>(ids_.size()); }
  int num_edges() const { return static_cast<int>(nbrs_.size() / 2); }
  bool empty() const { return ids_.empty(); }

  VertexId id(int i) const { return ids_[i]; }
  const std::vector<VertexId>& ids() const { return ids_; }
  int index_of(VertexId v) const;  // -1 when absent
  bool contains(VertexId v) const { return index_of(v) >= 0; }

  std::span<const int> neighbors(int i) const {
    return {nbrs_.data() + offsets_[i], nbrs_.data() + offsets_[i + 1]};
  }
  int degree(int i) const { return offsets_[i + 1] - offsets_[i]; }
  int max_degree() const;
  bool adjacent_local(int a, int b) const;
  bool adjacent(VertexId u, VertexId v) const;

  // Edges as id pairs with u < v, sorted.
  std::vector<Edge> edges() const;

  // Subgraph induced by the local indices in keep.
  Graph induced(const VertexSet& keep) const;
  VertexSet all() const { return VertexSet::full(size()); }

 private:
  std::vector<VertexId> ids_;
  std::vector<int> offsets_{0};
  std::vector<int> nbrs_;
};

// Connected components as sorted id lists, ordered by smallest id.
std::vector<std::vector<VertexId>> components(const Graph& g);

// Components of g[within] as local index sets, ordered by smallest index.
std::vector<VertexSet> component_sets(const Graph& g, const VertexSet& within);

// g - s. Throws InputError on an id not in g.
Graph delete_vertices(const Graph& g, const std::vector<VertexId>& s);

// Maximum degree of g[within], in local indices.
int max_degree_within(const Graph& g, const VertexSet& within);

enum class DegreeClass { Red, White, Blue };

// Per local index: Blue deg <= d, White d < deg <= k+d, Red deg > k+d.
std::vector<DegreeClass> classify(const Graph& g, int k, int d);
const char* to_string(DegreeClass c);

struct ComponentNode {
  std::vector<VertexId> vertices;  // ascending
  std::vector<VertexId> ports;     // red neighbours, ascending
};

// G': the red vertices plus one node per component of G - R. Quotient node
// numbering puts reds first (ascending id), then component nodes in order of
// their smallest vertex.
struct QuotientGraph {
  std::vector<VertexId> reds;
  std::vector<ComponentNode> nodes;
  std::vector<Edge> red_edges;  // between reds, ids, u < v

  int num_reds() const { return static_cast<int>(reds.size()); }
  int num_nodes() const { return num_reds() + static_cast<int>(nodes.size()); }
  bool is_red(int q) const { return q < num_reds(); }
  int red_index(VertexId v) const;  // -1 when v is not red

  // Plain graph on quotient node numbers 0..num_nodes()-1.
  Graph as_graph() const;
};

QuotientGraph contract(const Graph& g, int k, int d);

// Edge-list text: `u v` per line, `#` comments, blank lines skipped, optional
// `n <count>` header. Vertex set is 0..N-1 with N = max(count, max id + 1).
Graph parse_edge_list(std::istream& in);
Graph read_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace elimdeg
