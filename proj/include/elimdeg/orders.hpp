#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elimdeg/graph.hpp"

namespace elimdeg {

// Forest-shaped order given by covering parents. Construction does not
// validate; check_tree_order does. u <= v iff u is an ancestor-or-self of v,
// and depth(v) counts strict predecessors (roots have depth 0).
class TreeOrder {
 public:
  TreeOrder() = default;
  explicit TreeOrder(std::map<VertexId, std::optional<VertexId>> parent);

  const std::map<VertexId, std::optional<VertexId>>& parents() const { return parent_; }
  std::vector<VertexId> vertices() const;
  bool contains(VertexId v) const { return parent_.count(v) > 0; }
  std::optional<VertexId> parent(VertexId v) const;

  // The following assume acyclicity (see check_tree_order).
  std::vector<VertexId> strict_predecessors(VertexId v) const;  // root first
  int depth(VertexId v) const;
  int depth() const;  // max over vertices, 0 when empty
  bool leq(VertexId u, VertexId v) const;
  bool comparable(VertexId u, VertexId v) const { return leq(u, v) || leq(v, u); }
  bool is_maximal(VertexId v) const;
  std::vector<VertexId> children(VertexId v) const;

  bool operator==(const TreeOrder&) const = default;

 private:
  std::map<VertexId, std::optional<VertexId>> parent_;
  std::map<VertexId, int> child_count_;
};

// True iff o is a forest over exactly V(g). Throws InputError when o's
// vertex set differs from V(g).
bool check_tree_order(const Graph& g, const TreeOrder& o);

// General form: `less` lists pairs (u, v) meaning u < v; the relation is
// closed reflexively and transitively. True iff the closure is a partial
// order on V(g) in which every principal down-set is a chain.
bool is_tree_order_relation(const Graph& g, const std::vector<Edge>& less);

struct EliminationOrderReport {
  bool valid = false;
  int depth = 0;
  std::vector<std::pair<VertexId, std::string>> violations;
  std::map<VertexId, std::vector<VertexId>> maximal_sets;  // S_v for maximal v
};

// Elimination order to degree d: for every v, S_v (incomparable neighbours)
// is empty, or v is maximal, |S_v| <= d and every u in S_v has the same
// strict predecessors as v. Throws InputError if o is not a tree order on g.
EliminationOrderReport check_elimination_to_degree(const Graph& g, const TreeOrder& o, int d);

// Rebuilds o top-down so that distinct components below any chain are
// incomparable. Depth of every vertex never increases. Throws InputError on
// an invalid input order.
TreeOrder canonicalize(const Graph& g, const TreeOrder& o, int d);

// True iff for every v, distinct components of g - V_{<=v}, and of g, are
// pairwise incomparable.
bool has_incomparable_components(const Graph& g, const TreeOrder& o);

// Text form: `v parent` per line, `-` for roots, `#` comments.
TreeOrder parse_tree_order(std::istream& in);
TreeOrder read_tree_order(const std::string& path);
void write_tree_order(std::ostream& out, const TreeOrder& o);

}  // namespace elimdeg
