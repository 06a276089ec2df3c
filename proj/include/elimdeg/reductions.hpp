#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elimdeg/graph.hpp"
#include "elimdeg/orders.hpp"

namespace elimdeg {

enum class RejectReason { RedNeighborBound, RedPathBound };
const char* to_string(RejectReason r);

struct PruneOutcome {
  bool reject = false;
  RejectReason reason = RejectReason::RedNeighborBound;
  // RedNeighborBound: the offending component of G - R (ids) and its red
  // neighbours. RedPathBound: quotient node numbers along a DFS tree path.
  std::vector<VertexId> witness;
  std::vector<VertexId> reds;
  // Continue artifact of the DFS step, on quotient node numbers.
  std::optional<TreeOrder> order;
};

// (k+d)^k, saturated at a large value.
long long red_neighbor_bound(int k, int d);
// 2^(k+1) - 1.
long long quotient_depth_bound(int k);

// Rejects when some component of G - R has more than (k+d)^k red neighbours.
PruneOutcome reject_by_red_neighbors(const Graph& g, int k, int d);

// DFS of G' from the lowest node of each component, children in ascending
// order. Continue carries the DFS tree as a tree order (depth <= 2^(k+1)-1);
// Reject carries the root-to-node path that exceeds that depth.
PruneOutcome quotient_dfs_order(const QuotientGraph& gq, int k);

// Turns a quotient path into a simple path of g: each component node is
// replaced by a shortest path inside its component joining the neighbouring
// reds.
std::vector<VertexId> expand_quotient_path(const Graph& g, const QuotientGraph& gq, const std::vector<int>& path);

// Independent certificate checks, linear in the certificate and g.
// A non-red connected vertex set with no further non-red neighbours and more
// than (k+d)^k distinct red neighbours.
bool validate_red_neighbor_certificate(const Graph& g, int k, int d, const std::vector<VertexId>& component);
// A simple path of g containing at least 2^k red vertices.
bool validate_red_path_certificate(const Graph& g, int k, int d, const std::vector<VertexId>& path);

}  // namespace elimdeg
