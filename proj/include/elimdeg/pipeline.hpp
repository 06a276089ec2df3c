#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elimdeg/graph.hpp"
#include "elimdeg/grid_minor.hpp"
#include "elimdeg/oracle.hpp"
#include "elimdeg/orders.hpp"
#include "elimdeg/reductions.hpp"
#include "elimdeg/sequence.hpp"

namespace elimdeg {

struct TraceStep {
  std::string stage;
  std::string detail;
  std::vector<VertexId> vertices;
};

// Reject certificate: the offending component of G - R and its red
// neighbours, or a simple path of G through at least 2^k red vertices.
struct Certificate {
  RejectReason reason = RejectReason::RedNeighborBound;
  std::vector<VertexId> vertices;
  std::vector<VertexId> reds;
};

struct Decision {
  bool member = false;
  std::string stage;  // step that settled the answer
  std::vector<TraceStep> trace;
  std::vector<ReductionStep> reductions;  // replayable safe-cell deletions
  std::vector<VertexId> case1_component;  // set when Case 1 rejected
  std::optional<Certificate> certificate;
  std::optional<TreeOrder> witness;  // members up to witness_limit vertices
};

struct QuotientConfig {
  long long max_search_nodes = 2000000;
  long long max_states = 200000;  // alive-set candidates per component node
  OracleConfig detached{1 << 20, 4000000, true};
};

struct SolveOptions {
  OracleConfig residual{1 << 20, 4000000, true};
  QuotientConfig quotient;
  std::optional<MinorModel> model;  // for the small-degree reduction
  int witness_limit = 16;
};

// Route for max degree <= k+d: Case 1 count per component, then
// safe-cell deletions while the model provider (from options.model) has a
// model, then an exact decision of every residual component.
Decision solve_small_degree(const Graph& g, int k, int d, const SolveOptions& opt = {});

// Full decision. Graphs of max degree <= k+d go to solve_small_degree; for
// the others each component with red vertices runs the red-neighbour prune,
// contraction, the DFS depth prune and the quotient search.
Decision solve(const Graph& g, int k, int d, const SolveOptions& opt = {});

// Port blocks of one component node: each block lists port indices (1-based
// in the node's port order) reached by one piece of its alive part.
using PortBlocks = std::vector<std::vector<int>>;

// A class of the quotient graph during one round, on quotient node numbers.
struct QuotientClass {
  std::vector<int> reds;
  std::vector<int> nodes;
  bool operator==(const QuotientClass&) const = default;
};

// Connected classes of the alive quotient: alive reds joined by red-red
// edges and by each node's port blocks (a node without committed blocks
// joins all its alive ports). Nodes with no block on an alive port form
// singleton classes; the empty class closes the list. Classes are ordered by
// their smallest member.
std::vector<QuotientClass> next_components(const QuotientGraph& gq, const std::vector<char>& red_alive,
                                           const std::vector<std::optional<PortBlocks>>& node_blocks);

// What one component node did during the search's accepted run. Level t:
// P = port partition of its alive part after round t (untouched ports as
// singletons), L = ports whose reds shared a class during round t, D = ports
// whose red is gone after round t; moved[t-1] lists the classes (as port
// lists) in which it deleted a vertex.
struct NodeTranscript {
  KdSequence sequence;
  std::vector<PortBlocks> moved;
};

struct QuotientStats {
  long long search_nodes = 0;
  long long largest_state_set = 0;
  std::vector<NodeTranscript> transcripts;  // per component node, on success
};

// Round-by-round decision on the contracted graph of g: in each round every
// class deletes one vertex (a red, or a vertex of an attached component
// chosen by that component), every component
// commits to the port partition of its alive part, detached pieces must
// finish within the remaining rounds, and after at most k rounds no red may
// remain. Component sides track every alive set consistent with the
// commitments. Throws ResourceError past the guards.
bool decide_quotient(const Graph& g, const QuotientGraph& gq, int k, int d, const QuotientConfig& cfg = {},
                     QuotientStats* stats = nullptr);

}  // namespace elimdeg
