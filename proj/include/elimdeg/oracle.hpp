#pragma once

#include <optional>

#include "elimdeg/graph.hpp"
#include "elimdeg/orders.hpp"
#include "elimdeg/sequence.hpp"

namespace elimdeg {

struct OracleConfig {
  int max_vertices = 64;          // instance guard
  long long max_states = 4000000;  // memo entries before giving up
  bool memoize = true;
};

// ed_d(g): 0 when max degree <= d; for connected g, 1 + min over v of
// ed_d(g - v); otherwise the max over components. Evaluated as the smallest
// k for which the bounded form of the same recursion succeeds, memoised on
// vertex subsets. Throws ResourceError past the guards.
int elim_distance_exact(const Graph& g, int d, const OracleConfig& cfg = {});

bool member_exact(const Graph& g, int k, int d, const OracleConfig& cfg = {});

// Treedepth, counting deletions (edgeless graphs have treedepth 0).
int treedepth_exact(const Graph& g, const OracleConfig& cfg = {});

// A valid elimination order to degree d of depth <= k, or nullopt when none
// exists. Candidates are tried in ascending id; the first success is kept.
std::optional<TreeOrder> synthesize_order(const Graph& g, int k, int d, const OracleConfig& cfg = {});

// Whether h satisfies s: some elimination order to degree d of depth at most
// length(s) meets the refinement, monotonicity and isolation conditions, the
// same-predicate and cross-predicate separation conditions, and the
// internal-connectivity condition on every P_i. Searches all tree orders up
// to the component structure they induce. Throws InputError on a malformed
// sequence and ResourceError past the guards.
bool sequence_satisfies_exact(const Graph& h, const PortMap& ports, const KdSequence& s, int d,
                              const OracleConfig& cfg = {});

// Same search, returning a witnessing order.
std::optional<TreeOrder> sequence_witness(const Graph& h, const PortMap& ports, const KdSequence& s, int d,
                                          const OracleConfig& cfg = {});

}  // namespace elimdeg
