#pragma once

#include <optional>
#include <vector>

#include "elimdeg/grid_minor.hpp"
#include "elimdeg/oracle.hpp"
#include "elimdeg/sequence.hpp"

namespace elimdeg {

enum class CaseKind { TooManyHighDegree, SmallEnough, Case31, Case32, Case33 };
const char* to_string(CaseKind c);

struct CaseSplit {
  CaseKind kind = CaseKind::SmallEnough;
  int j1 = 0;  // Case32: two ports split in the last P
  int j2 = 0;
  std::vector<int> J;  // Case33: ports met in more than k^2 branch sets
};

// Which branch of the component reduction applies to pc under s.
// TooManyHighDegree: a component of pc.graph has more than (k+d)^(2(k+d))
// vertices of degree >= d+1 (only checked when the maximum degree is at most
// k+d, and never reported when k+d <= 1). Without a model,
// or when the model is too small for the chosen semi-safe window, the
// result is SmallEnough. Otherwise: Case31 when every port lies in at most
// k^2 branch sets; Case32 when two such frequent ports are split in the last
// P (needs length >= 1); Case33 with J the frequent ports.
CaseSplit case_split(const PortedComponent& pc, const MinorModel* mm, const KdSequence& s, int k, int d);

struct SatisfactionResult {
  bool satisfies = false;
  CaseKind decided_by = CaseKind::SmallEnough;  // SmallEnough means the exact search
  std::vector<VertexId> deleted;                // semi-safe deletions, in order
};

// Whether pc satisfies s as an elimination pattern to degree d with at most
// k rounds. With a model, Case-1 and Case-3.2 answer false directly and
// Case-3.1/3.3 semi-safe vertices are deleted one at a time before the
// exact search runs on the residual. Throws InputError on a malformed
// sequence or invalid model and ResourceError past the oracle guards.
SatisfactionResult satisfies_traced(const PortedComponent& pc, const KdSequence& s, int k, int d,
                                    const std::optional<MinorModel>& model = std::nullopt,
                                    const OracleConfig& cfg = {});

bool satisfies(const PortedComponent& pc, const KdSequence& s, int k, int d,
               const std::optional<MinorModel>& model = std::nullopt, const OracleConfig& cfg = {});

}  // namespace elimdeg
