#include "elimdeg/satisfaction.hpp"

#include <set>

#include "elimdeg/errors.hpp"

namespace elimdeg {

const char* to_string(CaseKind c) {
  switch (c) {
    case CaseKind::TooManyHighDegree: return "too-many-high-degree";
    case CaseKind::SmallEnough: return "small-enough";
    case CaseKind::Case31: return "case-3.1";
    case CaseKind::Case32: return "case-3.2";
    case CaseKind::Case33: return "case-3.3";
  }
  return "?";
}

CaseSplit case_split(const PortedComponent& pc, const MinorModel* mm, const KdSequence& s, int k, int d) {
  CaseSplit out;
  // The count bound only holds for graphs of maximum degree <= k+d.
  if (pc.graph.max_degree() <= k + d && !case1_component(pc.graph, k, d).empty()) {
    out.kind = CaseKind::TooManyHighDegree;
    return out;
  }
  if (!mm || mm->m < min_side(SafetyParams{k, d, SafetyMode::SemiSafeCase31, {}, {}})) return out;

  std::map<int, std::set<Cell>> cells_of_port;
  for (auto& [v, js] : pc.ports) {
    auto it = mm->cell.find(v);
    if (it == mm->cell.end()) continue;
    for (int j : js) cells_of_port[j].insert(it->second);
  }
  std::vector<int> frequent;
  for (auto& [j, cells] : cells_of_port)
    if (static_cast<long long>(cells.size()) > static_cast<long long>(k) * k) frequent.push_back(j);

  if (frequent.empty()) {
    out.kind = CaseKind::Case31;
    return out;
  }
  if (s.length() >= 1) {
    const Partition& last = s.level(s.length()).P;
    for (std::size_t a = 0; a < frequent.size(); ++a)
      for (std::size_t b = a + 1; b < frequent.size(); ++b)
        if (!last.grouped(frequent[a], frequent[b])) {
          out.kind = CaseKind::Case32;
          out.j1 = frequent[a];
          out.j2 = frequent[b];
          return out;
        }
  }
  if (mm->m < min_side(SafetyParams{k, d, SafetyMode::SemiSafeCase33, {}, {}})) return out;
  out.kind = CaseKind::Case33;
  out.J = frequent;
  return out;
}

SatisfactionResult satisfies_traced(const PortedComponent& pc, const KdSequence& s, int k, int d,
                                    const std::optional<MinorModel>& model, const OracleConfig& cfg) {
  auto rep = validate_sequence(s, k);
  if (!rep.valid) throw InputError("malformed sequence: " + rep.violations.front());
  SatisfactionResult res;
  PortedComponent cur = pc;
  if (model) {
    auto mrep = validate_model(cur.graph, *model);
    if (!mrep.valid) throw InputError("invalid model: " + mrep.violations.front());
    ShrinkingModelProvider provider(*model);
    while (true) {
      auto pm = provider(cur.graph);
      if (!pm) break;
      auto split = case_split(cur, &pm->model, s, k, d);
      if (split.kind == CaseKind::TooManyHighDegree || split.kind == CaseKind::Case32) {
        res.decided_by = split.kind;
        return res;
      }
      if (split.kind == CaseKind::SmallEnough) break;
      SafetyParams sp{k, d,
                      split.kind == CaseKind::Case31 ? SafetyMode::SemiSafeCase31 : SafetyMode::SemiSafeCase33,
                      cur.ports, split.J};
      auto cell = find_safe_branch_set(cur.graph, pm->model, sp);
      if (!cell) break;
      VertexId a = -1;
      for (auto& [v, c] : pm->model.cell)
        if (c == *cell) {
          a = v;
          break;
        }
      res.decided_by = split.kind;
      res.deleted.push_back(a);
      cur.graph = delete_vertices(cur.graph, {a});
      cur.ports.erase(a);
    }
  } else if (case_split(cur, nullptr, s, k, d).kind == CaseKind::TooManyHighDegree) {
    res.decided_by = CaseKind::TooManyHighDegree;
    return res;
  }
  res.satisfies = sequence_satisfies_exact(cur.graph, cur.ports, s, d, cfg);
  if (res.deleted.empty()) res.decided_by = CaseKind::SmallEnough;
  return res;
}

bool satisfies(const PortedComponent& pc, const KdSequence& s, int k, int d, const std::optional<MinorModel>& model,
               const OracleConfig& cfg) {
  return satisfies_traced(pc, s, k, d, model, cfg).satisfies;
}

}  // namespace elimdeg
