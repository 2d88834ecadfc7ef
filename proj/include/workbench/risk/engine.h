#pragma once

#include <array>
#include <functional>
#include <optional>

#include "workbench/risk/types.h"

namespace wb::risk {

int param_value(Knowledge k);
int param_value(Equipment e);
int param_value(WindowOfOpportunity w);
int param_value(Expertise x);

int feasibility_sum(Knowledge k, Equipment e, WindowOfOpportunity w, Expertise x);
// 0-13 High, 14-19 Medium, 20-24 Low, 25-38 VeryLow. Other sums throw DomainError.
Feasibility feasibility_from_sum(int sum);
// max(round(I * F / 16 * 5), 1) with halves rounded away from zero.
int risk_value(ImpactLevel impact, Feasibility feasibility);

// matrix[impact - 1][feasibility - 1]
using RiskMatrix = std::array<std::array<int, 4>, 4>;
RiskMatrix risk_matrix();

// Optional second opinion on overall impact; a disagreement is only flagged.
using ImpactHeuristic = std::function<ImpactLevel(const AttackRecord&)>;
// Worst of safety and operational, bumped one level for targeted attacks.
ImpactLevel worst_case_targeted_heuristic(const AttackRecord& r);

struct EvaluatedRecord {
  AttackRecord record;
  int feasibility_sum = 0;
  Feasibility feasibility = Feasibility::High;
  int risk = 1;
  bool matches = false;
  std::optional<ImpactLevel> heuristic_impact;  // set only when it disagrees
};

EvaluatedRecord evaluate(const AttackRecord& r, const ImpactHeuristic& heuristic = nullptr);

}  // namespace wb::risk
