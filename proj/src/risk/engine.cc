#include "workbench/risk/engine.h"

#include <cmath>
#include <string>

#include "workbench/errors.h"

namespace wb::risk {

int param_value(Knowledge k) {
  switch (k) {
    case Knowledge::BlackBox: return 0;
    case Knowledge::GrayBox: return 5;
    case Knowledge::WhiteBox: return 11;
  }
  return 0;
}

int param_value(Equipment e) {
  switch (e) {
    case Equipment::Standard: return 0;
    case Equipment::Specialized: return 4;
    case Equipment::Bespoke: return 7;
    case Equipment::MultipleBespoke: return 9;
  }
  return 0;
}

int param_value(WindowOfOpportunity w) {
  switch (w) {
    case WindowOfOpportunity::Under100m: return 0;
    case WindowOfOpportunity::Under10m: return 1;
    case WindowOfOpportunity::Under1m: return 4;
    case WindowOfOpportunity::UnderHalfMeter: return 4;
    case WindowOfOpportunity::Under0p1m: return 10;
    case WindowOfOpportunity::Remote: return 10;
  }
  return 0;
}

int param_value(Expertise x) {
  switch (x) {
    case Expertise::Layman: return 0;
    case Expertise::Proficient: return 3;
    case Expertise::Expert: return 6;
    case Expertise::MultipleExperts: return 8;
  }
  return 0;
}

int feasibility_sum(Knowledge k, Equipment e, WindowOfOpportunity w, Expertise x) {
  return param_value(k) + param_value(e) + param_value(w) + param_value(x);
}

Feasibility feasibility_from_sum(int sum) {
  if (sum < 0 || sum > 38)
    throw DomainError("feasibility sum " + std::to_string(sum) + " outside [0,38]");
  if (sum <= 13) return Feasibility::High;
  if (sum <= 19) return Feasibility::Medium;
  if (sum <= 24) return Feasibility::Low;
  return Feasibility::VeryLow;
}

int risk_value(ImpactLevel impact, Feasibility feasibility) {
  const double raw = static_cast<int>(impact) * static_cast<int>(feasibility) / 16.0 * 5.0;
  return std::max(static_cast<int>(std::round(raw)), 1);
}

RiskMatrix risk_matrix() {
  RiskMatrix m{};
  for (int i = 1; i <= 4; ++i)
    for (int f = 1; f <= 4; ++f)
      m[i - 1][f - 1] = risk_value(static_cast<ImpactLevel>(i), static_cast<Feasibility>(f));
  return m;
}

ImpactLevel worst_case_targeted_heuristic(const AttackRecord& r) {
  int v = std::max(static_cast<int>(r.impact_safety), static_cast<int>(r.impact_operational));
  if (r.accuracy == Accuracy::Targeted) v = std::min(v + 1, 4);
  return static_cast<ImpactLevel>(v);
}

EvaluatedRecord evaluate(const AttackRecord& r, const ImpactHeuristic& heuristic) {
  EvaluatedRecord e;
  e.record = r;
  e.feasibility_sum = feasibility_sum(r.knowledge, r.equipment, r.window_of_opportunity, r.expertise);
  e.feasibility = feasibility_from_sum(e.feasibility_sum);
  e.risk = risk_value(r.impact_overall, e.feasibility);
  e.matches = e.feasibility == r.expected_feasibility && e.risk == r.expected_risk;
  if (heuristic) {
    ImpactLevel h = heuristic(r);
    if (h != r.impact_overall) e.heuristic_impact = h;
  }
  return e;
}

}  // namespace wb::risk
