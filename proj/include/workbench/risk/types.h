#pragma once

#include <string>

namespace wb::risk {

enum class Layer { Physical, Sensor, DataPreparation, Application };
enum class ImpactLevel { Negligible = 1, Moderate = 2, Major = 3, Severe = 4 };
enum class Accuracy { Targeted, Untargeted };
enum class Knowledge { BlackBox, GrayBox, WhiteBox };
enum class Equipment { Standard, Specialized, Bespoke, MultipleBespoke };
enum class WindowOfOpportunity { Under100m, Under10m, Under1m, UnderHalfMeter, Under0p1m, Remote };
enum class Expertise { Layman, Proficient, Expert, MultipleExperts };
enum class Feasibility { VeryLow = 1, Low = 2, Medium = 3, High = 4 };

struct AttackRecord {
  std::string id;
  Layer layer = Layer::Physical;
  std::string entry_point;
  int attack_class = 1;
  ImpactLevel impact_safety = ImpactLevel::Negligible;
  ImpactLevel impact_operational = ImpactLevel::Negligible;
  Accuracy accuracy = Accuracy::Targeted;
  ImpactLevel impact_overall = ImpactLevel::Negligible;
  Knowledge knowledge = Knowledge::BlackBox;
  Equipment equipment = Equipment::Standard;
  WindowOfOpportunity window_of_opportunity = WindowOfOpportunity::Under100m;
  Expertise expertise = Expertise::Layman;
  Feasibility expected_feasibility = Feasibility::High;
  int expected_risk = 1;
};

const char* to_string(Layer v);
const char* to_string(ImpactLevel v);
const char* to_string(Accuracy v);
const char* to_string(Knowledge v);
const char* to_string(Equipment v);
const char* to_string(WindowOfOpportunity v);
const char* to_string(Expertise v);
const char* to_string(Feasibility v);

// Token parsers. Throw ParseError naming `field` and the offending token.
Layer parse_layer(const std::string& s, const std::string& field = "layer");
ImpactLevel parse_impact(const std::string& s, const std::string& field = "impact");
Accuracy parse_accuracy(const std::string& s, const std::string& field = "accuracy");
Knowledge parse_knowledge(const std::string& s, const std::string& field = "knowledge");
Equipment parse_equipment(const std::string& s, const std::string& field = "equipment");
WindowOfOpportunity parse_window(const std::string& s,
                                 const std::string& field = "window_of_opportunity");
Expertise parse_expertise(const std::string& s, const std::string& field = "expertise");
Feasibility parse_feasibility(const std::string& s, const std::string& field = "feasibility");

}  // namespace wb::risk
