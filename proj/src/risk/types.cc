#include "workbench/risk/types.h"

#include <array>
#include <utility>

#include "workbench/errors.h"

namespace wb::risk {

namespace {

template <typename E, size_t N>
using Tokens = std::array<std::pair<E, const char*>, N>;

constexpr Tokens<Layer, 4> kLayer{{{Layer::Physical, "Physical"},
                                   {Layer::Sensor, "Sensor"},
                                   {Layer::DataPreparation, "DataPreparation"},
                                   {Layer::Application, "Application"}}};
constexpr Tokens<ImpactLevel, 4> kImpact{{{ImpactLevel::Negligible, "Negligible"},
                                          {ImpactLevel::Moderate, "Moderate"},
                                          {ImpactLevel::Major, "Major"},
                                          {ImpactLevel::Severe, "Severe"}}};
constexpr Tokens<Accuracy, 2> kAccuracy{
    {{Accuracy::Targeted, "Targeted"}, {Accuracy::Untargeted, "Untargeted"}}};
constexpr Tokens<Knowledge, 3> kKnowledge{{{Knowledge::BlackBox, "BlackBox"},
                                           {Knowledge::GrayBox, "GrayBox"},
                                           {Knowledge::WhiteBox, "WhiteBox"}}};
constexpr Tokens<Equipment, 4> kEquipment{{{Equipment::Standard, "Standard"},
                                           {Equipment::Specialized, "Specialized"},
                                           {Equipment::Bespoke, "Bespoke"},
                                           {Equipment::MultipleBespoke, "MultipleBespoke"}}};
constexpr Tokens<WindowOfOpportunity, 6> kWindow{
    {{WindowOfOpportunity::Under100m, "Under100m"},
     {WindowOfOpportunity::Under10m, "Under10m"},
     {WindowOfOpportunity::Under1m, "Under1m"},
     {WindowOfOpportunity::UnderHalfMeter, "UnderHalfMeter"},
     {WindowOfOpportunity::Under0p1m, "Under0p1m"},
     {WindowOfOpportunity::Remote, "Remote"}}};
constexpr Tokens<Expertise, 4> kExpertise{{{Expertise::Layman, "Layman"},
                                           {Expertise::Proficient, "Proficient"},
                                           {Expertise::Expert, "Expert"},
                                           {Expertise::MultipleExperts, "MultipleExperts"}}};
constexpr Tokens<Feasibility, 4> kFeasibility{{{Feasibility::VeryLow, "VeryLow"},
                                               {Feasibility::Low, "Low"},
                                               {Feasibility::Medium, "Medium"},
                                               {Feasibility::High, "High"}}};

template <typename E, size_t N>
const char* name_of(const Tokens<E, N>& t, E v) {
  for (const auto& [e, s] : t)
    if (e == v) return s;
  return "?";
}

template <typename E, size_t N>
E parse(const Tokens<E, N>& t, const std::string& s, const std::string& field) {
  for (const auto& [e, name] : t)
    if (s == name) return e;
  throw ParseError(field, "unknown token '" + s + "'");
}

}  // namespace

const char* to_string(Layer v) { return name_of(kLayer, v); }
const char* to_string(ImpactLevel v) { return name_of(kImpact, v); }
const char* to_string(Accuracy v) { return name_of(kAccuracy, v); }
const char* to_string(Knowledge v) { return name_of(kKnowledge, v); }
const char* to_string(Equipment v) { return name_of(kEquipment, v); }
const char* to_string(WindowOfOpportunity v) { return name_of(kWindow, v); }
const char* to_string(Expertise v) { return name_of(kExpertise, v); }
const char* to_string(Feasibility v) { return name_of(kFeasibility, v); }

Layer parse_layer(const std::string& s, const std::string& f) { return parse(kLayer, s, f); }
ImpactLevel parse_impact(const std::string& s, const std::string& f) { return parse(kImpact, s, f); }
Accuracy parse_accuracy(const std::string& s, const std::string& f) {
  return parse(kAccuracy, s, f);
}
Knowledge parse_knowledge(const std::string& s, const std::string& f) {
  return parse(kKnowledge, s, f);
}
Equipment parse_equipment(const std::string& s, const std::string& f) {
  return parse(kEquipment, s, f);
}
WindowOfOpportunity parse_window(const std::string& s, const std::string& f) {
  return parse(kWindow, s, f);
}
Expertise parse_expertise(const std::string& s, const std::string& f) {
  return parse(kExpertise, s, f);
}
Feasibility parse_feasibility(const std::string& s, const std::string& f) {
  return parse(kFeasibility, s, f);
}

}  // namespace wb::risk
