#include "workbench/risk/catalog.h"

#include "workbench/errors.h"
#include "workbench/image_io.h"

namespace wb::risk {

using nlohmann::json;

WindowOfOpportunity bucket_distance(double metres, std::string* warning) {
  if (!(metres >= 0)) throw DomainError("distance " + std::to_string(metres) + " m is not >= 0");
  if (metres < 0.1) return WindowOfOpportunity::Under0p1m;
  if (metres < 0.5) return WindowOfOpportunity::UnderHalfMeter;
  if (metres < 1) return WindowOfOpportunity::Under1m;
  if (metres < 10) return WindowOfOpportunity::Under10m;
  if (metres >= 100 && warning)
    *warning = "distance " + std::to_string(metres) + " m snapped to Under100m";
  return WindowOfOpportunity::Under100m;
}

namespace {

std::string str_field(const json& rec, const std::string& where, const char* name) {
  if (!rec.contains(name)) throw ParseError(where + "." + name, "missing field");
  const json& v = rec.at(name);
  if (!v.is_string()) throw ParseError(where + "." + name, "expected a string");
  return v.get<std::string>();
}

int int_field(const json& rec, const std::string& where, const char* name, int lo, int hi) {
  if (!rec.contains(name)) throw ParseError(where + "." + name, "missing field");
  const json& v = rec.at(name);
  if (!v.is_number_integer()) throw ParseError(where + "." + name, "expected an integer");
  int i = v.get<int>();
  if (i < lo || i > hi)
    throw ParseError(where + "." + name, std::to_string(i) + " not in [" + std::to_string(lo) +
                                              "," + std::to_string(hi) + "]");
  return i;
}

AttackRecord parse_record(const json& rec, const std::string& where,
                          std::vector<std::string>& warnings) {
  if (!rec.is_object()) throw ParseError(where, "expected an object");
  auto f = [&](const char* n) { return where + "." + n; };
  AttackRecord r;
  r.id = str_field(rec, where, "id");
  r.layer = parse_layer(str_field(rec, where, "layer"), f("layer"));
  r.entry_point = str_field(rec, where, "entry_point");
  r.attack_class = int_field(rec, where, "attack_class", 1, 8);
  r.impact_safety = parse_impact(str_field(rec, where, "impact_safety"), f("impact_safety"));
  r.impact_operational =
      parse_impact(str_field(rec, where, "impact_operational"), f("impact_operational"));
  r.accuracy = parse_accuracy(str_field(rec, where, "accuracy"), f("accuracy"));
  r.impact_overall = parse_impact(str_field(rec, where, "impact_overall"), f("impact_overall"));
  r.knowledge = parse_knowledge(str_field(rec, where, "knowledge"), f("knowledge"));
  r.equipment = parse_equipment(str_field(rec, where, "equipment"), f("equipment"));
  if (rec.contains("window_of_opportunity") && rec["window_of_opportunity"].is_number()) {
    std::string warn;
    try {
      r.window_of_opportunity = bucket_distance(rec["window_of_opportunity"].get<double>(), &warn);
    } catch (const DomainError& e) {
      throw ParseError(f("window_of_opportunity"), e.what());
    }
    if (!warn.empty()) warnings.push_back(f("window_of_opportunity") + ": " + warn);
  } else {
    r.window_of_opportunity =
        parse_window(str_field(rec, where, "window_of_opportunity"), f("window_of_opportunity"));
  }
  r.expertise = parse_expertise(str_field(rec, where, "expertise"), f("expertise"));
  r.expected_feasibility =
      parse_feasibility(str_field(rec, where, "expected_feasibility"), f("expected_feasibility"));
  r.expected_risk = int_field(rec, where, "expected_risk", 1, 5);
  return r;
}

}  // namespace

Catalog parse_catalog(const json& doc) {
  if (!doc.is_array()) throw ParseError("catalog", "expected a JSON array of records");
  Catalog c;
  for (size_t i = 0; i < doc.size(); ++i)
    c.records.push_back(parse_record(doc[i], "record " + std::to_string(i), c.warnings));
  return c;
}

Catalog load_catalog(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path, e.what());
  }
  return parse_catalog(doc);
}

json to_json(const AttackRecord& r) {
  return {{"id", r.id},
          {"layer", to_string(r.layer)},
          {"entry_point", r.entry_point},
          {"attack_class", r.attack_class},
          {"impact_safety", to_string(r.impact_safety)},
          {"impact_operational", to_string(r.impact_operational)},
          {"accuracy", to_string(r.accuracy)},
          {"impact_overall", to_string(r.impact_overall)},
          {"knowledge", to_string(r.knowledge)},
          {"equipment", to_string(r.equipment)},
          {"window_of_opportunity", to_string(r.window_of_opportunity)},
          {"expertise", to_string(r.expertise)},
          {"expected_feasibility", to_string(r.expected_feasibility)},
          {"expected_risk", r.expected_risk}};
}

json to_json(const EvaluatedRecord& e) {
  json j = to_json(e.record);
  j["feasibility_sum"] = e.feasibility_sum;
  j["feasibility"] = to_string(e.feasibility);
  j["risk"] = e.risk;
  j["matches"] = e.matches;
  if (e.heuristic_impact) j["heuristic_impact"] = to_string(*e.heuristic_impact);
  return j;
}

}  // namespace wb::risk
