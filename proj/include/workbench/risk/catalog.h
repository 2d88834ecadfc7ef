#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "workbench/risk/engine.h"

namespace wb::risk {

struct Catalog {
  std::vector<AttackRecord> records;
  std::vector<std::string> warnings;
};

// Accepts a JSON array of records. Errors are ParseErrors located as
// "record <i>.<field>". A numeric window_of_opportunity (metres) is bucketed.
Catalog parse_catalog(const nlohmann::json& doc);
Catalog load_catalog(const std::string& path);

// Tightest bucket whose bound exceeds the distance. Sets `warning` when the
// distance had to be snapped (>= 100 m).
WindowOfOpportunity bucket_distance(double metres, std::string* warning = nullptr);

nlohmann::json to_json(const AttackRecord& r);
nlohmann::json to_json(const EvaluatedRecord& e);

enum class ReportFormat { Csv, Markdown };
ReportFormat parse_report_format(const std::string& s);
// One row per record in input order, then a "<matched>/<total> match" footer.
std::string render_report(const std::vector<EvaluatedRecord>& rows, ReportFormat fmt);

}  // namespace wb::risk
