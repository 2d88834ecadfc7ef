#include <locale>
#include <sstream>

#include "workbench/errors.h"
#include "workbench/risk/catalog.h"

namespace wb::risk {

ReportFormat parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "markdown" || s == "md") return ReportFormat::Markdown;
  throw ParseError("format", "unknown report format '" + s + "'");
}

std::string render_report(const std::vector<EvaluatedRecord>& rows, ReportFormat fmt) {
  static const char* kCols[] = {"id",       "layer",     "class",       "impact",
                                "sum",      "feasibility", "expected_feasibility",
                                "risk",     "expected_risk", "match"};
  std::ostringstream out;
  out.imbue(std::locale::classic());
  const bool md = fmt == ReportFormat::Markdown;
  const char* sep = md ? " | " : ",";
  auto line = [&](const std::vector<std::string>& cells) {
    if (md) out << "| ";
    for (size_t i = 0; i < cells.size(); ++i) out << (i ? sep : "") << cells[i];
    out << (md ? " |\n" : "\n");
  };
  line({std::begin(kCols), std::end(kCols)});
  if (md) line(std::vector<std::string>(std::size(kCols), "---"));
  size_t matched = 0;
  for (const auto& e : rows) {
    matched += e.matches;
    line({e.record.id, to_string(e.record.layer), std::to_string(e.record.attack_class),
          to_string(e.record.impact_overall), std::to_string(e.feasibility_sum),
          to_string(e.feasibility), to_string(e.record.expected_feasibility),
          std::to_string(e.risk), std::to_string(e.record.expected_risk),
          e.matches ? "yes" : "no"});
  }
  if (md) out << "\n";
  out << matched << "/" << rows.size() << " match\n";
  return out.str();
}

}  // namespace wb::risk
