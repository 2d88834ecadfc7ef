#include <charconv>
#include <filesystem>
#include <locale>
#include <sstream>

#include "workbench/analysis/analysis.h"
#include "workbench/errors.h"
#include "workbench/image_io.h"

namespace wb::analysis {

std::string fixed6(double v) {
  char buf[64];
  if (v == 0) v = 0;  // no "-0.000000"
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  if (ec != std::errc()) return "nan";
  std::string s(buf, end);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string metrics_csv(const std::vector<Entry>& entries) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "image,channel,min,max,mean,std,snr\n";
  for (const auto& e : entries) {
    for (size_t c = 0; c < e.channels.size(); ++c) {
      const ChannelStats& s = e.stats[c];
      std::string snr = !s.snr_reported ? "" : s.snr ? fixed6(*s.snr) : "undefined";
      out << e.name << ',' << e.channels[c] << ',' << fixed6(s.min) << ',' << fixed6(s.max) << ','
          << fixed6(s.mean) << ',' << fixed6(s.std) << ',' << snr << '\n';
    }
  }
  return out.str();
}

std::string histogram_svg(const Entry& e) {
  constexpr double kW = 512, kH = 200, kPad = 10;
  uint64_t peak = 1;
  for (const auto& h : e.histograms)
    for (uint64_t c : h.counts) peak = std::max(peak, c);
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW + 2 * kPad << "\" height=\""
      << kH + 2 * kPad << "\">\n";
  out << "<title>" << e.name << "</title>\n";
  for (size_t c = 0; c < e.histograms.size(); ++c) {
    const Histogram& h = e.histograms[c];
    const std::string& ch = e.channels[c];
    const char* colour = ch == "R" ? "red" : ch == "G" ? "green" : ch == "B" ? "blue" : "black";
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
    const double n = static_cast<double>(h.counts.size());
    for (size_t i = 0; i < h.counts.size(); ++i) {
      double x = kPad + (n > 1 ? i / (n - 1) : 0.5) * kW;
      double y = kPad + kH - static_cast<double>(h.counts[i]) / static_cast<double>(peak) * kH;
      out << (i ? " " : "") << fixed6(x) << ',' << fixed6(y);
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void export_report(const std::vector<Entry>& entries, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
  const std::filesystem::path dir(out_dir);
  write_file((dir / "metrics.csv").string(), metrics_csv(entries));
  for (const auto& e : entries) write_file((dir / ("hist_" + e.name + ".svg")).string(), histogram_svg(e));
}

}  // namespace wb::analysis
