// Acceptance run: one PASS/FAIL line per headline criterion, nonzero exit if
// any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "properties.h"
#include "support.h"
#include "workbench/analysis/analysis.h"
#include "workbench/attack/scaling.h"
#include "workbench/image_io.h"
#include "workbench/risk/catalog.h"
#include "workbench/risk/engine.h"
#include "workbench/sim/resize.h"

namespace fs = std::filesystem;
using namespace wb;
namespace sc = wb::sim::scenes;

namespace {

int g_failed = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  g_failed += !ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

void threat_catalog() {
  auto t0 = std::chrono::steady_clock::now();
  risk::Catalog cat = risk::load_catalog(std::string(WB_SOURCE_DIR) + "/catalog/threats.json");
  size_t match = 0;
  for (const auto& r : cat.records) {
    auto e = risk::evaluate(r);
    match += e.feasibility == r.expected_feasibility && e.risk == r.expected_risk;
  }
  double dt = seconds_since(t0);
  report("threat-catalog", !cat.records.empty() && match == cat.records.size() && dt < 1.0,
         std::to_string(match) + "/" + std::to_string(cat.records.size()) + " rows match, " + fmt(dt) + " s");
}

void risk_matrix() {
  // rows Negligible..Severe, columns VeryLow..High
  const int published[4][4] = {{1, 1, 1, 1}, {1, 1, 2, 3}, {1, 2, 3, 4}, {1, 3, 4, 5}};
  auto m = risk::risk_matrix();
  int same = 0;
  for (int i = 0; i < 4; ++i)
    for (int f = 0; f < 4; ++f) same += m[i][f] == published[i][f];
  bool rounding_cells = m[1][3] == 3 && m[3][1] == 3;
  report("risk-matrix", same == 16 && rounding_cells,
         std::to_string(same) + "/16 cells, Moderate x High = " + std::to_string(m[1][3]) +
             ", Severe x Low = " + std::to_string(m[3][1]));
}

void feasibility_boundaries() {
  using risk::Feasibility;
  const std::pair<int, Feasibility> cases[] = {{13, Feasibility::High}, {14, Feasibility::Medium},
                                               {19, Feasibility::Medium}, {20, Feasibility::Low},
                                               {24, Feasibility::Low},   {25, Feasibility::VeryLow}};
  std::string detail;
  bool ok = true;
  for (auto [sum, want] : cases) {
    Feasibility got = risk::feasibility_from_sum(sum);
    ok &= got == want;
    detail += std::to_string(sum) + "->" + risk::to_string(got) + " ";
  }
  detail.pop_back();
  report("feasibility-boundaries", ok, detail);
}

void blinding_use_case() {
  auto t0 = std::chrono::steady_clock::now();
  auto uc = wbtest::use_case();
  double dt = seconds_since(t0);
  bool pattern = uc.clean.sign_found && !uc.blinded.sign_found && uc.blinded_hdr.sign_found;
  bool sat = uc.blinded_hdr.roi_saturation < uc.blinded.roi_saturation;
  auto yn = [](bool b) { return b ? "detected" : "missed"; };
  report("blinding-use-case", pattern && sat && dt < 30,
         std::string("clean ") + yn(uc.clean.sign_found) + ", blinded " + yn(uc.blinded.sign_found) +
             ", blinded+HDR " + yn(uc.blinded_hdr.sign_found) + "; sign ROI saturation " +
             fmt(uc.blinded.roi_saturation) + " -> " + fmt(uc.blinded_hdr.roi_saturation) + ", " + fmt(dt) + " s");

  auto e = analysis::compare(analysis::from_rgb(uc.blinded.out.post_isp),
                             analysis::from_rgb(uc.blinded_hdr.out.post_isp), analysis::DiffMode::Signed,
                             sc::stop_sign_roi());
  const auto& d = e[2].stats;
  report("signed-diff-directions", d[0].mean > 0 && d[1].mean < 0 && d[2].mean < 0,
         "non-HDR minus HDR mean R " + fmt(d[0].mean) + ", G " + fmt(d[1].mean) + ", B " + fmt(d[2].mean));
}

void stripe_law() {
  auto t0 = std::chrono::steady_clock::now();
  int ok = 0;
  double worst = 0;
  auto cases = wbtest::stripe_cases();
  for (const auto& c : cases) {
    auto r = wbtest::run_stripe_case(c);
    ok += r.ok();
    worst = std::max(worst, std::abs(r.measured_period - r.expected_period));
  }
  double dt = seconds_since(t0);
  report("stripe-period-law", ok == static_cast<int>(cases.size()) && cases.size() == 20 && dt < 60,
         std::to_string(ok) + "/" + std::to_string(cases.size()) + " cases, worst period error " + fmt(worst, 2) +
             " rows, " + fmt(dt) + " s");
}

void scaling_camouflage() {
  std::mt19937 rng(2024);
  RgbImage source(64, 64), target(16, 16);
  for (auto& v : source.data) v = static_cast<uint8_t>(rng() % 256);
  for (auto& v : target.data) v = static_cast<uint8_t>(rng() % 256);

  auto near = attack::craft_scaling_attack(source, target, {sim::ResizeMethod::Nearest, 16, 16});
  bool exact = sim::resize(near.image, 16, 16, sim::ResizeMethod::Nearest) == target;
  std::set<std::pair<int, int>> sampled;
  for (int dy = 0; dy < 16; ++dy)
    for (int dx = 0; dx < 16; ++dx)
      sampled.insert({static_cast<int>(std::floor((dx + 0.5) * 4)), static_cast<int>(std::floor((dy + 0.5) * 4))});
  std::set<std::pair<int, int>> modified;
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      for (int c = 0; c < 3; ++c)
        if (near.image.at(x, y, c) != source.at(x, y, c)) modified.insert({x, y});

  auto bil = attack::craft_scaling_attack(source, target, {sim::ResizeMethod::Bilinear, 16, 16});
  RgbImage down = sim::resize(bil.image, 16, 16, sim::ResizeMethod::Bilinear);
  int worst = 0;
  for (size_t i = 0; i < down.data.size(); ++i) worst = std::max(worst, std::abs(down.data[i] - target.data[i]));

  report("scaling-camouflage", exact && modified == sampled && worst <= 1,
         std::string("nearest ") + (exact ? "exact" : "inexact") + ", modified set " +
             (modified == sampled ? "==" : "!=") + " sampled set (" + std::to_string(modified.size()) +
             " px); bilinear max error " + std::to_string(worst) + " DN");
}

void pipeline_invariants() {
  const int n = 120;
  auto results = wbtest::run_all_properties(n, 7);
  bool ok = true;
  std::string detail;
  for (const auto& r : results) {
    ok &= r.ok() && r.instances >= 100;
    if (!r.ok()) detail += " [" + r.name + ": " + r.first_failure + "]";
  }
  report("pipeline-invariants", ok,
         std::to_string(results.size()) + " properties x " + std::to_string(n) + " instances" +
             (detail.empty() ? ", all hold" : detail));
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

// capture -> attack -> analyze -> report in `dir`, outputs relative to it.
bool cli_run(const fs::path& dir) {
  const fs::path src = WB_SOURCE_DIR, scenes = src / "scenes";
  const std::string bin = q(WB_WORKBENCH_BIN);
  auto roi = sc::stop_sign_roi();
  std::string r = std::to_string(roi.x) + "," + std::to_string(roi.y) + "," + std::to_string(roi.w) + "," +
                  std::to_string(roi.h);
  const std::vector<std::string> steps = {
      "capture --scene " + q(scenes / "stop_sign.scene.json") + " --config " + q(scenes / "non_hdr.json") +
          " --out-prefix out/clean",
      "attack blind --spec " + q(scenes / "laser.json") + " --scene " + q(scenes / "stop_sign.scene.json") +
          " --out-prefix out/blinded",
      "capture --scene out/blinded.scene.json --config " + q(scenes / "non_hdr.json") + " --out-prefix out/blinded",
      "capture --scene out/blinded.scene.json --config " + q(scenes / "hdr.json") + " --out-prefix out/blinded_hdr",
      "attack flicker --spec " + q(scenes / "flicker.json") + " --scene " + q(scenes / "stop_sign.scene.json") +
          " --out-prefix out/flicker",
      "capture --scene out/flicker.scene.json --config " + q(scenes / "non_hdr.json") + " --out-prefix out/flicker",
      "analyze --a out/blinded.post.ppm --b out/blinded_hdr.post.ppm --roi " + r + " --signed --out out/analysis",
      "analyze --a out/clean.pre.pgm --b out/blinded.pre.pgm --out out/analysis_raw",
      "defend blinding --img out/blinded.post.ppm --roi " + r + " --out out/defend.json",
      "detect --img out/blinded_hdr.post.ppm > out/detect.json",
      "risk eval --catalog " + q(src / "catalog" / "threats.json") + " --format markdown > out/report.md",
  };
  fs::create_directories(dir / "out");
  for (const auto& s : steps) {
    std::string cmd = "cd " + q(dir) + " && " + bin + " " + s;
    if (std::system(cmd.c_str()) != 0) {
      std::cout << "  step failed: " << s << std::endl;
      return false;
    }
  }
  return true;
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = read_file(e.path().string());
  return out;
}

void cli_determinism() {
  auto base = wbtest::temp_dir("acceptance_cli");
  bool ran = cli_run(base / "run1") && cli_run(base / "run2");
  auto a = ran ? tree(base / "run1") : decltype(tree(base)){};
  auto b = ran ? tree(base / "run2") : decltype(tree(base)){};
  size_t bytes = 0;
  for (const auto& [k, v] : a) bytes += v.size();
  std::string diff;
  for (const auto& [k, v] : a)
    if (!b.count(k) || b.at(k) != v) diff += " " + k;
  bool ok = ran && !a.empty() && a.size() == b.size() && diff.empty();
  report("cli-determinism", ok,
         ran ? std::to_string(a.size()) + " files, " + std::to_string(bytes) + " bytes" +
                   (diff.empty() ? ", byte-identical" : ", differing:" + diff)
             : "a pipeline step failed");
}

}  // namespace

int main() {
  threat_catalog();
  risk_matrix();
  feasibility_boundaries();
  blinding_use_case();
  stripe_law();
  scaling_camouflage();
  pipeline_invariants();
  cli_determinism();
  std::cout << (g_failed ? "FAILED " + std::to_string(g_failed) + " criteria" : std::string("ALL PASS"))
            << std::endl;
  return g_failed ? 1 : 0;
}
