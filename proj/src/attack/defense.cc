#include "workbench/attack/defense.h"

#include <cmath>
#include <random>

#include "workbench/errors.h"
#include "workbench/kernels/kernels.h"
#include "workbench/sim/isp.h"

namespace wb::attack {

using nlohmann::json;

json to_json(const DefenseReport& r) {
  return {{"name", r.name},
          {"score", r.score},
          {"threshold", r.threshold},
          {"decision", r.attack_suspected ? "attack_suspected" : "clean"},
          {"evidence", r.evidence}};
}

namespace {

DefenseReport blinding_report(size_t saturated, size_t total, const RoiRect& roi, double threshold) {
  DefenseReport r;
  r.name = "blinding";
  r.score = static_cast<double>(saturated) / static_cast<double>(total);
  r.threshold = threshold;
  r.attack_suspected = r.score > threshold;
  r.evidence = {{"saturated_pixels", saturated},
                {"roi_pixels", total},
                {"roi", {{"x", roi.x}, {"y", roi.y}, {"w", roi.w}, {"h", roi.h}}}};
  return r;
}

}  // namespace

DefenseReport detect_blinding(const RgbImage& img, const RoiRect& roi, double threshold) {
  check_roi(roi, img.width, img.height);
  const int thr = saturation_threshold(255);
  size_t n = 0;
  for (int y = roi.y; y < roi.y + roi.h; ++y)
    for (int x = roi.x; x < roi.x + roi.w; ++x)
      n += img.at(x, y, 0) >= thr || img.at(x, y, 1) >= thr || img.at(x, y, 2) >= thr;
  return blinding_report(n, static_cast<size_t>(roi.w) * roi.h, roi, threshold);
}

DefenseReport detect_blinding(const RawImage& raw, const RoiRect& roi, double threshold) {
  check_roi(roi, raw.width, raw.height);
  const auto thr = static_cast<uint16_t>(saturation_threshold(raw.full_scale(), raw.black_level));
  size_t n = 0;
  for (int y = roi.y; y < roi.y + roi.h; ++y)
    n += kernels::active().count_ge_u16(&raw.data[static_cast<size_t>(y) * raw.width + roi.x],
                                        roi.w, thr);
  return blinding_report(n, static_cast<size_t>(roi.w) * roi.h, roi, threshold);
}

double detection_disagreement(const std::vector<detect::Detection>& a,
                              const std::vector<detect::Detection>& b, int width, int height) {
  if (a.empty() && b.empty()) return 0;
  std::vector<uint8_t> m(static_cast<size_t>(width) * height, 0);
  auto paint = [&](const std::vector<detect::Detection>& d, uint8_t bit) {
    for (const auto& det : d)
      for (int y = std::max(det.box.y, 0); y < std::min(det.box.y + det.box.h, height); ++y)
        for (int x = std::max(det.box.x, 0); x < std::min(det.box.x + det.box.w, width); ++x)
          m[static_cast<size_t>(y) * width + x] |= bit;
  };
  paint(a, 1);
  paint(b, 2);
  size_t inter = 0, uni = 0;
  for (uint8_t v : m) {
    inter += v == 3;
    uni += v != 0;
  }
  return uni ? 1.0 - static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

namespace {

// Fields that describe the sensor rather than the ISP.
json sensor_part(const sim::PipelineConfig& c) {
  json j = sim::to_json(c);
  json out;
  for (const char* k : {"exposure_time", "analog_gain", "line_time", "readout_order", "hdr",
                        "bit_depth", "cfa", "black_level", "read_noise_sigma", "shot_noise",
                        "noise_seed"})
    out[k] = j[k];
  return out;
}

}  // namespace

DefenseReport defense_multi_pipeline(const RawImage& raw, const std::vector<sim::PipelineConfig>& configs,
                                     const detect::Detector& detector, double threshold) {
  if (configs.size() < 2) throw DomainError("multi-pipeline defense needs at least 2 configs");
  for (size_t i = 1; i < configs.size(); ++i)
    if (sensor_part(configs[i]) != sensor_part(configs[0]))
      throw DomainError("config " + std::to_string(i) + " differs from config 0 outside the ISP");
  std::vector<std::vector<detect::Detection>> dets;
  std::vector<std::pair<int, int>> sizes;
  for (const auto& c : configs) {
    RgbImage img = sim::isp_chain(raw, c);
    dets.push_back(detector.detect(img));
    sizes.emplace_back(img.width, img.height);
  }
  DefenseReport r;
  r.name = "multi-isp";
  r.threshold = threshold;
  json pairs = json::array();
  for (size_t i = 0; i < configs.size(); ++i)
    for (size_t j = i + 1; j < configs.size(); ++j) {
      // Outputs may differ in size after scaling; compare in normalised
      // coordinates on the larger grid.
      int w = std::max(sizes[i].first, sizes[j].first), h = std::max(sizes[i].second, sizes[j].second);
      auto rescale = [&](std::vector<detect::Detection> d, std::pair<int, int> s) {
        for (auto& x : d) {
          double fx = static_cast<double>(w) / s.first, fy = static_cast<double>(h) / s.second;
          x.box = {static_cast<int>(x.box.x * fx), static_cast<int>(x.box.y * fy),
                   static_cast<int>(std::ceil(x.box.w * fx)), static_cast<int>(std::ceil(x.box.h * fy))};
        }
        return d;
      };
      double d = detection_disagreement(rescale(dets[i], sizes[i]), rescale(dets[j], sizes[j]), w, h);
      pairs.push_back({{"a", i}, {"b", j}, {"disagreement", d}});
      r.score = std::max(r.score, d);
    }
  json per = json::array();
  for (const auto& d : dets) per.push_back(detect::to_json(d));
  r.evidence = {{"pairs", pairs}, {"detections", per}};
  r.attack_suspected = r.score > threshold;
  return r;
}

sim::PipelineConfig defense_random_readout(const sim::PipelineConfig& config,
                                           std::optional<uint64_t> seed) {
  sim::PipelineConfig out = config;
  out.readout_order.kind = sim::ReadoutOrder::Kind::Randomized;
  if (seed) {
    out.readout_order.seed = *seed;
  } else {
    std::random_device rd;
    out.readout_order.seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
  }
  return out;
}

}  // namespace wb::attack
