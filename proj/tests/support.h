#pragma once

// Independent oracles and fixtures shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "workbench/analysis/stripes.h"
#include "workbench/attack/attack.h"
#include "workbench/attack/defense.h"
#include "workbench/detect/detector.h"
#include "workbench/sim/capture.h"
#include "workbench/sim/pipeline.h"
#include "workbench/sim/scenes.h"

namespace wbtest {

inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("wbtest_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// ---- rolling-shutter stripes ----

struct StripeCase {
  double frequency_hz;
  double line_time;
};

// 20 pairs with f * line_time evenly spaced over [0.02, 0.2].
inline std::vector<StripeCase> stripe_cases() {
  const double taus[] = {10e-6, 20e-6, 30e-6, 50e-6};
  std::vector<StripeCase> out;
  for (int i = 0; i < 20; ++i) {
    double ft = 0.02 + i * (0.2 - 0.02) / 19;
    double tau = taus[i % 4];
    out.push_back({ft / tau, tau});
  }
  return out;
}

// Square wave, on for the first `duty` of each period, sampled at the centre
// of 1 us steps.
inline double square_on_time_sampled(double f, double duty, double t0, double t1) {
  const double dt = 1e-6;
  double on = 0;
  for (double t = t0 + dt / 2; t < t1; t += dt) {
    double phase = f * t - std::floor(f * t);
    if (phase < duty) on += dt;
  }
  return on;
}

struct StripeRun {
  double expected_period = 0;  // round(1 / (f * tau))
  double measured_period = 0;
  double max_oracle_error = 0;  // DN
  double tolerance = 0;         // DN
  bool ok() const {
    return max_oracle_error <= tolerance && std::abs(measured_period - expected_period) <= 1;
  }
};

inline StripeRun run_stripe_case(const StripeCase& c) {
  const int w = 16, h = 600;
  const double exposure = 0.25 / c.frequency_hz;
  const double peak_dn = 800;
  wb::sim::TimeVaryingScene scene;
  scene.width = w;
  scene.height = h;
  scene.base.assign(static_cast<size_t>(w) * h * 3, static_cast<float>(50 / exposure));
  wb::sim::LightModulator m;
  m.waveform = wb::sim::Waveform::Square;
  m.frequency_hz = c.frequency_hz;
  m.duty = 0.5;
  m.intensity = peak_dn / exposure;
  scene.modulators.push_back(m);

  wb::sim::PipelineConfig cfg;
  cfg.cfa = wb::CfaPattern::Mono;
  cfg.line_time = c.line_time;
  cfg.exposure_time = exposure;
  wb::RawImage raw = wb::sim::capture(scene, cfg);

  StripeRun r;
  r.expected_period = std::round(1 / (c.frequency_hz * c.line_time));
  // Each exposure window holds at most two edges; each costs at most one step.
  r.tolerance = 2 * m.intensity * 1e-6 + 1;
  for (int y = 0; y < h; ++y) {
    double t0 = y * c.line_time;
    double oracle = 50 + m.intensity * square_on_time_sampled(m.frequency_hz, m.duty, t0, t0 + exposure);
    for (int x = 0; x < w; ++x)
      r.max_oracle_error = std::max(r.max_oracle_error, std::abs(raw.at(x, y) - oracle));
  }
  r.measured_period = wb::analysis::band_period(wb::analysis::row_means(raw));
  return r;
}

// ---- blinding use case ----

struct UseCaseRun {
  wb::sim::PipelineOutput out;
  std::vector<wb::detect::Detection> detections;
  bool sign_found = false;
  double roi_saturation = 0;  // raw, sign ROI
};

inline UseCaseRun run_use_case(const wb::sim::TimeVaryingScene& scene,
                               const wb::sim::PipelineConfig& cfg) {
  namespace sc = wb::sim::scenes;
  UseCaseRun r;
  r.out = wb::sim::run_pipeline(scene, cfg);
  r.detections = wb::detect::naive_stop_sign_detect(r.out.post_isp);
  for (const auto& d : r.detections)
    r.sign_found = r.sign_found || wb::detect::iou(d.box, sc::stop_sign_roi()) >= 0.5;
  r.roi_saturation = wb::attack::detect_blinding(r.out.pre_isp, sc::stop_sign_roi()).score;
  return r;
}

struct UseCase {
  UseCaseRun clean, blinded, blinded_hdr;
};

inline UseCase use_case() {
  namespace sc = wb::sim::scenes;
  auto clean = sc::stop_sign_scene();
  auto blinded = wb::attack::apply_attack(clean, wb::attack::stop_sign_laser());
  return {run_use_case(clean, sc::non_hdr_preset()), run_use_case(blinded, sc::non_hdr_preset()),
          run_use_case(blinded, sc::hdr_preset())};
}

}  // namespace wbtest
