#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "workbench/detect/detector.h"
#include "workbench/image.h"
#include "workbench/sim/config.h"

namespace wb::attack {

struct DefenseReport {
  std::string name;
  double score = 0;
  double threshold = 0;
  bool attack_suspected = false;  // score > threshold
  nlohmann::json evidence;
};

nlohmann::json to_json(const DefenseReport& r);

constexpr double kBlindingThreshold = 0.15;
constexpr double kDisagreementThreshold = 0.5;

// Fraction of ROI pixels at or above 98% of full scale. An RGB pixel counts
// when any channel does.
DefenseReport detect_blinding(const RgbImage& img, const RoiRect& roi,
                              double threshold = kBlindingThreshold);
DefenseReport detect_blinding(const RawImage& raw, const RoiRect& roi,
                              double threshold = kBlindingThreshold);

// 1 - Jaccard index of the pixel areas covered by the two detection sets;
// 0 when both are empty.
double detection_disagreement(const std::vector<detect::Detection>& a,
                              const std::vector<detect::Detection>& b, int width, int height);

// Runs the ISP once per config on the same raw; configs may differ only in
// ISP parameters. Score is the largest pairwise disagreement.
DefenseReport defense_multi_pipeline(const RawImage& raw, const std::vector<sim::PipelineConfig>& configs,
                                     const detect::Detector& detector,
                                     double threshold = kDisagreementThreshold);

// Randomised readout with `seed`, or a fresh one from std::random_device.
sim::PipelineConfig defense_random_readout(const sim::PipelineConfig& config,
                                           std::optional<uint64_t> seed = std::nullopt);

}  // namespace wb::attack
