#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "workbench/image.h"

namespace wb::detect {

struct Detection {
  std::string label;
  double score = 0;
  RoiRect box;
};

struct StopSignParams {
  double dominance = 1.4;  // R > dominance * G and R > dominance * B
  int red_floor = 60;      // R > red_floor
  int min_area = 64;       // pixels, 8-connected
  double min_score = 0.5;  // fill ratio of the bounding box
};

class Detector {
 public:
  virtual ~Detector() = default;
  // Deterministic; sorted by descending score.
  virtual std::vector<Detection> detect(const RgbImage& img) const = 0;
};

class StopSignDetector : public Detector {
 public:
  explicit StopSignDetector(StopSignParams p = {}) : p_(p) {}
  std::vector<Detection> detect(const RgbImage& img) const override;

 private:
  StopSignParams p_;
};

std::vector<Detection> naive_stop_sign_detect(const RgbImage& img, const StopSignParams& p = {});

// Bilinear demosaic and a linear rescale to 8 bits; nothing else.
RgbImage demosaic_for_detection(const RawImage& raw);

double iou(const RoiRect& a, const RoiRect& b);
nlohmann::json to_json(const std::vector<Detection>& dets);

}  // namespace wb::detect
