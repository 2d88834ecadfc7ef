#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "workbench/image.h"

namespace wb::sim {

enum class ResizeMethod { Nearest, Bilinear };
enum class DemosaicMethod { Nearest, Bilinear };

struct ReadoutOrder {
  enum class Kind { Sequential, Randomized };
  Kind kind = Kind::Sequential;
  uint64_t seed = 0;
};

// Bracketed HDR captures n exposures at relative lengths 1, 1/ratio, 1/ratio^2, ...
struct HdrMode {
  bool enabled = false;
  int n_exposures = 2;
  double exposure_ratio = 8;
};

struct ScaleSpec {
  int width = 1;
  int height = 1;
  ResizeMethod method = ResizeMethod::Bilinear;
};

enum class IspStage {
  DefectCorrection,
  BlackLevel,
  Demosaic,
  WhiteBalance,
  Denoise,
  Tone,
  Crop,
  Scale,
  Compress,
};

struct PipelineConfig {
  // sensor layer
  double exposure_time = 0.01;
  double analog_gain = 1;
  double line_time = 30e-6;
  ReadoutOrder readout_order;
  HdrMode hdr;
  int bit_depth = 10;
  CfaPattern cfa = CfaPattern::RGGB;
  int black_level = 0;
  double read_noise_sigma = 0;  // DN
  bool shot_noise = false;
  uint64_t noise_seed = 0;
  // ISP
  std::vector<std::pair<int, int>> defect_map;
  double tone_gamma = 2.2;
  std::array<double, 3> wb_gains{1, 1, 1};
  DemosaicMethod demosaic = DemosaicMethod::Bilinear;
  bool denoise_median3 = false;
  std::optional<ScaleSpec> scale;
  std::optional<RoiRect> crop;
  std::optional<int> compress_quality;
  int output_bit_depth = 8;
  std::vector<IspStage> bypass;

  bool bypassed(IspStage s) const;
};

const char* to_string(IspStage s);

// Throws ParseError carrying the offending field path.
void validate(const PipelineConfig& c);

nlohmann::json to_json(const PipelineConfig& c);
// Missing fields keep their defaults. Unknown fields are rejected.
PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig load_config(const std::string& path);
// Applies the fields present in `patch` on top of `base`.
PipelineConfig merge_config(const PipelineConfig& base, const nlohmann::json& patch);

}  // namespace wb::sim
