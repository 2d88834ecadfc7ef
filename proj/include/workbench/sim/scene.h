#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "workbench/image.h"

namespace wb::sim {

enum class Waveform { Constant, Square, Sine };

struct Region {
  enum class Kind { Full, Rect, Disc };
  Kind kind = Kind::Full;
  RoiRect rect;                      // Rect
  double cx = 0, cy = 0, r = 0;      // Disc, pixel units (pixel centres at +0.5)
};

struct LightModulator {
  Region region;
  std::array<double, 3> channel_weights{1, 1, 1};
  Waveform waveform = Waveform::Constant;
  double frequency_hz = 0;
  double duty = 0.5;
  double intensity = 0;  // radiance, DN/s at unity gain
  double psf_sigma = 0;  // Gaussian fall-off outside the region, pixels
};

// Radiance is in DN per second at unity gain for a site that sees the full
// channel. `radiance_scale` is the radiance an 8-bit image value 255 maps to.
struct TimeVaryingScene {
  int width = 0;
  int height = 0;
  std::vector<float> base;  // interleaved RGB radiance
  double radiance_scale = 1;
  std::vector<LightModulator> modulators;

  float& at(int x, int y, int c) { return base[(static_cast<size_t>(y) * width + x) * 3 + c]; }
  float at(int x, int y, int c) const {
    return base[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
};

// Spatial weight in [0,1] at pixel (x, y).
double modulator_profile(const LightModulator& m, int x, int y);
// Integral of the waveform (values in [0,1]) over [t0, t1].
double waveform_integral(const LightModulator& m, double t0, double t1);
// Throws DomainError on bad frequency, duty, intensity or weights.
void validate(const LightModulator& m, int width, int height);
void validate(const TimeVaryingScene& s);

TimeVaryingScene scene_from_rgb(const RgbImage& img, double radiance_scale);
// Base radiance back to 8 bits with the scene's radiance_scale.
RgbImage scene_base_to_rgb(const TimeVaryingScene& s);

nlohmann::json to_json(const Region& r);
Region region_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json to_json(const LightModulator& m);
LightModulator modulator_from_json(const nlohmann::json& j, const std::string& path);

// Scene file: JSON with base_image (PPM path relative to the JSON file),
// radiance_scale and modulators.
TimeVaryingScene load_scene(const std::string& path);
// Writes "<prefix>.scene.json" and "<prefix>.base.ppm".
void save_scene(const std::string& prefix, const TimeVaryingScene& s);

}  // namespace wb::sim
