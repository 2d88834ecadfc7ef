#pragma once

#include <array>
#include <string>
#include <variant>

#include "json.hpp"
#include "workbench/image.h"
#include "workbench/sim/config.h"
#include "workbench/sim/scene.h"

namespace wb::attack {

// Constant light disc with Gaussian flare around it.
struct Blinding {
  double cx = 0, cy = 0;  // continuous pixel coordinates
  double radius = 1;
  double intensity = 0;
  std::array<double, 3> channel_weights{1, 1, 1};
  double psf_sigma = 0;
};

// Square-wave light, e.g. a PWM-driven LED.
struct Flicker {
  double frequency_hz = 100;
  double duty = 0.5;
  double intensity = 0;
  sim::Region region;  // defaults to the whole frame
  std::array<double, 3> channel_weights{1, 1, 1};
};

struct ScalerSpec {
  sim::ResizeMethod method = sim::ResizeMethod::Nearest;
  int width = 1;
  int height = 1;
};

struct ScalingCamouflage {
  RgbImage source;
  RgbImage target;
  ScalerSpec scaler;
};

struct DigitalOverlay {
  RgbImage patch;
  int x = 0, y = 0;
};

using AttackSpec = std::variant<Blinding, Flicker, ScalingCamouflage, DigitalOverlay>;

// Scene-level injection. ScalingCamouflage is rejected with DomainError.
sim::TimeVaryingScene apply_attack(const sim::TimeVaryingScene& scene, const AttackSpec& spec);

// "variant" selects the alternative; image fields are PPM paths relative to
// `base_dir`, or inline {"width","height","pixels":[r,g,b,...]} objects.
AttackSpec attack_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
AttackSpec load_attack(const std::string& path);
// Images are summarised by size only.
nlohmann::json to_json(const AttackSpec& spec);

// Laser aimed just below the sign in the built-in scene.
Blinding stop_sign_laser();

}  // namespace wb::attack
