#pragma once

#include "workbench/image.h"
#include "workbench/sim/config.h"
#include "workbench/sim/scene.h"

// Built-in scenes and presets for the stop-sign blinding scenario.
namespace wb::sim::scenes {

constexpr int kWidth = 320;
constexpr int kHeight = 240;
constexpr double kSignCx = 160, kSignCy = 80, kSignApothem = 36;
// 8-bit 255 reaches 10-bit full scale in the 10 ms default exposure.
constexpr double kRadianceScale = 1023 / 0.01;
// Laser spot below the sign.
constexpr double kLaserCx = kSignCx, kLaserCy = kSignCy + kSignApothem + 30;

bool inside_octagon(double px, double py, double cx, double cy, double apothem);

// Grey background with a red octagon.
RgbImage stop_sign_image();
TimeVaryingScene stop_sign_scene();
// Bounding box of the octagon.
RoiRect stop_sign_roi();
// 40x40 box around the laser spot.
RoiRect laser_roi();

// Gradients, colour bars and edges for codec checks.
RgbImage test_chart(int width, int height);

PipelineConfig non_hdr_preset();
// Two-exposure bracket, ratio 8; the tone curve keeps 18% grey where the
// non-HDR preset puts it.
PipelineConfig hdr_preset();

}  // namespace wb::sim::scenes
