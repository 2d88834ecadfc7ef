#include "workbench/sim/scenes.h"

#include <cmath>
#include <numbers>

namespace wb::sim::scenes {

bool inside_octagon(double px, double py, double cx, double cy, double apothem) {
  double dx = std::abs(px - cx), dy = std::abs(py - cy);
  return dx <= apothem && dy <= apothem && dx + dy <= apothem * std::numbers::sqrt2;
}

RgbImage stop_sign_image() {
  RgbImage img(kWidth, kHeight, 26);
  for (int y = 0; y < kHeight; ++y)
    for (int x = 0; x < kWidth; ++x)
      if (inside_octagon(x + 0.5, y + 0.5, kSignCx, kSignCy, kSignApothem)) {
        img.at(x, y, 0) = 204;
        img.at(x, y, 1) = 5;
        img.at(x, y, 2) = 5;
      }
  return img;
}

TimeVaryingScene stop_sign_scene() { return scene_from_rgb(stop_sign_image(), kRadianceScale); }

RoiRect stop_sign_roi() {
  int x0 = kWidth, y0 = kHeight, x1 = -1, y1 = -1;
  for (int y = 0; y < kHeight; ++y)
    for (int x = 0; x < kWidth; ++x)
      if (inside_octagon(x + 0.5, y + 0.5, kSignCx, kSignCy, kSignApothem)) {
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

RoiRect laser_roi() {
  return {static_cast<int>(kLaserCx) - 20, static_cast<int>(kLaserCy) - 20, 40, 40};
}

RgbImage test_chart(int width, int height) {
  RgbImage img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double u = (x + 0.5) / width, v = (y + 0.5) / height;
      uint8_t rgb[3];
      if (v < 0.25) {  // grey ramp
        rgb[0] = rgb[1] = rgb[2] = static_cast<uint8_t>(255 * u);
      } else if (v < 0.5) {  // colour bars
        static constexpr uint8_t kBars[8][3] = {{255, 255, 255}, {255, 255, 0}, {0, 255, 255},
                                                {0, 255, 0},     {255, 0, 255}, {255, 0, 0},
                                                {0, 0, 255},     {0, 0, 0}};
        const auto* b = kBars[std::min(static_cast<int>(u * 8), 7)];
        for (int c = 0; c < 3; ++c) rgb[c] = static_cast<uint8_t>(40 + b[c] * 175 / 255);
      } else if (v < 0.75) {  // smooth colour field
        rgb[0] = static_cast<uint8_t>(128 + 100 * std::sin(2 * std::numbers::pi * u));
        rgb[1] = static_cast<uint8_t>(128 + 100 * std::cos(3 * std::numbers::pi * v));
        rgb[2] = static_cast<uint8_t>(255 * (1 - u));
      } else {  // checker edges
        bool on = ((x / 6) + (y / 6)) % 2;
        rgb[0] = rgb[1] = rgb[2] = on ? 220 : 30;
      }
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = rgb[c];
    }
  }
  return img;
}

PipelineConfig non_hdr_preset() {
  PipelineConfig c;
  c.exposure_time = 0.01;
  c.line_time = 30e-6;
  c.bit_depth = 10;
  c.tone_gamma = 2.2;
  return c;
}

PipelineConfig hdr_preset() {
  PipelineConfig c = non_hdr_preset();
  c.hdr = {true, 2, 8};
  c.tone_gamma = 4.87;  // 2.2 * ln(0.18 / 8) / ln(0.18)
  return c;
}

}  // namespace wb::sim::scenes
