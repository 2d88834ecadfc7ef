#pragma once

#include <vector>

#include "workbench/image.h"
#include "workbench/sim/config.h"

namespace wb::sim {

struct Tap {
  int index;
  double weight;
};

// Source taps of each destination sample along one axis, pixel-centre aligned.
// nearest: src = floor((d + 0.5) * src_n / dst_n).
// bilinear: s = (d + 0.5) * src_n / dst_n - 0.5 clamped to [0, src_n - 1],
// then the two neighbours of s with linear weights.
std::vector<std::vector<Tap>> resize_taps(int src_n, int dst_n, ResizeMethod method);

RgbImage resize(const RgbImage& img, int width, int height, ResizeMethod method);
RgbImage crop(const RgbImage& img, const RoiRect& roi);

}  // namespace wb::sim
