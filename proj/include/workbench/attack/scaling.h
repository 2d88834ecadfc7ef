#pragma once

#include <utility>
#include <vector>

#include "workbench/attack/attack.h"

namespace wb::attack {

struct CamouflageResult {
  RgbImage image;
  int residual_linf = 0;      // max |downscale(image) - target|, DN
  int perturbation_linf = 0;  // max |image - source|, DN
  size_t modified_pixels = 0;
};

// Source pixels a nearest downscale reads, row-major.
std::vector<std::pair<int, int>> sampled_pixels(int src_w, int src_h, int dst_w, int dst_h);

// Nearest: the sampled pixels are overwritten with the target, exact.
// Bilinear: minimal-L2 change per output footprint with clamping to 0..255;
// when clamping makes a match impossible the residual says by how much.
CamouflageResult craft_scaling_attack(const RgbImage& source, const RgbImage& target,
                                      const ScalerSpec& scaler);

}  // namespace wb::attack
