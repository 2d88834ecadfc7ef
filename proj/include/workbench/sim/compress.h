#pragma once

#include <array>

#include "workbench/image.h"

namespace wb::sim {

// Quantisation steps for the 8x8 DCT in units of 1/8 DN (three fractional
// bits of coefficient precision). Quality 100 gives a flat table of ones.
std::array<int, 64> quant_table(int quality, bool chroma);

// Toy JPEG: YCbCr, 8x8 orthonormal DCT, quantise, reconstruct. Chroma is
// 2x2 subsampled below quality 100.
RgbImage compress(const RgbImage& img, int quality);

double mean_squared_error(const RgbImage& a, const RgbImage& b);

}  // namespace wb::sim
