#pragma once

#include "workbench/image.h"
#include "workbench/sim/config.h"

namespace wb::sim {

// Fixed order: defect correction, black-level subtract, demosaic, white
// balance, denoise, tone, 8-bit reduction, crop, scale, compress. Every
// stage but the 8-bit reduction can be bypassed.
RgbImage isp_chain(const RawImage& raw, const PipelineConfig& config);

// Listed pixels take the median of their four same-colour neighbours.
RawImage correct_defects(const RawImage& raw, const std::vector<std::pair<int, int>>& defects);

// 3x3 median per channel, clamp-to-edge.
LinearImage median3(const LinearImage& img);

}  // namespace wb::sim
