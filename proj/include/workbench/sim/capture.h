#pragma once

#include <cstdint>
#include <vector>

#include "workbench/image.h"
#include "workbench/sim/config.h"
#include "workbench/sim/scene.h"

namespace wb::sim {

// Readout slot of every row: row r starts integrating at slot[r] * line_time.
std::vector<int> readout_schedule(int height, const ReadoutOrder& order);

// One exposure of `exposure_time` seconds (the config's own exposure_time is
// ignored so HDR brackets can share everything else). Throws DomainError
// when the scene and config are unusable.
RawImage capture_exposure(const TimeVaryingScene& scene, const PipelineConfig& config,
                          double exposure_time, uint64_t noise_stream = 0);

// Single exposure at config.exposure_time. HDR is handled by run_pipeline.
RawImage capture(const TimeVaryingScene& scene, const PipelineConfig& config);

struct HdrResult {
  RawImage merged;
  std::vector<uint8_t> recovered;  // 1 where the reference exposure was saturated
  size_t recovered_count = 0;
};

// Bit depth of the merged frame for the given relative exposures.
int hdr_output_bit_depth(int bit_depth, const std::vector<double>& ratios);

// exposures[k] was captured at relative exposure ratios[k]; ratios start at 1
// and strictly decrease. Per pixel the longest exposure below 98% of full
// scale is rescaled into the reference domain.
HdrResult hdr_merge(const std::vector<RawImage>& exposures, const std::vector<double>& ratios);

}  // namespace wb::sim
