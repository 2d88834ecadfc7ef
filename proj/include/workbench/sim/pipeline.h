#pragma once

#include "json.hpp"
#include "workbench/image.h"
#include "workbench/sim/config.h"
#include "workbench/sim/scene.h"

namespace wb::sim {

struct PipelineOutput {
  RawImage pre_isp;   // merged raw when HDR is on
  RgbImage post_isp;  // isp_chain(pre_isp)
  nlohmann::json metadata;
  size_t hdr_recovered = 0;
};

// One capture (or one HDR bracket) feeds both outputs.
PipelineOutput run_pipeline(const TimeVaryingScene& scene, const PipelineConfig& config);

// Sensor layer only: the raw run_pipeline would hand to the ISP.
RawImage sensor_capture(const TimeVaryingScene& scene, const PipelineConfig& config,
                        size_t* hdr_recovered = nullptr);

}  // namespace wb::sim
