#include "workbench/sim/pipeline.h"

#include <cmath>

#include "workbench/sim/capture.h"
#include "workbench/sim/isp.h"

namespace wb::sim {

RawImage sensor_capture(const TimeVaryingScene& scene, const PipelineConfig& config,
                        size_t* hdr_recovered) {
  validate(config);
  if (!config.hdr.enabled) return capture(scene, config);
  std::vector<RawImage> frames;
  std::vector<double> ratios;
  for (int k = 0; k < config.hdr.n_exposures; ++k) {
    double r = std::pow(config.hdr.exposure_ratio, -k);
    ratios.push_back(r);
    frames.push_back(capture_exposure(scene, config, config.exposure_time * r, k));
  }
  HdrResult merged = hdr_merge(frames, ratios);
  if (hdr_recovered) *hdr_recovered = merged.recovered_count;
  return std::move(merged.merged);
}

PipelineOutput run_pipeline(const TimeVaryingScene& scene, const PipelineConfig& config) {
  PipelineOutput out;
  out.pre_isp = sensor_capture(scene, config, &out.hdr_recovered);
  out.post_isp = isp_chain(out.pre_isp, config);
  out.metadata = {{"config", to_json(config)},
                  {"pre_isp_bit_depth", out.pre_isp.bit_depth},
                  {"hdr_recovered", out.hdr_recovered}};
  return out;
}

}  // namespace wb::sim
