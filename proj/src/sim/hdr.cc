#include <cmath>

#include "workbench/errors.h"
#include "workbench/sim/capture.h"

namespace wb::sim {

int hdr_output_bit_depth(int bit_depth, const std::vector<double>& ratios) {
  const double span = ratios.front() / ratios.back();
  return bit_depth + static_cast<int>(std::ceil(std::log2(span) - 1e-9));
}

HdrResult hdr_merge(const std::vector<RawImage>& exposures, const std::vector<double>& ratios) {
  if (exposures.size() < 2) throw DomainError("hdr_merge needs at least 2 exposures");
  if (ratios.size() != exposures.size()) throw DomainError("one ratio per exposure required");
  if (ratios[0] != 1.0) throw DomainError("first ratio must be 1");
  for (size_t k = 1; k < ratios.size(); ++k)
    if (!(ratios[k] > 0 && ratios[k] < ratios[k - 1]))
      throw DomainError("ratios must be strictly decreasing and positive");
  const RawImage& ref = exposures[0];
  for (const auto& e : exposures)
    if (e.width != ref.width || e.height != ref.height || e.cfa != ref.cfa ||
        e.bit_depth != ref.bit_depth || e.black_level != ref.black_level)
      throw DomainError("hdr_merge exposures differ in geometry, CFA, bit depth or black level");

  const int out_bd = hdr_output_bit_depth(ref.bit_depth, ratios);
  if (out_bd > 16) throw DomainError("merged bit depth " + std::to_string(out_bd) + " exceeds 16");
  HdrResult r;
  r.merged = RawImage(ref.width, ref.height, out_bd, ref.cfa, ref.black_level);
  r.recovered.assign(ref.data.size(), 0);
  const int sat = saturation_threshold(ref.full_scale(), ref.black_level);
  const int bl = ref.black_level;
  const double out_fs = r.merged.full_scale();
  for (size_t i = 0; i < ref.data.size(); ++i) {
    size_t k = 0;
    while (k < exposures.size() && exposures[k].data[i] >= sat) ++k;
    double v;
    if (k == exposures.size()) {
      v = out_fs;
    } else {
      v = std::round((exposures[k].data[i] - bl) / ratios[k] + bl);
      if (v > out_fs) v = out_fs;
      if (k > 0) {
        r.recovered[i] = 1;
        ++r.recovered_count;
      }
    }
    r.merged.data[i] = static_cast<uint16_t>(v);
  }
  return r;
}

}  // namespace wb::sim
