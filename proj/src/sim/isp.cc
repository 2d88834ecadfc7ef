#include "workbench/sim/isp.h"

#include <algorithm>
#include <cmath>

#include "workbench/errors.h"
#include "workbench/kernels/kernels.h"
#include "workbench/sim/compress.h"
#include "workbench/sim/demosaic.h"
#include "workbench/sim/resize.h"

namespace wb::sim {

namespace {

// Reflect about the edge sample; even offsets keep their CFA colour.
int lattice(int v, int n) {
  if (v < 0) v = -v;
  if (v >= n) v = 2 * (n - 1) - v;
  return std::clamp(v, 0, n - 1);
}

}  // namespace

RawImage correct_defects(const RawImage& raw, const std::vector<std::pair<int, int>>& defects) {
  RawImage out = raw;
  for (auto [x, y] : defects) {
    if (x < 0 || y < 0 || x >= raw.width || y >= raw.height)
      throw DomainError("defect pixel (" + std::to_string(x) + "," + std::to_string(y) +
                        ") outside the image");
    int v[4] = {raw.at(lattice(x - 2, raw.width), y), raw.at(lattice(x + 2, raw.width), y),
                raw.at(x, lattice(y - 2, raw.height)), raw.at(x, lattice(y + 2, raw.height))};
    std::sort(v, v + 4);
    out.at(x, y) = static_cast<uint16_t>((v[1] + v[2] + 1) / 2);
  }
  return out;
}

LinearImage median3(const LinearImage& img) {
  LinearImage out(img.width, img.height);
  float win[9];
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) {
        int n = 0;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx)
            win[n++] = img.at(std::clamp(x + dx, 0, img.width - 1),
                              std::clamp(y + dy, 0, img.height - 1), c);
        std::nth_element(win, win + 4, win + 9);
        out.at(x, y, c) = win[4];
      }
  return out;
}

RgbImage isp_chain(const RawImage& input, const PipelineConfig& cfg) {
  using S = IspStage;
  validate(cfg);
  RawImage raw = input;
  if (!cfg.bypassed(S::DefectCorrection) && !cfg.defect_map.empty())
    raw = correct_defects(raw, cfg.defect_map);

  double in_max = raw.full_scale();
  if (!cfg.bypassed(S::BlackLevel) && raw.black_level > 0) {
    for (auto& v : raw.data) v = static_cast<uint16_t>(std::max(int(v) - raw.black_level, 0));
    in_max -= raw.black_level;
  }

  LinearImage lin;
  if (cfg.bypassed(S::Demosaic)) {
    lin = LinearImage(raw.width, raw.height);
    for (size_t i = 0; i < raw.data.size(); ++i)
      for (int c = 0; c < 3; ++c) lin.data[i * 3 + c] = raw.data[i];
  } else {
    lin = demosaic(raw, cfg.demosaic);
  }

  if (!cfg.bypassed(S::WhiteBalance))
    for (size_t i = 0; i < lin.data.size(); ++i)
      lin.data[i] = static_cast<float>(lin.data[i] * cfg.wb_gains[i % 3]);

  if (cfg.denoise_median3 && !cfg.bypassed(S::Denoise)) lin = median3(lin);

  const bool tone = !cfg.bypassed(S::Tone);
  const double inv_gamma = 1.0 / cfg.tone_gamma;
  for (float& v : lin.data) {
    double n = std::clamp(v / in_max, 0.0, 1.0);
    v = static_cast<float>(255.0 * (tone ? std::pow(n, inv_gamma) : n));
  }

  RgbImage img(lin.width, lin.height);
  kernels::active().scale_round_u8(lin.data.data(), 1.f, img.data.data(), lin.data.size());

  if (cfg.crop && !cfg.bypassed(S::Crop)) img = crop(img, *cfg.crop);
  if (cfg.scale && !cfg.bypassed(S::Scale))
    img = resize(img, cfg.scale->width, cfg.scale->height, cfg.scale->method);
  if (cfg.compress_quality && !cfg.bypassed(S::Compress)) img = compress(img, *cfg.compress_quality);
  return img;
}

}  // namespace wb::sim
