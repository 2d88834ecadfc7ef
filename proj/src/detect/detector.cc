#include "workbench/detect/detector.h"

#include <algorithm>

#include "workbench/kernels/kernels.h"
#include "workbench/sim/demosaic.h"

namespace wb::detect {

std::vector<Detection> StopSignDetector::detect(const RgbImage& img) const {
  return naive_stop_sign_detect(img, p_);
}

std::vector<Detection> naive_stop_sign_detect(const RgbImage& img, const StopSignParams& p) {
  const int w = img.width, h = img.height;
  std::vector<uint8_t> mask(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double r = img.at(x, y, 0), g = img.at(x, y, 1), b = img.at(x, y, 2);
      mask[static_cast<size_t>(y) * w + x] = r > p.dominance * g && r > p.dominance * b && r > p.red_floor;
    }

  std::vector<Detection> out;
  std::vector<int> stack;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (!mask[static_cast<size_t>(y0) * w + x0]) continue;
      mask[static_cast<size_t>(y0) * w + x0] = 0;
      stack.assign(1, y0 * w + x0);
      int area = 0, bx0 = x0, by0 = y0, bx1 = x0, by1 = y0;
      while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        int x = i % w, y = i / w;
        ++area;
        bx0 = std::min(bx0, x);
        bx1 = std::max(bx1, x);
        by0 = std::min(by0, y);
        by1 = std::max(by1, y);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            size_t j = static_cast<size_t>(ny) * w + nx;
            if (mask[j]) {
              mask[j] = 0;
              stack.push_back(static_cast<int>(j));
            }
          }
      }
      if (area < p.min_area) continue;
      RoiRect box{bx0, by0, bx1 - bx0 + 1, by1 - by0 + 1};
      double score = std::min(1.0, static_cast<double>(area) / (static_cast<double>(box.w) * box.h));
      if (score >= p.min_score) out.push_back({"stop sign", score, box});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Detection& a, const Detection& b) { return a.score > b.score; });
  return out;
}

RgbImage demosaic_for_detection(const RawImage& raw) {
  LinearImage lin = sim::demosaic(raw, sim::DemosaicMethod::Bilinear);
  const float range = static_cast<float>(raw.full_scale() - raw.black_level);
  for (float& v : lin.data) v -= raw.black_level;
  RgbImage out(raw.width, raw.height);
  kernels::active().scale_round_u8(lin.data.data(), 255.f / range, out.data.data(), lin.data.size());
  return out;
}

double iou(const RoiRect& a, const RoiRect& b) {
  int x0 = std::max(a.x, b.x), y0 = std::max(a.y, b.y);
  int x1 = std::min(a.x + a.w, b.x + b.w), y1 = std::min(a.y + a.h, b.y + b.h);
  double inter = std::max(0, x1 - x0) * static_cast<double>(std::max(0, y1 - y0));
  double uni = static_cast<double>(a.w) * a.h + static_cast<double>(b.w) * b.h - inter;
  return uni > 0 ? inter / uni : 0;
}

nlohmann::json to_json(const std::vector<Detection>& dets) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : dets)
    arr.push_back({{"label", d.label},
                   {"score", d.score},
                   {"box", {{"x", d.box.x}, {"y", d.box.y}, {"w", d.box.w}, {"h", d.box.h}}}});
  return arr;
}

}  // namespace wb::detect
