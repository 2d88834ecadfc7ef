#include "workbench/sim/resize.h"

#include <cmath>

#include "workbench/errors.h"

namespace wb::sim {

std::vector<std::vector<Tap>> resize_taps(int src_n, int dst_n, ResizeMethod method) {
  if (src_n < 1 || dst_n < 1) throw DomainError("resize dimensions must be >= 1");
  std::vector<std::vector<Tap>> taps(dst_n);
  for (int d = 0; d < dst_n; ++d) {
    if (method == ResizeMethod::Nearest) {
      int s = static_cast<int>((2LL * d + 1) * src_n / (2LL * dst_n));
      taps[d] = {{s, 1.0}};
      continue;
    }
    double s = (d + 0.5) * src_n / dst_n - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_n - 1));
    int s0 = static_cast<int>(std::floor(s));
    double f = s - s0;
    if (s0 + 1 >= src_n || f == 0)
      taps[d] = {{s0, 1.0}};
    else
      taps[d] = {{s0, 1.0 - f}, {s0 + 1, f}};
  }
  return taps;
}

RgbImage resize(const RgbImage& img, int width, int height, ResizeMethod method) {
  auto tx = resize_taps(img.width, width, method);
  auto ty = resize_taps(img.height, height, method);
  RgbImage out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0;
        for (const Tap& a : ty[y])
          for (const Tap& b : tx[x]) acc += a.weight * b.weight * img.at(b.index, a.index, c);
        out.at(x, y, c) = static_cast<uint8_t>(std::clamp(std::floor(acc + 0.5), 0.0, 255.0));
      }
    }
  }
  return out;
}

RgbImage crop(const RgbImage& img, const RoiRect& roi) {
  check_roi(roi, img.width, img.height);
  RgbImage out(roi.w, roi.h);
  for (int y = 0; y < roi.h; ++y)
    for (int x = 0; x < roi.w; ++x)
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(roi.x + x, roi.y + y, c);
  return out;
}

}  // namespace wb::sim
