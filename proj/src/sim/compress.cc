#include "workbench/sim/compress.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "workbench/errors.h"

namespace wb::sim {

namespace {

constexpr int kLuma[64] = {16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
                           14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
                           18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
                           49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};
constexpr int kChroma[64] = {17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99,
                             24, 26, 56, 99, 99, 99, 99, 99, 47, 66, 99, 99, 99, 99, 99, 99,
                             99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
                             99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};

constexpr double kFrac = 8.0;  // sample scale: 3 fractional bits

struct Basis {
  double c[8][8];
  Basis() {
    for (int k = 0; k < 8; ++k)
      for (int n = 0; n < 8; ++n)
        c[k][n] = (k == 0 ? std::sqrt(0.125) : 0.5) * std::cos((2 * n + 1) * k * std::numbers::pi / 16);
  }
};

const Basis& basis() {
  static const Basis b;
  return b;
}

struct Plane {
  int w = 0, h = 0;
  std::vector<double> v;
  double& at(int x, int y) { return v[static_cast<size_t>(y) * w + x]; }
  double at(int x, int y) const { return v[static_cast<size_t>(y) * w + x]; }
};

void code_blocks(Plane& p, const std::array<int, 64>& q) {
  const Basis& b = basis();
  // Pad to whole blocks by edge replication; padded samples are discarded afterwards.
  const int bw = (p.w + 7) / 8, bh = (p.h + 7) / 8;
  double blk[8][8], tmp[8][8], coef[8][8];
  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
          blk[y][x] = p.at(std::min(bx * 8 + x, p.w - 1), std::min(by * 8 + y, p.h - 1));
      for (int y = 0; y < 8; ++y)
        for (int k = 0; k < 8; ++k) {
          double s = 0;
          for (int n = 0; n < 8; ++n) s += b.c[k][n] * blk[y][n];
          tmp[y][k] = s;
        }
      for (int k = 0; k < 8; ++k)
        for (int u = 0; u < 8; ++u) {
          double s = 0;
          for (int n = 0; n < 8; ++n) s += b.c[k][n] * tmp[n][u];
          double step = q[k * 8 + u];
          coef[k][u] = std::round(s / step) * step;
        }
      for (int k = 0; k < 8; ++k)
        for (int x = 0; x < 8; ++x) {
          double s = 0;
          for (int u = 0; u < 8; ++u) s += b.c[u][x] * coef[k][u];
          tmp[k][x] = s;
        }
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
          double s = 0;
          for (int k = 0; k < 8; ++k) s += b.c[k][y] * tmp[k][x];
          int px = bx * 8 + x, py = by * 8 + y;
          if (px < p.w && py < p.h) p.at(px, py) = s;
        }
    }
  }
}

}  // namespace

std::array<int, 64> quant_table(int quality, bool chroma) {
  if (quality < 1 || quality > 100) throw DomainError("quality must be in 1..100");
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  const int* base = chroma ? kChroma : kLuma;
  std::array<int, 64> t{};
  for (int i = 0; i < 64; ++i)
    t[i] = std::clamp((base[i] * static_cast<int>(kFrac) * scale + 50) / 100, 1, 32767);
  return t;
}

RgbImage compress(const RgbImage& img, int quality) {
  const bool subsample = quality < 100;
  const int w = img.width, h = img.height;
  Plane y{w, h, std::vector<double>(static_cast<size_t>(w) * h)};
  Plane cb = y, cr = y;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      double r = img.at(i, j, 0), g = img.at(i, j, 1), b = img.at(i, j, 2);
      y.at(i, j) = kFrac * (0.299 * r + 0.587 * g + 0.114 * b - 128);
      cb.at(i, j) = kFrac * (-0.168736 * r - 0.331264 * g + 0.5 * b);
      cr.at(i, j) = kFrac * (0.5 * r - 0.418688 * g - 0.081312 * b);
    }
  auto halve = [](const Plane& p) {
    Plane o{(p.w + 1) / 2, (p.h + 1) / 2, {}};
    o.v.resize(static_cast<size_t>(o.w) * o.h);
    for (int j = 0; j < o.h; ++j)
      for (int i = 0; i < o.w; ++i) {
        double s = 0;
        for (int dy = 0; dy < 2; ++dy)
          for (int dx = 0; dx < 2; ++dx)
            s += p.at(std::min(2 * i + dx, p.w - 1), std::min(2 * j + dy, p.h - 1));
        o.at(i, j) = s / 4;
      }
    return o;
  };
  if (subsample) {
    cb = halve(cb);
    cr = halve(cr);
  }
  code_blocks(y, quant_table(quality, false));
  code_blocks(cb, quant_table(quality, true));
  code_blocks(cr, quant_table(quality, true));

  RgbImage out(w, h);
  const int shift = subsample ? 1 : 0;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      double yy = y.at(i, j) / kFrac + 128;
      double u = cb.at(i >> shift, j >> shift) / kFrac;
      double v = cr.at(i >> shift, j >> shift) / kFrac;
      double rgb[3] = {yy + 1.402 * v, yy - 0.344136 * u - 0.714136 * v, yy + 1.772 * u};
      for (int c = 0; c < 3; ++c)
        out.at(i, j, c) = static_cast<uint8_t>(std::clamp(std::round(rgb[c]), 0.0, 255.0));
    }
  return out;
}

double mean_squared_error(const RgbImage& a, const RgbImage& b) {
  if (a.width != b.width || a.height != b.height) throw DomainError("image sizes differ");
  double s = 0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    double d = double(a.data[i]) - b.data[i];
    s += d * d;
  }
  return s / a.data.size();
}

}  // namespace wb::sim
