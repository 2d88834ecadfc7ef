#include "workbench/attack/scaling.h"

#include <algorithm>
#include <cmath>

#include "workbench/errors.h"
#include "workbench/sim/resize.h"

namespace wb::attack {

std::vector<std::pair<int, int>> sampled_pixels(int src_w, int src_h, int dst_w, int dst_h) {
  auto tx = sim::resize_taps(src_w, dst_w, sim::ResizeMethod::Nearest);
  auto ty = sim::resize_taps(src_h, dst_h, sim::ResizeMethod::Nearest);
  std::vector<std::pair<int, int>> out;
  for (const auto& y : ty)
    for (const auto& x : tx) out.emplace_back(x[0].index, y[0].index);
  return out;
}

namespace {

struct Footprint {
  std::vector<size_t> pixel;  // index into a single-channel plane
  std::vector<double> weight;
};

std::vector<Footprint> footprints(int sw, int dw, int sh, int dh) {
  auto tx = sim::resize_taps(sw, dw, sim::ResizeMethod::Bilinear);
  auto ty = sim::resize_taps(sh, dh, sim::ResizeMethod::Bilinear);
  std::vector<Footprint> out(static_cast<size_t>(dw) * dh);
  for (int y = 0; y < dh; ++y)
    for (int x = 0; x < dw; ++x) {
      Footprint& f = out[static_cast<size_t>(y) * dw + x];
      for (const auto& a : ty[y])
        for (const auto& b : tx[x]) {
          f.pixel.push_back(static_cast<size_t>(a.index) * sw + b.index);
          f.weight.push_back(a.weight * b.weight);
        }
    }
  return out;
}

double footprint_value(const Footprint& f, const std::vector<double>& plane) {
  double s = 0;
  for (size_t k = 0; k < f.pixel.size(); ++k) s += f.weight[k] * plane[f.pixel[k]];
  return s;
}

int rounded(double v) { return static_cast<int>(std::clamp(std::floor(v + 0.5), 0.0, 255.0)); }

// Solves one channel in place.
void solve_channel(std::vector<double>& a, const std::vector<Footprint>& fps,
                   const std::vector<int>& target, int sw, int sh) {
  // Kaczmarz sweeps: project onto each violated constraint using only the
  // pixels that can still move in the needed direction.
  for (int sweep = 0; sweep < 50; ++sweep) {
    bool changed = false;
    for (size_t o = 0; o < fps.size(); ++o) {
      const Footprint& f = fps[o];
      double cur = footprint_value(f, a);
      if (rounded(cur) == target[o]) continue;
      double r = target[o] - cur;
      double norm = 0;
      for (size_t k = 0; k < f.pixel.size(); ++k) {
        double v = a[f.pixel[k]];
        if ((r > 0 && v < 255) || (r < 0 && v > 0)) norm += f.weight[k] * f.weight[k];
      }
      if (norm == 0) continue;
      for (size_t k = 0; k < f.pixel.size(); ++k) {
        double& v = a[f.pixel[k]];
        if ((r > 0 && v < 255) || (r < 0 && v > 0)) {
          v = std::clamp(v + f.weight[k] * r / norm, 0.0, 255.0);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  for (double& v : a) v = std::round(v);

  // Integer touch-up: nudge the heaviest tap of each miss by one DN when
  // that lowers the total error of every output reading it.
  std::vector<std::vector<size_t>> readers(static_cast<size_t>(sw) * sh);
  for (size_t o = 0; o < fps.size(); ++o)
    for (size_t p : fps[o].pixel) readers[p].push_back(o);
  auto err = [&](size_t o) { return std::abs(rounded(footprint_value(fps[o], a)) - target[o]); };
  for (int pass = 0; pass < 4; ++pass) {
    bool improved = false;
    for (size_t o = 0; o < fps.size(); ++o) {
      int e = rounded(footprint_value(fps[o], a)) - target[o];
      if (e == 0) continue;
      const Footprint& f = fps[o];
      size_t best = std::max_element(f.weight.begin(), f.weight.end()) - f.weight.begin();
      size_t p = f.pixel[best];
      double step = e > 0 ? -1 : 1;
      if (a[p] + step < 0 || a[p] + step > 255) continue;
      int before = 0, after = 0;
      for (size_t r : readers[p]) before += err(r);
      a[p] += step;
      for (size_t r : readers[p]) after += err(r);
      if (after < before)
        improved = true;
      else
        a[p] -= step;
    }
    if (!improved) break;
  }
}

}  // namespace

CamouflageResult craft_scaling_attack(const RgbImage& source, const RgbImage& target,
                                      const ScalerSpec& scaler) {
  if (scaler.width != target.width || scaler.height != target.height)
    throw DomainError("scaler output size must equal the target size");
  if (source.width <= target.width || source.height <= target.height)
    throw DomainError("source must be strictly larger than the target in both dimensions");

  CamouflageResult res;
  res.image = source;
  const int sw = source.width, sh = source.height;
  if (scaler.method == sim::ResizeMethod::Nearest) {
    auto pts = sampled_pixels(sw, sh, target.width, target.height);
    for (size_t i = 0; i < pts.size(); ++i) {
      auto [x, y] = pts[i];
      for (int c = 0; c < 3; ++c) res.image.at(x, y, c) = target.data[i * 3 + c];
    }
  } else {
    auto fps = footprints(sw, target.width, sh, target.height);
    for (int c = 0; c < 3; ++c) {
      std::vector<double> plane(static_cast<size_t>(sw) * sh);
      for (size_t i = 0; i < plane.size(); ++i) plane[i] = source.data[i * 3 + c];
      std::vector<int> t(fps.size());
      for (size_t o = 0; o < t.size(); ++o) t[o] = target.data[o * 3 + c];
      solve_channel(plane, fps, t, sw, sh);
      for (size_t i = 0; i < plane.size(); ++i) res.image.data[i * 3 + c] = static_cast<uint8_t>(plane[i]);
    }
  }

  RgbImage down = sim::resize(res.image, target.width, target.height, scaler.method);
  for (size_t i = 0; i < down.data.size(); ++i)
    res.residual_linf = std::max(res.residual_linf, std::abs(int(down.data[i]) - int(target.data[i])));
  for (size_t p = 0; p < static_cast<size_t>(sw) * sh; ++p) {
    bool mod = false;
    for (int c = 0; c < 3; ++c) {
      int d = std::abs(int(res.image.data[p * 3 + c]) - int(source.data[p * 3 + c]));
      res.perturbation_linf = std::max(res.perturbation_linf, d);
      mod |= d != 0;
    }
    res.modified_pixels += mod;
  }
  return res;
}

}  // namespace wb::attack
