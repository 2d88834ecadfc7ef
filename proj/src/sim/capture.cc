#include "workbench/sim/capture.h"

#include <cmath>
#include <numeric>
#include <random>

#include "workbench/errors.h"
#include "workbench/kernels/kernels.h"

namespace wb::sim {

std::vector<int> readout_schedule(int height, const ReadoutOrder& order) {
  std::vector<int> slot(height);
  std::iota(slot.begin(), slot.end(), 0);
  if (order.kind == ReadoutOrder::Kind::Randomized) {
    // Own Fisher-Yates so the permutation does not depend on the standard library.
    std::mt19937_64 rng(order.seed);
    for (int i = height - 1; i > 0; --i) {
      int j = static_cast<int>(rng() % static_cast<uint64_t>(i + 1));
      std::swap(slot[i], slot[j]);
    }
  }
  return slot;
}

namespace {

double gaussian(std::mt19937_64& rng) {
  // Box-Muller on 53-bit uniforms; deterministic across platforms.
  double u1 = (static_cast<double>(rng() >> 11) + 1.0) / 9007199254740993.0;
  double u2 = static_cast<double>(rng() >> 11) / 9007199254740992.0;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * 3.14159265358979323846 * u2);
}

}  // namespace

RawImage capture_exposure(const TimeVaryingScene& scene, const PipelineConfig& config,
                          double exposure_time, uint64_t noise_stream) {
  validate(scene);
  if (!(exposure_time > 0)) throw DomainError("exposure_time must be > 0");
  const int w = scene.width, h = scene.height;
  RawImage raw(w, h, config.bit_depth, config.cfa, config.black_level);
  const auto& k = kernels::active();

  // Per-site response planes: base radiance and each modulator's peak radiance.
  const size_t n = static_cast<size_t>(w) * h;
  std::vector<float> base(n);
  std::vector<std::vector<float>> mods(scene.modulators.size(), std::vector<float>(n));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto sel = channel_select(cfa_channel(config.cfa, x, y));
      const size_t i = static_cast<size_t>(y) * w + x;
      base[i] = sel[0] * scene.at(x, y, 0) + sel[1] * scene.at(x, y, 1) + sel[2] * scene.at(x, y, 2);
      for (size_t m = 0; m < mods.size(); ++m) {
        const auto& mod = scene.modulators[m];
        double p = modulator_profile(mod, x, y);
        double cw = sel[0] * mod.channel_weights[0] + sel[1] * mod.channel_weights[1] +
                    sel[2] * mod.channel_weights[2];
        mods[m][i] = static_cast<float>(mod.intensity * p * cw);
      }
    }
  }

  const std::vector<int> slot = readout_schedule(h, config.readout_order);
  const bool noisy = config.read_noise_sigma > 0 || config.shot_noise;
  std::mt19937_64 rng(config.noise_seed * 0x9E3779B97F4A7C15ull + noise_stream);
  std::vector<float> row(w);
  for (int y = 0; y < h; ++y) {
    const double t0 = slot[y] * config.line_time;
    const double t1 = t0 + exposure_time;
    const size_t off = static_cast<size_t>(y) * w;
    std::fill(row.begin(), row.end(), 0.f);
    k.axpy_f32(static_cast<float>(exposure_time), base.data() + off, row.data(), w);
    for (size_t m = 0; m < mods.size(); ++m) {
      double integral = waveform_integral(scene.modulators[m], t0, t1);
      if (integral != 0) k.axpy_f32(static_cast<float>(integral), mods[m].data() + off, row.data(), w);
    }
    if (noisy) {
      for (int x = 0; x < w; ++x) {
        double e = row[x] * config.analog_gain;
        double sigma2 = config.read_noise_sigma * config.read_noise_sigma;
        if (config.shot_noise) sigma2 += std::max(e, 0.0);
        e += std::sqrt(sigma2) * gaussian(rng);
        row[x] = static_cast<float>(e / config.analog_gain);
      }
    }
    k.quantize_u16(row.data(), static_cast<float>(config.analog_gain),
                   static_cast<float>(config.black_level), raw.full_scale(), raw.data.data() + off,
                   w);
  }
  return raw;
}

RawImage capture(const TimeVaryingScene& scene, const PipelineConfig& config) {
  return capture_exposure(scene, config, config.exposure_time);
}

}  // namespace wb::sim
