#include <algorithm>
#include <cmath>

#include "workbench/kernels/kernels.h"

namespace wb::kernels {

namespace {

void axpy(float a, const float* x, float* y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void quantize(const float* in, float gain, float offset, uint16_t maxv, uint16_t* out, size_t n) {
  const float hi = maxv;
  for (size_t i = 0; i < n; ++i) {
    float v = in[i] * gain;
    v = v + offset;
    v = std::floor(v + 0.5f);
    v = std::min(std::max(v, 0.f), hi);
    out[i] = static_cast<uint16_t>(v);
  }
}

void scale_round(const float* in, float scale, uint8_t* out, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    float v = std::floor(in[i] * scale + 0.5f);
    v = std::min(std::max(v, 0.f), 255.f);
    out[i] = static_cast<uint8_t>(v);
  }
}

template <typename T>
size_t count_ge(const T* v, size_t n, T thr) {
  size_t c = 0;
  for (size_t i = 0; i < n; ++i) c += v[i] >= thr;
  return c;
}

void diff(const uint8_t* a, const uint8_t* b, int16_t* out, size_t n, bool absolute) {
  for (size_t i = 0; i < n; ++i) {
    int d = int(a[i]) - int(b[i]);
    out[i] = static_cast<int16_t>(absolute && d < 0 ? -d : d);
  }
}

Moments moments(const int32_t* v, size_t n) {
  Moments m{v[0], v[0], 0, 0};
  for (size_t i = 0; i < n; ++i) {
    int64_t x = v[i];
    m.min = std::min(m.min, x);
    m.max = std::max(m.max, x);
    m.sum += x;
    m.sumsq += x * x;
  }
  return m;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{"scalar",         axpy,  quantize, scale_round,
                             count_ge<uint16_t>, count_ge<uint8_t>, diff, moments};
  return t;
}

}  // namespace wb::kernels
