#pragma once

#include <cstddef>
#include <cstdint>

// Hot inner loops. Every backend must match the scalar one bit for bit.
namespace wb::kernels {

struct Moments {
  int64_t min = 0;
  int64_t max = 0;
  int64_t sum = 0;
  int64_t sumsq = 0;
};

struct KernelTable {
  const char* name;
  // y[i] += a * x[i]
  void (*axpy_f32)(float a, const float* x, float* y, size_t n);
  // out[i] = clamp(floor(in[i] * gain + offset + 0.5), 0, maxv)
  void (*quantize_u16)(const float* in, float gain, float offset, uint16_t maxv, uint16_t* out,
                       size_t n);
  // out[i] = clamp(floor(in[i] * scale + 0.5), 0, 255)
  void (*scale_round_u8)(const float* in, float scale, uint8_t* out, size_t n);
  size_t (*count_ge_u16)(const uint16_t* v, size_t n, uint16_t thr);
  size_t (*count_ge_u8)(const uint8_t* v, size_t n, uint8_t thr);
  // out[i] = a[i] - b[i], or |a[i] - b[i]| when absolute
  void (*diff_u8)(const uint8_t* a, const uint8_t* b, int16_t* out, size_t n, bool absolute);
  // n must be > 0
  Moments (*moments_i32)(const int32_t* v, size_t n);
};

const KernelTable& scalar_table();
// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_table();
// AVX2 when available unless WORKBENCH_SIMD=scalar is set.
const KernelTable& active();

}  // namespace wb::kernels
