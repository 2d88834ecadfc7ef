#include "workbench/kernels/kernels.h"

#if defined(WB_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>

namespace wb::kernels {

namespace {

void axpy(float a, const float* x, float* y, size_t n) {
  const __m256 va = _mm256_set1_ps(a);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 p = _mm256_mul_ps(va, _mm256_loadu_ps(x + i));
    _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_loadu_ps(y + i), p));
  }
  scalar_table().axpy_f32(a, x + i, y + i, n - i);
}

void quantize(const float* in, float gain, float offset, uint16_t maxv, uint16_t* out, size_t n) {
  const __m256 vg = _mm256_set1_ps(gain), vo = _mm256_set1_ps(offset);
  const __m256 half = _mm256_set1_ps(0.5f), zero = _mm256_setzero_ps();
  const __m256 hi = _mm256_set1_ps(static_cast<float>(maxv));
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 v = _mm256_mul_ps(_mm256_loadu_ps(in + i), vg);
    v = _mm256_add_ps(v, vo);
    v = _mm256_floor_ps(_mm256_add_ps(v, half));
    v = _mm256_min_ps(_mm256_max_ps(v, zero), hi);
    __m256i q = _mm256_cvttps_epi32(v);
    __m128i packed = _mm_packus_epi32(_mm256_castsi256_si128(q), _mm256_extracti128_si256(q, 1));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i), packed);
  }
  scalar_table().quantize_u16(in + i, gain, offset, maxv, out + i, n - i);
}

void scale_round(const float* in, float scale, uint8_t* out, size_t n) {
  const __m256 vs = _mm256_set1_ps(scale), half = _mm256_set1_ps(0.5f);
  const __m256 zero = _mm256_setzero_ps(), hi = _mm256_set1_ps(255.f);
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 v = _mm256_floor_ps(_mm256_add_ps(_mm256_mul_ps(_mm256_loadu_ps(in + i), vs), half));
    v = _mm256_min_ps(_mm256_max_ps(v, zero), hi);
    __m256i q = _mm256_cvttps_epi32(v);
    __m128i w = _mm_packus_epi32(_mm256_castsi256_si128(q), _mm256_extracti128_si256(q, 1));
    __m128i b = _mm_packus_epi16(w, w);
    _mm_storel_epi64(reinterpret_cast<__m128i*>(out + i), b);
  }
  scalar_table().scale_round_u8(in + i, scale, out + i, n - i);
}

size_t count_ge16(const uint16_t* v, size_t n, uint16_t thr) {
  const __m256i t = _mm256_set1_epi16(static_cast<short>(thr));
  size_t c = 0, i = 0;
  for (; i + 16 <= n; i += 16) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
    __m256i ge = _mm256_cmpeq_epi16(_mm256_max_epu16(x, t), x);
    c += static_cast<size_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_epi8(ge)))) / 2;
  }
  return c + scalar_table().count_ge_u16(v + i, n - i, thr);
}

size_t count_ge8(const uint8_t* v, size_t n, uint8_t thr) {
  const __m256i t = _mm256_set1_epi8(static_cast<char>(thr));
  size_t c = 0, i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
    __m256i ge = _mm256_cmpeq_epi8(_mm256_max_epu8(x, t), x);
    c += static_cast<size_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_epi8(ge))));
  }
  return c + scalar_table().count_ge_u8(v + i, n - i, thr);
}

void diff(const uint8_t* a, const uint8_t* b, int16_t* out, size_t n, bool absolute) {
  size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m256i va = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i)));
    __m256i vb = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i)));
    __m256i d = _mm256_sub_epi16(va, vb);
    if (absolute) d = _mm256_abs_epi16(d);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), d);
  }
  scalar_table().diff_u8(a + i, b + i, out + i, n - i, absolute);
}

Moments moments(const int32_t* v, size_t n) {
  __m256i vmin = _mm256_set1_epi32(v[0]), vmax = vmin;
  __m256i sum = _mm256_setzero_si256(), sq = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
    vmin = _mm256_min_epi32(vmin, x);
    vmax = _mm256_max_epi32(vmax, x);
    __m256i lo = _mm256_cvtepi32_epi64(_mm256_castsi256_si128(x));
    __m256i hi = _mm256_cvtepi32_epi64(_mm256_extracti128_si256(x, 1));
    sum = _mm256_add_epi64(sum, _mm256_add_epi64(lo, hi));
    sq = _mm256_add_epi64(sq, _mm256_add_epi64(_mm256_mul_epi32(lo, lo), _mm256_mul_epi32(hi, hi)));
  }
  alignas(32) int32_t mn[8], mx[8];
  alignas(32) int64_t s[4], q[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(mn), vmin);
  _mm256_store_si256(reinterpret_cast<__m256i*>(mx), vmax);
  _mm256_store_si256(reinterpret_cast<__m256i*>(s), sum);
  _mm256_store_si256(reinterpret_cast<__m256i*>(q), sq);
  Moments m{v[0], v[0], 0, 0};
  for (int k = 0; k < 8; ++k) {
    m.min = std::min<int64_t>(m.min, mn[k]);
    m.max = std::max<int64_t>(m.max, mx[k]);
  }
  for (int k = 0; k < 4; ++k) {
    m.sum += s[k];
    m.sumsq += q[k];
  }
  if (i < n) {
    Moments t = scalar_table().moments_i32(v + i, n - i);
    m.min = std::min(m.min, t.min);
    m.max = std::max(m.max, t.max);
    m.sum += t.sum;
    m.sumsq += t.sumsq;
  }
  return m;
}

}  // namespace

const KernelTable* avx2_compiled_table() {
  static const KernelTable t{"avx2",     axpy,      quantize, scale_round,
                             count_ge16, count_ge8, diff,     moments};
  return &t;
}

}  // namespace wb::kernels

#else

namespace wb::kernels {
const KernelTable* avx2_compiled_table() { return nullptr; }
}  // namespace wb::kernels

#endif
