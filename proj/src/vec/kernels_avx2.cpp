#include "graphsquash/vec/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace gsq::vec::detail {

namespace {

// Floats are widened to double before accumulation; two independent
// accumulator chains keep the FMA ports busy.
double dot_avx2(const float* x, const float* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 xf = _mm256_loadu_ps(x + i);
    __m256 yf = _mm256_loadu_ps(y + i);
    __m256d xlo = _mm256_cvtps_pd(_mm256_castps256_ps128(xf));
    __m256d xhi = _mm256_cvtps_pd(_mm256_extractf128_ps(xf, 1));
    __m256d ylo = _mm256_cvtps_pd(_mm256_castps256_ps128(yf));
    __m256d yhi = _mm256_cvtps_pd(_mm256_extractf128_ps(yf, 1));
    acc0 = _mm256_fmadd_pd(xlo, ylo, acc0);
    acc1 = _mm256_fmadd_pd(xhi, yhi, acc1);
  }
  __m256d acc = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    sum += static_cast<double>(x[i]) * static_cast<double>(y[i]);
  }
  return sum;
}

double squared_norm_avx2(const float* x, std::size_t n) {
  return dot_avx2(x, x, n);
}

void axpy_avx2(float a, const float* x, float* y, std::size_t n) {
  const __m256 av = _mm256_set1_ps(a);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m256 y0 = _mm256_loadu_ps(y + i);
    __m256 y1 = _mm256_loadu_ps(y + i + 8);
    y0 = _mm256_fmadd_ps(av, _mm256_loadu_ps(x + i), y0);
    y1 = _mm256_fmadd_ps(av, _mm256_loadu_ps(x + i + 8), y1);
    _mm256_storeu_ps(y + i, y0);
    _mm256_storeu_ps(y + i + 8, y1);
  }
  for (; i + 8 <= n; i += 8) {
    __m256 yv = _mm256_loadu_ps(y + i);
    yv = _mm256_fmadd_ps(av, _mm256_loadu_ps(x + i), yv);
    _mm256_storeu_ps(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(float* x, float a, std::size_t n) {
  const __m256 av = _mm256_set1_ps(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(x + i, _mm256_mul_ps(av, _mm256_loadu_ps(x + i)));
  }
  for (; i < n; ++i) x[i] *= a;
}

}  // namespace

const Kernels* avx2_kernels_runtime() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
    return nullptr;
  }
  static const Kernels k{dot_avx2, squared_norm_avx2, axpy_avx2, scale_avx2};
  return &k;
}

}  // namespace gsq::vec::detail

#else

namespace gsq::vec::detail {
const Kernels* avx2_kernels_runtime() { return nullptr; }
}  // namespace gsq::vec::detail

#endif
