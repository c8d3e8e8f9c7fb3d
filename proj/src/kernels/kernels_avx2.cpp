// Compiled with -mavx2 -mfma; only reached through the dispatcher after a
// runtime CPU check.

#include <immintrin.h>

#include "vrope/kernels.hpp"

namespace vrope::simd {
namespace {

// Two pairs per 256-bit register. With C = [c0 c0 c1 c1], S = [s0 s0 s1 s1]
// and swap(x) = [x1 x0 x3 x2], the rotation is addsub(x*C, swap(x)*S).
inline __m256d rotate2(__m256d x, __m256d c, __m256d s) {
  const __m256d swapped = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(x, c, _mm256_mul_pd(swapped, s));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void rotate_avx2(const double* x, const double* cos, const double* sin, double* out, std::size_t pairs) {
  std::size_t j = 0;
  for (; j + 4 <= pairs; j += 4) {
    const __m256d c4 = _mm256_loadu_pd(cos + j);
    const __m256d s4 = _mm256_loadu_pd(sin + j);
    const __m256d c_lo = _mm256_permute4x64_pd(c4, _MM_SHUFFLE(1, 1, 0, 0));
    const __m256d c_hi = _mm256_permute4x64_pd(c4, _MM_SHUFFLE(3, 3, 2, 2));
    const __m256d s_lo = _mm256_permute4x64_pd(s4, _MM_SHUFFLE(1, 1, 0, 0));
    const __m256d s_hi = _mm256_permute4x64_pd(s4, _MM_SHUFFLE(3, 3, 2, 2));
    _mm256_storeu_pd(out + 2 * j, rotate2(_mm256_loadu_pd(x + 2 * j), c_lo, s_lo));
    _mm256_storeu_pd(out + 2 * j + 4, rotate2(_mm256_loadu_pd(x + 2 * j + 4), c_hi, s_hi));
  }
  for (; j < pairs; ++j) {
    const double a = x[2 * j];
    const double b = x[2 * j + 1];
    out[2 * j] = a * cos[j] - b * sin[j];
    out[2 * j + 1] = a * sin[j] + b * cos[j];
  }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double rotated_dot_avx2(const double* q, const double* x, const double* cos, const double* sin,
                        std::size_t pairs) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= pairs; j += 4) {
    const __m256d c4 = _mm256_loadu_pd(cos + j);
    const __m256d s4 = _mm256_loadu_pd(sin + j);
    const __m256d r_lo = rotate2(_mm256_loadu_pd(x + 2 * j), _mm256_permute4x64_pd(c4, _MM_SHUFFLE(1, 1, 0, 0)),
                                 _mm256_permute4x64_pd(s4, _MM_SHUFFLE(1, 1, 0, 0)));
    const __m256d r_hi = rotate2(_mm256_loadu_pd(x + 2 * j + 4),
                                 _mm256_permute4x64_pd(c4, _MM_SHUFFLE(3, 3, 2, 2)),
                                 _mm256_permute4x64_pd(s4, _MM_SHUFFLE(3, 3, 2, 2)));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(q + 2 * j), r_lo, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(q + 2 * j + 4), r_hi, acc1);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < pairs; ++j) {
    const double a = x[2 * j];
    const double b = x[2 * j + 1];
    sum += q[2 * j] * (a * cos[j] - b * sin[j]) + q[2 * j + 1] * (a * sin[j] + b * cos[j]);
  }
  return sum;
}

constexpr KernelTable kAvx2{Isa::avx2, &rotate_avx2, &dot_avx2, &rotated_dot_avx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table() noexcept { return &kAvx2; }
}  // namespace detail

}  // namespace vrope::simd
