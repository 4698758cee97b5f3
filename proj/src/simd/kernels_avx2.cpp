#include "gjw/simd/kernels.hpp"

#if defined(GJW_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace gjw::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline void fma_segment(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
    s2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), s2);
    s3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), s3);
  }
  for (; i + 4 <= n; i += 4) s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
  double s = hsum(_mm256_add_pd(_mm256_add_pd(s0, s1), _mm256_add_pd(s2, s3)));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) { fma_segment(alpha, x, y, n); }

void scale(double alpha, double* x, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(a, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

// Diagonal product, then per axis two shifted segment updates per block.
// The update order per node matches the scalar reference, so results are bitwise equal.
void stencil_apply(const Stencil& s, const double* x, double* y) {
  const std::size_t M = s.points;
  std::size_t total = 1;
  for (std::size_t a = 0; a < s.axes; ++a) total *= M;
  std::size_t i = 0;
  for (; i + 4 <= total; i += 4)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(s.diag + i), _mm256_loadu_pd(x + i)));
  for (; i < total; ++i) y[i] = s.diag[i] * x[i];
  if (M < 2) return;

  std::size_t stride = total;
  for (std::size_t a = 0; a < s.axes; ++a) {
    stride /= M;
    const std::size_t block = stride * M;
    const std::size_t span = stride * (M - 1);
    for (std::size_t base = 0; base < total; base += block) {
      fma_segment(s.off, x + base, y + base + stride, span);
      fma_segment(s.off, x + base + stride, y + base, span);
    }
  }
}

}  // namespace gjw::simd::avx2

#endif
