#include <cmath>

#include "gjw/simd/kernels.hpp"

namespace gjw::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// fma keeps the rounding identical to the fused vector path.
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

void scale(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

// Reference: decode every node's axis index and visit its neighbours directly.
void stencil_apply(const Stencil& s, const double* x, double* y) {
  const std::size_t M = s.points;
  std::size_t total = 1;
  for (std::size_t a = 0; a < s.axes; ++a) total *= M;
  for (std::size_t i = 0; i < total; ++i) {
    double acc = s.diag[i] * x[i];
    std::size_t stride = total;
    for (std::size_t a = 0; a < s.axes; ++a) {
      stride /= M;
      const std::size_t k = (i / stride) % M;
      if (k > 0) acc = std::fma(s.off, x[i - stride], acc);
      if (k + 1 < M) acc = std::fma(s.off, x[i + stride], acc);
    }
    y[i] = acc;
  }
}

}  // namespace gjw::simd::scalar
