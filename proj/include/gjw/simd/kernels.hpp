#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace gjw::simd {

enum class Isa { Scalar, Avx2 };

std::string to_string(Isa isa);

// Dirichlet grid operator on `axes` axes of `points` nodes each, axis 0 slowest:
//   y[i] = diag[i] * x[i] + off * sum of x over the in-range axis neighbours of i.
struct Stencil {
  std::size_t points = 0;
  std::size_t axes = 0;
  double off = 0.0;
  const double* diag = nullptr;
};

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
  void (*stencil_apply)(const Stencil& s, const double* x, double* y);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
void stencil_apply(const Stencil& s, const double* x, double* y);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
void stencil_apply(const Stencil& s, const double* x, double* y);
}  // namespace avx2

/// Compiled in and supported by the running CPU.
bool avx2_available();

/// Selected from GJW_SIMD (scalar|avx2|auto) on first use, else the best available.
Isa active_isa();

/// nullopt restores automatic selection. Throws ParameterError if `isa` is unavailable.
void force_isa(std::optional<Isa> isa);

const KernelTable& kernels();
const KernelTable& kernels(Isa isa);

// Dispatching front ends.
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double nrm2(const double* x, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
void stencil_apply(const Stencil& s, const double* x, double* y);

}  // namespace gjw::simd
