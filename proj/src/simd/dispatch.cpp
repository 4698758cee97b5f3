#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string_view>

#include "gjw/errors.hpp"
#include "gjw/simd/kernels.hpp"

namespace gjw::simd {

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(GJW_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

namespace {

constexpr KernelTable scalar_table{scalar::dot, scalar::axpy, scalar::scale, scalar::stencil_apply};
#if defined(GJW_HAVE_AVX2)
constexpr KernelTable avx2_table{avx2::dot, avx2::axpy, avx2::scale, avx2::stencil_apply};
#endif

Isa detect() {
  if (const char* env = std::getenv("GJW_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && avx2_available()) return Isa::Avx2;
  }
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

// -1 means not yet selected.
std::atomic<int> selected{-1};

}  // namespace

Isa active_isa() {
  int s = selected.load(std::memory_order_acquire);
  if (s < 0) {
    int fresh = static_cast<int>(detect());
    selected.compare_exchange_strong(s, fresh, std::memory_order_acq_rel);
    s = selected.load(std::memory_order_acquire);
  }
  return static_cast<Isa>(s);
}

void force_isa(std::optional<Isa> isa) {
  if (!isa) {
    selected.store(static_cast<int>(detect()), std::memory_order_release);
    return;
  }
  if (*isa == Isa::Avx2 && !avx2_available()) throw ParameterError("AVX2 kernels are not available on this CPU");
  selected.store(static_cast<int>(*isa), std::memory_order_release);
}

const KernelTable& kernels(Isa isa) {
#if defined(GJW_HAVE_AVX2)
  if (isa == Isa::Avx2) return avx2_table;
#endif
  (void)isa;
  return scalar_table;
}

const KernelTable& kernels() { return kernels(active_isa()); }

double dot(const double* a, const double* b, std::size_t n) { return kernels().dot(a, b, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) { kernels().axpy(alpha, x, y, n); }
double nrm2(const double* x, std::size_t n) { return std::sqrt(kernels().dot(x, x, n)); }
void scale(double alpha, double* x, std::size_t n) { kernels().scale(alpha, x, n); }
void stencil_apply(const Stencil& s, const double* x, double* y) { kernels().stencil_apply(s, x, y); }

}  // namespace gjw::simd
