#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gjw/model.hpp"

namespace gjw {

// Dirichlet grid with `points` interior nodes per axis at x_k = -L + (k+1) dx,
// dx = 2L/(points+1). Particle 0 is the slowest-varying index.
struct GridSpec {
  std::size_t points = 61;
  std::optional<double> half_width;  // default: multiple * sqrt(hbar / (m omega))
  double multiple = 6.0;
  // When set (and half_width is not), L is the smallest multiple of
  // 0.05 sqrt(hbar / (m omega)) leaving at most this much Psi0 mass outside the box.
  std::optional<double> tail;
  double cap = 1e8;
};

struct GridBudget {
  std::size_t max_axes = 3;     // N * D
  std::size_t max_points = 64;  // per axis
};

double resolve_half_width(const ModelSpec& model, const GridSpec& grid);

/// Fraction of |Psi0|^2 outside the box [-L, L]^N (Riemann sum on a wide reference grid).
double outside_mass(const ModelSpec& model, double half_width);

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Either a general CSR matrix or the structured grid stencil (diagonal plus a
// uniform off-diagonal coupling to axis neighbours).
class SparseOperator {
 public:
  static SparseOperator from_triplets(std::size_t dim, const std::vector<Triplet>& entries);
  static SparseOperator grid(std::size_t points, std::size_t axes, double off, std::vector<double> diag);

  std::size_t dimension() const noexcept { return dim_; }
  std::vector<Triplet> triplets() const;
  double max_asymmetry() const;
  bool symmetric(double tol = 1e-12) const { return max_asymmetry() <= tol; }
  void apply(const double* x, double* y) const;
  std::vector<double> apply(const std::vector<double>& x) const;
  /// Gershgorin lower bound on the spectrum.
  double lower_bound() const;

 private:
  std::size_t dim_ = 0;
  bool is_grid_ = false;
  std::size_t points_ = 0, axes_ = 0;
  double off_ = 0.0;
  std::vector<double> diag_;
  std::vector<std::size_t> row_ptr_, col_;
  std::vector<double> val_;
};

/// Throws AdmissibilityError for contact pairs, missing confinement or D != 1.
void check_admissible(const ModelSpec& model);

/// Diagonal: full potential at each node (capped), plus the kinetic stencil.
SparseOperator discretize(const ModelSpec& model, const GridSpec& grid, const GridBudget& budget = {});

/// Psi on the grid nodes, scaled so that its largest entry is 1 (zeros where Psi vanishes).
std::vector<double> grid_wavefunction(const ModelSpec& model, const GridSpec& grid);

struct Eigenpairs {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
  std::size_t iterations = 0;
  double residual = 0.0;  // max ||H v - lambda v|| over the returned pairs, unit v
};

// Lanczos with full reorthogonalization; shift-invert through a sparse
// factorization when the dimension allows it. The start vector is positive
// (the stencil has nonpositive couplings, so the ground vector is too).
Eigenpairs lowest_eigenpairs(const SparseOperator& op, std::size_t k, double tol = 1e-6,
                             std::size_t max_iter = 400, std::uint64_t seed = 1);
std::pair<double, std::vector<double>> lowest_eigenpair(const SparseOperator& op, double tol = 1e-6,
                                                        std::size_t max_iter = 400, std::uint64_t seed = 1);

double rayleigh_quotient(const SparseOperator& op, const std::vector<double>& v);
/// Minimum Rayleigh quotient over random vectors orthogonalized against `ground`.
double psd_probe(const SparseOperator& op, const std::vector<double>& ground, std::size_t trials, std::uint64_t seed);
/// |<a, b>| / (|a| |b|)
double overlap(const std::vector<double>& a, const std::vector<double>& b);

struct SpectrumOptions {
  std::size_t eigenpairs = 2;
  double tol = 1e-6;
  std::size_t max_iter = 400;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  double lambda_tol = 5e-3;
  double overlap_min = 0.999;
  double psd_tol = 1e-3;
};

struct SpectrumReport {
  std::size_t points = 0;
  double half_width = 0.0;
  double outside_mass = 0.0;
  double cap = 0.0;
  std::size_t dimension = 0;
  std::vector<double> eigenvalues;
  std::size_t iterations = 0;
  double residual = 0.0;
  double overlap = 0.0;
  double psd_min = 0.0;
  std::size_t trials = 0;
  std::string isa;
  bool lambda_ok = false;
  bool overlap_ok = false;
  bool psd_ok = false;
  bool gap_ok = false;

  bool passed() const noexcept { return lambda_ok && overlap_ok && psd_ok && gap_ok; }
};

SpectrumReport run_spectrum(const ModelSpec& model, const GridSpec& grid, const SpectrumOptions& opts = {},
                            const GridBudget& budget = {});

}  // namespace gjw
