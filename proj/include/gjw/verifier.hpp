#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gjw/model.hpp"

namespace gjw {

struct SamplingOptions {
  double box = 2.0;       // coordinates uniform in [-box, box]
  double min_gap = 0.5;   // guarded pairs: reject when an edge separation is below this
  std::optional<Sector> sector;
  std::size_t max_attempts = 1u << 22;
};

/// Sector implied by the model: extremal for table rows that need it, sorted
/// for guarded pairs in D = 1, otherwise free.
Sector default_sector(const ModelSpec& model);

/// Deterministic in (seed, index).
Configuration sample_configuration(const ModelSpec& model, const SamplingOptions& opts, std::uint64_t seed,
                                   std::size_t index);

/// (T Psi)/Psi from the analytic gradient and Laplacian of log Psi.
double kinetic_log_action(const ModelSpec& model, const Configuration& cfg);

/// (T Psi)/Psi from second-order central differences of log Psi.
double fd_kinetic(const ModelSpec& model, const Configuration& cfg, double h);

struct ResidualSample {
  Configuration cfg;
  double residual = 0.0;  // FD kinetic + (potential - shift) - E0
  double scaled = 0.0;    // |residual| / (1 + |kinetic| + sum |potential terms|)
  double kinetic = 0.0;
  double fd_step = 0.0;
  PotentialBreakdown components;
};

/// `shift` is the constant removed from the potential, `e0` the energy it implies.
ResidualSample fd_residual(const ModelSpec& model, const Configuration& cfg, double h, double shift, double e0);

/// max |FD grad log Psi - analytic grad log Psi| over all components.
double factorization_drift(const ModelSpec& model, const Configuration& cfg, double h = 1e-4);

/// Cancellation floor of the FD Laplacian of log Psi at step h.
double roundoff_floor(const ModelSpec& model, const Configuration& cfg, double h);

struct EmpiricalE0 {
  double e0 = 0.0;
  double spread = 0.0;
  double shift = 0.0;
  std::string source;  // closed_form, constant_potential or none
};

/// Mean of kinetic + (potential - shift) over sampled configurations.
EmpiricalE0 empirical_e0(const ModelSpec& model, std::size_t sample_count, std::uint64_t seed,
                         const SamplingOptions& opts = {});

struct VerifyOptions {
  std::size_t samples = 50;
  std::uint64_t seed = 0;
  double h = 1e-3;
  SamplingOptions sampling;
  std::optional<double> e0_override;
  double residual_tol = 1e-5;
  double convergence_min = 3.5;
  double drift_h = 1e-4;
  double drift_tol = 1e-6;
  double identity_tol = 1e-9;
  double table_tol = 1e-10;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct VerificationReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double h = 0.0;
  Sector sector = Sector::Free;
  double e0 = 0.0;
  std::string e0_source;
  double e0_empirical = 0.0;
  double e0_spread = 0.0;
  double constant_shift = 0.0;
  double max_abs_residual = 0.0;
  double mean_abs_residual = 0.0;
  double max_scaled_residual = 0.0;
  double max_abs_residual_half = 0.0;
  double convergence_ratio = 0.0;
  double roundoff_floor = 0.0;
  double drift_max = 0.0;
  std::optional<bool> calogero_cancellation;
  std::optional<bool> v3_constancy;
  std::optional<bool> table_match;
  std::vector<CheckResult> checks;
  std::vector<ResidualSample> rows;

  bool passed() const;
};

VerificationReport verify(const ModelSpec& model, const VerifyOptions& opts);

}  // namespace gjw
