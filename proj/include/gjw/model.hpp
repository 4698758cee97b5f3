#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gjw/configuration.hpp"
#include "gjw/graph.hpp"
#include "gjw/pair_function.hpp"

namespace gjw {

enum class ConfinementKind { Harmonic, CustomOneBody };

// One-body factor g~(r) multiplying the graph wavefunction. In D = 1 it is a
// function of the signed coordinate x_i, otherwise of the radius |r_i|.
class ConfinementSpec {
 public:
  static ConfinementSpec harmonic(double omega);
  static ConfinementSpec custom(PairAST g, ParamMap params);

  ConfinementKind kind() const noexcept { return kind_; }
  double omega() const noexcept { return omega_; }
  const PairAST& expression() const noexcept { return g_; }
  const ParamMap& params() const noexcept { return params_; }
  std::string describe() const;

 private:
  ConfinementKind kind_ = ConfinementKind::Harmonic;
  double omega_ = 0.0;
  PairAST g_;
  ParamMap params_;
};

// Symbolic g~ with first and second derivatives, ready for evaluation.
struct OneBodyFactor {
  PairAST g, dg, d2g;
  ParamMap params;

  double log_value(double r) const;
  double log_derivative(double r) const;
  double curvature_ratio(double r) const;
};

class ModelSpec {
 public:
  ModelSpec(Graph graph, PairFunction pair, std::size_t dim = 1, double hbar = 1.0, double mass = 1.0,
            std::optional<ConfinementSpec> confinement = std::nullopt);

  const Graph& graph() const noexcept { return graph_; }
  const PairFunction& pair() const noexcept { return pair_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return graph_.size(); }
  double hbar() const noexcept { return hbar_; }
  double mass() const noexcept { return mass_; }
  /// hbar^2 / m
  double scale() const noexcept { return hbar_ * hbar_ / mass_; }
  const std::optional<ConfinementSpec>& confinement() const noexcept { return confinement_; }
  /// Symbolic form of the confinement factor; harmonic is exp(-a x^2), a = m omega / 2 hbar.
  const std::optional<OneBodyFactor>& one_body() const noexcept { return one_body_; }

 private:
  Graph graph_;
  PairFunction pair_;
  std::size_t dim_;
  double hbar_;
  double mass_;
  std::optional<ConfinementSpec> confinement_;
  std::optional<OneBodyFactor> one_body_;
};

// Sampling sectors for D = 1. Extremal: every wedge center lies above both
// legs or below both legs, so sgn(x_c - x_a) sgn(x_c - x_b) = +1.
enum class Sector { Free, Sorted, Extremal };

std::string to_string(Sector s);

enum class EvalPath { Auto, General, OneDim };
enum class ConfinementRoute { ClosedForm, General };

// In D = 1 edges are oriented from the lower to the higher index, so the
// pair function is evaluated at x_i - x_j with i < j; wedge terms use the
// separation center - leg. For even f this is the same as w(x_c - x_a).

double log_psi(const ModelSpec& model, const Configuration& cfg);
/// Analytic grad_i log Psi, particle-major (N*D), including confinement.
std::vector<double> log_psi_gradient(const ModelSpec& model, const Configuration& cfg);

/// Smooth two-body part, simple graphs only.
double potential_2body(const ModelSpec& model, const Configuration& cfg, EvalPath path = EvalPath::Auto);
/// Wedge sum, simple graphs only.
double potential_3body(const ModelSpec& model, const Configuration& cfg, EvalPath path = EvalPath::Auto);
/// (hbar^2/m) sum over wedges of |wedge term|; scale for cancellation checks.
double wedge_magnitude(const ModelSpec& model, const Configuration& cfg);

struct ConfinementTerms {
  double v1 = 0.0;
  double v2ll = 0.0;
};
ConfinementTerms potential_confinement(const ModelSpec& model, const Configuration& cfg,
                                       ConfinementRoute route = ConfinementRoute::ClosedForm);

struct WeightedTerms {
  double v2 = 0.0;
  double v3 = 0.0;
};
/// p-weighted two- and three-body terms; v3 as a sum over all triples.
WeightedTerms weighted_potentials(const ModelSpec& model, const Configuration& cfg);

struct ClosedForm {
  std::string row;
  double v2c = 0.0;   // constant part of V2
  double v3c = 0.0;   // constant part of V3
  double v1c = 0.0;   // -(D/2) N hbar omega for harmonic confinement
  double v2llc = 0.0; // -hbar omega g sum p for Power pairs under harmonic confinement
  double shift = 0.0; // sum of the above
  double e0 = 0.0;    // -shift
  Sector sector = Sector::Free;
};
std::optional<ClosedForm> closed_form_constants(const ModelSpec& model);

double mcguire_energy(std::size_t n, double g, double hbar = 1.0, double mass = 1.0);

struct DeltaTerm {
  Edge edge;
  double coefficient;  // multiplies delta(x_i - x_j)
};

struct PotentialBreakdown {
  double v2_smooth = 0.0;
  double v3 = 0.0;
  double v1 = 0.0;
  double v2ll = 0.0;
  double constant_shift = 0.0;
  std::vector<DeltaTerm> delta_terms;
  bool delta_unknown = false;
  std::optional<double> e0;

  double total() const noexcept { return v2_smooth + v3 + v1 + v2ll; }
};

/// Every term at `cfg`. Weighted graphs route through weighted_potentials.
PotentialBreakdown potentials(const ModelSpec& model, const Configuration& cfg);

}  // namespace gjw
