#pragma once

#include <optional>
#include <string>

#include "gjw/pair_ast.hpp"

namespace gjw {

enum class PairKind { Power, Exponential, Gaussian, Sinh, Custom };

std::string to_string(PairKind kind);

// Pair function f of a signed separation x, with
//   w  = f'/f          (log_derivative)
//   v  = f''/f         (curvature_ratio, smooth part)
//   w' = v - w^2       (log_derivative_slope)
// Built-ins:
//   Power(g)        f = |x|^g               w = g/x             v = g(g-1)/x^2
//   Exponential(g)  f = exp(g|x|)           w = g sgn(x)        v = g^2, contact 2g
//   Gaussian(g)     f = exp(g x^2)          w = 2gx             v = 2g + 4g^2 x^2
//   Sinh(g, l)      f = |sinh(x/l)|^g       w = (g/l)coth(x/l)  v = (g/l^2)[g + (g-1)/sinh^2(x/l)]
class PairFunction {
 public:
  static PairFunction power(double g);
  static PairFunction exponential(double g);
  static PairFunction gaussian(double g);
  static PairFunction sinh(double g, double ell);
  /// `f` may reference parameters; all of them must be bound in `params`.
  static PairFunction custom(PairAST f, ParamMap params);

  PairKind kind() const noexcept { return kind_; }
  double g() const noexcept { return g_; }
  double ell() const noexcept { return ell_; }
  const PairAST& expression() const noexcept { return f_; }
  const ParamMap& params() const noexcept { return params_; }

  double log_value(double x) const;
  double log_derivative(double x) const;
  double curvature_ratio(double x) const;
  double log_derivative_slope(double x) const;

  /// Coefficient c of c*delta(x) in f''/f. nullopt when it cannot be determined.
  std::optional<double> delta_coefficient() const;

  /// True when f has a kink or a zero/singularity at the origin.
  bool guarded() const noexcept { return guarded_; }
  /// True when f has an |x| kink that carries contact terms (Exponential, custom abs/sgn).
  bool kinked() const noexcept { return kinked_; }
  double guard_band() const noexcept { return guard_; }

  std::string describe() const;

 private:
  PairFunction() = default;
  void check(double x) const;

  PairKind kind_ = PairKind::Power;
  double g_ = 0.0;
  double ell_ = 1.0;
  PairAST f_, df_, d2f_;
  ParamMap params_;
  bool guarded_ = false;
  bool kinked_ = false;
  double guard_ = 1e-8;
};

}  // namespace gjw
