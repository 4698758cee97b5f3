#include "gjw/pair_function.hpp"

#include <cmath>

#include "gjw/errors.hpp"
#include "gjw/graph_io.hpp"

namespace gjw {

std::string to_string(PairKind kind) {
  switch (kind) {
    case PairKind::Power: return "power";
    case PairKind::Exponential: return "exponential";
    case PairKind::Gaussian: return "gaussian";
    case PairKind::Sinh: return "sinh";
    case PairKind::Custom: return "custom";
  }
  return "?";
}

namespace {
void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ParameterError(std::string(what) + " must be finite");
}
}  // namespace

PairFunction PairFunction::power(double g) {
  require_finite(g, "g");
  PairFunction f;
  f.kind_ = PairKind::Power;
  f.g_ = g;
  f.guarded_ = true;
  return f;
}

PairFunction PairFunction::exponential(double g) {
  require_finite(g, "g");
  PairFunction f;
  f.kind_ = PairKind::Exponential;
  f.g_ = g;
  f.guarded_ = true;
  f.kinked_ = true;
  return f;
}

PairFunction PairFunction::gaussian(double g) {
  require_finite(g, "g");
  PairFunction f;
  f.kind_ = PairKind::Gaussian;
  f.g_ = g;
  return f;
}

PairFunction PairFunction::sinh(double g, double ell) {
  require_finite(g, "g");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw ParameterError("ell must be > 0");
  PairFunction f;
  f.kind_ = PairKind::Sinh;
  f.g_ = g;
  f.ell_ = ell;
  f.guarded_ = true;
  return f;
}

PairFunction PairFunction::custom(PairAST expr, ParamMap params) {
  if (expr.empty()) throw ParameterError("empty pair expression");
  for (const auto& name : expr.parameters()) {
    auto it = params.find(name);
    if (it == params.end()) throw ParameterError("unbound parameter '" + name + "'");
    require_finite(it->second, name.c_str());
  }
  PairFunction f;
  f.kind_ = PairKind::Custom;
  f.f_ = std::move(expr);
  f.df_ = f.f_.differentiate();
  f.d2f_ = f.df_.differentiate();
  f.params_ = std::move(params);
  f.kinked_ = f.f_.contains(Op::Abs) || f.f_.contains(Op::Sgn);
  const double at0 = f.f_.evaluate(0.0, f.params_);
  f.guarded_ = f.kinked_ || at0 == 0.0 || !std::isfinite(at0);
  return f;
}

void PairFunction::check(double x) const {
  if (guarded_ && !(std::fabs(x) >= guard_))
    throw SingularityError(to_string(kind_) + " pair evaluated inside guard band at x=" + format_number(x));
}

double PairFunction::log_value(double x) const {
  check(x);
  switch (kind_) {
    case PairKind::Power: return g_ * std::log(std::fabs(x));
    case PairKind::Exponential: return g_ * std::fabs(x);
    case PairKind::Gaussian: return g_ * x * x;
    case PairKind::Sinh: return g_ * std::log(std::fabs(std::sinh(x / ell_)));
    case PairKind::Custom: return std::log(std::fabs(f_.evaluate(x, params_)));
  }
  return 0.0;
}

double PairFunction::log_derivative(double x) const {
  check(x);
  switch (kind_) {
    case PairKind::Power: return g_ / x;
    case PairKind::Exponential: return x > 0.0 ? g_ : -g_;
    case PairKind::Gaussian: return 2.0 * g_ * x;
    case PairKind::Sinh: return g_ / ell_ / std::tanh(x / ell_);
    case PairKind::Custom: return df_.evaluate(x, params_) / f_.evaluate(x, params_);
  }
  return 0.0;
}

double PairFunction::curvature_ratio(double x) const {
  check(x);
  switch (kind_) {
    case PairKind::Power: return g_ * (g_ - 1.0) / (x * x);
    case PairKind::Exponential: return g_ * g_;
    case PairKind::Gaussian: return 2.0 * g_ + 4.0 * g_ * g_ * x * x;
    case PairKind::Sinh: {
      const double s = std::sinh(x / ell_);
      return g_ / (ell_ * ell_) * (g_ + (g_ - 1.0) / (s * s));
    }
    case PairKind::Custom: return d2f_.evaluate(x, params_) / f_.evaluate(x, params_);
  }
  return 0.0;
}

double PairFunction::log_derivative_slope(double x) const {
  check(x);
  switch (kind_) {
    case PairKind::Power: return -g_ / (x * x);
    case PairKind::Exponential: return 0.0;
    case PairKind::Gaussian: return 2.0 * g_;
    case PairKind::Sinh: {
      const double s = std::sinh(x / ell_);
      return -g_ / (ell_ * ell_ * s * s);
    }
    case PairKind::Custom: {
      const double w = log_derivative(x);
      return curvature_ratio(x) - w * w;
    }
  }
  return 0.0;
}

std::optional<double> PairFunction::delta_coefficient() const {
  switch (kind_) {
    case PairKind::Exponential: return 2.0 * g_;
    case PairKind::Custom:
      if (kinked_) return std::nullopt;
      return 0.0;
    default: return 0.0;
  }
}

std::string PairFunction::describe() const {
  switch (kind_) {
    case PairKind::Power: return "abs(x)^" + format_number(g_);
    case PairKind::Exponential: return "exp(" + format_number(g_) + "*abs(x))";
    case PairKind::Gaussian: return "exp(" + format_number(g_) + "*x^2)";
    case PairKind::Sinh:
      return "abs(sinh(x/" + format_number(ell_) + "))^" + format_number(g_);
    case PairKind::Custom: {
      std::string out = f_.to_string();
      for (const auto& [k, v] : params_) out += " " + k + "=" + format_number(v);
      return out;
    }
  }
  return {};
}

}  // namespace gjw
