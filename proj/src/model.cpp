#include "gjw/model.hpp"

#include <cmath>

#include "gjw/errors.hpp"
#include "gjw/graph_io.hpp"
#include "gjw/tabulated.hpp"

namespace gjw {

ConfinementSpec ConfinementSpec::harmonic(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ParameterError("omega must be > 0");
  ConfinementSpec c;
  c.kind_ = ConfinementKind::Harmonic;
  c.omega_ = omega;
  return c;
}

ConfinementSpec ConfinementSpec::custom(PairAST g, ParamMap params) {
  if (g.empty()) throw ParameterError("empty confinement expression");
  for (const auto& name : g.parameters())
    if (!params.contains(name)) throw ParameterError("unbound parameter '" + name + "'");
  ConfinementSpec c;
  c.kind_ = ConfinementKind::CustomOneBody;
  c.g_ = std::move(g);
  c.params_ = std::move(params);
  return c;
}

std::string ConfinementSpec::describe() const {
  if (kind_ == ConfinementKind::Harmonic) return "harmonic(omega=" + format_number(omega_) + ")";
  std::string out = g_.to_string();
  for (const auto& [k, v] : params_) out += " " + k + "=" + format_number(v);
  return out;
}

double OneBodyFactor::log_value(double r) const { return std::log(std::fabs(g.evaluate(r, params))); }
double OneBodyFactor::log_derivative(double r) const { return dg.evaluate(r, params) / g.evaluate(r, params); }
double OneBodyFactor::curvature_ratio(double r) const {
  return d2g.evaluate(r, params) / g.evaluate(r, params);
}

ModelSpec::ModelSpec(Graph graph, PairFunction pair, std::size_t dim, double hbar, double mass,
                     std::optional<ConfinementSpec> confinement)
    : graph_(std::move(graph)),
      pair_(std::move(pair)),
      dim_(dim),
      hbar_(hbar),
      mass_(mass),
      confinement_(std::move(confinement)) {
  if (dim_ == 0) throw ParameterError("dimension must be >= 1");
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) throw ParameterError("hbar must be > 0");
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) throw ParameterError("mass must be > 0");
  if (!confinement_) return;
  OneBodyFactor ob;
  if (confinement_->kind() == ConfinementKind::Harmonic) {
    ob.g = PairAST::parse("exp(-a*x^2)", {"a"});
    ob.params = {{"a", mass_ * confinement_->omega() / (2.0 * hbar_)}};
  } else {
    ob.g = confinement_->expression();
    ob.params = confinement_->params();
  }
  ob.dg = ob.g.differentiate();
  ob.d2g = ob.dg.differentiate();
  one_body_ = std::move(ob);
}

std::string to_string(Sector s) {
  switch (s) {
    case Sector::Free: return "free";
    case Sector::Sorted: return "sorted";
    case Sector::Extremal: return "extremal";
  }
  return "?";
}

namespace {

void check_cfg(const ModelSpec& m, const Configuration& c) {
  if (c.size() != m.size() || c.dim() != m.dim())
    throw ParameterError("configuration shape does not match the model (N x D)");
}

void require_simple(const ModelSpec& m) {
  if (!m.graph().is_simple()) throw ParameterError("weighted graph: use weighted_potentials");
}

bool use_line(const ModelSpec& m, EvalPath p) {
  if (p == EvalPath::OneDim && m.dim() != 1) throw ParameterError("1D path requires dim = 1");
  return p == EvalPath::OneDim || (p == EvalPath::Auto && m.dim() == 1);
}

// d/dx_c log f on the oriented edge between c and a.
double oriented_w(const PairFunction& f, const Configuration& cfg, std::size_t c, std::size_t a) {
  return c < a ? f.log_derivative(cfg(c, 0) - cfg(a, 0)) : -f.log_derivative(cfg(a, 0) - cfg(c, 0));
}

double unit_dot(const Configuration& cfg, std::size_t c, std::size_t a, std::size_t b, double ra, double rb) {
  double s = 0.0;
  for (std::size_t d = 0; d < cfg.dim(); ++d) s += (cfg(c, d) - cfg(a, d)) * (cfg(c, d) - cfg(b, d));
  return s / (ra * rb);
}

double wedge_term(const ModelSpec& m, const Configuration& cfg, bool line, std::size_t c, std::size_t a,
                  std::size_t b) {
  const PairFunction& f = m.pair();
  if (line) return oriented_w(f, cfg, c, a) * oriented_w(f, cfg, c, b);
  const double ra = cfg.distance(c, a);
  const double rb = cfg.distance(c, b);
  return unit_dot(cfg, c, a, b, ra, rb) * f.log_derivative(ra) * f.log_derivative(rb);
}

double one_body_coord(const Configuration& cfg, std::size_t i) {
  return cfg.dim() == 1 ? cfg(i, 0) : cfg.radius(i);
}

}  // namespace

double log_psi(const ModelSpec& model, const Configuration& cfg) {
  check_cfg(model, cfg);
  const PairFunction& f = model.pair();
  double s = 0.0;
  for (const Edge& e : model.graph().edges()) {
    const double arg = model.dim() == 1 ? cfg(e.i, 0) - cfg(e.j, 0) : cfg.distance(e.i, e.j);
    s += e.weight * f.log_value(arg);
  }
  if (const auto& ob = model.one_body())
    for (std::size_t i = 0; i < cfg.size(); ++i) s += ob->log_value(one_body_coord(cfg, i));
  return s;
}

std::vector<double> log_psi_gradient(const ModelSpec& model, const Configuration& cfg) {
  check_cfg(model, cfg);
  const std::size_t D = model.dim();
  const PairFunction& f = model.pair();
  std::vector<double> grad(cfg.size() * D, 0.0);
  for (const Edge& e : model.graph().edges()) {
    if (D == 1) {
      const double w = e.weight * f.log_derivative(cfg(e.i, 0) - cfg(e.j, 0));
      grad[e.i] += w;
      grad[e.j] -= w;
      continue;
    }
    const double r = cfg.distance(e.i, e.j);
    const double w = e.weight * f.log_derivative(r);
    for (std::size_t d = 0; d < D; ++d) {
      const double u = (cfg(e.i, d) - cfg(e.j, d)) / r;
      grad[e.i * D + d] += w * u;
      grad[e.j * D + d] -= w * u;
    }
  }
  if (const auto& ob = model.one_body()) {
    for (std::size_t i = 0; i < cfg.size(); ++i) {
      if (D == 1) {
        grad[i] += ob->log_derivative(cfg(i, 0));
        continue;
      }
      const double r = cfg.radius(i);
      if (r == 0.0) continue;
      const double G = ob->log_derivative(r);
      for (std::size_t d = 0; d < D; ++d) grad[i * D + d] += G * cfg(i, d) / r;
    }
  }
  return grad;
}

double potential_2body(const ModelSpec& model, const Configuration& cfg, EvalPath path) {
  check_cfg(model, cfg);
  require_simple(model);
  const bool line = use_line(model, path);
  const PairFunction& f = model.pair();
  const double dm1 = static_cast<double>(model.dim()) - 1.0;
  double s = 0.0;
  for (const Edge& e : model.graph().edges()) {
    if (line) {
      s += f.curvature_ratio(cfg(e.i, 0) - cfg(e.j, 0));
    } else {
      const double r = cfg.distance(e.i, e.j);
      s += f.curvature_ratio(r) + dm1 * f.log_derivative(r) / r;
    }
  }
  return model.scale() * s;
}

double potential_3body(const ModelSpec& model, const Configuration& cfg, EvalPath path) {
  check_cfg(model, cfg);
  require_simple(model);
  const bool line = use_line(model, path);
  const Graph& g = model.graph();
  double s = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    auto nb = g.neighbors(c);
    for (std::size_t p = 0; p < nb.size(); ++p)
      for (std::size_t q = p + 1; q < nb.size(); ++q) s += wedge_term(model, cfg, line, c, nb[p], nb[q]);
  }
  return model.scale() * s;
}

double wedge_magnitude(const ModelSpec& model, const Configuration& cfg) {
  check_cfg(model, cfg);
  const bool line = model.dim() == 1;
  const Graph& g = model.graph();
  double s = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    auto nb = g.neighbors(c);
    for (std::size_t p = 0; p < nb.size(); ++p)
      for (std::size_t q = p + 1; q < nb.size(); ++q) {
        s += std::fabs(g.weight(c, nb[p]) * g.weight(c, nb[q]) * wedge_term(model, cfg, line, c, nb[p], nb[q]));
      }
  }
  return model.scale() * s;
}

ConfinementTerms potential_confinement(const ModelSpec& model, const Configuration& cfg, ConfinementRoute route) {
  check_cfg(model, cfg);
  ConfinementTerms out;
  if (!model.confinement()) return out;
  const std::size_t D = model.dim();
  const std::size_t N = cfg.size();
  const PairFunction& f = model.pair();

  if (route == ConfinementRoute::ClosedForm && model.confinement()->kind() == ConfinementKind::Harmonic) {
    const double w = model.confinement()->omega();
    double r2 = 0.0;
    for (double c : cfg.coords()) r2 += c * c;
    out.v1 = 0.5 * model.mass() * w * w * r2 - 0.5 * static_cast<double>(D * N) * model.hbar() * w;
    double s = 0.0;
    for (const Edge& e : model.graph().edges()) {
      if (D == 1) {
        const double x = cfg(e.i, 0) - cfg(e.j, 0);
        s += e.weight * f.log_derivative(x) * x;
      } else {
        const double r = cfg.distance(e.i, e.j);
        s += e.weight * f.log_derivative(r) * r;
      }
    }
    out.v2ll = -model.hbar() * w * s;
    return out;
  }

  const OneBodyFactor& ob = *model.one_body();
  const double dm1 = static_cast<double>(D) - 1.0;
  std::vector<double> G(N), rho(N);
  double s1 = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    rho[i] = one_body_coord(cfg, i);
    G[i] = ob.log_derivative(rho[i]);
    s1 += ob.curvature_ratio(rho[i]);
    if (D > 1) {
      if (rho[i] == 0.0) throw SingularityError("confinement evaluated at the origin");
      s1 += dm1 * G[i] / rho[i];
    }
  }
  out.v1 = 0.5 * model.scale() * s1;

  double s2 = 0.0;
  for (const Edge& e : model.graph().edges()) {
    if (D == 1) {
      s2 += e.weight * f.log_derivative(cfg(e.i, 0) - cfg(e.j, 0)) * (G[e.i] - G[e.j]);
      continue;
    }
    const double r = cfg.distance(e.i, e.j);
    double dot = 0.0;
    for (std::size_t d = 0; d < D; ++d) {
      const double u = (cfg(e.i, d) - cfg(e.j, d)) / r;
      dot += u * (G[e.i] * cfg(e.i, d) / rho[e.i] - G[e.j] * cfg(e.j, d) / rho[e.j]);
    }
    s2 += e.weight * f.log_derivative(r) * dot;
  }
  out.v2ll = model.scale() * s2;
  return out;
}

WeightedTerms weighted_potentials(const ModelSpec& model, const Configuration& cfg) {
  check_cfg(model, cfg);
  const Graph& g = model.graph();
  const PairFunction& f = model.pair();
  const std::size_t N = g.size();
  const bool line = model.dim() == 1;
  const double dm1 = static_cast<double>(model.dim()) - 1.0;
  WeightedTerms out;

  double s2 = 0.0;
  for (const Edge& e : g.edges()) {
    const double p = e.weight;
    if (line) {
      const double x = cfg(e.i, 0) - cfg(e.j, 0);
      const double w = f.log_derivative(x);
      s2 += p * f.curvature_ratio(x) + p * (p - 1.0) * w * w;
    } else {
      const double r = cfg.distance(e.i, e.j);
      const double w = f.log_derivative(r);
      s2 += p * f.curvature_ratio(r) + p * (p - 1.0) * w * w + dm1 * p * w / r;
    }
  }

  double s3 = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (j == i || g.weight(i, j) == 0.0) continue;
      for (std::size_t k = j + 1; k < N; ++k) {
        if (k == i || g.weight(i, k) == 0.0) continue;
        s3 += g.weight(i, j) * g.weight(i, k) * wedge_term(model, cfg, line, i, j, k);
      }
    }
  out.v2 = model.scale() * s2;
  out.v3 = model.scale() * s3;
  return out;
}

double mcguire_energy(std::size_t n, double g, double hbar, double mass) {
  const double N = static_cast<double>(n);
  return -hbar * hbar * g * g * N * (N * N - 1.0) / (6.0 * mass);
}

std::optional<ClosedForm> closed_form_constants(const ModelSpec& model) {
  auto row = match_table_row(model);
  if (!row) return std::nullopt;
  ClosedForm cf;
  cf.row = row->name;
  cf.v2c = model.scale() * row->v2c;
  cf.v3c = model.scale() * row->v3c;
  cf.sector = row->sector;
  if (const auto& conf = model.confinement(); conf && conf->kind() == ConfinementKind::Harmonic) {
    const double w = conf->omega();
    cf.v1c = -0.5 * static_cast<double>(model.dim() * model.size()) * model.hbar() * w;
    if (model.pair().kind() == PairKind::Power) {
      double p = 0.0;
      for (const Edge& e : model.graph().edges()) p += e.weight;
      cf.v2llc = -model.hbar() * w * model.pair().g() * p;
    }
  }
  cf.shift = cf.v2c + cf.v3c + cf.v1c + cf.v2llc;
  cf.e0 = 0.0 - cf.shift;
  return cf;
}

PotentialBreakdown potentials(const ModelSpec& model, const Configuration& cfg) {
  PotentialBreakdown b;
  if (model.graph().is_simple()) {
    b.v2_smooth = potential_2body(model, cfg);
    b.v3 = potential_3body(model, cfg);
  } else {
    const auto w = weighted_potentials(model, cfg);
    b.v2_smooth = w.v2;
    b.v3 = w.v3;
  }
  const auto conf = potential_confinement(model, cfg);
  b.v1 = conf.v1;
  b.v2ll = conf.v2ll;
  if (auto cf = closed_form_constants(model)) {
    b.constant_shift = cf->shift;
    b.e0 = cf->e0;
  }
  if (model.dim() == 1) {
    const auto c = model.pair().delta_coefficient();
    if (!c) {
      b.delta_unknown = true;
    } else if (*c != 0.0) {
      for (const Edge& e : model.graph().edges()) b.delta_terms.push_back({e, model.scale() * *c * e.weight});
    }
  }
  return b;
}

}  // namespace gjw
