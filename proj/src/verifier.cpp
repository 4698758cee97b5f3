#include "gjw/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "gjw/errors.hpp"
#include "gjw/tabulated.hpp"

namespace gjw {

Sector default_sector(const ModelSpec& model) {
  if (model.dim() != 1) return Sector::Free;
  if (auto row = match_table_row(model); row && row->sector == Sector::Extremal) return Sector::Extremal;
  return model.pair().guarded() ? Sector::Sorted : Sector::Free;
}

namespace {

double min_edge_separation(const ModelSpec& model, const Configuration& cfg) {
  double m = std::numeric_limits<double>::infinity();
  for (const Edge& e : model.graph().edges()) m = std::min(m, cfg.distance(e.i, e.j));
  return m;
}

// Even indices take the lower half of the sorted values, odd indices the upper half.
void arrange_extremal(std::vector<double>& x, std::mt19937_64& rng) {
  std::sort(x.begin(), x.end());
  const std::size_t lo = (x.size() + 1) / 2;
  std::vector<double> low(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(lo));
  std::vector<double> high(x.begin() + static_cast<std::ptrdiff_t>(lo), x.end());
  std::shuffle(low.begin(), low.end(), rng);
  std::shuffle(high.begin(), high.end(), rng);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = i % 2 == 0 ? low[i / 2] : high[i / 2];
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double abs_log_terms(const ModelSpec& model, const Configuration& cfg) {
  double s = 0.0;
  for (const Edge& e : model.graph().edges()) {
    const double arg = model.dim() == 1 ? cfg(e.i, 0) - cfg(e.j, 0) : cfg.distance(e.i, e.j);
    s += std::fabs(e.weight * model.pair().log_value(arg));
  }
  if (const auto& ob = model.one_body())
    for (std::size_t i = 0; i < cfg.size(); ++i)
      s += std::fabs(ob->log_value(model.dim() == 1 ? cfg(i, 0) : cfg.radius(i)));
  return s;
}

double potential_scale(const PotentialBreakdown& b) {
  return std::fabs(b.v2_smooth) + std::fabs(b.v3) + std::fabs(b.v1) + std::fabs(b.v2ll);
}

}  // namespace

Configuration sample_configuration(const ModelSpec& model, const SamplingOptions& opts, std::uint64_t seed,
                                   std::size_t index) {
  if (!(opts.box > 0.0)) throw ParameterError("sampling box must be > 0");
  const std::size_t N = model.size();
  const std::size_t D = model.dim();
  Sector sector = opts.sector.value_or(default_sector(model));
  if (D != 1) sector = Sector::Free;
  const auto idx = static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> U(-opts.box, opts.box);
  const bool guarded = model.pair().guarded();
  const double gap = std::max(opts.min_gap, model.pair().guard_band());

  for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
    std::vector<double> x(N * D);
    for (double& c : x) c = U(rng);
    if (sector == Sector::Sorted) std::sort(x.begin(), x.end());
    if (sector == Sector::Extremal) arrange_extremal(x, rng);
    Configuration cfg(N, D, std::move(x));
    if (guarded && min_edge_separation(model, cfg) < gap) continue;
    if (!in_sector(sector, model.graph(), cfg)) continue;
    return cfg;
  }
  throw ParameterError("no configuration satisfies the separation gap; reduce min_gap or enlarge the box");
}

double kinetic_log_action(const ModelSpec& model, const Configuration& cfg) {
  const std::size_t D = model.dim();
  const double dm1 = static_cast<double>(D) - 1.0;
  const PairFunction& f = model.pair();
  const auto grad = log_psi_gradient(model, cfg);
  double sq = 0.0;
  for (double g : grad) sq += g * g;

  double lap = 0.0;
  for (const Edge& e : model.graph().edges()) {
    if (D == 1) {
      lap += 2.0 * e.weight * f.log_derivative_slope(cfg(e.i, 0) - cfg(e.j, 0));
    } else {
      const double r = cfg.distance(e.i, e.j);
      lap += 2.0 * e.weight * (f.log_derivative_slope(r) + dm1 * f.log_derivative(r) / r);
    }
  }
  if (const auto& ob = model.one_body()) {
    for (std::size_t i = 0; i < cfg.size(); ++i) {
      const double rho = D == 1 ? cfg(i, 0) : cfg.radius(i);
      const double G = ob->log_derivative(rho);
      lap += ob->curvature_ratio(rho) - G * G;
      if (D > 1) {
        if (rho == 0.0) throw SingularityError("confinement evaluated at the origin");
        lap += dm1 * G / rho;
      }
    }
  }
  return -0.5 * model.scale() * (lap + sq);
}

double fd_kinetic(const ModelSpec& model, const Configuration& cfg, double h) {
  if (!(h > 0.0)) throw ParameterError("step must be > 0");
  const std::size_t N = cfg.size();
  const std::size_t D = cfg.dim();
  const double f0 = log_psi(model, cfg);
  std::vector<double> x(cfg.coords().begin(), cfg.coords().end());
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double keep = x[k];
    x[k] = keep + h;
    const double fp = log_psi(model, Configuration(N, D, x));
    x[k] = keep - h;
    const double fm = log_psi(model, Configuration(N, D, x));
    x[k] = keep;
    const double d1 = (fp - fm) / (2.0 * h);
    const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
    s += d2 + d1 * d1;
  }
  return -0.5 * model.scale() * s;
}

ResidualSample fd_residual(const ModelSpec& model, const Configuration& cfg, double h, double shift, double e0) {
  if (!(h > 0.0)) throw ParameterError("step must be > 0");
  if (model.pair().guarded() && min_edge_separation(model, cfg) < 10.0 * h)
    throw StepTooLargeError("edge separation below 10h; reduce the step");
  ResidualSample s{cfg, 0.0, 0.0, 0.0, h, potentials(model, cfg)};
  s.kinetic = fd_kinetic(model, cfg, h);
  s.residual = s.kinetic + (s.components.total() - shift) - e0;
  s.scaled = std::fabs(s.residual) / (1.0 + std::fabs(s.kinetic) + potential_scale(s.components));
  return s;
}

double factorization_drift(const ModelSpec& model, const Configuration& cfg, double h) {
  if (!(h > 0.0)) throw ParameterError("step must be > 0");
  if (model.pair().guarded() && min_edge_separation(model, cfg) < 10.0 * h)
    throw StepTooLargeError("edge separation below 10h; reduce the step");
  const auto grad = log_psi_gradient(model, cfg);
  const std::size_t N = cfg.size();
  const std::size_t D = cfg.dim();
  std::vector<double> x(cfg.coords().begin(), cfg.coords().end());
  double drift = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double keep = x[k];
    x[k] = keep + h;
    const double fp = log_psi(model, Configuration(N, D, x));
    x[k] = keep - h;
    const double fm = log_psi(model, Configuration(N, D, x));
    x[k] = keep;
    drift = std::max(drift, std::fabs((fp - fm) / (2.0 * h) - grad[k]));
  }
  return drift;
}

double roundoff_floor(const ModelSpec& model, const Configuration& cfg, double h) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double n = static_cast<double>(cfg.size() * cfg.dim());
  return 0.5 * model.scale() * 16.0 * eps * (1.0 + abs_log_terms(model, cfg)) * n / (h * h);
}

namespace {

struct ShiftChoice {
  double shift = 0.0;
  std::string source;
};

ShiftChoice choose_shift(const ModelSpec& model, const std::vector<double>& totals) {
  if (auto cf = closed_form_constants(model)) return {cf->shift, "closed_form"};
  if (totals.empty()) return {0.0, "none"};
  const auto [lo, hi] = std::minmax_element(totals.begin(), totals.end());
  double mean = 0.0, mag = 0.0;
  for (double t : totals) {
    mean += t;
    mag = std::max(mag, std::fabs(t));
  }
  mean /= static_cast<double>(totals.size());
  if (*hi - *lo <= 1e-9 * (1.0 + mag)) return {mean, "constant_potential"};
  return {0.0, "none"};
}

}  // namespace

EmpiricalE0 empirical_e0(const ModelSpec& model, std::size_t sample_count, std::uint64_t seed,
                         const SamplingOptions& opts) {
  std::vector<double> kin(sample_count), tot(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const auto cfg = sample_configuration(model, opts, seed, i);
    kin[i] = kinetic_log_action(model, cfg);
    tot[i] = potentials(model, cfg).total();
  }
  const auto choice = choose_shift(model, tot);
  EmpiricalE0 out;
  out.shift = choice.shift;
  out.source = choice.source;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double e = kin[i] + tot[i] - choice.shift;
    sum += e;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  if (sample_count > 0) {
    out.e0 = sum / static_cast<double>(sample_count);
    out.spread = hi - lo;
  }
  return out;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerificationReport verify(const ModelSpec& model, const VerifyOptions& opts) {
  if (opts.samples == 0) throw ParameterError("sample count must be >= 1");
  if (!(opts.h > 0.0)) throw ParameterError("step must be > 0");
  SamplingOptions sampling = opts.sampling;
  const Sector sector = sampling.sector.value_or(default_sector(model));
  sampling.sector = sector;

  const std::size_t S = opts.samples;
  const auto row = match_table_row(model);
  const Graph& g = model.graph();
  const std::size_t n = g.size();
  const bool complete = g == make_family(GraphFamily::complete(n));
  const bool cycle = n >= 4 && g == make_family(GraphFamily::cycle(n));
  const PairKind pk = model.pair().kind();
  const bool calogero = model.dim() == 1 && complete && n >= 3 && pk == PairKind::Power;
  const bool constancy = model.dim() == 1 && n >= 3 &&
                         ((complete && (pk == PairKind::Exponential || pk == PairKind::Sinh)) ||
                          (cycle && pk == PairKind::Exponential));

  struct Work {
    std::optional<Configuration> cfg;
    PotentialBreakdown b;
    double kin_h = 0, kin_h2 = 0, kin_an = 0, drift = 0, floor = 0, wedge = 0;
    bool table_ok = true;
    double table_dev = 0;
  };
  std::vector<Work> work(S);
  parallel_for(S, opts.threads, [&](std::size_t i) {
    Work& w = work[i];
    w.cfg = sample_configuration(model, sampling, opts.seed, i);
    const Configuration& c = *w.cfg;
    if (model.pair().guarded() && min_edge_separation(model, c) < 10.0 * opts.h)
      throw StepTooLargeError("edge separation below 10h; reduce the step or raise min_gap");
    w.b = potentials(model, c);
    w.kin_h = fd_kinetic(model, c, opts.h);
    w.kin_h2 = fd_kinetic(model, c, opts.h / 2.0);
    w.kin_an = kinetic_log_action(model, c);
    w.drift = factorization_drift(model, c, opts.drift_h);
    w.floor = roundoff_floor(model, c, opts.h);
    w.wedge = wedge_magnitude(model, c);
    if (row) {
      const auto t = tabulated_potentials(*row, model, c);
      const double d2 = std::fabs(w.b.v2_smooth - t.v2) / std::max({1.0, std::fabs(t.v2), std::fabs(w.b.v2_smooth)});
      const double d3 = std::fabs(w.b.v3 - t.v3) / std::max({1.0, std::fabs(t.v3), w.wedge});
      w.table_dev = std::max(d2, d3);
      w.table_ok = w.table_dev <= opts.table_tol;
    }
  });

  std::vector<double> totals(S);
  for (std::size_t i = 0; i < S; ++i) totals[i] = work[i].b.total();
  const auto choice = choose_shift(model, totals);

  VerificationReport rep;
  rep.samples = S;
  rep.seed = opts.seed;
  rep.h = opts.h;
  rep.sector = sector;
  rep.constant_shift = choice.shift;

  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  for (const Work& w : work) {
    const double e = w.kin_an + w.b.total() - choice.shift;
    sum += e;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  rep.e0_empirical = sum / static_cast<double>(S);
  rep.e0_spread = hi - lo;
  if (opts.e0_override) {
    rep.e0 = *opts.e0_override;
    rep.e0_source = "override";
  } else if (choice.source == "closed_form") {
    rep.e0 = 0.0 - choice.shift;
    rep.e0_source = "closed_form";
  } else {
    rep.e0 = rep.e0_empirical;
    rep.e0_source = "empirical";
  }

  double sum_abs = 0.0, max_half = 0.0, floor_max = 0.0, table_dev = 0.0, cal_max = 0.0;
  double v3_lo = std::numeric_limits<double>::infinity(), v3_hi = -v3_lo, wedge_mean = 0.0;
  bool table_ok = true;
  for (std::size_t i = 0; i < S; ++i) {
    const Work& w = work[i];
    ResidualSample s{*w.cfg, 0.0, 0.0, w.kin_h, opts.h, w.b};
    s.residual = w.kin_h + (w.b.total() - choice.shift) - rep.e0;
    s.scaled = std::fabs(s.residual) / (1.0 + std::fabs(w.kin_h) + potential_scale(w.b));
    const double half = w.kin_h2 + (w.b.total() - choice.shift) - rep.e0;
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::fabs(s.residual));
    rep.max_scaled_residual = std::max(rep.max_scaled_residual, s.scaled);
    sum_abs += std::fabs(s.residual);
    max_half = std::max(max_half, std::fabs(half));
    floor_max = std::max(floor_max, w.floor);
    rep.drift_max = std::max(rep.drift_max, w.drift);
    table_ok = table_ok && w.table_ok;
    table_dev = std::max(table_dev, w.table_dev);
    if (w.wedge > 0.0) cal_max = std::max(cal_max, std::fabs(w.b.v3) / w.wedge);
    v3_lo = std::min(v3_lo, w.b.v3);
    v3_hi = std::max(v3_hi, w.b.v3);
    wedge_mean += w.wedge / static_cast<double>(S);
    rep.rows.push_back(std::move(s));
  }
  rep.mean_abs_residual = sum_abs / static_cast<double>(S);
  rep.max_abs_residual_half = max_half;
  rep.convergence_ratio = max_half > 0.0 ? rep.max_abs_residual / max_half : 0.0;
  rep.roundoff_floor = floor_max;

  rep.checks.push_back({"residual", rep.max_scaled_residual <= opts.residual_tol, rep.max_scaled_residual,
                        opts.residual_tol});
  rep.checks.push_back({"convergence",
                        rep.convergence_ratio >= opts.convergence_min || rep.max_abs_residual <= floor_max,
                        rep.convergence_ratio, opts.convergence_min});
  rep.checks.push_back({"drift", rep.drift_max <= opts.drift_tol, rep.drift_max, opts.drift_tol});
  const double e0_tol = opts.identity_tol * std::max(1.0, std::fabs(rep.e0_empirical));
  rep.checks.push_back({"e0_constancy", rep.e0_spread <= e0_tol, rep.e0_spread, e0_tol});
  if (calogero) {
    rep.calogero_cancellation = cal_max <= opts.identity_tol;
    rep.checks.push_back({"calogero_cancellation", *rep.calogero_cancellation, cal_max, opts.identity_tol});
  }
  if (constancy) {
    const double rel = (v3_hi - v3_lo) / std::max(wedge_mean, std::numeric_limits<double>::min());
    rep.v3_constancy = rel <= opts.identity_tol;
    rep.checks.push_back({"v3_constancy", *rep.v3_constancy, rel, opts.identity_tol});
  }
  if (row) {
    rep.table_match = table_ok;
    rep.checks.push_back({"table_match", table_ok, table_dev, opts.table_tol});
  }
  return rep;
}

}  // namespace gjw
