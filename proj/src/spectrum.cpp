#include "gjw/spectrum.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "gjw/errors.hpp"
#include "gjw/simd/kernels.hpp"

namespace gjw {

namespace {

double confinement_length(const ModelSpec& model) {
  if (!model.confinement() || model.confinement()->kind() != ConfinementKind::Harmonic)
    throw ParameterError("box half-width required without harmonic confinement");
  return std::sqrt(model.hbar() / (model.mass() * model.confinement()->omega()));
}

// |Psi0|^2 at the nodes of a cell-centred grid over [-12 l, 12 l]^N, paired
// with the box half-width each node needs (max_i |x_i|), sorted by the latter.
struct TailProfile {
  std::vector<std::pair<double, double>> nodes;
  double total = 0.0;
};

TailProfile tail_profile(const ModelSpec& model) {
  if (model.dim() != 1) throw AdmissibilityError("grid diagonalization supports D = 1 only");
  const double len = confinement_length(model);
  const std::size_t n = model.size();
  const std::size_t k = n <= 2 ? 240 : 120;
  const double R = 12.0 * len, d = 2.0 * R / static_cast<double>(k);
  std::size_t dim = 1;
  for (std::size_t a = 0; a < n; ++a) dim *= k;
  std::vector<double> lp(dim), reach(dim), x(n);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t rest = i;
    double m = 0.0;
    for (std::size_t a = n; a-- > 0;) {
      x[a] = -R + (static_cast<double>(rest % k) + 0.5) * d;
      m = std::max(m, std::fabs(x[a]));
      rest /= k;
    }
    reach[i] = m;
    double v = -std::numeric_limits<double>::infinity();
    try {
      v = 2.0 * log_psi(model, Configuration::line(x));
    } catch (const SingularityError&) {
    }
    lp[i] = std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
    top = std::max(top, lp[i]);
  }
  TailProfile out;
  out.nodes.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double p = std::exp(lp[i] - top);
    out.nodes.emplace_back(reach[i], p);
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  for (const auto& [r, p] : out.nodes) out.total += p;
  return out;
}

}  // namespace

double outside_mass(const ModelSpec& model, double half_width) {
  const auto prof = tail_profile(model);
  double out = 0.0;
  for (auto it = prof.nodes.rbegin(); it != prof.nodes.rend() && it->first > half_width; ++it) out += it->second;
  return out / prof.total;
}

double resolve_half_width(const ModelSpec& model, const GridSpec& grid) {
  if (grid.half_width) {
    if (!(*grid.half_width > 0.0)) throw ParameterError("box half-width must be > 0");
    return *grid.half_width;
  }
  const double len = confinement_length(model);
  if (!grid.tail) return grid.multiple * len;
  if (!(*grid.tail > 0.0 && *grid.tail < 1.0)) throw ParameterError("tail mass must be in (0, 1)");
  const auto prof = tail_profile(model);
  // Walk inward from the outermost node until the excluded mass would exceed the tail.
  double excluded = 0.0, reach = prof.nodes.back().first;
  for (auto it = prof.nodes.rbegin(); it != prof.nodes.rend(); ++it) {
    if (excluded + it->second > *grid.tail * prof.total) {
      reach = it->first;
      break;
    }
    excluded += it->second;
  }
  const double step = 0.05 * len;
  return std::ceil(reach / step - 1e-9) * step;
}

SparseOperator SparseOperator::from_triplets(std::size_t dim, const std::vector<Triplet>& entries) {
  SparseOperator op;
  op.dim_ = dim;
  std::vector<Triplet> t = entries;
  for (const auto& e : t)
    if (e.row >= dim || e.col >= dim) throw ParameterError("triplet index out of range");
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  op.row_ptr_.assign(dim + 1, 0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k > 0 && t[k].row == t[k - 1].row && t[k].col == t[k - 1].col) {
      op.val_.back() += t[k].value;  // duplicates are summed
      continue;
    }
    op.col_.push_back(t[k].col);
    op.val_.push_back(t[k].value);
    ++op.row_ptr_[t[k].row + 1];
  }
  for (std::size_t r = 0; r < dim; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
  return op;
}

SparseOperator SparseOperator::grid(std::size_t points, std::size_t axes, double off, std::vector<double> diag) {
  std::size_t dim = 1;
  for (std::size_t a = 0; a < axes; ++a) dim *= points;
  if (diag.size() != dim) throw ParameterError("diagonal size does not match the grid");
  SparseOperator op;
  op.dim_ = dim;
  op.is_grid_ = true;
  op.points_ = points;
  op.axes_ = axes;
  op.off_ = off;
  op.diag_ = std::move(diag);
  return op;
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> out;
  if (!is_grid_) {
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) out.push_back({r, col_[p], val_[p]});
    return out;
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    std::size_t stride = dim_;
    std::vector<Triplet> row;
    row.push_back({i, i, diag_[i]});
    for (std::size_t a = 0; a < axes_; ++a) {
      stride /= points_;
      const std::size_t k = (i / stride) % points_;
      if (k > 0) row.push_back({i, i - stride, off_});
      if (k + 1 < points_) row.push_back({i, i + stride, off_});
    }
    std::sort(row.begin(), row.end(), [](const Triplet& a, const Triplet& b) { return a.col < b.col; });
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

double SparseOperator::max_asymmetry() const {
  if (is_grid_) return 0.0;  // one coupling constant in both directions
  double m = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const std::size_t c = col_[p];
      const auto* b = col_.data() + row_ptr_[c];
      const auto* e = col_.data() + row_ptr_[c + 1];
      const auto* it = std::lower_bound(b, e, r);
      const double mirror = (it != e && *it == r) ? val_[static_cast<std::size_t>(it - col_.data())] : 0.0;
      m = std::max(m, std::fabs(val_[p] - mirror));
    }
  return m;
}

void SparseOperator::apply(const double* x, double* y) const {
  if (is_grid_) {
    simd::stencil_apply({points_, axes_, off_, diag_.data()}, x, y);
    return;
  }
  for (std::size_t r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) s += val_[p] * x[col_[p]];
    y[r] = s;
  }
}

std::vector<double> SparseOperator::apply(const std::vector<double>& x) const {
  if (x.size() != dim_) throw ParameterError("vector size does not match the operator");
  std::vector<double> y(dim_);
  apply(x.data(), y.data());
  return y;
}

double SparseOperator::lower_bound() const {
  double lb = std::numeric_limits<double>::infinity();
  if (is_grid_) {
    const double ring = 2.0 * static_cast<double>(axes_) * std::fabs(off_);
    for (double d : diag_) lb = std::min(lb, d - ring);
    return lb;
  }
  for (std::size_t r = 0; r < dim_; ++r) {
    double d = 0.0, ring = 0.0;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      if (col_[p] == r)
        d += val_[p];
      else
        ring += std::fabs(val_[p]);
    }
    lb = std::min(lb, d - ring);
  }
  return lb;
}

void check_admissible(const ModelSpec& model) {
  if (model.dim() != 1) throw AdmissibilityError("grid diagonalization supports D = 1 only");
  if (!model.confinement()) throw AdmissibilityError("confinement required for a normalizable ground state");
  if (model.graph().edges().empty()) return;
  const PairFunction& f = model.pair();
  switch (f.kind()) {
    case PairKind::Exponential:
      throw AdmissibilityError("contact (exponential) pairs are excluded from grid diagonalization");
    case PairKind::Power:
      if (f.g() < 2.0) throw AdmissibilityError("power pair requires g >= 2");
      break;
    case PairKind::Sinh:
      if (f.g() < 2.0) throw AdmissibilityError("sinh pair requires g >= 2");
      break;
    case PairKind::Gaussian:
      if (!(f.g() < 0.0)) throw AdmissibilityError("gaussian pair requires g < 0");
      break;
    case PairKind::Custom:
      if (f.kinked()) throw AdmissibilityError("custom pair with abs/sgn has unknown contact terms");
      break;
  }
}

namespace {

void check_budget(const ModelSpec& model, const GridSpec& grid, const GridBudget& budget) {
  const std::size_t axes = model.size() * model.dim();
  if (grid.points < 8) throw ParameterError("grid needs at least 8 points per axis");
  if (axes > budget.max_axes || grid.points > budget.max_points)
    throw BudgetError("grid of " + std::to_string(grid.points) + "^" + std::to_string(axes) +
                      " nodes exceeds the budget (N*D <= " + std::to_string(budget.max_axes) +
                      ", points <= " + std::to_string(budget.max_points) + ")");
}

template <class Fn>
void for_each_node(std::size_t points, std::size_t axes, double L, Fn&& fn) {
  const double dx = 2.0 * L / static_cast<double>(points + 1);
  std::size_t dim = 1;
  for (std::size_t a = 0; a < axes; ++a) dim *= points;
  std::vector<double> x(axes);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t rest = i;
    for (std::size_t a = axes; a-- > 0;) {
      x[a] = -L + static_cast<double>(rest % points + 1) * dx;
      rest /= points;
    }
    fn(i, x);
  }
}

}  // namespace

SparseOperator discretize(const ModelSpec& model, const GridSpec& grid, const GridBudget& budget) {
  check_budget(model, grid, budget);
  check_admissible(model);
  const double L = resolve_half_width(model, grid);
  const std::size_t axes = model.size();
  const double dx = 2.0 * L / static_cast<double>(grid.points + 1);
  const double t = model.scale() / (dx * dx);
  std::size_t dim = 1;
  for (std::size_t a = 0; a < axes; ++a) dim *= grid.points;
  std::vector<double> diag(dim);
  for_each_node(grid.points, axes, L, [&](std::size_t i, const std::vector<double>& x) {
    double v = grid.cap;
    try {
      v = potentials(model, Configuration::line(x)).total();
    } catch (const SingularityError&) {
      v = grid.cap;
    }
    if (!std::isfinite(v) || v > grid.cap) v = grid.cap;
    diag[i] = v + static_cast<double>(axes) * t;
  });
  return SparseOperator::grid(grid.points, axes, -0.5 * t, std::move(diag));
}

std::vector<double> grid_wavefunction(const ModelSpec& model, const GridSpec& grid) {
  const double L = resolve_half_width(model, grid);
  const std::size_t axes = model.size() * model.dim();
  std::size_t dim = 1;
  for (std::size_t a = 0; a < axes; ++a) dim *= grid.points;
  std::vector<double> lp(dim, -std::numeric_limits<double>::infinity());
  for_each_node(grid.points, axes, L, [&](std::size_t i, const std::vector<double>& x) {
    try {
      const double v = log_psi(model, Configuration::line(x));
      if (std::isfinite(v)) lp[i] = v;
    } catch (const SingularityError&) {
    }
  });
  const double top = *std::max_element(lp.begin(), lp.end());
  std::vector<double> psi(dim);
  for (std::size_t i = 0; i < dim; ++i) psi[i] = std::isfinite(lp[i]) ? std::exp(lp[i] - top) : 0.0;
  return psi;
}

namespace {

using Apply = std::function<void(const double*, double*)>;

struct Ritz {
  std::vector<double> theta;
  std::vector<std::vector<double>> vectors;
  std::size_t iterations = 0;
};

// Lanczos on a symmetric operator, keeping the k largest Ritz pairs.
Ritz lanczos(std::size_t n, const Apply& op, std::size_t k, std::size_t max_iter, std::uint64_t seed) {
  const double rel_tol = 1e-13;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-0.1, 0.1);
  std::vector<std::vector<double>> Q;
  std::vector<double> alpha, beta;
  std::vector<double> q(n);
  for (double& v : q) v = 1.0 + U(rng);
  simd::scale(1.0 / simd::nrm2(q.data(), n), q.data(), n);
  Q.push_back(q);

  const std::size_t limit = std::min(max_iter, n);
  Ritz out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  for (std::size_t j = 0; j < limit; ++j) {
    std::vector<double> w(n);
    op(Q[j].data(), w.data());
    const double a = simd::dot(Q[j].data(), w.data(), n);
    alpha.push_back(a);
    simd::axpy(-a, Q[j].data(), w.data(), n);
    if (j > 0) simd::axpy(-beta[j - 1], Q[j - 1].data(), w.data(), n);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qi : Q) simd::axpy(-simd::dot(qi.data(), w.data(), n), qi.data(), w.data(), n);
    const double b = simd::nrm2(w.data(), n);

    const std::size_t m = j + 1;
    Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(m));
    Eigen::VectorXd e(static_cast<Eigen::Index>(m > 1 ? m - 1 : 0));
    for (std::size_t i = 0; i + 1 < m; ++i) e(static_cast<Eigen::Index>(i)) = beta[i];
    es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    const std::size_t want = std::min(k, m);
    bool done = m >= k;
    const double scale_ref = std::max(std::fabs(es.eigenvalues()(0)), std::fabs(es.eigenvalues()(static_cast<Eigen::Index>(m - 1))));
    for (std::size_t t = 0; t < want && done; ++t) {
      const auto idx = static_cast<Eigen::Index>(m - 1 - t);
      const double est = std::fabs(b * es.eigenvectors()(static_cast<Eigen::Index>(m - 1), idx));
      done = est <= rel_tol * std::max(scale_ref, std::numeric_limits<double>::min());
    }
    const bool invariant = b <= 1e-14 * std::max(scale_ref, 1.0);
    out.iterations = m;
    if (done || invariant || j + 1 == limit) {
      for (std::size_t t = 0; t < want; ++t) {
        const auto idx = static_cast<Eigen::Index>(m - 1 - t);
        std::vector<double> v(n, 0.0);
        for (std::size_t i = 0; i < m; ++i)
          simd::axpy(es.eigenvectors()(static_cast<Eigen::Index>(i), idx), Q[i].data(), v.data(), n);
        simd::scale(1.0 / simd::nrm2(v.data(), n), v.data(), n);
        out.theta.push_back(es.eigenvalues()(idx));
        out.vectors.push_back(std::move(v));
      }
      return out;
    }
    beta.push_back(b);
    simd::scale(1.0 / b, w.data(), n);
    Q.push_back(std::move(w));
  }
  return out;
}

// Above this dimension the sparse factorization gives way to conjugate gradients.
constexpr std::size_t kDirectLimit = 20000;

}  // namespace

Eigenpairs lowest_eigenpairs(const SparseOperator& op, std::size_t k, double tol, std::size_t max_iter,
                             std::uint64_t seed) {
  const std::size_t n = op.dimension();
  if (n == 0 || k == 0) throw ParameterError("empty operator or k = 0");
  k = std::min(k, n);
  Eigenpairs out;
  Ritz ritz;
  // Shift below the spectrum so H - sigma is positive definite, then iterate on its inverse.
  const double sigma = op.lower_bound() - 1.0;
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& t : op.triplets())
    trips.emplace_back(static_cast<int>(t.row), static_cast<int>(t.col), t.value - (t.row == t.col ? sigma : 0.0));
  Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  A.setFromTriplets(trips.begin(), trips.end());
  using Vec = Eigen::Map<Eigen::VectorXd>;
  using CVec = Eigen::Map<const Eigen::VectorXd>;
  const auto len = static_cast<Eigen::Index>(n);
  if (n <= kDirectLimit) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw ConvergenceError(0, std::numeric_limits<double>::quiet_NaN());
    ritz = lanczos(n, [&](const double* x, double* y) { Vec(y, len) = ldlt.solve(CVec(x, len)); }, k, max_iter,
                   seed);
  } else {
    // Jacobi scaling absorbs the capped nodes; the rest is a well conditioned Laplacian.
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg(A);
    cg.setTolerance(1e-13);
    cg.setMaxIterations(4 * static_cast<Eigen::Index>(n));
    ritz = lanczos(n, [&](const double* x, double* y) { Vec(y, len) = cg.solve(CVec(x, len)); }, k, max_iter, seed);
  }
  for (double mu : ritz.theta) out.values.push_back(sigma + 1.0 / mu);
  out.iterations = ritz.iterations;
  out.vectors = std::move(ritz.vectors);
  std::vector<double> hv(n);
  for (std::size_t t = 0; t < out.values.size(); ++t) {
    auto& v = out.vectors[t];
    double sum = 0.0;
    for (double c : v) sum += c;
    if (sum < 0.0) simd::scale(-1.0, v.data(), n);
    op.apply(v.data(), hv.data());
    out.values[t] = simd::dot(v.data(), hv.data(), n);
    simd::axpy(-out.values[t], v.data(), hv.data(), n);
    out.residual = std::max(out.residual, simd::nrm2(hv.data(), n));
  }
  if (out.values.size() < k || !(out.residual <= tol)) throw ConvergenceError(out.iterations, out.residual);
  return out;
}

std::pair<double, std::vector<double>> lowest_eigenpair(const SparseOperator& op, double tol, std::size_t max_iter,
                                                        std::uint64_t seed) {
  auto r = lowest_eigenpairs(op, 1, tol, max_iter, seed);
  return {r.values[0], std::move(r.vectors[0])};
}

double rayleigh_quotient(const SparseOperator& op, const std::vector<double>& v) {
  const std::size_t n = op.dimension();
  if (v.size() != n) throw ParameterError("vector size does not match the operator");
  const double vv = simd::dot(v.data(), v.data(), n);
  if (!(vv > 0.0)) throw ParameterError("rayleigh quotient of a zero vector");
  const auto hv = op.apply(v);
  return simd::dot(v.data(), hv.data(), n) / vv;
}

double psd_probe(const SparseOperator& op, const std::vector<double>& ground, std::size_t trials, std::uint64_t seed) {
  const std::size_t n = op.dimension();
  if (ground.size() != n) throw ParameterError("ground vector size does not match the operator");
  std::vector<double> g = ground;
  simd::scale(1.0 / simd::nrm2(g.data(), n), g.data(), n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> v(n);
  for (std::size_t t = 0; t < trials; ++t) {
    for (double& c : v) c = N01(rng);
    simd::axpy(-simd::dot(g.data(), v.data(), n), g.data(), v.data(), n);
    best = std::min(best, rayleigh_quotient(op, v));
  }
  return best;
}

double overlap(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ParameterError("overlap of vectors with different sizes");
  const std::size_t n = a.size();
  const double na = simd::nrm2(a.data(), n), nb = simd::nrm2(b.data(), n);
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  return std::fabs(simd::dot(a.data(), b.data(), n)) / (na * nb);
}

SpectrumReport run_spectrum(const ModelSpec& model, const GridSpec& grid, const SpectrumOptions& opts,
                            const GridBudget& budget) {
  check_budget(model, grid, budget);
  check_admissible(model);
  GridSpec fixed = grid;
  fixed.half_width = resolve_half_width(model, grid);
  const auto op = discretize(model, fixed, budget);
  SpectrumReport rep;
  rep.points = grid.points;
  rep.half_width = *fixed.half_width;
  rep.outside_mass = outside_mass(model, rep.half_width);
  rep.cap = grid.cap;
  rep.dimension = op.dimension();
  rep.isa = simd::to_string(simd::active_isa());
  const auto eig = lowest_eigenpairs(op, std::max<std::size_t>(opts.eigenpairs, 1), opts.tol, opts.max_iter, opts.seed);
  rep.eigenvalues = eig.values;
  rep.iterations = eig.iterations;
  rep.residual = eig.residual;
  rep.overlap = overlap(eig.vectors[0], grid_wavefunction(model, fixed));
  rep.trials = opts.trials;
  rep.psd_min = opts.trials > 0 ? psd_probe(op, eig.vectors[0], opts.trials, opts.seed) : eig.values[0];
  const double l0 = eig.values[0];
  rep.lambda_ok = std::fabs(l0) <= opts.lambda_tol;
  rep.overlap_ok = rep.overlap >= opts.overlap_min;
  rep.psd_ok = rep.psd_min >= -opts.psd_tol && rep.psd_min >= l0 - opts.psd_tol;
  rep.gap_ok = eig.values.size() < 2 || eig.values[1] > l0;
  return rep;
}

}  // namespace gjw
