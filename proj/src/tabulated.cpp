#include "gjw/tabulated.hpp"

#include <cmath>

#include "gjw/errors.hpp"

namespace gjw {

namespace {

std::string family_name(TableFamily f) {
  switch (f) {
    case TableFamily::Complete: return "complete";
    case TableFamily::Path: return "path";
    case TableFamily::Cycle: return "cycle";
    case TableFamily::Star: return "star";
    case TableFamily::Banded: return "banded";
  }
  return "?";
}

double coth(double x) { return 1.0 / std::tanh(x); }

}  // namespace

std::optional<TableRow> match_table_row(const ModelSpec& model) {
  if (model.dim() != 1) return std::nullopt;
  const PairFunction& f = model.pair();
  if (f.kind() == PairKind::Custom) return std::nullopt;
  const Graph& g = model.graph();
  if (!g.is_simple()) return std::nullopt;
  const std::size_t n = g.size();

  TableRow row;
  row.pair = f.kind();
  row.n = n;
  if (g == make_family(GraphFamily::complete(n))) {
    row.family = TableFamily::Complete;
  } else if (g == make_family(GraphFamily::path(n))) {
    row.family = TableFamily::Path;
  } else if (n >= 3 && g == make_family(GraphFamily::cycle(n))) {
    row.family = TableFamily::Cycle;
  } else if (n >= 2 && g == make_family(GraphFamily::star(n))) {
    row.family = TableFamily::Star;
  } else {
    bool found = false;
    for (std::size_t r = 2; n >= 4 && r + 2 <= n && !found; ++r) {
      if (g == make_family(GraphFamily::circulant(n, r, true))) {
        row.family = TableFamily::Banded;
        row.r = r;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }

  const double N = static_cast<double>(n);
  const double gc = f.g();
  const double l2 = f.ell() * f.ell();
  const double E = static_cast<double>(edge_count(g));
  switch (row.family) {
    case TableFamily::Complete:
      if (row.pair == PairKind::Exponential) {
        row.v2c = gc * gc * N * (N - 1.0) / 2.0;
        row.v3c = gc * gc * N * (N - 1.0) * (N - 2.0) / 6.0;
      } else if (row.pair == PairKind::Gaussian) {
        row.v2c = gc * N * (N - 1.0);
      } else if (row.pair == PairKind::Sinh) {
        row.v2c = gc * gc * N * (N - 1.0) / (2.0 * l2);
        row.v3c = gc * gc * N * (N - 1.0) * (N - 2.0) / (6.0 * l2);
      }
      break;
    case TableFamily::Path:
    case TableFamily::Cycle: {
      const bool cyc = row.family == TableFamily::Cycle;
      if (row.pair == PairKind::Exponential) {
        if (cyc && n % 2 == 1) return std::nullopt;  // no extremal sector on odd cycles
        row.v2c = gc * gc * E;
        row.v3c = gc * gc * (cyc ? N : N - 2.0);
        row.sector = Sector::Extremal;
      } else if (row.pair == PairKind::Gaussian) {
        row.v2c = 2.0 * gc * E;
      } else if (row.pair == PairKind::Sinh) {
        row.v2c = gc * E / l2;
      }
      break;
    }
    case TableFamily::Star:
    case TableFamily::Banded:
      if (row.pair == PairKind::Exponential) row.v2c = gc * gc * E;
      else if (row.pair == PairKind::Gaussian) row.v2c = 2.0 * gc * E;
      else if (row.pair == PairKind::Sinh) row.v2c = gc * E / l2;
      break;
  }
  row.name = family_name(row.family) + "/" + to_string(row.pair);
  return row;
}

TableTerms tabulated_potentials(const TableRow& row, const ModelSpec& model, const Configuration& cfg) {
  if (cfg.dim() != 1 || cfg.size() != row.n) throw ParameterError("configuration does not match table row");
  const PairFunction& f = model.pair();
  const std::size_t n = row.n;
  const double N = static_cast<double>(n);
  const double g = f.g();
  const double l = f.ell();
  const double l2 = l * l;
  auto x = [&](std::size_t i, std::size_t j) { return cfg(i, 0) - cfg(j, 0); };
  TableTerms t;

  switch (row.family) {
    case TableFamily::Complete: {
      double sq = 0.0, inv = 0.0, ish = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const double d = x(i, j);
          sq += d * d;
          inv += g * (g - 1.0) / (d * d);
          const double s = std::sinh(d / l);
          ish += g * (g - 1.0) / (s * s);
        }
      switch (row.pair) {
        case PairKind::Power: t = {inv, 0.0}; break;
        case PairKind::Exponential:
          t = {g * g * N * (N - 1.0) / 2.0, g * g * N * (N - 1.0) * (N - 2.0) / 6.0};
          break;
        case PairKind::Gaussian: t = {g * N * (N - 1.0) + 4.0 * g * g * sq, 2.0 * g * g * (N - 2.0) * sq}; break;
        case PairKind::Sinh:
          t = {g * g * N * (N - 1.0) / (2.0 * l2) + ish / l2, g * g * N * (N - 1.0) * (N - 2.0) / (6.0 * l2)};
          break;
        default: break;
      }
      break;
    }
    case TableFamily::Path:
    case TableFamily::Cycle: {
      const bool cyc = row.family == TableFamily::Cycle;
      const std::size_t bonds = cyc ? n : n - 1;
      auto bond = [&](std::size_t i) { return x(i, (i + 1) % n); };               // x_{i,i+1}
      auto prev = [&](std::size_t i) { return x((i + n - 1) % n, i); };           // x_{i-1,i}
      const std::size_t c0 = cyc ? 0 : 1;
      const std::size_t c1 = cyc ? n : n - 1;
      const double B = static_cast<double>(bonds);
      double v2 = 0.0, v3 = 0.0;
      switch (row.pair) {
        case PairKind::Power:
          for (std::size_t i = 0; i < bonds; ++i) v2 += g * (g - 1.0) / (bond(i) * bond(i));
          for (std::size_t i = c0; i < c1; ++i) v3 -= g * g / (prev(i) * bond(i));
          break;
        case PairKind::Exponential:
          v2 = g * g * B;
          v3 = g * g * (cyc ? N : N - 2.0);
          break;
        case PairKind::Gaussian: {
          double sq = 0.0;
          for (std::size_t i = 0; i < bonds; ++i) sq += bond(i) * bond(i);
          v2 = 2.0 * g * (B + 2.0 * g * sq);
          for (std::size_t i = c0; i < c1; ++i) v3 -= 4.0 * g * g * prev(i) * bond(i);
          break;
        }
        case PairKind::Sinh: {
          double c2 = 0.0;
          for (std::size_t i = 0; i < bonds; ++i) c2 += coth(bond(i) / l) * coth(bond(i) / l);
          v2 = g / l2 * (B + (g - 1.0) * c2);
          for (std::size_t i = c0; i < c1; ++i) v3 -= g * g / l2 * coth(prev(i) / l) * coth(bond(i) / l);
          break;
        }
        default: break;
      }
      t = {v2, v3};
      break;
    }
    case TableFamily::Star: {
      const double M = N - 1.0;
      double v2 = 0.0, v3 = 0.0;
      switch (row.pair) {
        case PairKind::Power:
          for (std::size_t j = 1; j < n; ++j) v2 += g * (g - 1.0) / (x(0, j) * x(0, j));
          for (std::size_t j = 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) v3 += g * g / (x(0, j) * x(0, k));
          break;
        case PairKind::Exponential:
          v2 = g * g * M;
          for (std::size_t j = 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
              v3 += g * g * (x(0, j) > 0 ? 1.0 : -1.0) * (x(0, k) > 0 ? 1.0 : -1.0);
          break;
        case PairKind::Gaussian: {
          double sq = 0.0;
          for (std::size_t j = 1; j < n; ++j) sq += x(0, j) * x(0, j);
          v2 = 2.0 * g * (M + 2.0 * g * sq);
          for (std::size_t j = 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) v3 += 4.0 * g * g * x(0, j) * x(0, k);
          break;
        }
        case PairKind::Sinh: {
          double c2 = 0.0;
          for (std::size_t j = 1; j < n; ++j) c2 += coth(x(0, j) / l) * coth(x(0, j) / l);
          v2 = g / l2 * (M + (g - 1.0) * c2);
          for (std::size_t j = 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) v3 += g * g / l2 * coth(x(0, j) / l) * coth(x(0, k) / l);
          break;
        }
        default: break;
      }
      t = {v2, v3};
      break;
    }
    case TableFamily::Banded: {
      const double r = static_cast<double>(row.r);
      const double R = r * (2.0 * N - r - 1.0);
      double sq = 0.0, inv = 0.0, c2 = 0.0;
      for (std::size_t k = 1; k <= row.r; ++k)
        for (std::size_t i = 0; i + k < n; ++i) {
          const double d = x(i, i + k);
          sq += d * d;
          inv += g * (g - 1.0) / (d * d);
          c2 += coth(d / l) * coth(d / l);
        }
      switch (row.pair) {
        case PairKind::Power: t.v2 = inv; break;
        case PairKind::Exponential: t.v2 = g / 2.0 * (g * R); break;
        case PairKind::Gaussian: t.v2 = g * (R + 4.0 * g * sq); break;
        case PairKind::Sinh: t.v2 = g / (2.0 * l2) * (R + 2.0 * (g - 1.0) * c2); break;
        default: break;
      }
      t.v3 = banded_three_body(model, row.r, cfg) / model.scale();
      break;
    }
  }
  t.v2 *= model.scale();
  t.v3 *= model.scale();
  return t;
}

double banded_three_body(const ModelSpec& model, std::size_t r, const Configuration& cfg) {
  const std::size_t n = cfg.size();
  const PairFunction& f = model.pair();
  auto w = [&](std::size_t a, std::size_t b) { return f.log_derivative(cfg(a, 0) - cfg(b, 0)); };
  double s = 0.0;
  for (std::size_t k = 1; k <= r; ++k)
    for (std::size_t q = 1; q <= r; ++q)
      for (std::size_t i = q; i + k < n; ++i) s += w(i, i + k) * w(i, i - q);
  for (std::size_t k = 1; k <= r; ++k)
    for (std::size_t q = k + 1; q <= r; ++q) {
      for (std::size_t i = 0; i + q < n; ++i) s += w(i, i + k) * w(i, i + q);
      for (std::size_t i = q; i < n; ++i) s += w(i, i - k) * w(i, i - q);
    }
  return model.scale() * s;
}

LadderTerms ladder_decomposition(const ModelSpec& model, std::size_t rungs, const Configuration& cfg) {
  if (model.dim() != 1 || cfg.size() != 2 * rungs) throw ParameterError("ladder needs D = 1 and 2N particles");
  const PairFunction& f = model.pair();
  auto X = [&](std::size_t i, std::size_t a) { return cfg(2 * i + a, 0); };
  LadderTerms t;
  for (std::size_t i = 0; i < rungs; ++i) t.v_int += f.curvature_ratio(X(i, 0) - X(i, 1));
  for (std::size_t a = 0; a < 2; ++a) {
    const double eta = a == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i + 1 < rungs; ++i) t.v2 += f.curvature_ratio(X(i, a) - X(i + 1, a));
    for (std::size_t i = 0; i < rungs; ++i) {
      const double before = i > 0 ? f.log_derivative(X(i - 1, a) - X(i, a)) : 0.0;
      const double after = i + 1 < rungs ? f.log_derivative(X(i, a) - X(i + 1, a)) : 0.0;
      t.v2l -= eta * f.log_derivative(X(i, 0) - X(i, 1)) * (before - after);
    }
    for (std::size_t i = 1; i + 1 < rungs; ++i)
      t.v3 -= f.log_derivative(X(i - 1, a) - X(i, a)) * f.log_derivative(X(i, a) - X(i + 1, a));
  }
  const double s = model.scale();
  t.v_int *= s;
  t.v2 *= s;
  t.v2l *= s;
  t.v3 *= s;
  return t;
}

bool in_sector(Sector s, const Graph& g, const Configuration& cfg) {
  if (cfg.dim() != 1) return s == Sector::Free;
  switch (s) {
    case Sector::Free: return true;
    case Sector::Sorted:
      for (std::size_t i = 1; i < cfg.size(); ++i)
        if (!(cfg(i - 1, 0) < cfg(i, 0))) return false;
      return true;
    case Sector::Extremal:
      for (const Wedge& w : enumerate_wedges(g)) {
        const double c = cfg(w.center, 0);
        if (!((c - cfg(w.leg_a, 0)) * (c - cfg(w.leg_b, 0)) > 0.0)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace gjw
