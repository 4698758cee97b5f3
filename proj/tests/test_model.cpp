#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gjw/errors.hpp"
#include "gjw/model.hpp"
#include "gjw/tabulated.hpp"
#include "gjw/verifier.hpp"
#include "oracle.hpp"

using namespace gjw;

namespace {

Graph fam(const GraphFamily& f) { return make_family(f); }

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

Configuration sorted_cfg(const ModelSpec& m, std::size_t i, std::uint64_t seed = 3) {
  SamplingOptions so;
  so.sector = Sector::Sorted;
  so.box = std::max(2.0, 0.4 * static_cast<double>(m.size()));
  return sample_configuration(m, so, seed, i);
}

}  // namespace

TEST_CASE("log_psi examples") {
  CHECK(log_psi(ModelSpec(fam(GraphFamily::complete(2)), PairFunction::power(1)), Configuration::line({0, 2})) ==
        doctest::Approx(std::log(2.0)));
  CHECK(log_psi(ModelSpec(fam(GraphFamily::path(3)), PairFunction::exponential(0.5)),
                Configuration::line({0, 1, 3})) == doctest::Approx(1.5));
  CHECK(log_psi(ModelSpec(fam(GraphFamily::complete(3)), PairFunction::gaussian(-0.1)),
                Configuration::line({0, 1, 2})) == doctest::Approx(-0.6));
}

TEST_CASE("two-body examples") {
  CHECK(potential_2body(ModelSpec(fam(GraphFamily::complete(3)), PairFunction::power(2)),
                        Configuration::line({0, 1, 3})) == doctest::Approx(2 * (1 + 1.0 / 9 + 0.25)));
  const ModelSpec k4(fam(GraphFamily::complete(4)), PairFunction::exponential(1));
  CHECK(potential_2body(k4, Configuration::line({-1.2, 0.3, 0.9, 1.7})) == doctest::Approx(6));
  const ModelSpec p3(fam(GraphFamily::path(3)), PairFunction::exponential(1));
  CHECK(potential_2body(p3, Configuration::line({0.1, 0.8, 1.9})) == doctest::Approx(2));
}

TEST_CASE("three-body examples") {
  for (double g : {1.5, 2.0, 4.0}) {
    const ModelSpec m(fam(GraphFamily::complete(5)), PairFunction::power(g));
    for (std::size_t i = 0; i < 10; ++i) {
      const auto c = sorted_cfg(m, i);
      CHECK(std::fabs(potential_3body(m, c)) <= 1e-9 * wedge_magnitude(m, c));
    }
  }
  CHECK(potential_3body(ModelSpec(fam(GraphFamily::complete(3)), PairFunction::exponential(1)),
                        Configuration::line({-0.5, 0.2, 1.4})) == doctest::Approx(1));
  // Path(3) in increasing order: both legs sit on opposite sides of the center.
  const ModelSpec p3(fam(GraphFamily::path(3)), PairFunction::exponential(1));
  CHECK(potential_3body(p3, Configuration::line({0.0, 1.0, 2.5})) == doctest::Approx(-1));
  CHECK(potential_3body(p3, Configuration::line({0.0, 2.5, 1.0})) == doctest::Approx(1));
  CHECK(potential_3body(ModelSpec(fam(GraphFamily::path(2)), PairFunction::exponential(1)),
                        Configuration::line({0.0, 1.0})) == 0.0);
}

TEST_CASE("confinement examples") {
  const ModelSpec m(fam(GraphFamily::complete(2)), PairFunction::power(1), 1, 1, 1, ConfinementSpec::harmonic(1));
  const auto t = potential_confinement(m, Configuration::line({0, 1}));
  CHECK(t.v1 == doctest::Approx(-0.5));
  const auto u = potential_confinement(m, Configuration::line({0, 2}));
  CHECK(u.v2ll == doctest::Approx(-1));

  const auto gauss = ConfinementSpec::custom(PairAST::parse("exp(-a*x^2)", {"a"}), {{"a", 0.5}});
  const ModelSpec c(fam(GraphFamily::complete(3)), PairFunction::gaussian(-0.2), 1, 1, 1, gauss);
  const ModelSpec h(fam(GraphFamily::complete(3)), PairFunction::gaussian(-0.2), 1, 1, 1, ConfinementSpec::harmonic(1));
  for (std::size_t i = 0; i < 5; ++i) {
    const auto cfg = sorted_cfg(h, i);
    const auto a = potential_confinement(c, cfg, ConfinementRoute::General);
    const auto b = potential_confinement(h, cfg, ConfinementRoute::ClosedForm);
    CHECK(a.v1 == doctest::Approx(b.v1));
    CHECK(a.v2ll == doctest::Approx(b.v2ll));
    CHECK(log_psi(c, cfg) == doctest::Approx(log_psi(h, cfg)));
  }
  CHECK_THROWS_AS(ConfinementSpec::harmonic(0), ParameterError);
}

TEST_CASE("weighted examples") {
  const ModelSpec m(Graph::from_weights(2, {0, 2, 2, 0}), PairFunction::power(1));
  CHECK(weighted_potentials(m, Configuration::line({0, 1})).v2 == doctest::Approx(2));

  const ModelSpec half(Graph::from_weights(3, {0, .5, .5, .5, 0, .5, .5, .5, 0}), PairFunction::power(2));
  const ModelSpec one(fam(GraphFamily::complete(3)), PairFunction::power(2));
  for (std::size_t i = 0; i < 5; ++i) {
    const auto cfg = sorted_cfg(one, i);
    const auto x = cfg.coords();
    const oracle::PairRef f{oracle::Pair::Power, 2};
    double wedge = 0;  // unweighted wedge sum, all centers
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          if (a != c && b != c) wedge += f.w(x[c] - x[a]) * f.w(x[c] - x[b]);
    CHECK(weighted_potentials(half, cfg).v3 == doctest::Approx(0.25 * wedge).epsilon(1e-12));
  }
}

TEST_CASE("closed-form constants") {
  const auto k3 = closed_form_constants(ModelSpec(fam(GraphFamily::complete(3)), PairFunction::exponential(1)));
  REQUIRE(k3);
  CHECK(k3->v2c == doctest::Approx(3));
  CHECK(k3->v3c == doctest::Approx(1));
  CHECK(k3->e0 == doctest::Approx(-4));
  for (std::size_t N = 4; N <= 9; ++N)
    for (std::size_t r = 2; r + 2 <= N; ++r) {
      const auto c = closed_form_constants(
          ModelSpec(fam(GraphFamily::circulant(N, r, true)), PairFunction::exponential(1.3)));
      REQUIRE(c);
      CHECK(c->v2c == doctest::Approx(1.69 * r * (2.0 * N - r - 1) / 2));
    }
  const auto p2 = closed_form_constants(ModelSpec(fam(GraphFamily::path(2)), PairFunction::exponential(1)));
  REQUIRE(p2);
  CHECK(p2->v3c == 0.0);
  const auto s3 = closed_form_constants(ModelSpec(fam(GraphFamily::complete(3)), PairFunction::sinh(1, 1)));
  REQUIRE(s3);
  CHECK(s3->e0 == doctest::Approx(-4));
  const auto pw = closed_form_constants(ModelSpec(fam(GraphFamily::complete(5)), PairFunction::power(2)));
  REQUIRE(pw);
  CHECK(pw->e0 == 0.0);
  CHECK(mcguire_energy(4, 1) == doctest::Approx(-10));
}

TEST_CASE("delta terms are symbolic") {
  const ModelSpec m(fam(GraphFamily::complete(3)), PairFunction::exponential(1));
  const auto b = potentials(m, Configuration::line({0, 1, 2.5}));
  REQUIRE(b.delta_terms.size() == 3);
  for (const auto& d : b.delta_terms) CHECK(d.coefficient == doctest::Approx(2));
  CHECK(b.total() == doctest::Approx(b.v2_smooth + b.v3));
  const ModelSpec k(fam(GraphFamily::path(3)), PairFunction::custom(PairAST::parse("exp(abs(x))"), {}));
  CHECK(potentials(k, Configuration::line({0, 1, 2.5})).delta_unknown);
}

TEST_CASE("general-D path equals the 1D path in D = 1") {
  std::mt19937_64 rng(1);
  for (const auto& f : {PairFunction::power(2), PairFunction::gaussian(-0.3), PairFunction::sinh(2, 1)}) {
    const ModelSpec m(fam(GraphFamily::wheel(5)), f);
    for (std::size_t i = 0; i < 10; ++i) {
      const auto c = sorted_cfg(m, i, 8);
      CHECK(rel(potential_2body(m, c, EvalPath::General), potential_2body(m, c, EvalPath::OneDim)) <= 1e-12);
      CHECK(rel(potential_3body(m, c, EvalPath::General), potential_3body(m, c, EvalPath::OneDim)) <= 1e-12);
    }
  }
}

TEST_CASE("table rows match the assembled potentials") {
  const std::vector<std::pair<TableFamily, GraphFamily (*)(std::size_t)>> fams = {
      {TableFamily::Complete, [](std::size_t n) { return GraphFamily::complete(n); }},
      {TableFamily::Path, [](std::size_t n) { return GraphFamily::path(n); }},
      {TableFamily::Cycle, [](std::size_t n) { return GraphFamily::cycle(n); }},
      {TableFamily::Star, [](std::size_t n) { return GraphFamily::star(n); }},
      {TableFamily::Banded, [](std::size_t n) { return GraphFamily::circulant(n, 2, true); }}};
  std::size_t rows = 0;
  for (const auto& [tf, make] : fams)
    for (const auto& f : {PairFunction::power(2), PairFunction::exponential(1.2), PairFunction::gaussian(-0.4),
                          PairFunction::sinh(2, 0.9)})
      for (std::size_t N = 4; N <= 7; ++N) {
        const ModelSpec m(make_family(make(N)), f);
        const auto row = match_table_row(m);
        if (tf == TableFamily::Cycle && f.kind() == PairKind::Exponential && N % 2 == 1) {
          CHECK_FALSE(row);
          continue;
        }
        REQUIRE(row);
        CHECK(row->family == tf);
        ++rows;
        SamplingOptions so;
        so.sector = row->sector == Sector::Free ? default_sector(m) : row->sector;
        for (std::size_t i = 0; i < 10; ++i) {
          const auto c = sample_configuration(m, so, 21, i);
          const auto t = tabulated_potentials(*row, m, c);
          CHECK(rel(t.v2, potential_2body(m, c)) <= 1e-10);
          CHECK(rel(t.v3, potential_3body(m, c)) <= 1e-10);
        }
      }
  CHECK(rows > 70);
}

TEST_CASE("triple-indexed band form equals the wedge sum") {
  for (std::size_t N = 4; N <= 9; ++N)
    for (std::size_t r = 2; r + 2 <= N; ++r)
      for (const auto& f : {PairFunction::power(2), PairFunction::sinh(2, 1), PairFunction::gaussian(0.3)}) {
        const ModelSpec m(fam(GraphFamily::circulant(N, r, true)), f);
        for (std::size_t i = 0; i < 5; ++i) {
          const auto c = sorted_cfg(m, i, 13);
          CHECK(rel(banded_three_body(m, r, c), potential_3body(m, c)) <= 1e-12);
        }
      }
}

TEST_CASE("ladder decomposition") {
  for (std::size_t N = 2; N <= 6; ++N)
    for (const auto& f : {PairFunction::power(2), PairFunction::gaussian(-0.2), PairFunction::sinh(2, 1)}) {
      const ModelSpec m(fam(GraphFamily::ladder(N)), f);
      SamplingOptions so;
      so.sector = Sector::Free;
      for (std::size_t i = 0; i < 5; ++i) {
        const auto c = sample_configuration(m, so, 17, i);
        const auto d = ladder_decomposition(m, N, c);
        CHECK(rel(d.total(), potential_2body(m, c) + potential_3body(m, c)) <= 1e-12);
      }
    }
}

TEST_CASE("D = 2 and 3 potentials against the gradient identity") {
  // V = (1/2) sum_i [lap_i log Phi + |grad_i log Phi|^2], the gradient by FD of log_psi.
  for (std::size_t D : {2u, 3u})
    for (const auto& f : {PairFunction::power(2), PairFunction::gaussian(-0.3)}) {
      const ModelSpec m(fam(GraphFamily::star(4)), f, D);
      SamplingOptions so;
      for (std::size_t i = 0; i < 5; ++i) {
        auto c = sample_configuration(m, so, 23, i);
        const double h = 1e-4;
        double s = 0;
        const double l0 = log_psi(m, c);
        for (std::size_t p = 0; p < m.size(); ++p)
          for (std::size_t d = 0; d < D; ++d) {
            const double x = c(p, d);
            c.at(p, d) = x + h;
            const double lp = log_psi(m, c);
            c.at(p, d) = x - h;
            const double lm = log_psi(m, c);
            c.at(p, d) = x;
            const double g = (lp - lm) / (2 * h);
            s += (lp - 2 * l0 + lm) / (h * h) + g * g;
          }
        const double v = potential_2body(m, c) + potential_3body(m, c);
        CHECK(std::fabs(0.5 * s - v) <= 1e-5 * (1 + std::fabs(v)));
      }
    }
}
