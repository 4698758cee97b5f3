#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gjw/errors.hpp"
#include "gjw/verifier.hpp"
#include "oracle.hpp"

using namespace gjw;

namespace {

Graph fam(const GraphFamily& f) { return make_family(f); }

}  // namespace

TEST_CASE("kinetic examples") {
  const ModelSpec m(fam(GraphFamily::complete(2)), PairFunction::gaussian(-0.25));
  CHECK(kinetic_log_action(m, Configuration::line({0, 1})) == doctest::Approx(0.25));
  CHECK(fd_kinetic(m, Configuration::line({0, 1}), 1e-3) == doctest::Approx(0.25).epsilon(1e-6));
  const ModelSpec one(Graph::empty(1), PairFunction::power(2));
  CHECK(kinetic_log_action(one, Configuration::line({0.4})) == 0.0);
}

TEST_CASE("analytic kinetic matches the test-side FD oracle") {
  for (const auto& [fam_, f] : {std::pair{GraphFamily::wheel(6), oracle::PairRef{oracle::Pair::Sinh, 2, 1}},
                                std::pair{GraphFamily::cycle(5), oracle::PairRef{oracle::Pair::Gaussian, 0.3}},
                                std::pair{GraphFamily::star(4), oracle::PairRef{oracle::Pair::Power, 2}}}) {
    const auto g = fam(fam_);
    PairFunction pf = f.kind == oracle::Pair::Sinh    ? PairFunction::sinh(f.g, f.ell)
                      : f.kind == oracle::Pair::Power ? PairFunction::power(f.g)
                                                      : PairFunction::gaussian(f.g);
    const ModelSpec m(g, pf);
    oracle::Matrix A(g.size(), std::vector<double>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) A[i][j] = g.weight(i, j);
    for (std::size_t s = 0; s < 10; ++s) {
      const auto c = sample_configuration(m, {}, 41, s);
      const std::vector<double> x(c.coords().begin(), c.coords().end());
      const double ref = oracle::fd_kinetic([&](const std::vector<double>& y) { return oracle::log_phi(A, f, y); }, x, 1e-3);
      const double k = kinetic_log_action(m, c);
      CHECK(std::fabs(k - ref) <= 1e-5 * (1 + std::fabs(k)));
      // parent Hamiltonian: kinetic + potential vanishes
      const auto r = fd_residual(m, c, 1e-3, 0.0, 0.0);
      CHECK(std::fabs(r.residual) <= 1e-5 * (1 + std::fabs(k)));
    }
  }
}

TEST_CASE("residual on Calogero K3") {
  const ModelSpec m(fam(GraphFamily::complete(3)), PairFunction::power(2));
  SamplingOptions so;
  so.sector = Sector::Sorted;
  for (std::size_t s = 0; s < 20; ++s) {
    const auto r = fd_residual(m, sample_configuration(m, so, 2, s), 1e-3, 0.0, 0.0);
    CHECK(r.scaled <= 1e-5);
  }
}

TEST_CASE("second-order convergence on Path(2)") {
  for (const auto& f : {PairFunction::gaussian(0.4), PairFunction::sinh(2, 1), PairFunction::power(3)}) {
    const ModelSpec m(fam(GraphFamily::path(2)), f);
    const auto c = Configuration::line({-0.3, 0.9});
    const double r1 = std::fabs(fd_residual(m, c, 1e-2, 0, 0).residual);
    const double r2 = std::fabs(fd_residual(m, c, 5e-3, 0, 0).residual);
    if (r1 > 100 * roundoff_floor(m, c, 1e-2)) CHECK(r1 / r2 >= 3.5);
  }
}

TEST_CASE("factorization drift") {
  const ModelSpec m(fam(GraphFamily::complete(4)), PairFunction::sinh(2, 1));
  for (std::size_t s = 0; s < 20; ++s) CHECK(factorization_drift(m, sample_configuration(m, {}, 6, s), 1e-4) <= 1e-6);
  const ModelSpec e(Graph::empty(3), PairFunction::power(2));
  CHECK(factorization_drift(e, Configuration::line({0, 1, 2})) <= 1e-12);
  const ModelSpec w(Graph::from_weights(3, {0, 1.5, 0.5, 1.5, 0, 2, 0.5, 2, 0}), PairFunction::power(2), 2);
  for (std::size_t s = 0; s < 10; ++s) CHECK(factorization_drift(w, sample_configuration(w, {}, 7, s), 1e-4) <= 1e-6);
}

TEST_CASE("empirical E0 examples") {
  const auto k4 = empirical_e0(ModelSpec(fam(GraphFamily::complete(4)), PairFunction::exponential(1)), 50, 1);
  CHECK(k4.e0 == doctest::Approx(-10).epsilon(1e-12));
  CHECK(k4.spread <= 1e-9);
  CHECK(empirical_e0(ModelSpec(fam(GraphFamily::complete(5)), PairFunction::power(2)), 50, 1).e0 ==
        doctest::Approx(0).epsilon(1e-12));
  CHECK(empirical_e0(ModelSpec(fam(GraphFamily::complete(3)), PairFunction::sinh(1, 1)), 50, 1).e0 ==
        doctest::Approx(-4));
  const auto c6 = empirical_e0(ModelSpec(fam(GraphFamily::cycle(6)), PairFunction::exponential(0.9)), 50, 1);
  CHECK(c6.spread <= 1e-9);
}

TEST_CASE("sampling is deterministic and respects the gap") {
  const ModelSpec m(fam(GraphFamily::complete(4)), PairFunction::power(2));
  SamplingOptions so;
  for (std::size_t i = 0; i < 10; ++i) {
    const auto a = sample_configuration(m, so, 9, i), b = sample_configuration(m, so, 9, i);
    CHECK(std::vector<double>(a.coords().begin(), a.coords().end()) ==
          std::vector<double>(b.coords().begin(), b.coords().end()));
    for (std::size_t p = 0; p < 4; ++p) {
      CHECK(std::fabs(a(p, 0)) <= 2.0);
      for (std::size_t q = p + 1; q < 4; ++q) CHECK(a.distance(p, q) >= 0.5);
      if (p > 0) CHECK(a(p - 1, 0) < a(p, 0));
    }
  }
}

TEST_CASE("verify: passing and failing cases") {
  VerifyOptions o;
  o.seed = 5;
  const auto rep = verify(ModelSpec(fam(GraphFamily::complete(6)), PairFunction::power(2)), o);
  CHECK(rep.passed());
  REQUIRE(rep.calogero_cancellation);
  CHECK(*rep.calogero_cancellation);
  CHECK(rep.max_abs_residual >= rep.mean_abs_residual);
  CHECK(rep.rows.size() == 50);

  const auto c5 = verify(ModelSpec(fam(GraphFamily::cycle(5)), PairFunction::sinh(2, 1)), o);
  CHECK(c5.passed());
  CHECK(c5.max_scaled_residual <= 1e-5);

  VerifyOptions wrong = o;
  wrong.e0_override = 0.5;
  CHECK_FALSE(verify(ModelSpec(fam(GraphFamily::complete(3)), PairFunction::exponential(1)), wrong).passed());

  for (std::size_t D : {2u, 3u})
    for (const auto& f : {PairFunction::power(2), PairFunction::gaussian(-0.3)}) {
      CHECK(verify(ModelSpec(fam(GraphFamily::complete(3)), f, D), o).passed());
      CHECK(verify(ModelSpec(fam(GraphFamily::star(4)), f, D), o).passed());
    }
}

TEST_CASE("verify is independent of the thread count") {
  const ModelSpec m(fam(GraphFamily::wheel(6)), PairFunction::sinh(2, 1));
  VerifyOptions a;
  a.seed = 3;
  a.threads = 1;
  VerifyOptions b = a;
  b.threads = 4;
  const auto ra = verify(m, a), rb = verify(m, b);
  CHECK(ra.max_abs_residual == rb.max_abs_residual);
  CHECK(ra.e0_empirical == rb.e0_empirical);
  for (std::size_t i = 0; i < ra.rows.size(); ++i) CHECK(ra.rows[i].residual == rb.rows[i].residual);
}

TEST_CASE("step too large") {
  const ModelSpec m(fam(GraphFamily::complete(3)), PairFunction::power(2));
  CHECK_THROWS_AS(fd_residual(m, Configuration::line({0, 0.5, 1.0}), 0.6, 0, 0), StepTooLargeError);
}
