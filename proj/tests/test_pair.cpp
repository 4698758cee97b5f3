#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gjw/errors.hpp"
#include "gjw/pair_ast.hpp"
#include "gjw/pair_function.hpp"

using namespace gjw;

namespace {

std::vector<double> sample_points(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::bernoulli_distribution neg(0.5);
  std::vector<double> xs;
  for (int i = 0; i < 20; ++i) xs.push_back(neg(rng) ? -u(rng) : u(rng));
  return xs;
}

void check_derivatives(const PairFunction& f) {
  const double h = 1e-4;
  for (double x : sample_points(3)) {
    const double w = f.log_derivative(x);
    const double fd_w = (f.log_value(x + h) - f.log_value(x - h)) / (2 * h);
    CHECK(std::fabs(w - fd_w) <= 1e-6 * (1 + std::fabs(w)));
    const double dw = (f.log_derivative(x + h) - f.log_derivative(x - h)) / (2 * h);
    const double v = f.curvature_ratio(x);
    CHECK(std::fabs(v - (dw + w * w)) <= 1e-6 * (1 + std::fabs(v)));
    CHECK(std::fabs(f.log_derivative_slope(x) - dw) <= 1e-6 * (1 + std::fabs(dw)));
  }
}

}  // namespace

TEST_CASE("parser builds the expected trees") {
  const auto p = PairAST::parse("abs(x)^g", {"g"});
  REQUIRE(p.root()->op == Op::Pow);
  CHECK(p.root()->lhs->op == Op::Abs);
  CHECK(p.root()->rhs->op == Op::Param);
  CHECK(p.evaluate(-2.0, {{"g", 3.0}}) == doctest::Approx(8.0));

  const auto q = PairAST::parse("exp(g*abs(x)^2)", {"g"});
  CHECK(q.root()->op == Op::Exp);
  CHECK(q.evaluate(1.5, {{"g", -0.3}}) == doctest::Approx(std::exp(-0.3 * 2.25)));
}

TEST_CASE("syntax error offset") {
  try {
    PairAST::parse("x +");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(PairAST::parse("sin(x)", {}), ParseError);
  CHECK_THROWS_AS(PairAST::parse("x*q", {"g"}), UnknownIdentifierError);
  CHECK_THROWS_AS(PairAST::parse("", {}), ParseError);
}

TEST_CASE("precedence") {
  const ParamMap none;
  CHECK(PairAST::parse("2^3^2").evaluate(0, none) == doctest::Approx(512));
  CHECK(PairAST::parse("-2^2").evaluate(0, none) == doctest::Approx(-4));
  CHECK(PairAST::parse("1-2-3").evaluate(0, none) == doctest::Approx(-4));
  CHECK(PairAST::parse("8/4/2").evaluate(0, none) == doctest::Approx(1));
  CHECK(PairAST::parse("pow(x, 3)").evaluate(2, none) == doctest::Approx(8));
}

TEST_CASE("derivatives") {
  const ParamMap g{{"g", 0.7}, {"l", 1.3}};
  const auto d1 = PairAST::parse("exp(g*x^2)", {"g"}).differentiate();
  for (double x : {-1.1, 0.4, 2.0}) CHECK(d1.evaluate(x, g) == doctest::Approx(2 * 0.7 * x * std::exp(0.7 * x * x)));

  const auto f2 = PairAST::parse("abs(x)^g", {"g"});
  const auto d2 = f2.differentiate();
  CHECK(d2.contains(Op::Sgn));
  for (double x : {-1.3, -0.7, 0.7, 1.3}) {
    const double h = 1e-5;
    const double fd = (f2.evaluate(x + h, g) - f2.evaluate(x - h, g)) / (2 * h);
    CHECK(d2.evaluate(x, g) == doctest::Approx(fd).epsilon(1e-8));
    CHECK(d2.evaluate(x, g) == doctest::Approx(0.7 * (x > 0 ? 1 : -1) * std::pow(std::fabs(x), -0.3)));
  }

  const auto d3 = PairAST::parse("sinh(x/l)", {"l"}).differentiate();
  CHECK(d3.evaluate(0.9, g) == doctest::Approx(std::cosh(0.9 / 1.3) / 1.3));
  CHECK(PairAST::parse("sgn(x)").differentiate().evaluate(0.5, {}) == 0.0);
}

TEST_CASE("pretty print round trip") {
  for (const char* src : {"abs(x)^g", "exp(g*abs(x)^2)", "-(x-1)^2/(1+x)", "2^3^x", "(2^3)^x", "-x^2",
                          "sinh(x/l)^g*cosh(x)", "pow(x,2)-coth(x)", "x-(1-x)", "x/(2*x)", "log(tanh(abs(x)))"}) {
    const auto a = PairAST::parse(src);
    const auto b = PairAST::parse(a.to_string());
    CHECK_MESSAGE(structurally_equal(a, b), src);
    CHECK(b.to_string() == a.to_string());
  }
}

TEST_CASE("built-in values") {
  const auto p = PairFunction::power(2);
  CHECK(p.log_derivative(1.5) == doctest::Approx(4.0 / 3.0));
  CHECK(p.curvature_ratio(1.5) == doctest::Approx(8.0 / 9.0));
  CHECK(p.delta_coefficient() == 0.0);

  const auto e = PairFunction::exponential(0.8);
  CHECK(e.log_derivative(-0.3) == doctest::Approx(-0.8));
  CHECK(e.curvature_ratio(-0.3) == doctest::Approx(0.64));
  REQUIRE(e.delta_coefficient());
  CHECK(*e.delta_coefficient() == doctest::Approx(1.6));

  const auto s = PairFunction::sinh(2, 1);
  CHECK(s.log_derivative(0.5) == doctest::Approx(2 / std::tanh(0.5)));
}

TEST_CASE("built-ins: derivative identities and parity") {
  for (const auto& f : {PairFunction::power(2), PairFunction::power(1.5), PairFunction::exponential(-0.6),
                        PairFunction::gaussian(0.3), PairFunction::gaussian(-0.25), PairFunction::sinh(2, 0.7)}) {
    check_derivatives(f);
    for (double x : sample_points(9)) {
      CHECK(f.log_derivative(-x) == doctest::Approx(-f.log_derivative(x)));
      CHECK(f.curvature_ratio(-x) == doctest::Approx(f.curvature_ratio(x)));
    }
  }
}

TEST_CASE("custom pairs: derivative identities") {
  const ParamMap prm{{"g", 1.7}, {"l", 0.8}, {"a", 0.4}};
  for (const char* src : {"abs(x)^g", "exp(g*abs(x)^2)", "abs(sinh(x/l))^g", "exp(-a*x^2)*(1+x^2)",
                          "exp(a*abs(x))", "cosh(x)^g", "1+a*tanh(x)"}) {
    const auto f = PairFunction::custom(PairAST::parse(src, {"g", "l", "a"}), prm);
    INFO(src);
    check_derivatives(f);
  }
}

TEST_CASE("custom pair delta metadata") {
  const auto smooth = PairFunction::custom(PairAST::parse("exp(g*x^2)", {"g"}), {{"g", 1.0}});
  REQUIRE(smooth.delta_coefficient());
  CHECK(*smooth.delta_coefficient() == 0.0);
  const auto kinked = PairFunction::custom(PairAST::parse("exp(g*abs(x))", {"g"}), {{"g", 1.0}});
  CHECK_FALSE(kinked.delta_coefficient());
  CHECK(kinked.kinked());
  CHECK_THROWS_AS(PairFunction::custom(PairAST::parse("abs(x)^g", {"g"}), {}), Error);
}

TEST_CASE("guard band") {
  const auto p = PairFunction::power(2);
  CHECK(p.guarded());
  CHECK_THROWS_AS(p.log_derivative(1e-10), SingularityError);
  CHECK_NOTHROW(PairFunction::gaussian(-1).log_derivative(0.0));
  CHECK_THROWS_AS(PairFunction::sinh(2, 0), ParameterError);
}
