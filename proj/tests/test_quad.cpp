#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/quad.hpp"

using namespace casimir;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("semi-infinite integrals of closed-form integrands", "[quad]") {
  QuadratureSpec spec;
  SECTION("exponential") {
    auto est = integrate_semi_inf([](double x) { return std::exp(-x); }, spec, 1.0,
                                  std::numeric_limits<double>::infinity());
    CHECK(est.converged);
    CHECK_THAT(est.value, WithinRel(1.0, 1e-8));
  }
  SECTION("Bose integrand x^3/(e^{2x}-1)") {
    auto est = integrate_semi_inf([](double x) { return x * x * x / std::expm1(2.0 * x); }, spec);
    CHECK(est.converged);
    CHECK_THAT(est.value, WithinRel(std::pow(kPi, 4) / 240.0, 1e-8));
  }
  SECTION("zero integrand is exactly zero") {
    auto est = integrate_semi_inf([](double) { return 0.0; }, spec);
    CHECK(est.value == 0.0);
    CHECK(est.error_estimate == 0.0);
    CHECK(est.converged);
  }
}

TEST_CASE("two-dimensional semi-infinite integrals", "[quad]") {
  QuadratureSpec spec;
  SECTION("separable exponential") {
    auto est = integrate_2d_semi_inf([](double x, double y) { return std::exp(-x - y); }, spec);
    CHECK_THAT(est.value, WithinRel(1.0, 1e-8));
  }
  SECTION("Gaussian over the quarter plane") {
    auto est = integrate_2d_semi_inf(
        [](double x, double y) { return std::exp(-x * x - y * y); }, spec);
    CHECK_THAT(est.value, WithinRel(kPi / 4.0, 1e-8));
  }
  SECTION("vacuum force integrand") {
    auto f = [](double q, double w) {
      const double Q = std::hypot(q, w);
      return q * 2.0 * Q / std::expm1(2.0 * Q);
    };
    auto est = integrate_2d_semi_inf(f, spec);
    CHECK(est.converged);
    CHECK_THAT(2.0 / (4.0 * kPi * kPi) * est.value, WithinRel(kPi * kPi / 240.0, 1e-8));
  }
}

TEST_CASE("finite interval integration", "[quad]") {
  QuadratureSpec spec;
  auto est = integrate_interval([](double x) { return std::sin(x); }, 0.0, kPi, spec);
  CHECK_THAT(est.value, WithinRel(2.0, 1e-10));
  auto reversed = integrate_interval([](double x) { return std::sin(x); }, kPi, 0.0, spec);
  CHECK_THAT(reversed.value, WithinRel(-2.0, 1e-10));
  CHECK(integrate_interval([](double x) { return x; }, 1.0, 1.0, spec).value == 0.0);
}

TEST_CASE("converged flag honours the tolerance contract", "[quad]") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  auto est = integrate_semi_inf([](double x) { return x * std::exp(-x * x); }, spec);
  REQUIRE(est.converged);
  CHECK(est.error_estimate <= std::max(spec.rel_tol * std::abs(est.value), spec.abs_tol));
  CHECK_THAT(est.value, WithinRel(0.5, 1e-10));
}

TEST_CASE("divergent integrand is flagged as not converged", "[quad]") {
  QuadratureSpec spec;
  spec.max_depth = 12;
  auto est = integrate_interval([](double x) { return 1.0 / x; }, 0.0, 1.0, spec);
  CHECK_FALSE(est.converged);
}

TEST_CASE("quadrature settings validation", "[quad]") {
  QuadratureSpec spec;
  spec.rel_tol = 0.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = {};
  spec.max_depth = 3;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = {};
  spec.truncation = -1.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  CHECK_THROWS_AS(integrate_semi_inf([](double) { return 1.0; }, QuadratureSpec{}, -1.0),
                  DomainError);
  auto tight = QuadratureSpec{}.tightened(10.0);
  CHECK_THAT(tight.rel_tol, WithinRel(1e-9, 1e-12));
  CHECK_THAT(tight.abs_tol, WithinRel(1e-13, 1e-12));
}

TEST_CASE("linearity of the adaptive integral", "[quad]") {
  QuadratureSpec spec;
  auto f = [](double x) { return std::exp(-x) * std::cos(x); };
  auto g = [](double x) { return x * x / std::expm1(2.0 * x); };
  const double a = 2.5;
  const double b = -0.75;
  const auto If = integrate_semi_inf(f, spec);
  const auto Ig = integrate_semi_inf(g, spec);
  const auto Ih = integrate_semi_inf([&](double x) { return a * f(x) + b * g(x); }, spec);
  const double expected = a * If.value + b * Ig.value;
  const double tol = 2.0 * spec.rel_tol * (std::abs(a * If.value) + std::abs(b * Ig.value));
  CHECK_THAT(Ih.value, WithinAbs(expected, tol));
}

TEST_CASE("adaptive integral agrees with the fixed-grid trapezoid reference", "[quad][oracle]") {
  QuadratureSpec spec;
  const double d = 0.7;
  const double n_static = 0.19;
  auto bose = [&](double x) { return x == 0.0 ? 0.0 : x * x * x / std::expm1(2.0 * x * d); };
  auto slab_inner = [&](double x) {
    const double Q = n_static + x;
    return 2.0 * Q * Q / std::expm1(2.0 * Q * d);
  };
  auto log_mode = [&](double Q) {
    return Q == 0.0 ? 0.0 : Q * std::log(-std::expm1(-2.0 * Q * d));
  };
  for (const Integrand& f : {Integrand(bose), Integrand(slab_inner), Integrand(log_mode)}) {
    const auto adaptive = integrate_semi_inf(f, spec, 1.0 / d);
    const double upper = spec.truncation / d;
    const auto reference = trapezoid_semi_inf(f, 1000000, 1.0 / d, upper);
    const double allowed = std::max(10.0 * reference.error_estimate, 1e-12 * std::abs(reference.value));
    CHECK_THAT(adaptive.value, WithinAbs(reference.value, allowed));
  }
}

TEST_CASE("trapezoid reference input checks", "[quad]") {
  CHECK_THROWS_AS(trapezoid_semi_inf([](double) { return 0.0; }, 3), DomainError);
  CHECK_THROWS_AS(trapezoid_semi_inf([](double) { return 0.0; }, 7), DomainError);
  auto est = trapezoid_2d_semi_inf([](double x, double y) { return std::exp(-x - y); }, 2000,
                                   2000);
  CHECK_THAT(est.value, WithinRel(1.0, 1e-5));
}

TEST_CASE("monotone root finding", "[quad]") {
  SECTION("identity") {
    CHECK_THAT(find_root_monotone([](double x) { return x; }, kPi, 0.0, 10.0, 1e-14),
               WithinRel(kPi, 1e-13));
  }
  SECTION("static gain slope") {
    const double x = find_root_monotone([](double x) { return 0.19 * x; }, 1.0, 0.0, 100.0, 1e-12);
    CHECK_THAT(x, WithinRel(1.0 / 0.19, 1e-10));
    CHECK_THAT(x, WithinAbs(5.263158, 1e-6));
  }
  SECTION("exponential") {
    CHECK_THAT(find_root_monotone([](double x) { return std::exp(x); }, 2.0, -5.0, 5.0, 1e-14),
               WithinRel(std::log(2.0), 1e-12));
  }
  SECTION("decreasing function and swapped bracket") {
    CHECK_THAT(find_root_monotone([](double x) { return -x * x * x; }, -8.0, 5.0, 0.0, 1e-14),
               WithinRel(2.0, 1e-12));
  }
  SECTION("bracket that does not straddle") {
    CHECK_THROWS_AS(find_root_monotone([](double x) { return x; }, 5.0, 0.0, 1.0, 1e-12),
                    BracketError);
  }
  SECTION("round trip always meets the tolerance") {
    for (double target : {1e-6, 0.3, 1.0, 7.5, 1e4}) {
      auto f = [](double x) { return x + std::tanh(x); };
      const double tol = 1e-11;
      const double x = find_root_monotone(f, target, 0.0, 2e4, tol);
      CHECK(std::abs(f(x) - target) <= tol * std::max(1.0, std::abs(target)));
    }
  }
}
