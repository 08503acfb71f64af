#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pdmosc/error.hpp"
#include "pdmosc/specfun.hpp"

using namespace pdmosc;
namespace sf = pdmosc::specfun;
using sf::erfcx;
using sf::log_gamma;
using sf::jacobi_p;
using sf::jacobi_p_hypergeometric;
using sf::hyp2f1_terminating;
using sf::integrate;
using sf::integrate_to_infinity;
using sf::central_diff;
using sf::default_step;
using sf::JacobiParams;
using sf::QuadratureSpec;
using sf::RealFunction;

// Reference values below come from 40-digit mpmath evaluations.

TEST_CASE("erf matches high-precision references") {
  CHECK(sf::erf(0.0) == 0.0);
  CHECK(sf::erf(1.0) == doctest::Approx(0.842700792949715).epsilon(1e-15));
  CHECK(std::abs(sf::erf(0.5) - 0.52049987781304653768) < 1e-15);
  CHECK(std::abs(sf::erf(2.5) - 0.99959304798255504106) < 1e-15);
  CHECK(std::abs(sf::erf(3.5) - 0.99999925690162765859) < 1e-15);
  CHECK(std::abs(sf::erf(5.5) - 0.99999999999999264215) < 1e-15);
  CHECK(sf::erf(-2.0) == -sf::erf(2.0));
  CHECK(sf::erf(30.0) == 1.0);
}

TEST_CASE("erf agrees with the C library over a sweep") {
  double worst = 0.0;
  for (double x = -7.0; x <= 7.0; x += 0.0137) {
    worst = std::max(worst, std::abs(sf::erf(x) - std::erf(x)));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("erfc and erfcx keep relative accuracy in the tail") {
  CHECK(sf::erfc(4.0) == doctest::Approx(1.5417257900280018852e-8).epsilon(1e-13));
  CHECK(sf::erfc(10.0) == doctest::Approx(2.088487583762544757e-45).epsilon(1e-13));
  CHECK(sf::erfc(20.0) == doctest::Approx(5.3958656116079009289e-176).epsilon(1e-12));
  CHECK(erfcx(0.5) == doctest::Approx(0.61569034419292587487).epsilon(1e-14));
  CHECK(erfcx(3.0) == doctest::Approx(0.17900115118138995042).epsilon(1e-14));
  CHECK(erfcx(30.0) == doctest::Approx(0.018795888861416751497).epsilon(1e-14));
  CHECK(erfcx(-1.0) == doctest::Approx(5.0089800807622834663).epsilon(1e-14));
  CHECK(sf::erfc(-1.0) == doctest::Approx(2.0 - sf::erfc(1.0)).epsilon(1e-15));
}

TEST_CASE("log_gamma") {
  CHECK(log_gamma(0.5) == doctest::Approx(0.57236494292470008707).epsilon(1e-14));
  CHECK(log_gamma(10.0) == doctest::Approx(12.801827480081469611).epsilon(1e-14));
  CHECK(log_gamma(-2.5) == doctest::Approx(-0.056243716497674050673).epsilon(1e-12));
  CHECK(log_gamma(1e-3) == doctest::Approx(6.9071788853838536617).epsilon(1e-14));
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  for (double pole : {0.0, -1.0, -7.0}) {
    try {
      log_gamma(pole);
      FAIL("expected a pole error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Pole);
    }
  }
}

TEST_CASE("jacobi_p examples") {
  CHECK(jacobi_p({0, 0, 0}, 0.7) == 1.0);
  CHECK(jacobi_p({0, 0, 2}, 0.0) == doctest::Approx(-0.5));
  CHECK(jacobi_p({1, 3, 1}, 0.25) == doctest::Approx(-0.25));
  CHECK(jacobi_p({0.5, 1.5, 3}, 0.3) == doctest::Approx(-0.39725).epsilon(1e-14));
  CHECK(jacobi_p({2, -0.5, 5}, 1.3) == doctest::Approx(93.615740218505876402).epsilon(1e-13));
  CHECK(jacobi_p({3.5, 4.2, 20}, -0.95) ==
        doctest::Approx(58.928636509136590932).epsilon(1e-12));
}

TEST_CASE("jacobi_p degree cap") {
  CHECK_THROWS_AS(jacobi_p({0, 0, 11}, 0.1, 10), Error);
  CHECK_THROWS_AS(jacobi_p({0, 0, -1}, 0.1), Error);
  try {
    jacobi_p({0, 0, 2'000'000}, 0.1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeOverflow);
  }
}

TEST_CASE("recurrence and hypergeometric routes agree") {
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) {
    for (double a = -0.85; a <= 5.0; a += 0.73) {
      for (double b = -0.85; b <= 5.0; b += 0.91) {
        for (double x = -1.5; x <= 1.5; x += 0.25) {
          const JacobiParams p{a, b, n};
          const double r = jacobi_p(p, x);
          const double h = jacobi_p_hypergeometric(p, x);
          worst = std::max(worst, std::abs(r - h) / std::max(1.0, std::abs(h)));
        }
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("terminating 2F1") {
  CHECK(hyp2f1_terminating(0, 3.3, -2.5, 0.9) == 1.0);
  CHECK(hyp2f1_terminating(1, 5, 2, 0.1) == doctest::Approx(0.75));
  CHECK(hyp2f1_terminating(4, 2.5, 1.5, 0.3) == doctest::Approx(-0.0343).epsilon(1e-13));
  // Gamma-prefactor identity against jacobi_p: (a=2, b=1, n=3, z=0.3)
  const double a = 2, b = 1, z = 0.3;
  const double prefactor = std::exp(std::lgamma(3 + a + 1) - std::lgamma(4.0) - std::lgamma(a + 1));
  CHECK(prefactor * hyp2f1_terminating(3, 1 + 3 + a + b, 1 + a, z) ==
        doctest::Approx(jacobi_p({a, b, 3}, 1 - 2 * z)).epsilon(1e-14));
  CHECK(jacobi_p({a, b, 3}, 0.4) == doctest::Approx(-0.668).epsilon(1e-14));
  try {
    hyp2f1_terminating(3, 1.0, -1.0, 0.2);
    FAIL("expected a pole error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Pole);
  }
  // c = -n is allowed: the series stops before dividing by zero
  CHECK(std::isfinite(hyp2f1_terminating(2, 1.0, -2.0, 0.2)));
}

TEST_CASE("adaptive quadrature") {
  auto run = [](RealFunction f, double lo, double hi) {
    QuadratureSpec spec;
    spec.lower = lo;
    spec.upper = hi;
    return integrate(f, spec);
  };
  CHECK(run([](double) { return 1.0; }, 0, 1).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(run([](double x) { return x; }, 0, 2).value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(run([](double x) { return std::exp(-x * x); }, 0, 5).value ==
        doctest::Approx(0.5 * std::sqrt(std::numbers::pi) * std::erf(5.0)).epsilon(1e-13));
  // integrable endpoint singularity
  CHECK(run([](double x) { return 1.0 / std::sqrt(x); }, 0, 1).value ==
        doctest::Approx(2.0).epsilon(1e-10));

  QuadratureSpec inf;
  inf.lower = 0.0;
  CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, inf).value ==
        doctest::Approx(1.0).epsilon(1e-12));

  QuadratureSpec hard;
  hard.lower = 0.0;
  hard.upper = 1.0;
  hard.max_refinements = 5;
  try {
    integrate([](double x) { return std::sin(1.0 / x) / x; }, hard);
    FAIL("expected non-convergence");
  } catch (const QuadratureError& e) {
    CHECK(e.kind() == ErrorKind::NonConvergence);
    CHECK(std::isfinite(e.estimate()));
    CHECK(e.error_bound() > 0.0);
  }
}

TEST_CASE("central differences") {
  CHECK(central_diff([](double x) { return x * x; }, 3.0, 1) == doctest::Approx(6.0).epsilon(1e-8));
  CHECK(std::abs(central_diff([](double x) { return std::exp(x); }, 0.0, 2, 1e-3) - 1.0) < 1e-6);
  CHECK(std::abs(central_diff([](double x) { return std::sin(x); }, 0.0, 1) - 1.0) < 1e-8);
  CHECK_THROWS_AS(central_diff([](double x) { return x; }, 0.0, 3), Error);
  CHECK_THROWS_AS(central_diff([](double x) { return x; }, 0.0, 1, -1.0), Error);
  CHECK(default_step(0.0) == 1e-5);
  CHECK(default_step(100.0) == doctest::Approx(1e-3));
}
