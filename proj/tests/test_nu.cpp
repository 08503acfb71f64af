#include <cmath>

#include "doctest.h"
#include "pdmosc/error.hpp"
#include "pdmosc/nu.hpp"
#include "pdmosc/oscillator.hpp"

using namespace pdmosc;

TEST_CASE("coefficient chain by hand substitution") {
  const auto c = nu::derive_coefficients({1, 1, 1, 0, 0, 0});
  CHECK(c.a4 == 0.0);
  CHECK(c.a5 == -0.5);
  CHECK(c.a6 == 0.25);
  CHECK(c.a7 == 0.0);
  CHECK(c.a8 == 0.0);
  CHECK(c.a9 == 0.25);
  CHECK(c.kappa_plus == 0.0);
  CHECK(c.kappa_minus == 0.0);
  CHECK(nu::coefficients_consistent(c));
  CHECK(nu::quantization_residual(c, 0) != 0.0);
}

TEST_CASE("a1 = 1 gives a4 = 0") {
  for (double a2 : {-1.0, 0.5, 3.0}) {
    CHECK(nu::derive_coefficients({1, a2, 1, 0.3, 0.2, 0.1}).a4 == 0.0);
  }
}

TEST_CASE("oscillator instance, alpha=1, k=-1, m=0") {
  const auto p = osc::SystemParams::make(1.0, -1.0);
  const double e00 = osc::energy(p, 0, 0);
  const auto c = nu::derive_coefficients(osc::nu_instance(p, 0, e00));
  CHECK(c.a8 == 0.0);
  CHECK(c.a10 == doctest::Approx(1.0));
  CHECK(nu::tau_prime(c) == doctest::Approx(-(2.0 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(std::abs(nu::quantization_residual(c, 0)) <= 1e-12);
}

TEST_CASE("tau' is negative on every fixture") {
  for (double alpha : {1.0, 2.0}) {
    for (double k : {-0.1, -0.5, -1.0}) {
      const auto p = osc::SystemParams::make(alpha, k);
      for (int n = 0; n <= 5; ++n) {
        for (int m = -3; m <= 3; ++m) {
          const auto c = nu::derive_coefficients(osc::nu_instance(p, m, osc::energy(p, n, m)));
          CHECK(nu::tau_prime(c) < 0.0);
        }
      }
    }
  }
}

TEST_CASE("closed-form spectrum satisfies the quantization condition") {
  const auto p = osc::SystemParams::make(1.0, -0.5);
  double worst = 0.0, weakest = 1e300;
  for (int n = 0; n <= 5; ++n) {
    for (int m = -3; m <= 3; ++m) {
      const double e = osc::energy(p, n, m);
      worst = std::max(worst, std::abs(nu::quantization_residual(
                                  nu::derive_coefficients(osc::nu_instance(p, m, e)), n)));
      weakest = std::min(weakest, std::abs(nu::quantization_residual(
                                      nu::derive_coefficients(osc::nu_instance(p, m, e + 0.1)), n)));
    }
  }
  CHECK(worst <= 1e-9);
  CHECK(weakest > 1e-3);
}

TEST_CASE("structured errors") {
  try {
    nu::derive_coefficients({1, 1, 0, 0, 0, 0});
    FAIL("a3 = 0 must be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
  try {
    nu::derive_coefficients({1, 1, 1, 0, 0, -1.0});  // a8 = -1
    FAIL("negative a8 must be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeDiscriminant);
  }
}

TEST_CASE("solution exponents") {
  // a10 = 1 and a11 = a3 = 1 -> weight exponents (0, -1)
  nu::NUCoefficients c;
  c.problem.a3 = 1.0;
  c.a10 = 1.0;
  c.a11 = 1.0;
  const auto sol = nu::build_solution(c, 2);
  CHECK(sol.weight.z_power == 0.0);
  CHECK(sol.weight.one_minus_power == -1.0);
  CHECK(sol.jacobi_b_verbatim == 1.0);

  // m = 1 oscillator instance: Jacobi a = 2 sqrt(omega) = |m| = 1, b = s
  const auto p = osc::SystemParams::make(1.0, -0.5);
  const auto cm = nu::derive_coefficients(osc::nu_instance(p, 1, osc::energy(p, 0, 1)));
  const auto sm = nu::build_solution(cm, 0);
  CHECK(sm.jacobi.a == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sm.jacobi.b == doctest::Approx(p.s_parameter()).epsilon(1e-12));

  nu::NUCoefficients flat;
  flat.problem.a3 = 1.0;
  flat.a12 = 0.0;
  CHECK(nu::build_solution(flat, 0).phi.z_power == 0.0);
}

TEST_CASE("root finding and the energy oracle") {
  const auto roots = nu::find_roots([](double x) { return std::cos(x); }, 0.0, 10.0, 0.1);
  REQUIRE(roots.size() == 3);
  CHECK(roots[1] == doctest::Approx(1.5 * 3.141592653589793).epsilon(1e-11));

  const auto p = osc::SystemParams::make(1.0, -0.5);
  for (int n = 0; n <= 3; ++n) {
    for (int m : {0, 2}) {
      const double exact = osc::energy(p, n, m);
      const auto found = osc::solve_energy(p, n, m, 0.0, exact + 5.0);
      REQUIRE(found.has_value());
      CHECK(*found == doctest::Approx(exact).epsilon(1e-10));
    }
  }
}
