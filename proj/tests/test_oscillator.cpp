#include <cmath>

#include "doctest.h"
#include "pdmosc/error.hpp"
#include "pdmosc/oscillator.hpp"

using namespace pdmosc;
using osc::SystemParams;

TEST_CASE("spectrum examples") {
  const auto flat = SystemParams::make(1.0, 0.0, 1.0, 1.0, osc::Mode::Exploratory);
  CHECK(osc::energy(flat, 0, 0) == 1.0);
  CHECK(osc::energy(flat, 3, -2) == 9.0);
  const auto p = SystemParams::make(1.0, -0.5);
  CHECK(osc::energy(p, 0, 0) == doctest::Approx(1.6180339887498949).epsilon(1e-15));
  CHECK(osc::energy(p, 1, 0) == doctest::Approx(5.8541019662496845).epsilon(1e-15));
  CHECK(osc::energy(SystemParams::make(1.0, -1.0), 1, 2) ==
        doctest::Approx(5.0 * std::sqrt(2.0) + 13.0).epsilon(1e-15));
  CHECK(osc::energy(p, 2, 3) == osc::energy(p, 2, -3));
  CHECK_THROWS_AS(osc::energy(p, -1, 0), Error);
}

TEST_CASE("k -> 0 continuity") {
  const auto p = SystemParams::make(1.0, -1e-8);
  for (int n = 0; n <= 4; ++n) {
    for (int m = -3; m <= 3; ++m) {
      CHECK(std::abs(osc::energy(p, n, m) - (2 * n + std::abs(m) + 1)) <= 1e-6);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SystemParams::make(1.0, 0.1), Error);  // physical mode
  CHECK_THROWS_AS(SystemParams::make(0.0, -0.1), Error);
  CHECK_THROWS_AS(SystemParams::make(1.0, -0.1, 0.0), Error);
  const auto p = SystemParams::make(1.0, 0.1, 1.0, 1.0, osc::Mode::Exploratory);
  CHECK(p.exploratory_warning());
  const auto q = SystemParams::from_mass_profile(1.0, 2.0, -0.5);
  CHECK(q.k() == -0.25);
  CHECK(q.r_max() == doctest::Approx(1.0 / std::sqrt(0.5)));
}

TEST_CASE("mass profile") {
  const auto p = SystemParams::from_mass_profile(1.0, 1.0, -0.25);
  CHECK(osc::mass(p, 0.0) == 1.0);
  CHECK(osc::mass(p, 1.0) == doctest::Approx(1.0 / 0.75));
  CHECK_THROWS_AS(osc::mass(p, 2.0), Error);
  const auto q = SystemParams::make(1.0, 0.5, 1.0, 1.0, osc::Mode::Exploratory);
  CHECK(osc::mass(q, 1e4) > 0.0);
  CHECK(osc::mass(q, 1e4) < 1e-7);
}

TEST_CASE("NU identification") {
  const auto p = SystemParams::make(1.0, -0.5);
  const auto inst = osc::nu_instance(p, 2, 3.7);
  CHECK(inst.eps3 == 1.0);
  const auto zero = osc::nu_instance(p, 0, 0.0);
  CHECK(zero.eps3 == 0.0);
  // mu = -alpha^2 lambda^2 / (4 delta^4), eps1 = -mu
  CHECK(zero.eps1 == doctest::Approx(1.0 / (4.0 * 0.25)));
  CHECK(zero.eps2 == 0.0);
}

// 1/C^2 = (1/(2c)) Gamma(n+a+1) Gamma(n+s+1) / ((2n+a+s+1) n! Gamma(n+a+s+1)),
// c = -delta^2, for the mass-weighted measure.
double closed_form_norm(const SystemParams& p, int n, int m) {
  const double a = std::abs(m), s = p.s_parameter(), c = -p.delta_sq();
  return std::exp(-0.5 * (std::lgamma(n + a + 1) + std::lgamma(n + s + 1) -
                          std::log(2 * n + a + s + 1) - std::lgamma(n + 1.0) -
                          std::lgamma(n + a + s + 1) - std::log(2 * c)));
}

TEST_CASE("wavefunctions: sign, normalization, orthogonality") {
  const auto p = SystemParams::make(1.0, -0.5, 2.0);
  for (int m : {0, 1, 3}) {
    std::vector<osc::RadialWavefunction> wfs;
    for (int n = 0; n <= 3; ++n) {
      wfs.push_back(osc::radial_wavefunction(p, osc::make_state(p, n, m)));
      CHECK(wfs.back().exponent_sign() == 1);
      CHECK(wfs.back().normalization() ==
            doctest::Approx(closed_form_norm(p, n, m)).epsilon(1e-10));
      CHECK(osc::overlap(wfs.back(), wfs.back()) == doctest::Approx(1.0).epsilon(1e-10));
    }
    for (std::size_t i = 0; i < wfs.size(); ++i) {
      for (std::size_t j = i + 1; j < wfs.size(); ++j) {
        CHECK(std::abs(osc::overlap(wfs[i], wfs[j])) < 1e-8);
      }
    }
  }
}

TEST_CASE("flat measure normalizes but does not orthogonalize") {
  const auto p = SystemParams::make(1.0, -0.3);
  const auto a = osc::radial_wavefunction(p, osc::make_state(p, 0, 1), osc::Measure::Flat);
  const auto b = osc::radial_wavefunction(p, osc::make_state(p, 1, 1), osc::Measure::Flat);
  CHECK(osc::overlap(a, a) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(osc::overlap(a, b)) > 1e-2);
}

TEST_CASE("small-r behaviour is r^|m|") {
  const auto p = SystemParams::make(1.0, -0.5);
  for (int m : {0, 1, 2}) {
    const auto wf = osc::radial_wavefunction(p, osc::make_state(p, 1, m));
    const double r1 = 1e-4, r2 = 2e-4;
    CHECK(std::abs(wf(r2) / wf(r1)) == doctest::Approx(std::pow(2.0, m)).epsilon(1e-6));
  }
}

TEST_CASE("radial equation residual") {
  const auto p = SystemParams::make(1.0, -0.5);
  const auto state = osc::make_state(p, 0, 0);
  CHECK(osc::ode_residual(p, state, 0.5) <= 1e-8);
  const auto profile = osc::select_profile(p, state);
  CHECK(osc::ode_residual(profile, 0.5, state.energy + 0.05) >= 1e-3);
  CHECK(std::isfinite(osc::ode_residual(profile, 1e-6, state.energy)));
  CHECK_THROWS_AS(osc::ode_residual(profile, 0.0, state.energy), Error);
  CHECK_THROWS_AS(osc::ode_residual(profile, p.r_max(), state.energy), Error);
}

TEST_CASE("exploratory k > 0") {
  // s = sqrt(alpha^2/k^2 + 1) = 100.005 > 2n+|m|+1: the decaying sign works
  const auto p = SystemParams::make(10.0, 0.1, 1.0, 1.0, osc::Mode::Exploratory);
  const auto wf = osc::radial_wavefunction(p, osc::make_state(p, 1, 0));
  CHECK(wf.exponent_sign() == -1);
  CHECK(osc::overlap(wf, wf) == doctest::Approx(1.0).epsilon(1e-9));
  // s = sqrt(2) < 2n+|m|+1 for n = 1: nothing normalizable
  const auto q = SystemParams::make(1.0, 1.0, 1.0, 1.0, osc::Mode::Exploratory);
  try {
    osc::radial_wavefunction(q, osc::make_state(q, 1, 0));
    FAIL("expected NonNormalizable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonNormalizable);
  }
}

TEST_CASE("total wavefunction phase") {
  const auto p = SystemParams::make(1.0, -0.5);
  const auto s0 = osc::radial_wavefunction(p, osc::make_state(p, 1, 0));
  CHECK(osc::total_wavefunction(s0, 0.3, 0.0) == osc::total_wavefunction(s0, 0.3, 2.0));
  const auto s2 = osc::radial_wavefunction(p, osc::make_state(p, 1, 2));
  const auto psi = osc::total_wavefunction(s2, 0.3, 0.4);
  CHECK(std::abs(psi) == doctest::Approx(std::abs(s2(0.3)) / std::sqrt(2 * 3.141592653589793)));
  CHECK(std::arg(psi) == doctest::Approx(-0.8 + (s2(0.3) < 0 ? 3.141592653589793 : 0.0)));
}
