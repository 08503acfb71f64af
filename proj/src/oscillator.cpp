#include "pdmosc/oscillator.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pdmosc/detail/jacobi_recurrence.hpp"
#include "pdmosc/error.hpp"

namespace pdmosc::osc {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::Config, message);
}

// Stops the finite-domain quadrature this far (relative) inside r_max.
constexpr double kEdgeOffset = 1e-10;

}  // namespace

SystemParams SystemParams::make(double alpha, double k, double lambda, double kb,
                                Mode mode) {
  require(std::isfinite(alpha) && alpha > 0.0,
          "alpha must be positive and finite, got " + std::to_string(alpha));
  require(std::isfinite(k), "k must be finite");
  require(std::isfinite(lambda) && lambda != 0.0,
          "lambda must be nonzero and finite");
  require(std::isfinite(kb) && kb > 0.0, "kb must be positive");
  require(mode == Mode::Exploratory || k < 0.0,
          "physical mode requires k < 0, got k=" + std::to_string(k));
  return SystemParams(alpha, k, lambda, kb, mode);
}

SystemParams SystemParams::from_mass_profile(double alpha, double lambda,
                                             double delta_sq, double kb,
                                             Mode mode) {
  require(std::isfinite(lambda) && lambda != 0.0,
          "lambda must be nonzero and finite");
  require(std::isfinite(delta_sq), "delta_sq must be finite");
  return make(alpha, delta_sq / lambda, lambda, kb, mode);
}

double SystemParams::r_max() const noexcept {
  const double d2 = delta_sq();
  if (d2 < 0.0) return 1.0 / std::sqrt(-d2);
  return std::numeric_limits<double>::infinity();
}

double SystemParams::s_parameter() const {
  return std::sqrt(alpha_ * alpha_ / (k_ * k_) + 1.0);
}

double energy_continuous(const SystemParams& p, double x, int m) {
  const double am = std::abs(static_cast<double>(m));
  const double md = static_cast<double>(m);
  const double root = std::hypot(p.alpha(), p.k());
  return (2.0 * x + am + 1.0) * root -
         p.k() * (2.0 * x * x + 0.5 * md * md + (2.0 * x + 1.0) * (am + 1.0));
}

double energy(const SystemParams& p, std::int64_t n_r, int m) {
  if (n_r < 0) {
    throw Error(ErrorKind::Domain,
                "energy: n_r must be nonnegative, got " + std::to_string(n_r));
  }
  return energy_continuous(p, static_cast<double>(n_r), m);
}

QuantumState make_state(const SystemParams& p, std::int64_t n_r, int m) {
  return {n_r, m, energy(p, n_r, m)};
}

double mass(const SystemParams& p, double r) {
  if (!(r >= 0.0) || r >= p.r_max()) {
    throw Error(ErrorKind::Domain, "mass: r=" + std::to_string(r) +
                                       " outside [0, r_max)");
  }
  return p.lambda() / (1.0 + p.delta_sq() * r * r);
}

nu::NUProblem nu_instance(const SystemParams& p, int m, double e) {
  const double d2 = p.delta_sq();
  if (d2 == 0.0) {
    throw Error(ErrorKind::Domain, "nu_instance: delta^2 must be nonzero");
  }
  const double lam = p.lambda();
  const double md = static_cast<double>(m);
  const double mu = lam * e / (2.0 * d2) -
                    p.alpha() * p.alpha() * lam * lam / (4.0 * d2 * d2);
  const double gamma = 0.25 * md * md - lam * e / (2.0 * d2);
  const double omega = 0.25 * md * md;
  return {1.0, 1.0, 1.0, -mu, gamma, omega};
}

RadialProfile::RadialProfile(const SystemParams& params, std::int64_t n_r, int m,
                             int sign)
    : params_(params), m_(m), sign_(sign >= 0 ? 1 : -1) {
  if (params.delta_sq() == 0.0) {
    throw Error(ErrorKind::Domain,
                "radial profile: delta^2 = 0 has no finite-k form");
  }
  if (n_r < 0) {
    throw Error(ErrorKind::Domain, "radial profile: n_r must be nonnegative");
  }
  jacobi_ = {std::abs(static_cast<double>(m)), sign_ * params.s_parameter(),
             n_r};
}

long double RadialProfile::operator()(long double r) const {
  const long double x = static_cast<long double>(params_.delta_sq()) * r * r;
  const long double a = jacobi_.a;
  const long double b = jacobi_.b;
  const long double arg = 1.0L + 2.0L * x;
  long double poly;
  if (auto v = detail::jacobi_recurrence<long double>(a, b, jacobi_.n, arg)) {
    poly = *v;
  } else {
    poly = specfun::jacobi_p_hypergeometric(jacobi_, static_cast<double>(arg));
  }
  return std::pow(std::abs(x), a / 2.0L) * std::pow(1.0L + x, (1.0L + b) / 2.0L) *
         poly;
}

bool RadialProfile::normalizable(Measure measure) const {
  const double b = jacobi_.b;
  const double extra = measure == Measure::Flat ? 1.0 : 0.0;
  if (params_.delta_sq() < 0.0) {
    // integrand ~ (1 - r^2/r_max^2)^(b + extra) at the edge
    return b + extra > -1.0;
  }
  // integrand ~ r^(2|m| + 2b + 4n + 1 + 2 extra) at infinity
  const double n = static_cast<double>(jacobi_.n);
  return 2.0 * jacobi_.a + 2.0 * b + 4.0 * n + 1.0 + 2.0 * extra < -1.0;
}

double ode_residual(const RadialProfile& profile, double r, double e) {
  const SystemParams& p = profile.params();
  const double r_max = p.r_max();
  if (!(r > 0.0) || !(r < r_max)) {
    throw Error(ErrorKind::Domain, "ode_residual: r=" + std::to_string(r) +
                                       " outside (0, r_max)");
  }
  const double length = 1.0 / std::sqrt(std::abs(p.delta_sq()));
  const double n = static_cast<double>(profile.n_r());
  double scale = std::min(r, length / (2.0 * n + std::abs(profile.jacobi().a) +
                                       std::abs(profile.jacobi().b) + 1.0));
  if (std::isfinite(r_max)) scale = std::min(scale, r_max - r);
  const long double h = 1e-3L * scale;
  const long double rl = r;
  const long double u0 = profile(rl);
  const long double up1 = profile(rl + h), um1 = profile(rl - h);
  const long double up2 = profile(rl + 2 * h), um2 = profile(rl - 2 * h);
  const long double d1 = (8.0L * (up1 - um1) - (up2 - um2)) / (12.0L * h);
  const long double d2 =
      (16.0L * (up1 + um1) - (up2 + um2) - 30.0L * u0) / (12.0L * h * h);

  const long double lam = p.lambda();
  const long double t = 1.0L + static_cast<long double>(p.delta_sq()) * rl * rl;
  const long double md = profile.m();
  const long double al = p.alpha();
  const long double q = 2.0L * lam * static_cast<long double>(e) / t -
                        md * md / (rl * rl * t) -
                        al * al * lam * lam * rl * rl / (t * t);
  const long double residual = d2 + d1 / rl + q * u0;
  const long double denom =
      std::abs(d2) + std::abs(d1) / rl + std::abs(q * u0);
  if (denom == 0.0L) return 0.0;
  return static_cast<double>(std::abs(residual) / denom);
}

namespace {

std::array<double, 4> probe_points(const SystemParams& p) {
  const double r_max = p.r_max();
  if (std::isfinite(r_max)) {
    return {0.21 * r_max, 0.43 * r_max, 0.67 * r_max, 0.89 * r_max};
  }
  const double length = 1.0 / std::sqrt(std::abs(p.delta_sq()));
  return {0.3 * length, 0.7 * length, 1.3 * length, 2.9 * length};
}

bool satisfies_equation(const RadialProfile& profile, double e) {
  for (double r : probe_points(profile.params())) {
    if (!(ode_residual(profile, r, e) <= kSignSelectionTolerance)) return false;
  }
  return true;
}

specfun::QuadratureSpec norm_spec(const SystemParams& p, double abs_tol) {
  specfun::QuadratureSpec spec;
  spec.lower = 0.0;
  spec.upper = p.r_max() * (1.0 - kEdgeOffset);
  spec.rel_tol = 1e-12;
  spec.abs_tol = abs_tol;
  spec.max_refinements = 10000;
  return spec;
}

// Unnormalized profiles can have any scale, so their norms get a purely
// relative tolerance; overlaps of normalized functions may vanish and need
// an absolute floor.
double integrate_radial(const SystemParams& p, const specfun::RealFunction& f,
                        double abs_tol = 1e-300) {
  const auto spec = norm_spec(p, abs_tol);
  if (std::isfinite(p.r_max())) return specfun::integrate(f, spec).value;
  return specfun::integrate_to_infinity(f, spec).value;
}

int default_sign(const SystemParams& p) { return p.k() < 0.0 ? 1 : -1; }

}  // namespace

double measure_density(const SystemParams& p, Measure measure, double r) {
  if (measure == Measure::Flat) return r;
  return r / (1.0 + p.delta_sq() * r * r);
}

RadialProfile select_profile(const SystemParams& params,
                             const QuantumState& state) {
  for (int sign : {1, -1}) {
    RadialProfile candidate(params, state.n_r, state.m, sign);
    if (satisfies_equation(candidate, state.energy)) return candidate;
  }
  return RadialProfile(params, state.n_r, state.m, default_sign(params));
}

double ode_residual(const SystemParams& params, const QuantumState& state,
                    double r) {
  return ode_residual(select_profile(params, state), r, state.energy);
}

RadialWavefunction radial_wavefunction(const SystemParams& params,
                                       const QuantumState& state,
                                       Measure measure) {
  std::string rejected;
  for (int sign : {1, -1}) {
    RadialProfile candidate(params, state.n_r, state.m, sign);
    if (!candidate.normalizable(measure)) {
      rejected += " sign " + std::to_string(sign) + ": norm diverges;";
      continue;
    }
    if (!satisfies_equation(candidate, state.energy)) {
      rejected += " sign " + std::to_string(sign) + ": radial equation fails;";
      continue;
    }
    const double norm_sq = integrate_radial(params, [&](double r) {
      const double u = static_cast<double>(candidate(r));
      return u * u * measure_density(params, measure, r);
    });
    if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) {
      rejected += " sign " + std::to_string(sign) + ": zero norm;";
      continue;
    }
    return RadialWavefunction(std::move(candidate), state, measure,
                              1.0 / std::sqrt(norm_sq));
  }
  throw Error(ErrorKind::NonNormalizable,
              "radial_wavefunction: no admissible exponent sign for n_r=" +
                  std::to_string(state.n_r) + " m=" + std::to_string(state.m) +
                  ":" + rejected);
}

double RadialWavefunction::operator()(double r) const {
  return normalization_ * static_cast<double>(profile_(r));
}

double overlap(const RadialWavefunction& a, const RadialWavefunction& b) {
  const SystemParams& p = a.params();
  const Measure measure = a.measure();
  return integrate_radial(
      p, [&](double r) { return a(r) * b(r) * measure_density(p, measure, r); },
      1e-14);
}

std::complex<double> total_wavefunction(const RadialWavefunction& wf, double r,
                                        double theta) {
  const double angle = -static_cast<double>(wf.state().m) * theta;
  const double amplitude = wf(r) / std::sqrt(2.0 * std::numbers::pi);
  return amplitude * std::exp(std::complex<double>(0.0, angle));
}

std::optional<double> solve_energy(const SystemParams& params, std::int64_t n_r,
                                   int m, double e_lo, double e_hi) {
  const double step = 0.1 * std::hypot(params.alpha(), params.k());
  auto residual = [&](double e) {
    const auto c = nu::derive_coefficients(nu_instance(params, m, e));
    return nu::quantization_residual(c, n_r);
  };
  const auto roots = nu::find_roots(residual, e_lo, e_hi, step);
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

}  // namespace pdmosc::osc
