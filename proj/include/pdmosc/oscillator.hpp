#pragma once

// Two-dimensional nonlinear oscillator with position-dependent mass
// m(r) = lambda / (1 + delta^2 r^2), delta^2 = k lambda, hbar = 1.

#include <complex>
#include <cstdint>
#include <optional>

#include "pdmosc/nu.hpp"
#include "pdmosc/specfun.hpp"

namespace pdmosc::osc {

/// Physical mode requires k < 0; exploratory mode accepts any finite k.
enum class Mode { Physical, Exploratory };

class SystemParams {
 public:
  /// Throws Error{Config} on alpha <= 0, lambda == 0, non-finite input, or
  /// k >= 0 in physical mode.
  static SystemParams make(double alpha, double k, double lambda = 1.0,
                           double kb = 1.0, Mode mode = Mode::Physical);
  /// Same, but k is derived as delta_sq / lambda.
  static SystemParams from_mass_profile(double alpha, double lambda,
                                        double delta_sq, double kb = 1.0,
                                        Mode mode = Mode::Physical);

  double alpha() const noexcept { return alpha_; }
  double k() const noexcept { return k_; }
  double lambda() const noexcept { return lambda_; }
  double delta_sq() const noexcept { return k_ * lambda_; }
  double kb() const noexcept { return kb_; }
  Mode mode() const noexcept { return mode_; }

  /// Set for k >= 0: the model is outside the regime the spectrum was
  /// derived for.
  bool exploratory_warning() const noexcept { return k_ >= 0.0; }

  /// 1/sqrt(-delta^2) when delta^2 < 0, +inf otherwise.
  double r_max() const noexcept;

  /// sqrt(alpha^2/k^2 + 1) = sqrt(alpha^2 lambda^2 / delta^4 + 1).
  double s_parameter() const;

 private:
  SystemParams(double alpha, double k, double lambda, double kb, Mode mode)
      : alpha_(alpha), k_(k), lambda_(lambda), kb_(kb), mode_(mode) {}

  double alpha_;
  double k_;
  double lambda_;
  double kb_;
  Mode mode_;
};

struct QuantumState {
  std::int64_t n_r = 0;
  int m = 0;
  double energy = 0.0;
};

/// E_{n_r,m} = (2n_r+|m|+1) sqrt(alpha^2+k^2) - k[2n_r^2 + m^2/2 + (2n_r+1)(|m|+1)]
double energy(const SystemParams& params, std::int64_t n_r, int m);

/// The same polynomial evaluated at real x >= 0.
double energy_continuous(const SystemParams& params, double x, int m);

QuantumState make_state(const SystemParams& params, std::int64_t n_r, int m);

/// lambda / (1 + delta^2 r^2); Error{Domain} outside [0, r_max).
double mass(const SystemParams& params, double r);

/// Radial equation in z = -delta^2 r^2 as an NU problem:
/// a1 = a2 = a3 = 1, eps1 = -mu, eps2 = gamma, eps3 = omega.
nu::NUProblem nu_instance(const SystemParams& params, int m, double energy);

enum class Measure {
  /// r dr / (1 + delta^2 r^2); the radial operator is symmetric in it.
  MassWeighted,
  /// r dr
  Flat,
};

/// Unnormalized radial profile
///   |delta^2 r^2|^{|m|/2} (1 + delta^2 r^2)^{(1 + sign*s)/2}
///   * P_n^{(|m|, sign*s)}(1 + 2 delta^2 r^2).
class RadialProfile {
 public:
  RadialProfile(const SystemParams& params, std::int64_t n_r, int m, int sign);

  long double operator()(long double r) const;
  int sign() const noexcept { return sign_; }
  const specfun::JacobiParams& jacobi() const noexcept { return jacobi_; }
  const SystemParams& params() const noexcept { return params_; }
  std::int64_t n_r() const noexcept { return jacobi_.n; }
  int m() const noexcept { return m_; }

  /// Whether the norm integral in `measure` converges, decided from the
  /// endpoint power laws.
  bool normalizable(Measure measure) const;

 private:
  SystemParams params_;
  int m_;
  int sign_;
  specfun::JacobiParams jacobi_;
};

/// Relative residual of the radial equation
///   U'' + U'/r + [2 lambda E/(1+delta^2 r^2) - m^2/(r^2(1+delta^2 r^2))
///                 - alpha^2 lambda^2 r^2/(1+delta^2 r^2)^2] U
/// divided by |U''| + |U'|/r + |Q U|, derivatives by fourth-order central
/// differences in long double. Error{Domain} unless 0 < r < r_max.
double ode_residual(const RadialProfile& profile, double r, double energy);

class RadialWavefunction {
 public:
  const QuantumState& state() const noexcept { return state_; }
  const SystemParams& params() const noexcept { return profile_.params(); }
  const RadialProfile& profile() const noexcept { return profile_; }
  Measure measure() const noexcept { return measure_; }
  /// C such that C * profile is unit-normalized in `measure`.
  double normalization() const noexcept { return normalization_; }
  double domain_max() const noexcept { return params().r_max(); }
  /// +1 keeps the printed exponent (1+s)/2, -1 uses (1-s)/2.
  int exponent_sign() const noexcept { return profile_.sign(); }

  double operator()(double r) const;

 private:
  friend RadialWavefunction radial_wavefunction(const SystemParams&,
                                                const QuantumState&, Measure);
  RadialWavefunction(RadialProfile profile, QuantumState state, Measure measure,
                     double normalization)
      : profile_(std::move(profile)),
        state_(state),
        measure_(measure),
        normalization_(normalization) {}

  RadialProfile profile_;
  QuantumState state_;
  Measure measure_;
  double normalization_;
};

/// Residual bound a candidate exponent sign must meet to be selected.
inline constexpr double kSignSelectionTolerance = 1e-6;

/// Picks the exponent sign whose profile satisfies the radial equation at
/// the state's energy and is normalizable, then normalizes by quadrature.
/// Throws Error{Domain} for delta^2 == 0 and Error{NonNormalizable} if no
/// sign qualifies.
RadialWavefunction radial_wavefunction(const SystemParams& params,
                                       const QuantumState& state,
                                       Measure measure = Measure::MassWeighted);

/// Profile used for residual checks: the selected sign if one passes,
/// otherwise the sign the spectrum formula corresponds to (+ for k < 0).
RadialProfile select_profile(const SystemParams& params,
                             const QuantumState& state);

double ode_residual(const SystemParams& params, const QuantumState& state,
                    double r);

/// Measure density w(r) such that <f, g> = int f g w(r) dr.
double measure_density(const SystemParams& params, Measure measure, double r);

/// int U_a U_b w(r) dr over the radial domain; both in a.measure().
double overlap(const RadialWavefunction& a, const RadialWavefunction& b);

/// U(r) e^{-i m theta} / sqrt(2 pi)
std::complex<double> total_wavefunction(const RadialWavefunction& wf, double r,
                                        double theta);

/// Eigenvalue oracle independent of the closed-form spectrum: roots of the
/// NU quantization condition in E, bracketed on a grid of step
/// 0.1 sqrt(alpha^2 + k^2).
std::optional<double> solve_energy(const SystemParams& params, std::int64_t n_r,
                                   int m, double e_lo, double e_hi);

}  // namespace pdmosc::osc
