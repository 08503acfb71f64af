#pragma once

// Nikiforov-Uvarov engine for the parametric hypergeometric-type equation
//
//   psi'' + (a1 - a2 z) / (z (1 - a3 z)) psi'
//         + (-eps1 z^2 + eps2 z - eps3) / (z^2 (1 - a3 z)^2) psi = 0.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pdmosc/specfun.hpp"

namespace pdmosc::nu {

struct NUProblem {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 1.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps3 = 0.0;
};

/// Derived coefficient chain a4..a13 together with kappa_(+/-).
struct NUCoefficients {
  NUProblem problem;
  double a4 = 0.0, a5 = 0.0, a6 = 0.0, a7 = 0.0, a8 = 0.0, a9 = 0.0;
  double a10 = 0.0, a11 = 0.0, a12 = 0.0, a13 = 0.0;
  double sqrt_a8 = 0.0, sqrt_a9 = 0.0;
  double kappa_plus = 0.0;
  double kappa_minus = 0.0;
};

/// |x| below this is treated as roundoff when taking square roots.
inline constexpr double kRootClamp = 1e-13;

/// Throws Error{Domain} for a3 == 0 and Error{NegativeDiscriminant} when a8
/// or a9 is negative beyond roundoff.
NUCoefficients derive_coefficients(const NUProblem& p);

/// Re-derives a4..a9 from the stored problem and compares bit for bit.
bool coefficients_consistent(const NUCoefficients& c);

/// Slope of tau(z) = tau~(z) + 2 pi(z) on the kappa_- branch. Equals -a11.
double tau_prime(const NUCoefficients& c);

/// Left-hand side of the quantization condition for polynomial degree n:
///   a2 n - (2n+1) a5 + n(n-1) a3 + (2n+1)(a3 sqrt(a8) + sqrt(a9))
///   + a7 + 2 a3 a8 + 2 sqrt(a8 a9).
double quantization_residual(const NUCoefficients& c, std::int64_t n);

/// z^p (1 - a3 z)^q
struct PowerPair {
  double z_power = 0.0;
  double one_minus_power = 0.0;
};

/// chi(z) = phi(z) y_n(z) with y_n(z) = P_n^{(alpha,beta)}(1 - 2 a3 z).
struct NUSolution {
  PowerPair phi;
  PowerPair weight;
  specfun::JacobiParams jacobi;
  /// a11/a3 as it appears in some printed forms of y_n; diagnostics only.
  double jacobi_b_verbatim = 0.0;
  double a3 = 1.0;

  /// Evaluates chi(z) for 0 < z < 1/a3 (a3 > 0) or z < 0.
  double chi(double z) const;
  double rho(double z) const;
};

NUSolution build_solution(const NUCoefficients& c, std::int64_t n);

/// Roots of f on [lo, hi]: sign changes are bracketed on a uniform grid of
/// the given step and refined by bisection to |bracket| <= x_tol.
std::vector<double> find_roots(const std::function<double(double)>& f,
                               double lo, double hi, double step,
                               double x_tol = 1e-12);

}  // namespace pdmosc::nu
