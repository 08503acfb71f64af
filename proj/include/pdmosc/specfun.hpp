#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace pdmosc::specfun {

using RealFunction = std::function<double(double)>;

// Error function family. All are total on finite reals.
double erf(double x);
double erfc(double x);
/// Scaled complement exp(x^2) * erfc(x); finite for large positive x.
double erfcx(double x);

/// log|Gamma(x)| via a Lanczos approximation; x must not be a nonpositive
/// integer.
double log_gamma(double x);

/// Parameters of P_n^{(a,b)}.
struct JacobiParams {
  double a = 0.0;
  double b = 0.0;
  std::int64_t n = 0;

  /// a > -1 and b > -1: the classical weight (1-x)^a (1+x)^b is integrable.
  bool orthogonal() const noexcept { return a > -1.0 && b > -1.0; }
};

inline constexpr std::int64_t kDefaultJacobiDegreeCap = 1'000'000;

/// P_n^{(a,b)}(x) by the three-term recurrence in n.
///
/// Throws Error{DegreeOverflow} if n exceeds `degree_cap` or n < 0. When the
/// recurrence hits a vanishing leading coefficient (possible for a+b at
/// negative integers) the value is taken from the hypergeometric route.
double jacobi_p(const JacobiParams& params, double x,
                std::int64_t degree_cap = kDefaultJacobiDegreeCap);

/// Terminating 2F1(-n, b; c; z), summed term by term.
/// Throws Error{Pole} if c is one of 0, -1, ..., -(n-1).
double hyp2f1_terminating(std::int64_t n, double b, double c, double z);

/// P_n^{(a,b)}(x) = (a+1)_n / n! * 2F1(-n, n+a+b+1; a+1; (1-x)/2).
/// Kept as an independent cross-check of jacobi_p.
double jacobi_p_hypergeometric(const JacobiParams& params, double x);

struct QuadratureSpec {
  double lower = 0.0;
  double upper = 1.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_refinements = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int refinements = 0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration with global bisection of the
/// worst interval. Stops once the summed error estimate is below
/// max(abs_tol, rel_tol * |value|). Endpoints are never evaluated, so
/// integrable endpoint singularities are allowed.
///
/// Throws QuadratureError (carrying the best estimate) after
/// max_refinements bisections, or Error{Domain} for an invalid spec.
QuadratureResult integrate(const RealFunction& f, const QuadratureSpec& spec);

/// Integral over [spec.lower, +inf) through the map x = lower + t/(1-t);
/// spec.upper is ignored.
QuadratureResult integrate_to_infinity(const RealFunction& f,
                                       QuadratureSpec spec);

/// Default step used by central_diff: max(1e-5, 1e-5 |x|).
double default_step(double x);

/// Fourth-order central difference of f at x; order is 1 or 2.
/// Evaluates f at x +- h and x +- 2h (and x for order 2).
double central_diff(const RealFunction& f, double x, int order,
                    std::optional<double> h = std::nullopt);

}  // namespace pdmosc::specfun
