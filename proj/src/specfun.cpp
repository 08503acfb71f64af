#include "pdmosc/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "pdmosc/detail/jacobi_recurrence.hpp"
#include "pdmosc/error.hpp"

namespace pdmosc::specfun {

namespace {

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// erf(x) = 2/sqrt(pi) exp(-x^2) sum_n 2^n x^(2n+1) / (2n+1)!!
// Every term is positive, so there is no cancellation for moderate |x|.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 2.0 * kInvSqrtPi * std::exp(-x2) * sum;
}

// exp(x^2) erfc(x) for x >= 2 by the Laplace continued fraction
//   sqrt(pi) exp(x^2) erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz method.
double erfcx_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int j = 1; j < 500; ++j) {
    const double aj = 0.5 * j;
    d = x + aj * d;
    if (std::abs(d) < tiny) d = tiny;
    c = x + aj / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return kInvSqrtPi / f;
}

constexpr double kSeriesLimit = 3.0;
constexpr double kFractionLimit = 2.0;

#if defined(__SIZEOF_FLOAT128__)
using Wide = __float128;
#else
using Wide = long double;
#endif

void check_hyp2f1(std::int64_t n, double c) {
  if (n < 0) {
    throw Error(ErrorKind::DegreeOverflow,
                "hyp2f1_terminating: negative degree " + std::to_string(n));
  }
  if (c <= 0.0 && c == std::floor(c) && c > -static_cast<double>(n)) {
    throw Error(ErrorKind::Pole, "hyp2f1_terminating: c = " +
                                     std::to_string(c) +
                                     " makes (c)_j vanish inside the series");
  }
}

template <typename Real>
Real hyp2f1_sum(std::int64_t n, double b, double c, Real z) {
  Real term = 1;
  Real sum = 1;
  for (std::int64_t j = 0; j < n; ++j) {
    const Real jd = static_cast<Real>(j);
    term *= (jd - static_cast<Real>(n)) * (Real(b) + jd) /
            ((Real(c) + jd) * (jd + 1)) * z;
    sum += term;
  }
  return sum;
}

}  // namespace

double erf(double x) {
  if (x == 0.0) return x;
  const double ax = std::abs(x);
  if (ax < kSeriesLimit) return std::copysign(erf_series(ax), x);
  if (ax > 6.0) return std::copysign(1.0, x);
  const double complement = std::exp(-ax * ax) * erfcx_continued_fraction(ax);
  return std::copysign(1.0 - complement, x);
}

double erfcx(double x) {
  if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
  if (x < kFractionLimit) return std::exp(x * x) * (1.0 - erf_series(x));
  return erfcx_continued_fraction(x);
}

double erfc(double x) {
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x < kFractionLimit) return 1.0 - erf_series(x);
  if (x > 27.3) return 0.0;
  return std::exp(-x * x) * erfcx_continued_fraction(x);
}

double log_gamma(double x) {
  static constexpr std::array<double, 9> kLanczos = {
      0.99999999999980993,     676.5203681218851,
      -1259.1392167224028,     771.32342877765313,
      -176.61502916214059,     12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6,
      1.5056327351493116e-7};
  constexpr double g = 7.0;
  if (x <= 0.0 && x == std::floor(x)) {
    throw Error(ErrorKind::Pole, "log_gamma: pole at nonpositive integer " +
                                     std::to_string(x));
  }
  if (x < 0.5) {
    // reflection
    const double s = std::sin(std::numbers::pi * x);
    return std::log(std::numbers::pi / std::abs(s)) - log_gamma(1.0 - x);
  }
  const double y = x - 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    a += kLanczos[i] / (y + static_cast<double>(i));
  }
  const double t = y + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (y + 0.5) * std::log(t) - t +
         std::log(a);
}

double hyp2f1_terminating(std::int64_t n, double b, double c, double z) {
  check_hyp2f1(n, c);
  return static_cast<double>(hyp2f1_sum<double>(n, b, c, z));
}

double jacobi_p_hypergeometric(const JacobiParams& p, double x) {
  // The series in (1-x)/2 alternates with growing terms for x < 0; reflect
  // with P_n^{(a,b)}(x) = (-1)^n P_n^{(b,a)}(-x) so that |z| <= 1/2 on [-1, 1].
  if (x < 0.0) {
    const double mirrored = jacobi_p_hypergeometric({p.b, p.a, p.n}, -x);
    return p.n % 2 == 0 ? mirrored : -mirrored;
  }
  if (p.n < 0) {
    throw Error(ErrorKind::DegreeOverflow,
                "jacobi_p_hypergeometric: negative degree " + std::to_string(p.n));
  }
  // Near z = 1/2 the terms still cancel by ~1e12 at n = 20, so the sum is
  // carried in extended precision.
  const double nd = static_cast<double>(p.n);
  check_hyp2f1(p.n, p.a + 1.0);
  Wide prefactor = 1;  // (a+1)_n / n!
  for (std::int64_t j = 1; j <= p.n; ++j) {
    prefactor *= (Wide(p.a) + Wide(j)) / Wide(j);
  }
  return static_cast<double>(
      prefactor * hyp2f1_sum<Wide>(p.n, nd + p.a + p.b + 1.0, p.a + 1.0,
                                   Wide(0.5) * (Wide(1) - Wide(x))));
}

double jacobi_p(const JacobiParams& p, double x, std::int64_t degree_cap) {
  if (p.n < 0 || p.n > degree_cap) {
    throw Error(ErrorKind::DegreeOverflow,
                "jacobi_p: degree " + std::to_string(p.n) +
                    " outside [0, " + std::to_string(degree_cap) + "]");
  }
  if (auto value = detail::jacobi_recurrence(p.a, p.b, p.n, x)) return *value;
  return jacobi_p_hypergeometric(p, x);
}

double default_step(double x) { return std::max(1e-5, 1e-5 * std::abs(x)); }

double central_diff(const RealFunction& f, double x, int order,
                    std::optional<double> h_opt) {
  const double h = h_opt.value_or(default_step(x));
  if (!(h > 0.0)) {
    throw Error(ErrorKind::Domain, "central_diff: step must be positive");
  }
  const double fp1 = f(x + h);
  const double fm1 = f(x - h);
  const double fp2 = f(x + 2.0 * h);
  const double fm2 = f(x - 2.0 * h);
  if (order == 1) {
    return (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);
  }
  if (order == 2) {
    return (16.0 * (fp1 + fm1) - (fp2 + fm2) - 30.0 * f(x)) / (12.0 * h * h);
  }
  throw Error(ErrorKind::Domain,
              "central_diff: order must be 1 or 2, got " + std::to_string(order));
}

}  // namespace pdmosc::specfun
