#include "pdmosc/nu.hpp"

#include <cmath>
#include <string>

#include "pdmosc/error.hpp"

namespace pdmosc::nu {

namespace {

double checked_sqrt(double x, const char* what) {
  if (x >= 0.0) return std::sqrt(x);
  if (x > -kRootClamp) return 0.0;
  throw Error(ErrorKind::NegativeDiscriminant,
              std::string("nu: ") + what + " = " + std::to_string(x) +
                  " is negative");
}

struct Chain {
  double a4, a5, a6, a7, a8, a9;
};

Chain base_chain(const NUProblem& p) {
  Chain c{};
  c.a4 = 0.5 * (1.0 - p.a1);
  c.a5 = 0.5 * (p.a2 - 2.0 * p.a3);
  c.a6 = c.a5 * c.a5 + p.eps1;
  c.a7 = 2.0 * c.a4 * c.a5 - p.eps2;
  c.a8 = c.a4 * c.a4 + p.eps3;
  c.a9 = p.a3 * c.a7 + p.a3 * p.a3 * c.a8 + c.a6;
  return c;
}

}  // namespace

NUCoefficients derive_coefficients(const NUProblem& p) {
  if (p.a3 == 0.0) {
    throw Error(ErrorKind::Domain, "nu: a3 must be nonzero");
  }
  const Chain base = base_chain(p);
  NUCoefficients c;
  c.problem = p;
  c.a4 = base.a4;
  c.a5 = base.a5;
  c.a6 = base.a6;
  c.a7 = base.a7;
  c.a8 = base.a8;
  c.a9 = base.a9;
  c.sqrt_a8 = checked_sqrt(c.a8, "a8");
  c.sqrt_a9 = checked_sqrt(c.a9, "a9");
  const double s = c.sqrt_a9 + p.a3 * c.sqrt_a8;
  c.a10 = p.a1 + 2.0 * c.a4 + 2.0 * c.sqrt_a8;
  c.a11 = p.a2 - 2.0 * c.a5 + 2.0 * s;
  c.a12 = c.a4 + c.sqrt_a8;
  c.a13 = c.a5 - s;
  const double centre = -(c.a7 + 2.0 * p.a3 * c.a8);
  const double spread = 2.0 * c.sqrt_a8 * c.sqrt_a9;
  c.kappa_plus = centre + spread;
  c.kappa_minus = centre - spread;
  return c;
}

bool coefficients_consistent(const NUCoefficients& c) {
  const Chain base = base_chain(c.problem);
  return base.a4 == c.a4 && base.a5 == c.a5 && base.a6 == c.a6 &&
         base.a7 == c.a7 && base.a8 == c.a8 && base.a9 == c.a9 &&
         c.kappa_minus <= c.kappa_plus;
}

double tau_prime(const NUCoefficients& c) { return -c.a11; }

double quantization_residual(const NUCoefficients& c, std::int64_t n) {
  const auto& p = c.problem;
  const double nd = static_cast<double>(n);
  return p.a2 * nd - (2.0 * nd + 1.0) * c.a5 + nd * (nd - 1.0) * p.a3 +
         (2.0 * nd + 1.0) * (p.a3 * c.sqrt_a8 + c.sqrt_a9) + c.a7 +
         2.0 * p.a3 * c.a8 + 2.0 * c.sqrt_a8 * c.sqrt_a9;
}

NUSolution build_solution(const NUCoefficients& c, std::int64_t n) {
  const double a3 = c.problem.a3;
  NUSolution s;
  s.a3 = a3;
  s.phi = {c.a12, -c.a13 / a3 - c.a12};
  s.weight = {c.a10 - 1.0, c.a11 / a3 - c.a10 - 1.0};
  s.jacobi = {c.a10 - 1.0, c.a11 / a3 - c.a10 - 1.0, n};
  s.jacobi_b_verbatim = c.a11 / a3;
  return s;
}

double NUSolution::chi(double z) const {
  const double t = 1.0 - a3 * z;
  return std::pow(std::abs(z), phi.z_power) * std::pow(t, phi.one_minus_power) *
         specfun::jacobi_p(jacobi, 1.0 - 2.0 * a3 * z);
}

double NUSolution::rho(double z) const {
  return std::pow(std::abs(z), weight.z_power) *
         std::pow(1.0 - a3 * z, weight.one_minus_power);
}

std::vector<double> find_roots(const std::function<double(double)>& f,
                               double lo, double hi, double step,
                               double x_tol) {
  if (!(step > 0.0) || !(lo < hi)) {
    throw Error(ErrorKind::Domain, "find_roots: need lo < hi and step > 0");
  }
  std::vector<double> roots;
  double x0 = lo;
  double f0 = f(x0);
  const auto count = static_cast<std::int64_t>(std::ceil((hi - lo) / step));
  for (std::int64_t i = 1; i <= count; ++i) {
    const double x1 = std::min(hi, lo + static_cast<double>(i) * step);
    const double f1 = f(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if (std::signbit(f0) != std::signbit(f1) && f1 != 0.0) {
      double a = x0, b = x1, fa = f0;
      while (b - a > x_tol) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0) roots.push_back(x0);
  return roots;
}

}  // namespace pdmosc::nu
