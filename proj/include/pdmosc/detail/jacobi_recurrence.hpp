#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

namespace pdmosc::detail {

// Three-term recurrence for P_n^{(a,b)}(x) in any floating type. Returns
// nullopt when the leading coefficient 2k(k+a+b)(2k+a+b-2) vanishes.
template <typename Real>
std::optional<Real> jacobi_recurrence(Real a, Real b, std::int64_t n, Real x) {
  if (n == 0) return Real(1);
  Real prev = 1;
  Real curr = (a + 1) + (a + b + 2) * (x - 1) / 2;
  const Real apb = a + b;
  const Real a2mb2 = a * a - b * b;
  for (std::int64_t k = 2; k <= n; ++k) {
    const Real kd = static_cast<Real>(k);
    const Real s = 2 * kd + apb;
    const Real lead = 2 * kd * (kd + apb) * (s - 2);
    if (std::abs(lead) < Real(1e-12) * (1 + s * s * kd)) return std::nullopt;
    const Real next = ((s - 1) * (s * (s - 2) * x + a2mb2) * curr -
                       2 * (kd + a - 1) * (kd + b - 1) * s * prev) /
                      lead;
    prev = curr;
    curr = next;
  }
  return curr;
}

}  // namespace pdmosc::detail
