#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "pdmosc/error.hpp"
#include "pdmosc/specfun.hpp"

namespace pdmosc::specfun {

namespace {

// Kronrod 15-point abscissae (descending, last is the centre) and weights;
// the 7-point Gauss rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lower;
  double upper;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const RealFunction& f, double lower, double upper) {
  const double centre = 0.5 * (lower + upper);
  const double half = 0.5 * (upper - lower);
  const double fc = f(centre);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lower, upper, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const RealFunction& f, const QuadratureSpec& spec) {
  if (!(spec.lower < spec.upper) || !(spec.rel_tol > 0.0) ||
      !(spec.abs_tol > 0.0) || spec.max_refinements < 0) {
    throw Error(ErrorKind::Domain,
                "integrate: need lower < upper and positive tolerances");
  }
  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, spec.lower, spec.upper);
  double value = first.value;
  double error = first.error;
  heap.push(first);
  int refinements = 0;
  auto converged = [&] {
    return error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  };
  while (!converged()) {
    if (refinements >= spec.max_refinements) {
      throw QuadratureError("integrate: no convergence after " +
                                std::to_string(refinements) + " refinements",
                            value, error);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lower + worst.upper);
    const Segment left = gauss_kronrod(f, worst.lower, mid);
    const Segment right = gauss_kronrod(f, mid, worst.upper);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++refinements;
    // Summing many small corrections drifts; rebuild the totals now and then.
    if (refinements % 64 == 0) {
      auto copy = heap;
      value = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        value += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {value, error, refinements, 15 * (1 + 2 * refinements)};
}

QuadratureResult integrate_to_infinity(const RealFunction& f,
                                       QuadratureSpec spec) {
  const double lower = spec.lower;
  auto mapped = [&f, lower](double t) {
    const double one_minus = 1.0 - t;
    const double x = lower + t / one_minus;
    const double jac = 1.0 / (one_minus * one_minus);
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx * jac;
  };
  spec.lower = 0.0;
  spec.upper = 1.0;
  return integrate(mapped, spec);
}

}  // namespace pdmosc::specfun
