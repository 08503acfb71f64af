#include "pdmosc/thermo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "pdmosc/error.hpp"
#include "pdmosc/parallel.hpp"
#include "pdmosc/specfun.hpp"

namespace pdmosc::thermo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// B_{2j} / (2j)!, j = 1..10
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0};

// Relative step in beta for the pipeline's finite-difference derivatives.
constexpr double kBetaStep = 1e-3;

class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

std::vector<int> m_values(const ThermoInput& in) {
  if (in.sum_over_m < 0) return {in.m};
  std::vector<int> ms;
  for (int m = -in.sum_over_m; m <= in.sum_over_m; ++m) ms.push_back(m);
  return ms;
}

bool increasing_over_range(const ThermoInput& in, int m) {
  const auto& p = in.params;
  const auto n = in.truncation_N;
  if (n == 0) return true;
  return osc::energy(p, 1, m) > osc::energy(p, 0, m) &&
         osc::energy(p, n, m) > osc::energy(p, n - 1, m);
}

// ---------------------------------------------------------------- direct

struct DirectMoments {
  double log_z;
  double mean;
  double variance;
  double tail;
  double e_min;
  double log_excess;  // ln Z + beta e_min, kept apart to avoid cancellation
  double entropy;     // S / k_B
};

DirectMoments direct_moments(const ThermoInput& in, double beta) {
  std::vector<double> energies;
  const auto ms = m_values(in);
  energies.reserve(ms.size() * static_cast<std::size_t>(in.truncation_N + 1));
  for (int m : ms) {
    for (std::int64_t n = 0; n <= in.truncation_N; ++n) {
      energies.push_back(osc::energy(in.params, n, m));
    }
  }
  const double e_min = *std::min_element(energies.begin(), energies.end());
  // The lowest level has weight exactly 1; the rest is summed separately so
  // ln Z - (-beta e_min) = log1p(rest) keeps full precision at low T.
  const auto lowest = static_cast<std::size_t>(
      std::min_element(energies.begin(), energies.end()) - energies.begin());
  NeumaierSum excess_sum;
  NeumaierSum shifted_sum;
  std::vector<double> weights(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double shifted = energies[i] - e_min;
    weights[i] = std::exp(-beta * shifted);
    if (i != lowest) excess_sum.add(weights[i]);
    shifted_sum.add(weights[i] * shifted);
  }
  const double excess = excess_sum.value();
  const double total = 1.0 + excess;
  const double mean_shift = shifted_sum.value() / total;
  NeumaierSum spread;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double d = energies[i] - e_min - mean_shift;
    spread.add(weights[i] * d * d);
  }

  // geometric extrapolation from the last two terms of each m ladder
  double tail = 0.0;
  const std::size_t per_m = static_cast<std::size_t>(in.truncation_N + 1);
  for (std::size_t block = 0; per_m > 1 && block < ms.size(); ++block) {
    const double last = weights[block * per_m + per_m - 1];
    const double before = weights[block * per_m + per_m - 2];
    if (last == 0.0) continue;
    const double ratio = last / before;
    tail += ratio < 1.0 ? last * ratio / (1.0 - ratio)
                        : std::numeric_limits<double>::infinity();
  }
  const double log_excess = std::log1p(excess);
  return {-beta * e_min + log_excess, e_min + mean_shift, spread.value() / total,
          tail / total, e_min, log_excess, log_excess + beta * mean_shift};
}

// ----------------------------------------------------------- closed form

struct PaperTerms {
  PaperZCoefficients coeff;
  double A;      // sqrt(alpha^2 + k^2)
  double alpha2;
  double k;
};

PaperTerms paper_terms(const ThermoInput& in, double beta) {
  const auto& p = in.params;
  const double k = p.k();
  if (!(k < 0.0)) {
    throw Error(ErrorKind::NonPhysical,
                "closed form needs k < 0 (real erf arguments), got k=" +
                    std::to_string(k));
  }
  const double alpha = p.alpha();
  const double A = std::hypot(alpha, k);
  const double am = std::abs(static_cast<double>(in.m));
  const double m2 = static_cast<double>(in.m) * static_cast<double>(in.m);
  const double N = static_cast<double>(in.truncation_N);
  const double lam = p.lambda();
  PaperZCoefficients c;
  c.a_t = k * (am + 1.0) - A;
  c.b_t = -(3.0 + am + 2.0 * N) * k + A;
  c.c_t = (2.0 * N + am + 3.0) * A -
          k * (2.0 * N * N + 0.5 * m2 + 6.0 * N + 5.0 + 2.0 * N * am + 3.0 * am);
  c.d_t = am * std::sqrt(lam * lam + alpha * alpha) - 0.5 * lam * m2;
  c.d_t_corrected = am * A - 0.5 * k * m2;
  c.eta = -beta * c.a_t * c.a_t / (2.0 * k);
  c.theta_v = -beta * c.b_t * c.b_t / (2.0 * k);
  return {c, A, alpha * alpha, k};
}

double sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Every quantity below is multiplied by exp(-L), L = beta (a~ - d~).
struct ClosedForm {
  double L;
  double omega_hat;
  double d_hat;
  double lambda_hat;
  double lambda_pair_b;
  double lambda_pair_d;
  double x_hat;
  double log_z;
  double U;
  double C;
  double S;
};

ClosedForm closed_form(const ThermoInput& in, Variant variant, double beta,
                       PaperZCoefficients* coeff_out = nullptr) {
  const PaperTerms t = paper_terms(in, beta);
  const auto& c = t.coeff;
  const double k = t.k;
  const double a2 = t.alpha2;
  const double kb = in.params.kb();
  const double d = variant == Variant::Verbatim ? c.d_t : c.d_t_corrected;

  ClosedForm out{};
  out.L = beta * (c.a_t - d);
  const double c_hat = std::exp(-beta * c.c_t - out.L);
  const double x0 = -a2 * beta / (2.0 * k) - out.L;
  const double ea = std::exp(x0 - c.eta);     // e^{-a^2 b/2k} e^{a~^2 b/2k} e^{-L}
  const double eb = std::exp(x0 - c.theta_v);
  const double sa = sign_of(c.a_t);
  const double sb = sign_of(c.b_t);
  // e^{x0} [sa erf(sqrt eta) + sb erf(sqrt theta)], written with erfcx
  const double erf_mix =
      ((sa + sb) != 0.0 ? (sa + sb) * std::exp(x0) : 0.0) -
      sa * ea * specfun::erfcx(std::sqrt(c.eta)) -
      sb * eb * specfun::erfcx(std::sqrt(c.theta_v));
  out.omega_hat = std::sqrt(std::numbers::pi / 2.0) / (2.0 * k) /
                  std::sqrt(-beta / k) * erf_mix;

  out.d_hat = 1.0 - c_hat - 2.0 * out.omega_hat;

  const double common = c.c_t * c_hat +
                        (a2 * beta + k) * out.omega_hat / (k * beta) -
                        (c.a_t * ea + c.b_t * eb) / (2.0 * k * beta);
  auto pair_term = [&](double partner) {
    const double gap = c.a_t - partner;
    return std::pair{gap, std::exp(beta * gap - out.L)};
  };
  const auto [gap_b, exp_b] = pair_term(c.b_t);
  const auto [gap_d, exp_d] = pair_term(d);
  out.lambda_pair_b = gap_b * exp_b + common;
  out.lambda_pair_d = gap_d * exp_d + common;

  const double varsigma =
      c.a_t * ea * (c.a_t * c.a_t * beta - 2.0 * a2 * beta - 3.0 * k) +
      c.b_t * eb * (c.b_t * c.b_t * beta - 2.0 * a2 * beta - 3.0 * k);
  const double epsilon =
      -(a2 * a2 * beta * beta + 2.0 * a2 * beta * k + 3.0 * k * k) *
          out.omega_hat / (2.0 * k * k * beta * beta) -
      varsigma / (4.0 * k * k * beta * beta);

  const double D = out.d_hat;
  if (variant == Variant::Verbatim) {
    out.lambda_hat = out.lambda_pair_b;
    out.x_hat = gap_b * gap_b * exp_b - c.c_t * c.c_t * c_hat - epsilon;
    out.C = 0.5 * kb * beta * beta *
            (out.x_hat / D - 2.0 * out.lambda_hat * out.lambda_hat / (D * D));
  } else {
    out.lambda_hat = out.lambda_pair_d;
    out.x_hat = gap_d * gap_d * exp_d - c.c_t * c.c_t * c_hat + epsilon;
    out.C = kb * beta * beta *
            (out.x_hat / D - out.lambda_hat * out.lambda_hat / (D * D));
  }
  out.U = -out.lambda_hat / D;
  out.log_z = D > 0.0 ? out.L + std::log(0.5 * D) : kNaN;
  out.S = kb * (out.log_z + beta * out.U);

  if (coeff_out != nullptr) {
    *coeff_out = c;
    coeff_out->Omega = out.omega_hat * std::exp(out.L);
  }
  return out;
}

// ------------------------------------------------------- Poisson pipeline

struct PoissonValue {
  double log_z;
  double z_first_order;
  int em_terms;
  double em_last_term;
};

PoissonValue poisson_log_z(const ThermoInput& in, double beta) {
  const auto& p = in.params;
  const int m = in.m;
  // E(x) is a quadratic in x; recover its coefficients from three samples.
  const double e0 = osc::energy_continuous(p, 0.0, m);
  const double e1 = osc::energy_continuous(p, 1.0, m);
  const double e2 = osc::energy_continuous(p, 2.0, m);
  const double q2 = 0.5 * (e2 - 2.0 * e1 + e0);
  const double q1 = e1 - e0 - q2;
  const double end = static_cast<double>(in.truncation_N + 1);
  auto energy_at = [&](double x) { return e0 + q1 * x + q2 * x * x; };

  double e_ref = std::min(energy_at(0.0), energy_at(end));
  if (q2 != 0.0) {
    const double vertex = -q1 / (2.0 * q2);
    if (vertex > 0.0 && vertex < end) e_ref = std::min(e_ref, energy_at(vertex));
  }
  auto f = [&](double x) { return std::exp(-beta * (energy_at(x) - e_ref)); };

  // Beyond exponent 745 the integrand underflows; stop there when E rises.
  double upper = end;
  const bool rising = q1 > 0.0 && q1 + 2.0 * q2 * end > 0.0;
  if (rising && beta * (energy_at(end) - e_ref) > 745.0) {
    double lo = 0.0, hi = end;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (beta * (energy_at(mid) - e_ref) > 745.0 ? hi : lo) = mid;
    }
    upper = hi;
  }
  specfun::QuadratureSpec spec;
  spec.lower = 0.0;
  spec.upper = upper;
  spec.rel_tol = 1e-14;
  spec.abs_tol = 1e-300;
  spec.max_refinements = 20000;
  const double integral = specfun::integrate(f, spec).value;
  const double first_order = 0.5 * (f(0.0) - f(end)) + integral;

  // Euler-Maclaurin terms; derivatives of exp(g), g quadratic:
  //   f^{(n+1)} = g' f^{(n)} + n g'' f^{(n-1)}
  constexpr int kMaxOrder = 2 * static_cast<int>(kBernoulliOverFactorial.size());
  auto derivatives = [&](double x) {
    std::array<double, kMaxOrder> d{};
    const double g1 = -beta * (q1 + 2.0 * q2 * x);
    const double g2 = -beta * 2.0 * q2;
    d[0] = f(x);
    d[1] = g1 * d[0];
    for (int n = 1; n + 1 < kMaxOrder; ++n) {
      d[n + 1] = g1 * d[n] + n * g2 * d[n - 1];
    }
    return d;
  };
  const auto at_start = derivatives(0.0);
  const auto at_end = derivatives(end);
  std::array<double, kBernoulliOverFactorial.size()> terms{};
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const std::size_t order = 2 * j + 1;
    terms[j] = kBernoulliOverFactorial[j] * (at_end[order] - at_start[order]);
  }
  // The series is asymptotic: by default stop at its smallest term.
  int used = in.em_order < 0 ? 0 : std::min<int>(in.em_order, terms.size());
  if (in.em_order < 0) {
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (std::abs(terms[j]) < smallest) {
        smallest = std::abs(terms[j]);
        used = static_cast<int>(j) + 1;
      }
      if (smallest < 1e-17 * std::abs(first_order)) break;
    }
  }
  double total = first_order;
  for (int j = 0; j < used; ++j) total += terms[j];
  const double last = used > 0 ? terms[used - 1] : 0.0;
  if (!(total > 0.0)) {
    throw Error(ErrorKind::NonPositiveZ,
                "Poisson pipeline produced Z <= 0 at beta=" + std::to_string(beta));
  }
  return {-beta * e_ref + std::log(total),
          std::exp(-beta * e_ref) * first_order, used, last / total};
}

void fill_from_log_z(ThermoResult& r) {
  r.Z = std::exp(r.log_Z);
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::DirectSum: return "direct";
    case Strategy::PaperClosedForm: return "closed";
    case Strategy::PoissonPipeline: return "poisson";
  }
  return "unknown";
}

std::string_view to_string(Variant v) {
  return v == Variant::Verbatim ? "verbatim" : "corrected";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  if (text == "direct") return Strategy::DirectSum;
  if (text == "closed" || text == "paper") return Strategy::PaperClosedForm;
  if (text == "poisson") return Strategy::PoissonPipeline;
  return std::nullopt;
}

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "verbatim") return Variant::Verbatim;
  if (text == "corrected") return Variant::Corrected;
  return std::nullopt;
}

void validate(const ThermoInput& in) {
  if (!(in.beta > 0.0) || !std::isfinite(in.beta)) {
    throw Error(ErrorKind::Config,
                "beta must be positive and finite, got " + std::to_string(in.beta));
  }
  if (in.truncation_N < 0) {
    throw Error(ErrorKind::Config, "truncation N must be >= 0");
  }
  if (in.sum_over_m >= 0 && in.strategy != Strategy::DirectSum) {
    throw Error(ErrorKind::Config, "summing over m is only available for direct");
  }
  if (in.strategy == Strategy::PaperClosedForm && !(in.params.k() < 0.0)) {
    throw Error(ErrorKind::NonPhysical,
                "closed form needs k < 0, got k=" + std::to_string(in.params.k()));
  }
  if (!in.accept_truncation && in.strategy != Strategy::PaperClosedForm) {
    for (int m : m_values(in)) {
      if (!increasing_over_range(in, m)) {
        throw Error(ErrorKind::NonPhysical,
                    "E_n is not increasing over n=0..N (k=" +
                        std::to_string(in.params.k()) +
                        "); the truncated sum must be accepted explicitly");
      }
    }
  }
}

ThermoResult partition_direct(const ThermoInput& in) {
  validate(in);
  const auto moments = direct_moments(in, in.beta);
  ThermoResult r;
  r.log_Z = moments.log_z;
  fill_from_log_z(r);
  r.U = r.C = r.F = r.S = kNaN;
  r.diagnostics.strategy = Strategy::DirectSum;
  r.diagnostics.tail_estimate = moments.tail;
  r.diagnostics.non_paper_m_sum = in.sum_over_m >= 0;
  return r;
}

PaperZCoefficients paper_z_coefficients(const ThermoInput& in) {
  if (!(in.beta > 0.0)) {
    throw Error(ErrorKind::Config, "beta must be positive");
  }
  PaperZCoefficients coeff;
  closed_form(in, in.variant, in.beta, &coeff);
  return coeff;
}

ThermoResult partition_paper(const ThermoInput& in) {
  validate(in);
  const auto verbatim = closed_form(in, Variant::Verbatim, in.beta);
  const auto corrected = closed_form(in, Variant::Corrected, in.beta);
  const auto& chosen = in.variant == Variant::Verbatim ? verbatim : corrected;
  ThermoResult r;
  r.U = r.C = r.F = r.S = kNaN;
  auto& diag = r.diagnostics;
  diag.strategy = Strategy::PaperClosedForm;
  diag.variant = in.variant;
  diag.z_verbatim = 0.5 * verbatim.d_hat * std::exp(verbatim.L);
  diag.z_corrected = 0.5 * corrected.d_hat * std::exp(corrected.L);
  diag.u_pair_b = -chosen.lambda_pair_b / chosen.d_hat;
  diag.u_pair_d = -chosen.lambda_pair_d / chosen.d_hat;
  if (chosen.d_hat > 0.0) {
    r.log_Z = chosen.log_z;
    fill_from_log_z(r);
  } else {
    diag.non_positive_z = true;
    r.Z = 0.5 * chosen.d_hat * std::exp(chosen.L);
    r.log_Z = kNaN;
    diag.notes.push_back("closed form gives Z <= 0 for the " +
                         std::string(to_string(in.variant)) + " variant");
  }
  return r;
}

ThermoResult partition_poisson_independent(const ThermoInput& in) {
  validate(in);
  const auto value = poisson_log_z(in, in.beta);
  ThermoResult r;
  r.log_Z = value.log_z;
  fill_from_log_z(r);
  r.U = r.C = r.F = r.S = kNaN;
  r.diagnostics.strategy = Strategy::PoissonPipeline;
  r.diagnostics.z_first_order = value.z_first_order;
  r.diagnostics.em_terms = value.em_terms;
  r.diagnostics.em_last_term = value.em_last_term;
  return r;
}

ThermoResult partition(const ThermoInput& in) {
  switch (in.strategy) {
    case Strategy::DirectSum: return partition_direct(in);
    case Strategy::PaperClosedForm: return partition_paper(in);
    case Strategy::PoissonPipeline: return partition_poisson_independent(in);
  }
  throw Error(ErrorKind::Config, "unknown strategy");
}

double log_partition(const ThermoInput& in, double beta) {
  switch (in.strategy) {
    case Strategy::DirectSum: return direct_moments(in, beta).log_z;
    case Strategy::PaperClosedForm: {
      const auto cf = closed_form(in, in.variant, beta);
      if (!(cf.d_hat > 0.0)) {
        throw Error(ErrorKind::NonPositiveZ,
                    "closed form Z <= 0 at beta=" + std::to_string(beta));
      }
      return cf.log_z;
    }
    case Strategy::PoissonPipeline: return poisson_log_z(in, beta).log_z;
  }
  throw Error(ErrorKind::Config, "unknown strategy");
}

ThermoResult evaluate(const ThermoInput& in) {
  validate(in);
  const double beta = in.beta;
  const double kb = in.params.kb();
  ThermoResult r;
  double direct_entropy = kNaN;
  switch (in.strategy) {
    case Strategy::DirectSum: {
      const auto moments = direct_moments(in, beta);
      direct_entropy = moments.entropy;
      r.log_Z = moments.log_z;
      r.U = moments.mean;
      r.C = kb * beta * beta * moments.variance;
      r.diagnostics.tail_estimate = moments.tail;
      r.diagnostics.reference_energy = moments.e_min;
      r.diagnostics.log_z_shifted = moments.log_excess;
      r.diagnostics.non_paper_m_sum = in.sum_over_m >= 0;
      if (in.sum_over_m >= 0) {
        r.diagnostics.notes.push_back("non-paper: summed over m in [-M, M]");
      }
      break;
    }
    case Strategy::PaperClosedForm: {
      r = partition_paper(in);
      if (r.diagnostics.non_positive_z) {
        throw Error(ErrorKind::NonPositiveZ,
                    "closed form Z <= 0 at beta=" + std::to_string(beta) +
                        " (verbatim Z=" + std::to_string(r.diagnostics.z_verbatim) +
                        ", corrected Z=" +
                        std::to_string(r.diagnostics.z_corrected) + ")");
      }
      const auto cf = closed_form(in, in.variant, beta);
      r.U = cf.U;
      r.C = cf.C;
      break;
    }
    case Strategy::PoissonPipeline: {
      r = partition_poisson_independent(in);
      const double h = kBetaStep * beta;
      auto log_z = [&](double b) { return poisson_log_z(in, b).log_z; };
      r.U = -specfun::central_diff(log_z, beta, 1, h);
      r.C = kb * beta * beta * specfun::central_diff(log_z, beta, 2, h);
      r.diagnostics.derivative_step = h;
      break;
    }
  }
  r.diagnostics.strategy = in.strategy;
  r.diagnostics.variant = in.variant;
  fill_from_log_z(r);
  r.F = -r.log_Z / beta;
  r.S = kb * (r.log_Z + beta * r.U);
  if (in.strategy == Strategy::DirectSum) {
    r.S = kb * direct_entropy;
  } else {
    r.diagnostics.log_z_shifted = r.log_Z;
  }
  if (in.strategy == Strategy::PoissonPipeline) {
    // S = kB beta^2 dF/dbeta, differentiated independently of U
    const double h = r.diagnostics.derivative_step;
    auto free = [&](double b) { return -poisson_log_z(in, b).log_z / b; };
    r.S = kb * beta * beta * specfun::central_diff(free, beta, 1, h);
  }
  if (r.S < 0.0) {
    r.diagnostics.negative_entropy = true;
    r.diagnostics.notes.push_back("negative entropy");
  }
  return r;
}

double average_energy(const ThermoInput& in) { return evaluate(in).U; }
double heat_capacity(const ThermoInput& in) { return evaluate(in).C; }
double free_energy(const ThermoInput& in) { return evaluate(in).F; }
double entropy(const ThermoInput& in) { return evaluate(in).S; }

unsigned thread_budget() {
  if (const char* env = std::getenv("PDM_OSC_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return static_cast<unsigned>(value);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ThermoResult> evaluate_many(const std::vector<ThermoInput>& inputs,
                                        unsigned threads) {
  std::vector<ThermoResult> results(inputs.size());
  parallel_for(inputs.size(), threads, [&](std::size_t i) {
    try {
      results[i] = evaluate(inputs[i]);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "grid point " << i << " (beta=" << inputs[i].beta
          << ", k=" << inputs[i].params.k() << "): " << e.what();
      throw Error(e.kind(), msg.str());
    }
  });
  return results;
}

}  // namespace pdmosc::thermo
