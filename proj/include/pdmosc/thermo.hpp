#pragma once

// Canonical ensemble at fixed magnetic quantum number m:
//   Z(beta) = sum_{n=0}^{N} exp(-beta E_{n,m}).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdmosc/oscillator.hpp"

namespace pdmosc::thermo {

enum class Strategy {
  /// Truncated state sum, log-sum-exp accumulated. The reference.
  DirectSum,
  /// Closed-form Poisson-summed expression with a~, b~, c~, d~ and Omega.
  PaperClosedForm,
  /// Summation formula applied numerically: quadrature for the integral,
  /// Euler-Maclaurin endpoint corrections, finite-difference derivatives.
  PoissonPipeline,
};

/// Closed-form variants. Verbatim follows the printed formulas exactly;
/// Corrected uses d~ = |m| sqrt(k^2+alpha^2) - k m^2/2, pairs Lambda with
/// d~ and uses C = kB beta^2 [X/D - Lambda^2/D^2] with +epsilon.
enum class Variant { Verbatim, Corrected };

std::string_view to_string(Strategy s);
std::string_view to_string(Variant v);
std::optional<Strategy> parse_strategy(std::string_view text);
std::optional<Variant> parse_variant(std::string_view text);

inline constexpr std::int64_t kDefaultTruncation = 500;

struct ThermoInput {
  osc::SystemParams params = osc::SystemParams::make(1.0, -0.3);
  int m = 1;
  double beta = 1.0;
  /// Upper bound of the state sum (n = 0..N).
  std::int64_t truncation_N = kDefaultTruncation;
  Strategy strategy = Strategy::DirectSum;
  Variant variant = Variant::Corrected;
  /// Allows DirectSum when E_n is not increasing over 0..N.
  bool accept_truncation = false;
  /// PoissonPipeline: -1 sums Bernoulli terms through the smallest one,
  /// 0 is the bare first-order formula, p > 0 adds exactly p terms (max 10).
  int em_order = -1;
  /// DirectSum only, exploratory: when >= 0, also sum over m in [-M, M].
  int sum_over_m = -1;
};

struct PaperZCoefficients {
  double a_t = 0.0;
  double b_t = 0.0;
  double c_t = 0.0;
  /// |m| sqrt(lambda^2 + alpha^2) - lambda m^2 / 2, lambda the mass scale.
  double d_t = 0.0;
  /// |m| sqrt(k^2 + alpha^2) - k m^2 / 2
  double d_t_corrected = 0.0;
  double Omega = 0.0;
  double eta = 0.0;
  double theta_v = 0.0;
};

struct Diagnostics {
  Strategy strategy = Strategy::DirectSum;
  Variant variant = Variant::Corrected;
  /// DirectSum: estimated weight of n > N relative to Z.
  double tail_estimate = 0.0;
  /// Step in beta used for finite-difference derivatives (0 if none).
  double derivative_step = 0.0;
  /// ln Z + beta * reference_energy. DirectSum takes the lowest level as
  /// reference, so F - reference = -log_z_shifted / beta stays resolvable
  /// where F itself is rounded to E_0. Other strategies use 0.
  double reference_energy = 0.0;
  double log_z_shifted = 0.0;
  /// PaperClosedForm: Z under both variants.
  double z_verbatim = 0.0;
  double z_corrected = 0.0;
  /// PaperClosedForm: U with Lambda paired with b~ and with d~.
  double u_pair_b = 0.0;
  double u_pair_d = 0.0;
  /// PoissonPipeline: Z from the bare first-order formula, Bernoulli terms
  /// used and the last one relative to Z.
  double z_first_order = 0.0;
  int em_terms = 0;
  double em_last_term = 0.0;
  bool non_positive_z = false;
  bool negative_entropy = false;
  bool non_paper_m_sum = false;
  std::vector<std::string> notes;
};

struct ThermoResult {
  double Z = 0.0;
  double log_Z = 0.0;
  double U = 0.0;
  double C = 0.0;
  double F = 0.0;
  double S = 0.0;
  Diagnostics diagnostics;
};

/// Checks beta > 0, N >= 0 and the strategy preconditions; throws Error.
void validate(const ThermoInput& input);

// Partition function under a single strategy; only Z, log_Z and the
// diagnostics are filled.
ThermoResult partition_direct(const ThermoInput& input);
PaperZCoefficients paper_z_coefficients(const ThermoInput& input);
ThermoResult partition_paper(const ThermoInput& input);
ThermoResult partition_poisson_independent(const ThermoInput& input);

/// Dispatches on input.strategy.
ThermoResult partition(const ThermoInput& input);

double average_energy(const ThermoInput& input);
double heat_capacity(const ThermoInput& input);
double free_energy(const ThermoInput& input);
double entropy(const ThermoInput& input);

/// Everything at once; cheaper than the four calls above.
ThermoResult evaluate(const ThermoInput& input);

/// ln Z as a function of beta with the rest of `input` fixed.
double log_partition(const ThermoInput& input, double beta);

/// Evaluates every input, in parallel when threads > 1. Output order
/// matches input order. A failing point is rethrown as Error naming its
/// index, beta and k.
std::vector<ThermoResult> evaluate_many(const std::vector<ThermoInput>& inputs,
                                        unsigned threads);

/// PDM_OSC_THREADS if set to a positive integer, else the hardware count.
unsigned thread_budget();

}  // namespace pdmosc::thermo
