#pragma once

// Self-checks of the library against independent oracles. Each check is
// cheap enough to run from the command line; the acceptance binary and the
// `validate` command share them.

#include <functional>
#include <string>
#include <vector>

namespace pdmosc::validation {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Metrics and tolerances, one clause per sub-check.
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  /// Cuts fixture sizes to the sub-second subset.
  bool quick = false;
  /// Added to every energy the ODE check substitutes (negative control).
  double perturb_energy = 0.0;
  unsigned threads = 1;
};

CheckResult check_nu_quantization(const Options& opt);
CheckResult check_ode_residual(const Options& opt);
CheckResult check_normalization(const Options& opt);
CheckResult check_k_limit(const Options& opt);
CheckResult check_triangulation(const Options& opt);
CheckResult check_derivatives(const Options& opt);
CheckResult check_figure_properties(const Options& opt);
CheckResult check_thermo_identity(const Options& opt);
CheckResult check_truncation(const Options& opt);
CheckResult check_determinism(const Options& opt);
CheckResult check_low_temperature(const Options& opt);

/// All checks in a fixed order; the quick subset skips the slow scans.
std::vector<CheckResult> run_all(const Options& opt);

/// Runs `body` and stamps the elapsed wall time on its result; an escaping
/// exception becomes a failed result under `name`.
CheckResult timed(const std::string& name, const std::function<CheckResult()>& body);

}  // namespace pdmosc::validation
