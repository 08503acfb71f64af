// Acceptance gate: one line per criterion, exit status 0 iff all pass.

#include <cstdio>
#include <vector>

#include "pdmosc/thermo.hpp"
#include "pdmosc/validation.hpp"

using namespace pdmosc::validation;

int main() {
  Options opt;
  opt.threads = pdmosc::thermo::thread_budget();

  struct Criterion {
    int id;
    const char* name;
    CheckResult (*check)(const Options&);
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {1, "nu_quantization", check_nu_quantization, 1.0},
      {2, "ode_residual", check_ode_residual, 10.0},
      {3, "normalization_orthogonality", check_normalization, 10.0},
      {4, "k_to_zero_limit", check_k_limit, 0.0},
      {5, "strategy_triangulation", check_triangulation, 30.0},
      {6, "derivative_consistency", check_derivatives, 0.0},
      {7, "figure_properties", check_figure_properties, 60.0},
      {8, "thermo_identity", check_thermo_identity, 0.0},
      {9, "truncation_insensitivity", check_truncation, 0.0},
      {10, "determinism", check_determinism, 0.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto r = timed(c.name, [&] { return c.check(opt); });
    bool ok = r.passed;
    std::string budget;
    if (c.budget_seconds > 0.0) {
      const bool in_time = r.seconds < c.budget_seconds;
      budget = in_time ? "" : " [over runtime budget]";
      ok = ok && in_time;
    }
    failures += !ok;
    std::printf("criterion %2d %-28s %s (%.2fs%s): %s\n", c.id, r.name.c_str(),
                ok ? "PASS" : "FAIL", r.seconds, budget.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
