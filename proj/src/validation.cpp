#include "pdmosc/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pdmosc/commands.hpp"
#include "pdmosc/error.hpp"
#include "pdmosc/nu.hpp"
#include "pdmosc/oscillator.hpp"
#include "pdmosc/series.hpp"
#include "pdmosc/specfun.hpp"
#include "pdmosc/thermo.hpp"

namespace pdmosc::validation {

namespace {

using thermo::Strategy;
using thermo::ThermoInput;
using thermo::Variant;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string clause(const std::string& what, double value, const char* op,
                   double tol) {
  return what + " " + sci(value) + " (" + op + " " + sci(tol) + ")";
}

void append(std::string& detail, const std::string& more) {
  if (!detail.empty()) detail += "; ";
  detail += more;
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

// Figure sets: m = 1 and m = 2 at these k, alpha = 1, N = 500.
constexpr double kFigureKs[] = {-0.1, -0.2, -0.3};

config::RunConfig figure_config(bool quick) {
  config::RunConfig c;
  c.command = config::Command::Figures;
  if (quick) c.T.count = 60;
  return c;
}

ThermoInput figure_input(double k, int m, double T) {
  ThermoInput in;
  in.params = osc::SystemParams::make(1.0, k);
  in.m = m;
  in.beta = 1.0 / T;
  in.truncation_N = 500;
  return in;
}

struct OdeFixture {
  osc::SystemParams params;
  osc::QuantumState state;
};

std::vector<OdeFixture> ode_fixtures(bool quick) {
  std::vector<OdeFixture> out;
  const std::vector<double> alphas = quick ? std::vector{1.0} : std::vector{1.0, 2.0};
  const std::vector<double> ks = quick ? std::vector{-0.3} : std::vector{-0.1, -0.3, -0.5};
  const int top = quick ? 1 : 3;
  for (double a : alphas) {
    for (double k : ks) {
      const auto p = osc::SystemParams::make(a, k);
      for (int n = 0; n <= top; ++n) {
        for (int m = 0; m <= top; ++m) out.push_back({p, osc::make_state(p, n, m)});
      }
    }
  }
  return out;
}

}  // namespace

CheckResult timed(const std::string& name, const std::function<CheckResult()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.name = name;
    r.passed = false;
    append(r.detail, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

CheckResult check_nu_quantization(const Options& opt) {
  CheckResult r{"nu_quantization", true, "", 0.0};
  double worst = 0.0;
  bool consistent = true;
  int count = 0;
  const std::vector<double> alphas = opt.quick ? std::vector{1.0} : std::vector{1.0, 2.0};
  const std::vector<double> ks =
      opt.quick ? std::vector{-0.5} : std::vector{-0.1, -0.5, -1.0};
  for (double a : alphas) {
    for (double k : ks) {
      const auto p = osc::SystemParams::make(a, k);
      for (int n = 0; n <= 8; ++n) {
        for (int m = -4; m <= 4; ++m) {
          const double e = osc::energy(p, n, m) + opt.perturb_energy;
          const auto c = nu::derive_coefficients(osc::nu_instance(p, m, e));
          consistent = consistent && nu::coefficients_consistent(c);
          worst = std::max(worst, std::abs(nu::quantization_residual(c, n)));
          ++count;
        }
      }
    }
  }
  r.passed = worst <= 1e-9 && consistent;
  r.detail = clause("max |residual| over " + std::to_string(count) + " states", worst,
                    "<=", 1e-9);
  if (!consistent) append(r.detail, "coefficient rebuild mismatch");
  return r;
}

CheckResult check_ode_residual(const Options& opt) {
  CheckResult r{"ode_residual", true, "", 0.0};
  constexpr int kPoints = 50;
  double worst = 0.0;
  double weakest_detection = std::numeric_limits<double>::infinity();
  const auto fixtures = ode_fixtures(opt.quick);
  for (const auto& f : fixtures) {
    const double r_max = f.params.r_max();
    const auto profile = osc::select_profile(f.params, f.state);
    auto checked = f.state;
    checked.energy += opt.perturb_energy;
    const auto checked_profile = osc::select_profile(f.params, checked);
    double detected = 0.0;
    for (int i = 1; i <= kPoints; ++i) {
      const double x = r_max * i / (kPoints + 1.0);
      worst = std::max(worst, osc::ode_residual(checked_profile, x, checked.energy));
      detected = std::max(detected, osc::ode_residual(profile, x, f.state.energy + 0.05));
    }
    weakest_detection = std::min(weakest_detection, detected);
  }
  r.passed = worst <= 1e-8 && weakest_detection > 1e-3;
  r.detail = clause("max relative residual over " + std::to_string(fixtures.size()) +
                        " states x 50 points",
                    worst, "<=", 1e-8);
  append(r.detail, clause("smallest max-residual with E+0.05", weakest_detection, ">", 1e-3));
  return r;
}

CheckResult check_normalization(const Options& opt) {
  CheckResult r{"normalization_orthogonality", true, "", 0.0};
  double worst_norm = 0.0, worst_closed = 0.0, worst_cross = 0.0, flat_cross = 0.0;
  const std::vector<double> ks = opt.quick ? std::vector{-0.3} : std::vector{-0.1, -0.3, -0.5};
  const int top_n = opt.quick ? 1 : 3;
  const int top_m = opt.quick ? 0 : 2;
  for (double k : ks) {
    const auto p = osc::SystemParams::make(1.0, k);
    const double c = -p.delta_sq();
    const double s = p.s_parameter();
    for (int m = 0; m <= top_m; ++m) {
      std::vector<osc::RadialWavefunction> wfs, flats;
      for (int n = 0; n <= top_n; ++n) {
        const auto state = osc::make_state(p, n, m);
        wfs.push_back(osc::radial_wavefunction(p, state));
        flats.push_back(osc::radial_wavefunction(p, state, osc::Measure::Flat));
        const auto& wf = wfs.back();
        worst_norm = std::max(worst_norm, std::abs(osc::overlap(wf, wf) - 1.0));
        // closed-form Jacobi norm in z = -delta^2 r^2
        const double a = std::abs(m);
        const double log_norm = std::lgamma(n + a + 1) + std::lgamma(n + s + 1) -
                                std::log(2 * n + a + s + 1) - std::lgamma(n + 1.0) -
                                std::lgamma(n + a + s + 1) - std::log(2 * c);
        const double predicted = std::exp(-0.5 * log_norm);
        worst_closed = std::max(worst_closed, rel(wf.normalization(), predicted));
      }
      for (std::size_t i = 0; i < wfs.size(); ++i) {
        for (std::size_t j = i + 1; j < wfs.size(); ++j) {
          worst_cross = std::max(worst_cross, std::abs(osc::overlap(wfs[i], wfs[j])));
          flat_cross = std::max(flat_cross, std::abs(osc::overlap(flats[i], flats[j])));
        }
      }
    }
  }
  r.passed = worst_norm <= 1e-8 && worst_closed <= 1e-8 && worst_cross <= 1e-6;
  r.detail = clause("mass-weighted |<U,U>-1|", worst_norm, "<=", 1e-8);
  append(r.detail, clause("normalization vs closed-form Jacobi norm", worst_closed, "<=", 1e-8));
  append(r.detail, clause("max |cross term|", worst_cross, "<=", 1e-6));
  append(r.detail, "flat r dr measure max |cross term| " + sci(flat_cross) + " (informational)");
  return r;
}

CheckResult check_k_limit(const Options& opt) {
  CheckResult r{"k_to_zero_limit", true, "", 0.0};
  double worst_e = 0.0;
  for (double alpha : {1.0, 2.0}) {
    const auto p = osc::SystemParams::make(alpha, -1e-8);
    for (int n = 0; n <= 4; ++n) {
      for (int m = -3; m <= 3; ++m) {
        worst_e = std::max(worst_e, std::abs(osc::energy(p, n, m) -
                                             (2 * n + std::abs(m) + 1) * alpha));
      }
    }
  }
  const auto flat = osc::SystemParams::make(1.0, 0.0, 1.0, 1.0, osc::Mode::Exploratory);
  double worst_z = 0.0;
  const std::vector<double> betas =
      opt.quick ? std::vector{0.05, 1.0} : std::vector{0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
  for (double beta : betas) {
    ThermoInput in;
    in.params = flat;
    in.m = 1;
    in.beta = beta;
    in.truncation_N = 500;
    const double z = thermo::partition_direct(in).Z;
    const double q = std::exp(-2.0 * beta);
    worst_z = std::max(worst_z, rel(z, q / (1.0 - q)));
  }
  ThermoInput hot;
  hot.params = flat;
  hot.m = 1;
  hot.beta = 0.01;
  hot.truncation_N = 500;
  const double c_hot = thermo::heat_capacity(hot);
  const double c_err = std::abs(c_hot - flat.kb()) / flat.kb();
  r.passed = worst_e <= 1e-6 && worst_z <= 1e-10 && c_err <= 0.01;
  r.detail = clause("max |E - (2n+|m|+1)alpha| at k=-1e-8, n<=4, |m|<=3", worst_e, "<=", 1e-6);
  append(r.detail, clause("k=0 Z vs geometric series", worst_z, "<=", 1e-10));
  append(r.detail, clause("C(T=100)=" + sci(c_hot) + ", |C-k_B|/k_B", c_err, "<=", 0.01));
  return r;
}

CheckResult check_triangulation(const Options& opt) {
  CheckResult r{"strategy_triangulation", true, "", 0.0};
  const auto Ts = config::temperatures(figure_config(opt.quick).T);
  double worst_poisson = 0.0, worst_poisson_bare = 0.0;
  double worst_paper = 0.0, worst_verbatim = 0.0, worst_corrected = 0.0;
  double worst_s = 0.0;
  int paper_points = 0;
  for (double k : kFigureKs) {
    for (double T : Ts) {
      if (T < 1.0) continue;  // beta <= 1
      auto in = figure_input(k, 1, T);
      const auto direct = thermo::evaluate(in);
      in.strategy = Strategy::PoissonPipeline;
      const auto pipe = thermo::partition_poisson_independent(in);
      worst_poisson = std::max(worst_poisson, std::abs(std::expm1(pipe.log_Z - direct.log_Z)));
      worst_poisson_bare = std::max(
          worst_poisson_bare, rel(pipe.diagnostics.z_first_order, direct.Z));
      if (T < 5.0 || T > 50.0) continue;
      in.strategy = Strategy::PaperClosedForm;
      const auto paper = thermo::partition_paper(in);
      const double ev = rel(paper.diagnostics.z_verbatim, direct.Z);
      const double ec = rel(paper.diagnostics.z_corrected, direct.Z);
      worst_verbatim = std::max(worst_verbatim, ev);
      worst_corrected = std::max(worst_corrected, ec);
      worst_paper = std::max(worst_paper, std::min(ev, ec));
      in.variant = Variant::Corrected;
      worst_s = std::max(worst_s, rel(thermo::evaluate(in).S, direct.S));
      ++paper_points;
    }
  }
  r.passed = worst_poisson <= 1e-3 && worst_paper <= 0.05;
  r.detail = clause("Poisson pipeline vs direct Z, beta<=1", worst_poisson, "<=", 1e-3);
  append(r.detail, "first-order formula alone " + sci(worst_poisson_bare));
  append(r.detail, clause("closed form (best variant) vs direct Z, T in [5,50]", worst_paper,
                          "<=", 0.05));
  append(r.detail, "verbatim " + sci(worst_verbatim) + ", corrected " + sci(worst_corrected) +
                       " over " + std::to_string(paper_points) + " points");
  append(r.detail, "corrected S vs direct S " + sci(worst_s));
  return r;
}

CheckResult check_derivatives(const Options& opt) {
  CheckResult r{"derivative_consistency", true, "", 0.0};
  double worst[2] = {0.0, 0.0};  // verbatim, corrected
  const std::vector<int> ms = opt.quick ? std::vector{1} : std::vector{1, 2};
  for (int m : ms) {
    for (double k : kFigureKs) {
      for (double beta : {0.05, 0.1, 0.5}) {
        for (Variant v : {Variant::Verbatim, Variant::Corrected}) {
          auto in = figure_input(k, m, 1.0 / beta);
          in.strategy = Strategy::PaperClosedForm;
          in.variant = v;
          const auto analytic = thermo::evaluate(in);
          const double h = 1e-3 * beta;
          auto log_z = [&](double b) { return thermo::log_partition(in, b); };
          auto free = [&](double b) { return -thermo::log_partition(in, b) / b; };
          const double kb = in.params.kb();
          const double u = -specfun::central_diff(log_z, beta, 1, h);
          const double c = kb * beta * beta * specfun::central_diff(log_z, beta, 2, h);
          const double s = kb * beta * beta * specfun::central_diff(free, beta, 1, h);
          double& w = worst[v == Variant::Corrected];
          w = std::max({w, rel(analytic.U, u), rel(analytic.C, c), rel(analytic.S, s)});
        }
      }
    }
  }
  r.passed = worst[1] <= 1e-6;
  r.detail = clause("corrected U,C,S vs finite differences of ln Z", worst[1], "<=", 1e-6);
  append(r.detail, "verbatim printed expressions " + sci(worst[0]) + " (informational)");
  return r;
}

CheckResult check_figure_properties(const Options& opt) {
  CheckResult r{"figure_properties", true, "", 0.0};
  const auto Ts = config::temperatures(figure_config(opt.quick).T);
  bool z_up = true, f_down = true, s_up = true, c_rises = true;
  double worst_plateau = 0.0;          // range/mean over best doubling window
  double worst_endpoint = 0.0;         // |C(2T*) - C(T*)| / C(T*) at best window
  double weakest_k_spread = std::numeric_limits<double>::infinity();
  std::string plateaus;
  for (int m : {1, 2}) {
    std::vector<double> plateau_values;
    for (double k : kFigureKs) {
      std::vector<ThermoInput> inputs;
      for (double T : Ts) inputs.push_back(figure_input(k, m, T));
      const auto res = thermo::evaluate_many(inputs, opt.threads);
      std::vector<double> C;
      for (std::size_t i = 0; i < res.size(); ++i) {
        C.push_back(res[i].C);
        if (i == 0) continue;
        z_up = z_up && res[i].Z > res[i - 1].Z;
        // F - E_0 keeps the digits that F itself loses at low T
        const double f_now = -res[i].diagnostics.log_z_shifted / inputs[i].beta;
        const double f_before = -res[i - 1].diagnostics.log_z_shifted / inputs[i - 1].beta;
        f_down = f_down && f_now < f_before;
        s_up = s_up && res[i].S > res[i - 1].S;
      }
      const auto peak = std::max_element(C.begin(), C.end());
      c_rises = c_rises && peak != C.begin() && *peak > C.front();

      double best = std::numeric_limits<double>::infinity(), best_end = best, best_mean = 0.0;
      for (std::size_t i = 0; i < Ts.size() && 2.0 * Ts[i] <= Ts.back(); ++i) {
        double lo = C[i], hi = C[i], sum = 0.0;
        std::size_t j = i, count = 0;
        for (; j < Ts.size() && Ts[j] <= 2.0 * Ts[i] * (1 + 1e-12); ++j, ++count) {
          lo = std::min(lo, C[j]);
          hi = std::max(hi, C[j]);
          sum += C[j];
        }
        const double mean = sum / count;
        if ((hi - lo) / mean < best) {
          best = (hi - lo) / mean;
          best_end = std::abs(C[j - 1] - C[i]) / C[i];
          best_mean = mean;
        }
      }
      worst_plateau = std::max(worst_plateau, best);
      worst_endpoint = std::max(worst_endpoint, best_end);
      plateau_values.push_back(best_mean);
      plateaus += (plateaus.empty() ? "" : ", ") + std::string("m=") + std::to_string(m) +
                  " k=" + sci(k) + ": " + sci(best_mean);
    }
    const auto [lo, hi] = std::minmax_element(plateau_values.begin(), plateau_values.end());
    const double mean = (plateau_values[0] + plateau_values[1] + plateau_values[2]) / 3.0;
    weakest_k_spread = std::min(weakest_k_spread, (*hi - *lo) / mean);
  }
  const bool plateau_ok = worst_plateau < 0.01;
  const bool k_ok = weakest_k_spread > 0.02;
  r.passed = z_up && f_down && s_up && c_rises && plateau_ok && k_ok;
  r.detail = std::string("Z increasing ") + (z_up ? "yes" : "NO") + ", F decreasing " +
             (f_down ? "yes" : "NO") + ", S increasing " + (s_up ? "yes" : "NO") +
             ", C rises to an interior maximum " + (c_rises ? "yes" : "NO");
  append(r.detail, clause("C plateau (max-min)/mean over best doubling of T", worst_plateau,
                          "<", 0.01));
  append(r.detail, "endpoint |C(2T*)-C(T*)|/C(T*) " + sci(worst_endpoint));
  append(r.detail, clause("plateau spread across k", weakest_k_spread, ">", 0.02));
  append(r.detail, "plateau values " + plateaus);
  return r;
}

CheckResult check_thermo_identity(const Options& opt) {
  CheckResult r{"thermo_identity", true, "", 0.0};
  const auto Ts = config::temperatures(figure_config(opt.quick).T);
  double worst = 0.0;
  bool positive = true;
  for (int m : {1, 2}) {
    for (double k : kFigureKs) {
      std::vector<ThermoInput> inputs;
      for (double T : Ts) inputs.push_back(figure_input(k, m, T));
      const auto res = thermo::evaluate_many(inputs, opt.threads);
      for (std::size_t i = 0; i < res.size(); ++i) {
        const auto& x = res[i];
        const double T = Ts[i];
        worst = std::max(worst, std::abs(x.F - (x.U - T * x.S)) / std::max(1.0, std::abs(x.F)));
        positive = positive && x.Z > 0.0 && x.C >= 0.0;
      }
    }
  }
  r.passed = worst <= 1e-8 && positive;
  r.detail = clause("max |F-(U-TS)|/max(1,|F|)", worst, "<=", 1e-8);
  append(r.detail, std::string("Z > 0 and C >= 0 ") + (positive ? "yes" : "NO"));
  return r;
}

CheckResult check_truncation(const Options& opt) {
  CheckResult r{"truncation_insensitivity", true, "", 0.0};
  const auto Ts = config::temperatures(figure_config(opt.quick).T);
  double worst = 0.0;
  for (int m : {1, 2}) {
    for (double k : kFigureKs) {
      for (double T : Ts) {
        if (T > 50.0) continue;
        auto in = figure_input(k, m, T);
        const double z500 = thermo::log_partition(in, in.beta);
        in.truncation_N = 300;
        const double z300 = thermo::log_partition(in, in.beta);
        worst = std::max(worst, std::abs(std::expm1(z300 - z500)));
      }
    }
  }
  r.passed = worst <= 1e-12;
  r.detail = clause("max |Z_300/Z_500 - 1|, T <= 50", worst, "<=", 1e-12);
  return r;
}

CheckResult check_determinism(const Options& opt) {
  CheckResult r{"determinism", true, "", 0.0};
  const auto c = figure_config(true);
  auto render = [&](unsigned threads) {
    std::vector<std::string> out;
    for (const auto& t : commands::figures(c, threads)) out.push_back(series::to_csv(t.table));
    return out;
  };
  const auto serial = render(1);
  const auto again = render(1);
  const auto parallel = render(std::max(2u, opt.threads));
  r.passed = serial == again && serial == parallel;
  r.detail = std::to_string(serial.size()) + " figure CSVs byte-identical across repeated "
             "and 1-vs-" + std::to_string(std::max(2u, opt.threads)) + "-thread runs: " +
             (r.passed ? "yes" : "NO");
  return r;
}

CheckResult check_low_temperature(const Options&) {
  CheckResult r{"low_temperature_limit", true, "", 0.0};
  double worst_u = 0.0, worst_s = 0.0;
  for (double k : kFigureKs) {
    auto in = figure_input(k, 1, 1e-3);
    const auto res = thermo::evaluate(in);
    worst_u = std::max(worst_u, rel(res.U, osc::energy(in.params, 0, 1)));
    worst_s = std::max(worst_s, std::abs(res.S));
  }
  r.passed = worst_u <= 1e-10 && worst_s <= 1e-10;
  r.detail = clause("beta=1000: |U/E_0 - 1|", worst_u, "<=", 1e-10);
  append(r.detail, clause("|S|", worst_s, "<=", 1e-10));
  return r;
}

std::vector<CheckResult> run_all(const Options& opt) {
  using Check = CheckResult (*)(const Options&);
  const std::pair<const char*, Check> checks[] = {
      {"nu_quantization", check_nu_quantization},
      {"ode_residual", check_ode_residual},
      {"normalization_orthogonality", check_normalization},
      {"k_to_zero_limit", check_k_limit},
      {"strategy_triangulation", check_triangulation},
      {"derivative_consistency", check_derivatives},
      {"figure_properties", check_figure_properties},
      {"thermo_identity", check_thermo_identity},
      {"truncation_insensitivity", check_truncation},
      {"determinism", check_determinism},
      {"low_temperature_limit", check_low_temperature},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, check] : checks) {
    if (opt.quick && (check == check_figure_properties || check == check_determinism)) continue;
    out.push_back(timed(name, [&] { return check(opt); }));
  }
  return out;
}

}  // namespace pdmosc::validation
