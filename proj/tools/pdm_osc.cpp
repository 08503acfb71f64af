// pdm-osc: spectra, wavefunctions and thermodynamics of the 2D nonlinear
// oscillator with position-dependent mass.
//
// Exit codes: 0 success, 1 computation or validation failure, 2 bad config.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pdmosc/commands.hpp"
#include "pdmosc/config.hpp"
#include "pdmosc/error.hpp"
#include "pdmosc/series.hpp"
#include "pdmosc/thermo.hpp"
#include "pdmosc/validation.hpp"

namespace {

using namespace pdmosc;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

// Flags that map one-to-one onto config keys, in application order.
const char* const kKeyedFlags[] = {
    "alpha", "k", "k-list", "lambda", "kb", "mode", "m", "n-max", "N", "T",
    "T-min", "T-max", "T-count", "T-spacing", "strategy", "variant", "measure",
    "out", "format", "perturb-energy"};

void emit_single(const std::string& path, config::Format format,
                 const commands::NamedTable& nt) {
  if (path.empty()) {
    if (format != config::Format::Csv) {
      throw Error(ErrorKind::Config, "format=" + std::string(config::to_string(format)) +
                                         " needs --out");
    }
    std::fputs(series::to_csv(nt.table).c_str(), stdout);
    return;
  }
  if (format == config::Format::Csv) {
    series::write_file(path, series::to_csv(nt.table));
  } else if (format == config::Format::Svg) {
    series::write_file(path, series::to_svg(nt.table));
  } else {
    series::write_file(path + ".csv", series::to_csv(nt.table));
    series::write_file(path + ".svg", series::to_svg(nt.table));
  }
}

void print_point(const config::RunConfig& cfg) {
  std::vector<thermo::Variant> variants = {thermo::Variant::Corrected};
  if (cfg.variant == config::VariantChoice::Verbatim) variants = {thermo::Variant::Verbatim};
  if (cfg.variant == config::VariantChoice::Both &&
      cfg.strategy == thermo::Strategy::PaperClosedForm) {
    variants = {thermo::Variant::Verbatim, thermo::Variant::Corrected};
  }
  for (const auto& [key, value] : config::echo(cfg)) std::cout << "# " << key << "=" << value << "\n";
  for (double k : cfg.k_list) {
    for (auto v : variants) {
      const auto r = commands::thermo_point(cfg, k, v);
      std::cout << "k=" << series::format_number(k);
      if (cfg.strategy == thermo::Strategy::PaperClosedForm) {
        std::cout << " variant=" << thermo::to_string(v);
      }
      std::cout << " T=" << series::format_number(*cfg.T_point)
                << " Z=" << series::format_number(r.Z)
                << " U=" << series::format_number(r.U)
                << " C=" << series::format_number(r.C)
                << " F=" << series::format_number(r.F)
                << " S=" << series::format_number(r.S) << "\n";
      const auto& d = r.diagnostics;
      if (cfg.strategy == thermo::Strategy::DirectSum) {
        std::cout << "# tail_estimate=" << series::format_number(d.tail_estimate) << "\n";
      } else if (cfg.strategy == thermo::Strategy::PaperClosedForm) {
        std::cout << "# Z_verbatim=" << series::format_number(d.z_verbatim)
                  << " Z_corrected=" << series::format_number(d.z_corrected)
                  << " U_pair_b=" << series::format_number(d.u_pair_b)
                  << " U_pair_d=" << series::format_number(d.u_pair_d) << "\n";
      } else {
        std::cout << "# Z_first_order=" << series::format_number(d.z_first_order)
                  << " em_terms=" << d.em_terms
                  << " derivative_step=" << series::format_number(d.derivative_step) << "\n";
      }
      for (const auto& note : d.notes) std::cout << "# note: " << note << "\n";
    }
  }
}

int run_validate(const config::RunConfig& cfg) {
  validation::Options opt;
  opt.quick = cfg.quick;
  opt.perturb_energy = cfg.perturb_energy;
  opt.threads = thermo::thread_budget();
  const auto results = validation::run_all(opt);
  const validation::CheckResult* first_failure = nullptr;
  for (const auto& r : results) {
    std::printf("%-4s %-28s %7.3fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.seconds, r.detail.c_str());
    if (!r.passed && first_failure == nullptr) first_failure = &r;
  }
  if (first_failure != nullptr) {
    std::fprintf(stderr, "%s\n",
                 config::error_line("validation", "check failed: " + first_failure->name).c_str());
    return kExitFailure;
  }
  return 0;
}

int dispatch(const config::RunConfig& cfg) {
  switch (cfg.command) {
    case config::Command::Spectrum:
      emit_single(cfg.out, cfg.format, commands::spectrum(cfg));
      return 0;
    case config::Command::Wavefunction:
      emit_single(cfg.out, cfg.format, commands::wavefunction(cfg));
      return 0;
    case config::Command::Thermo: {
      if (cfg.T_point) {
        print_point(cfg);
        return 0;
      }
      const auto tables = commands::thermo_grid(cfg, thermo::thread_budget());
      for (const auto& path : commands::write_tables(tables, cfg.out.empty() ? "." : cfg.out,
                                                     cfg.format)) {
        std::cout << path << "\n";
      }
      return 0;
    }
    case config::Command::Figures: {
      const auto tables = commands::figures(cfg, thermo::thread_budget());
      for (const auto& path : commands::write_tables(
               tables, cfg.out.empty() ? "figures" : cfg.out, cfg.format)) {
        std::cout << path << "\n";
      }
      return 0;
    }
    case config::Command::Validate:
      return run_validate(cfg);
  }
  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, wavefunctions and thermodynamics of the 2D nonlinear "
               "oscillator with position-dependent mass"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", commands::kVersion);

  std::map<std::string, std::string> flags;
  std::string config_path;
  bool quick = false;

  for (const char* name : {"spectrum", "wavefunction", "thermo", "figures", "validate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key=value file; flags override it");
    auto add = [&](const char* key, const std::string& help) {
      sub->add_option_function<std::string>(
          std::string("--") + key, [&flags, key](const std::string& v) { flags[key] = v; },
          help);
    };
    add("alpha", "oscillator frequency alpha > 0");
    add("k", "nonlinearity k (single value)");
    add("k-list", "comma-separated k values");
    add("lambda", "mass scale lambda (enters wavefunctions only)");
    add("kb", "Boltzmann constant (default 1)");
    add("mode", "physical (k < 0) or exploratory");
    add("m", "magnetic quantum number");
    add("n-max", "largest radial quantum number");
    add("N", "truncation of the state sum");
    add("T", "single temperature (thermo)");
    add("T-min", "lowest temperature");
    add("T-max", "highest temperature");
    add("T-count", "number of temperatures");
    add("T-spacing", "linear, log or mixed");
    add("strategy", "direct, closed or poisson");
    add("variant", "verbatim, corrected or both");
    add("measure", "mass or flat (wavefunction normalization)");
    add("out", "output file or directory");
    add("format", "csv, svg or both");
    if (std::string(name) == "validate") {
      sub->add_flag("--quick", quick, "run the sub-second subset");
      auto* hook = sub->add_option_function<std::string>(
          "--perturb-energy", [&flags](const std::string& v) { flags["perturb-energy"] = v; },
          "shift checked energies (negative control)");
      hook->group("");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "%s\n", config::error_line("usage", e.what()).c_str());
    return kExitConfig;
  }

  config::RunConfig cfg;
  try {
    cfg.command = *config::parse_command(app.get_subcommands().front()->get_name());
    if (!config_path.empty()) {
      for (const auto& [key, value] : config::read_config_file(config_path)) {
        if (key == "command") continue;
        config::apply(cfg, key, value);
      }
    }
    for (const char* key : kKeyedFlags) {
      if (auto it = flags.find(key); it != flags.end()) config::apply(cfg, key, it->second);
    }
    if (quick) cfg.quick = true;
    config::validate(cfg);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", config::error_line("config", e.what()).c_str());
    return kExitConfig;
  }

  try {
    return dispatch(cfg);
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::Config ? kExitConfig : kExitFailure;
    std::fprintf(stderr, "%s\n", config::error_line(to_string(e.kind()), e.what()).c_str());
    return code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", config::error_line("internal", e.what()).c_str());
    return kExitFailure;
  }
}
