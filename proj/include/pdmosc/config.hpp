#pragma once

// Run configuration shared by the command-line tool and the figure
// generator. Sources are layered: defaults, then a key=value file, then
// command-line flags, each applied through apply().

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdmosc/oscillator.hpp"
#include "pdmosc/thermo.hpp"

namespace pdmosc::config {

enum class Command { Spectrum, Wavefunction, Thermo, Figures, Validate };
enum class Format { Csv, Svg, Both };
/// Mixed: log-spaced below T = 1, linear above.
enum class Spacing { Linear, Log, Mixed };
enum class VariantChoice { Verbatim, Corrected, Both };

struct TemperatureGrid {
  double min = 0.1;
  double max = 50.0;
  int count = 500;
  Spacing spacing = Spacing::Mixed;
};

struct RunConfig {
  Command command = Command::Thermo;
  double alpha = 1.0;
  /// Not given in the source figures; chosen to span weak to moderate
  /// nonlinearity.
  std::vector<double> k_list = {-0.1, -0.2, -0.3};
  double lambda = 1.0;
  double kb = 1.0;
  osc::Mode mode = osc::Mode::Physical;
  int m = 1;
  int n_max = 10;
  TemperatureGrid T;
  /// Single-point thermo when set.
  std::optional<double> T_point;
  std::int64_t N = thermo::kDefaultTruncation;
  thermo::Strategy strategy = thermo::Strategy::DirectSum;
  VariantChoice variant = VariantChoice::Corrected;
  osc::Measure measure = osc::Measure::MassWeighted;
  std::string out;
  Format format = Format::Csv;
  bool quick = false;
  /// Test hook for validate: shifts every checked energy by this amount.
  double perturb_energy = 0.0;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses "key = value" lines; '#' starts a comment, blank lines are
/// skipped. Throws Error{Config} naming the line number on malformed input.
KeyValues parse_key_values(std::string_view text, std::string_view source);
KeyValues read_config_file(const std::string& path);

/// Sets one field from its textual value. Keys: command, alpha, k, k_list,
/// lambda, kb, mode, m, n_max, N, T, T_min, T_max, T_count, T_spacing,
/// strategy, variant, measure, out, format, quick, perturb_energy. Dashes
/// and underscores are interchangeable. Throws Error{Config}.
void apply(RunConfig& config, std::string_view key, std::string_view value);

/// Cross-field checks against the model invariants; throws Error{Config}
/// for the first violation.
void validate(const RunConfig& config);

/// key=value pairs that reproduce `config` when applied to defaults.
KeyValues echo(const RunConfig& config);

std::optional<Command> parse_command(std::string_view text);
std::string_view to_string(Command c);
std::string_view to_string(Format f);
std::string_view to_string(Spacing s);
std::string_view to_string(VariantChoice v);

/// Grid points in increasing order.
std::vector<double> temperatures(const TemperatureGrid& grid);

/// Physical parameters for one entry of k_list.
osc::SystemParams system_for(const RunConfig& config, double k);

/// Single-line, machine-parsable: error kind=<kind> message="<text>".
std::string error_line(std::string_view kind, std::string_view message);

}  // namespace pdmosc::config
