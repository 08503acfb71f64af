#include "pdmosc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pdmosc/error.hpp"
#include "pdmosc/series.hpp"

namespace pdmosc::config {

namespace {

[[noreturn]] void fail(std::string_view key, std::string_view value,
                       std::string_view reason) {
  throw Error(ErrorKind::Config, std::string(key) + "=" + std::string(value) +
                                     ": " + std::string(reason));
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
  std::string out(trim(key));
  for (char& ch : out) {
    if (ch == '-') ch = '_';
  }
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    fail(key, text, "not a number");
  }
  if (!std::isfinite(value)) fail(key, text, "must be finite");
  return value;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  Int value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    fail(key, text, "not an integer");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  fail(key, text, "expected true or false");
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += series::format_number(values[i]);
  }
  return out;
}

}  // namespace

KeyValues parse_key_values(std::string_view text, std::string_view source) {
  KeyValues out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty()) {
      throw Error(ErrorKind::Config, std::string(source) + ":" +
                                         std::to_string(line_no) +
                                         ": expected key=value");
    }
    out.emplace_back(normalize_key(line.substr(0, eq)),
                     std::string(trim(line.substr(eq + 1))));
    if (end == text.size()) break;
  }
  return out;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str(), path);
}

std::optional<Command> parse_command(std::string_view text) {
  if (text == "spectrum") return Command::Spectrum;
  if (text == "wavefunction") return Command::Wavefunction;
  if (text == "thermo") return Command::Thermo;
  if (text == "figures") return Command::Figures;
  if (text == "validate") return Command::Validate;
  return std::nullopt;
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Wavefunction: return "wavefunction";
    case Command::Thermo: return "thermo";
    case Command::Figures: return "figures";
    case Command::Validate: return "validate";
  }
  return "unknown";
}

std::string_view to_string(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Svg: return "svg";
    case Format::Both: return "both";
  }
  return "unknown";
}

std::string_view to_string(Spacing s) {
  switch (s) {
    case Spacing::Linear: return "linear";
    case Spacing::Log: return "log";
    case Spacing::Mixed: return "mixed";
  }
  return "unknown";
}

std::string_view to_string(VariantChoice v) {
  switch (v) {
    case VariantChoice::Verbatim: return "verbatim";
    case VariantChoice::Corrected: return "corrected";
    case VariantChoice::Both: return "both";
  }
  return "unknown";
}

void apply(RunConfig& c, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = normalize_key(raw_key);
  const std::string_view value = trim(raw_value);
  if (key == "command") {
    const auto cmd = parse_command(value);
    if (!cmd) fail(key, value, "unknown command");
    c.command = *cmd;
  } else if (key == "alpha") {
    c.alpha = parse_double(key, value);
  } else if (key == "k") {
    c.k_list = {parse_double(key, value)};
  } else if (key == "k_list") {
    std::vector<double> ks;
    std::string_view rest = value;
    while (true) {
      const auto comma = rest.find(',');
      ks.push_back(parse_double(key, rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    c.k_list = std::move(ks);
  } else if (key == "lambda") {
    c.lambda = parse_double(key, value);
  } else if (key == "kb") {
    c.kb = parse_double(key, value);
  } else if (key == "mode") {
    if (value == "physical") c.mode = osc::Mode::Physical;
    else if (value == "exploratory") c.mode = osc::Mode::Exploratory;
    else fail(key, value, "expected physical or exploratory");
  } else if (key == "m") {
    c.m = parse_int<int>(key, value);
  } else if (key == "n_max") {
    c.n_max = parse_int<int>(key, value);
  } else if (key == "N") {
    c.N = parse_int<std::int64_t>(key, value);
  } else if (key == "T") {
    c.T_point = parse_double(key, value);
  } else if (key == "T_min") {
    c.T.min = parse_double(key, value);
  } else if (key == "T_max") {
    c.T.max = parse_double(key, value);
  } else if (key == "T_count") {
    c.T.count = parse_int<int>(key, value);
  } else if (key == "T_spacing") {
    if (value == "linear") c.T.spacing = Spacing::Linear;
    else if (value == "log") c.T.spacing = Spacing::Log;
    else if (value == "mixed") c.T.spacing = Spacing::Mixed;
    else fail(key, value, "expected linear, log or mixed");
  } else if (key == "strategy") {
    const auto s = thermo::parse_strategy(value);
    if (!s) fail(key, value, "expected direct, closed or poisson");
    c.strategy = *s;
  } else if (key == "variant") {
    if (value == "verbatim") c.variant = VariantChoice::Verbatim;
    else if (value == "corrected") c.variant = VariantChoice::Corrected;
    else if (value == "both") c.variant = VariantChoice::Both;
    else fail(key, value, "expected verbatim, corrected or both");
  } else if (key == "measure") {
    if (value == "mass") c.measure = osc::Measure::MassWeighted;
    else if (value == "flat") c.measure = osc::Measure::Flat;
    else fail(key, value, "expected mass or flat");
  } else if (key == "out") {
    c.out = std::string(value);
  } else if (key == "format") {
    if (value == "csv") c.format = Format::Csv;
    else if (value == "svg") c.format = Format::Svg;
    else if (value == "both") c.format = Format::Both;
    else fail(key, value, "expected csv, svg or both");
  } else if (key == "quick") {
    c.quick = parse_bool(key, value);
  } else if (key == "perturb_energy") {
    c.perturb_energy = parse_double(key, value);
  } else {
    fail(key, value, "unknown key");
  }
}

void validate(const RunConfig& c) {
  auto field = [](std::string_view key, const std::string& value,
                  std::string_view reason) { fail(key, value, reason); };
  if (!(c.alpha > 0.0)) field("alpha", series::format_number(c.alpha), "must be > 0");
  if (c.lambda == 0.0) field("lambda", "0", "must be nonzero");
  if (!(c.kb > 0.0)) field("kb", series::format_number(c.kb), "must be > 0");
  if (c.k_list.empty()) field("k_list", "", "must not be empty");
  for (double k : c.k_list) {
    if (c.mode == osc::Mode::Physical && !(k < 0.0)) {
      field("k", series::format_number(k),
            "physical mode requires k < 0 (use mode=exploratory)");
    }
    if (c.strategy == thermo::Strategy::PaperClosedForm && !(k < 0.0)) {
      field("k", series::format_number(k), "strategy paper requires k < 0");
    }
  }
  if (c.n_max < 0) field("n_max", std::to_string(c.n_max), "must be >= 0");
  if (c.N < 0) field("N", std::to_string(c.N), "must be >= 0");
  if (c.T_point && !(*c.T_point > 0.0)) {
    field("T", series::format_number(*c.T_point), "must be > 0");
  }
  if (!(c.T.min > 0.0)) field("T_min", series::format_number(c.T.min), "must be > 0");
  if (!(c.T.max >= c.T.min)) {
    field("T_max", series::format_number(c.T.max), "must be >= T_min");
  }
  if (c.T.count < 1) field("T_count", std::to_string(c.T.count), "must be >= 1");
  if (c.T.count == 1 && c.T.max != c.T.min) {
    field("T_count", "1", "a single point needs T_min == T_max");
  }
}

KeyValues echo(const RunConfig& c) {
  KeyValues kv;
  kv.emplace_back("command", std::string(to_string(c.command)));
  kv.emplace_back("alpha", series::format_number(c.alpha));
  kv.emplace_back("k_list", join_numbers(c.k_list));
  kv.emplace_back("lambda", series::format_number(c.lambda));
  kv.emplace_back("kb", series::format_number(c.kb));
  kv.emplace_back("mode", c.mode == osc::Mode::Physical ? "physical" : "exploratory");
  kv.emplace_back("m", std::to_string(c.m));
  kv.emplace_back("n_max", std::to_string(c.n_max));
  kv.emplace_back("N", std::to_string(c.N));
  if (c.T_point) kv.emplace_back("T", series::format_number(*c.T_point));
  kv.emplace_back("T_min", series::format_number(c.T.min));
  kv.emplace_back("T_max", series::format_number(c.T.max));
  kv.emplace_back("T_count", std::to_string(c.T.count));
  kv.emplace_back("T_spacing", std::string(to_string(c.T.spacing)));
  kv.emplace_back("strategy", std::string(thermo::to_string(c.strategy)));
  kv.emplace_back("variant", std::string(to_string(c.variant)));
  kv.emplace_back("measure",
                  c.measure == osc::Measure::MassWeighted ? "mass" : "flat");
  kv.emplace_back("format", std::string(to_string(c.format)));
  return kv;
}

std::vector<double> temperatures(const TemperatureGrid& g) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(g.count));
  if (g.count == 1) return {g.min};
  auto linear = [&](double a, double b, int n, bool include_end) {
    const int denom = include_end ? n - 1 : n;
    for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / denom);
  };
  auto logarithmic = [&](double a, double b, int n, bool include_end) {
    const int denom = include_end ? n - 1 : n;
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i) out.push_back(std::exp(la + (lb - la) * i / denom));
  };
  switch (g.spacing) {
    case Spacing::Linear: linear(g.min, g.max, g.count, true); break;
    case Spacing::Log: logarithmic(g.min, g.max, g.count, true); break;
    case Spacing::Mixed: {
      if (!(g.min < 1.0 && g.max > 1.0)) {
        if (g.max <= 1.0) logarithmic(g.min, g.max, g.count, true);
        else linear(g.min, g.max, g.count, true);
        break;
      }
      // points split so the two segments have comparable spacing in ln T
      // near T = 1
      const double log_span = std::log(1.0 / g.min);
      const double lin_span = g.max - 1.0;
      int n_log = static_cast<int>(std::lround(g.count * log_span / (log_span + lin_span)));
      n_log = std::clamp(n_log, 1, g.count - 1);
      logarithmic(g.min, 1.0, n_log, false);
      linear(1.0, g.max, g.count - n_log, true);
      break;
    }
  }
  out.front() = g.min;
  out.back() = g.max;
  return out;
}

osc::SystemParams system_for(const RunConfig& c, double k) {
  return osc::SystemParams::make(c.alpha, k, c.lambda, c.kb, c.mode);
}

std::string error_line(std::string_view kind, std::string_view message) {
  std::string escaped;
  for (char ch : message) {
    if (ch == '"' || ch == '\\') escaped += '\\';
    escaped += (ch == '\n' ? ' ' : ch);
  }
  return "error kind=" + std::string(kind) + " message=\"" + escaped + "\"";
}

}  // namespace pdmosc::config
