#include "pdmosc/commands.hpp"

#include <cmath>
#include <filesystem>

#include "pdmosc/error.hpp"

namespace pdmosc::commands {

namespace {

using config::RunConfig;
using series::format_number;

std::vector<std::string> base_metadata(const RunConfig& c, std::string_view quantity) {
  std::vector<std::string> meta;
  meta.push_back(std::string("pdm-osc ") + kVersion);
  for (const auto& [key, value] : config::echo(c)) meta.push_back(key + "=" + value);
  meta.push_back("quantity=" + std::string(quantity));
  meta.push_back("units: hbar=1, k_B=kb; energies in units of the alpha scale");
  if (c.k_list == RunConfig{}.k_list) {
    meta.push_back("note: k_list is an artifact default, not taken from a publication");
  }
  return meta;
}

std::string k_label(double k) { return "k=" + format_number(k); }

std::vector<thermo::Variant> variants_for(const RunConfig& c) {
  if (c.strategy != thermo::Strategy::PaperClosedForm) {
    return {c.variant == config::VariantChoice::Verbatim ? thermo::Variant::Verbatim
                                                         : thermo::Variant::Corrected};
  }
  switch (c.variant) {
    case config::VariantChoice::Verbatim: return {thermo::Variant::Verbatim};
    case config::VariantChoice::Corrected: return {thermo::Variant::Corrected};
    case config::VariantChoice::Both:
      return {thermo::Variant::Verbatim, thermo::Variant::Corrected};
  }
  return {thermo::Variant::Corrected};
}

struct Quantity {
  const char* name;
  const char* unit;
  double thermo::ThermoResult::*field;
};

constexpr Quantity kQuantities[] = {
    {"Z", "1", &thermo::ThermoResult::Z},
    {"U", "energy", &thermo::ThermoResult::U},
    {"C", "k_B", &thermo::ThermoResult::C},
    {"F", "energy", &thermo::ThermoResult::F},
    {"S", "k_B", &thermo::ThermoResult::S},
};

thermo::ThermoInput input_for(const RunConfig& c, double k, int m, std::int64_t N,
                              double T, thermo::Variant variant) {
  thermo::ThermoInput in;
  in.params = config::system_for(c, k);
  in.m = m;
  in.beta = 1.0 / (c.kb * T);
  in.truncation_N = N;
  in.strategy = c.strategy;
  in.variant = variant;
  in.accept_truncation = c.mode == osc::Mode::Exploratory;
  return in;
}

// One table per quantity, columns over (k, variant), rows over T.
std::vector<NamedTable> sweep(const RunConfig& c, int m, std::int64_t N,
                              const std::vector<const Quantity*>& quantities,
                              const std::string& stem_prefix, unsigned threads) {
  const auto Ts = config::temperatures(c.T);
  const auto variants = variants_for(c);
  std::vector<thermo::ThermoInput> inputs;
  std::vector<std::string> columns;
  for (double k : c.k_list) {
    for (auto v : variants) {
      columns.push_back(variants.size() > 1 ? k_label(k) + " " +
                                                  std::string(thermo::to_string(v))
                                            : k_label(k));
      for (double T : Ts) inputs.push_back(input_for(c, k, m, N, T, v));
    }
  }
  const auto results = thermo::evaluate_many(inputs, threads);

  RunConfig echoed = c;
  echoed.m = m;
  echoed.N = N;
  std::vector<NamedTable> tables;
  for (const Quantity* q : quantities) {
    NamedTable out;
    out.stem = stem_prefix + q->name;
    auto& t = out.table;
    t.metadata = base_metadata(echoed, q->name);
    t.x_label = "T [energy/k_B]";
    t.y_label = std::string(q->name) + " [" + q->unit + "]";
    t.x = Ts;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      t.column_names.push_back(std::string(q->name) + "(" + columns[j] + ") [" +
                               q->unit + "]");
      std::vector<double> col(Ts.size());
      for (std::size_t i = 0; i < Ts.size(); ++i) {
        col[i] = results[j * Ts.size() + i].*(q->field);
      }
      t.columns.push_back(std::move(col));
    }
    series::check(t, c.mode == osc::Mode::Physical);
    tables.push_back(std::move(out));
  }
  return tables;
}

std::vector<const Quantity*> all_quantities() {
  std::vector<const Quantity*> out;
  for (const auto& q : kQuantities) out.push_back(&q);
  return out;
}

const Quantity* quantity(std::string_view name) {
  for (const auto& q : kQuantities) {
    if (name == q.name) return &q;
  }
  return nullptr;
}

}  // namespace

NamedTable spectrum(const RunConfig& c) {
  NamedTable out;
  out.stem = "spectrum_m" + std::to_string(c.m);
  auto& t = out.table;
  t.metadata = base_metadata(c, "E");
  for (double k : c.k_list) {
    t.metadata.push_back(k_label(k) + ": delta^2=k*lambda=" + format_number(k * c.lambda));
  }
  t.x_label = "n_r [1]";
  t.y_label = "E [energy]";
  for (int n = 0; n <= c.n_max; ++n) t.x.push_back(n);
  for (double k : c.k_list) {
    const auto p = config::system_for(c, k);
    t.column_names.push_back("E(" + k_label(k) + ") [energy]");
    std::vector<double> col;
    for (int n = 0; n <= c.n_max; ++n) col.push_back(osc::energy(p, n, c.m));
    t.columns.push_back(std::move(col));
  }
  series::check(t);
  return out;
}

NamedTable wavefunction(const RunConfig& c) {
  const double k = c.k_list.front();
  const auto p = config::system_for(c, k);
  if (p.delta_sq() == 0.0) {
    throw Error(ErrorKind::Domain, "wavefunction needs k != 0");
  }
  const double length = 1.0 / std::sqrt(std::abs(p.delta_sq()));
  const double r_end = std::isfinite(p.r_max()) ? p.r_max() * (1.0 - 1e-3) : 6.0 * length;
  constexpr int kPoints = 201;

  NamedTable out;
  out.stem = "wavefunction_m" + std::to_string(c.m);
  auto& t = out.table;
  t.metadata = base_metadata(c, "U_n(r)");
  t.x_label = "r [length]";
  t.y_label = "U [normalized]";
  for (int i = 0; i < kPoints; ++i) t.x.push_back(r_end * i / (kPoints - 1));
  for (int n = 0; n <= c.n_max; ++n) {
    const auto wf = osc::radial_wavefunction(p, osc::make_state(p, n, c.m), c.measure);
    t.metadata.push_back("n_r=" + std::to_string(n) + ": exponent_sign=" +
                         std::to_string(wf.exponent_sign()) +
                         " normalization=" + format_number(wf.normalization()));
    t.column_names.push_back("U(n_r=" + std::to_string(n) + ") [1/length]");
    std::vector<double> col;
    for (double r : t.x) col.push_back(wf(r));
    t.columns.push_back(std::move(col));
  }
  series::check(t);
  return out;
}

std::vector<NamedTable> thermo_grid(const RunConfig& c, unsigned threads) {
  return sweep(c, c.m, c.N, all_quantities(),
               "thermo_m" + std::to_string(c.m) + "_", threads);
}

thermo::ThermoResult thermo_point(const RunConfig& c, double k, thermo::Variant v) {
  if (!c.T_point) throw Error(ErrorKind::Config, "thermo_point needs T");
  return thermo::evaluate(input_for(c, k, c.m, c.N, *c.T_point, v));
}

std::vector<NamedTable> figures(const RunConfig& c, unsigned threads) {
  std::vector<NamedTable> out;
  for (std::int64_t N : {200, 300, 400, 500}) {
    auto part = sweep(c, 1, N, {quantity("Z")}, "fig1_N" + std::to_string(N) + "_",
                      threads);
    out.insert(out.end(), part.begin(), part.end());
  }
  const std::vector<const Quantity*> ucfs = {quantity("U"), quantity("C"),
                                             quantity("F"), quantity("S")};
  for (const auto& [m, prefix] : {std::pair{1, "fig2_m1_"}, std::pair{2, "fig3_m2_"}}) {
    auto part = sweep(c, m, c.N, ucfs, prefix, threads);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<std::string> write_tables(const std::vector<NamedTable>& tables,
                                      const std::string& dir, config::Format format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Config, "cannot create '" + dir + "': " + ec.message());
  std::vector<std::string> written;
  for (const auto& nt : tables) {
    const auto base = (std::filesystem::path(dir) / nt.stem).string();
    if (format != config::Format::Svg) {
      series::write_file(base + ".csv", series::to_csv(nt.table));
      written.push_back(base + ".csv");
    }
    if (format != config::Format::Csv) {
      series::write_file(base + ".svg", series::to_svg(nt.table));
      written.push_back(base + ".svg");
    }
  }
  return written;
}

}  // namespace pdmosc::commands
