#pragma once

// Table-producing commands behind the pdm-osc tool.

#include <string>
#include <vector>

#include "pdmosc/config.hpp"
#include "pdmosc/series.hpp"
#include "pdmosc/thermo.hpp"

namespace pdmosc::commands {

inline constexpr const char* kVersion = "1.0.0";

struct NamedTable {
  std::string stem;  // file name without extension
  series::SeriesTable table;
};

/// E_{n,m} for n = 0..n_max at the configured m, one column per k.
NamedTable spectrum(const config::RunConfig& config);

/// Normalized U_{n,m}(r) for n = 0..n_max at the first k, on 201 points.
NamedTable wavefunction(const config::RunConfig& config);

/// Z, U, C, F, S on the temperature grid; one column per k (per variant
/// when the closed form is asked for both). Grid points run in parallel.
std::vector<NamedTable> thermo_grid(const config::RunConfig& config,
                                    unsigned threads);

/// All five quantities at config.T_point for one k.
thermo::ThermoResult thermo_point(const config::RunConfig& config, double k,
                                  thermo::Variant variant);

/// Figure sets: Z for N in {200,300,400,500} at m=1 (fig1), then U, C, F, S
/// at m=1 (fig2) and m=2 (fig3).
std::vector<NamedTable> figures(const config::RunConfig& config, unsigned threads);

/// Writes <dir>/<stem>.csv and/or .svg; creates dir if needed. Returns the
/// paths written, in table order.
std::vector<std::string> write_tables(const std::vector<NamedTable>& tables,
                                      const std::string& dir,
                                      config::Format format);

}  // namespace pdmosc::commands
