#pragma once

// Tabulated results (one x column, several y columns) and their CSV / SVG
// renderings. Output is byte-for-byte reproducible for equal tables.

#include <string>
#include <vector>

namespace pdmosc::series {

struct SeriesTable {
  /// Rendered as "# <line>" before the column header.
  std::vector<std::string> metadata;
  std::string x_label;  // with units, e.g. "T [k_B=1]"
  std::string y_label;
  std::vector<std::string> column_names;
  std::vector<double> x;
  /// columns[j][i] is the value of column j at x[i].
  std::vector<std::vector<double>> columns;

  std::size_t rows() const noexcept { return x.size(); }
};

/// Throws Error{Config} if column shapes disagree, Error{NonPhysical} naming
/// the row and column of the first non-finite cell.
void check(const SeriesTable& table, bool require_finite = true);

/// %.17g with '.' as separator regardless of locale.
std::string format_number(double value);

std::string to_csv(const SeriesTable& table);

/// Polyline per column, linear axes with tick labels, legend.
std::string to_svg(const SeriesTable& table);

/// Writes bytes exactly as given (binary mode); throws Error{Config} on I/O
/// failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace pdmosc::series
