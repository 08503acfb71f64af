#include "pdmosc/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "pdmosc/error.hpp"

namespace pdmosc::series {

namespace {

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string fixed(double value, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

std::string short_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::general, 4);
  return std::string(buf, res.ptr);
}

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0}) {
    if (f * mag >= raw) return f * mag;
  }
  return 10.0 * mag;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

void check(const SeriesTable& t, bool require_finite) {
  if (t.column_names.size() != t.columns.size()) {
    throw Error(ErrorKind::Config, "series: " + std::to_string(t.columns.size()) +
                                       " columns but " +
                                       std::to_string(t.column_names.size()) +
                                       " names");
  }
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    if (t.columns[j].size() != t.x.size()) {
      throw Error(ErrorKind::Config,
                  "series: column '" + t.column_names[j] + "' has " +
                      std::to_string(t.columns[j].size()) + " rows, expected " +
                      std::to_string(t.x.size()));
    }
  }
  if (!require_finite) return;
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    if (!std::isfinite(t.x[i])) {
      throw Error(ErrorKind::NonPhysical,
                  "non-finite value at row " + std::to_string(i) + ", column '" +
                      t.x_label + "'");
    }
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      if (!std::isfinite(t.columns[j][i])) {
        throw Error(ErrorKind::NonPhysical,
                    "non-finite value at row " + std::to_string(i) + " (" +
                        t.x_label + "=" + format_number(t.x[i]) + "), column '" +
                        t.column_names[j] + "'");
      }
    }
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_csv(const SeriesTable& t) {
  check(t, false);
  std::string out;
  for (const auto& line : t.metadata) out += "# " + line + "\n";
  out += t.x_label;
  for (const auto& name : t.column_names) out += "," + name;
  out += "\n";
  for (std::size_t i = 0; i < t.rows(); ++i) {
    out += format_number(t.x[i]);
    for (const auto& col : t.columns) out += "," + format_number(col[i]);
    out += "\n";
  }
  return out;
}

std::string to_svg(const SeriesTable& t) {
  check(t, false);
  constexpr double width = 720, height = 480;
  constexpr double left = 80, right = 190, top = 30, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (!std::isfinite(t.x[i])) continue;
    x_lo = std::min(x_lo, t.x[i]);
    x_hi = std::max(x_hi, t.x[i]);
    for (const auto& col : t.columns) {
      if (!std::isfinite(col[i])) continue;
      y_lo = std::min(y_lo, col[i]);
      y_hi = std::max(y_hi, col[i]);
    }
  }
  if (!(x_hi > x_lo)) { x_lo -= 0.5; x_hi += 0.5; }
  if (!(y_hi > y_lo)) { y_lo -= 0.5; y_hi += 0.5; }
  const double y_pad = 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xs = nice_step(x_hi - x_lo, 6);
  for (double v = std::ceil(x_lo / xs) * xs; v <= x_hi + 1e-9 * xs; v += xs) {
    const std::string p = fixed(px(v), 2);
    svg << "<line x1=\"" << p << "\" y1=\"" << top + plot_h << "\" x2=\"" << p
        << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>"
        << "<text x=\"" << p << "\" y=\"" << top + plot_h + 20
        << "\" text-anchor=\"middle\">" << short_number(v) << "</text>\n";
  }
  const double ys = nice_step(y_hi - y_lo, 6);
  for (double v = std::ceil(y_lo / ys) * ys; v <= y_hi + 1e-9 * ys; v += ys) {
    const std::string p = fixed(py(v), 2);
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << p << "\" x2=\"" << left
        << "\" y2=\"" << p << "\" stroke=\"black\"/>"
        << "<text x=\"" << left - 8 << "\" y=\"" << p
        << "\" text-anchor=\"end\" dominant-baseline=\"middle\">"
        << short_number(std::abs(v) < 1e-12 * ys ? 0.0 : v) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">" << escape_xml(t.x_label) << "</text>\n";
  svg << "<text transform=\"translate(20," << top + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape_xml(t.y_label)
      << "</text>\n";

  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    const char* colour = kPalette[j % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << colour
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (!std::isfinite(t.x[i]) || !std::isfinite(t.columns[j][i])) continue;
      svg << (first ? "" : " ") << fixed(px(t.x[i]), 2) << ","
          << fixed(py(t.columns[j][i]), 2);
      first = false;
    }
    svg << "\"/>\n";
    const double ly = top + 15 + 20 * static_cast<double>(j);
    svg << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\""
        << left + plot_w + 40 << "\" y2=\"" << ly << "\" stroke=\"" << colour
        << "\" stroke-width=\"2\"/>"
        << "<text x=\"" << left + plot_w + 45 << "\" y=\"" << ly
        << "\" dominant-baseline=\"middle\">" << escape_xml(t.column_names[j])
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Config, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::Config, "write to '" + path + "' failed");
}

}  // namespace pdmosc::series
