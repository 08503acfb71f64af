#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "pdmosc/commands.hpp"
#include "pdmosc/config.hpp"
#include "pdmosc/error.hpp"
#include "pdmosc/series.hpp"

using namespace pdmosc;

TEST_CASE("key=value parsing") {
  const auto kv = config::parse_key_values(
      "# run\n\nalpha = 2\n  k_list=-0.1, -0.2   # inline\nformat=svg\n", "test.cfg");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0].first == "alpha");
  CHECK(kv[0].second == "2");
  CHECK(kv[1].first == "k_list");
  CHECK(kv[1].second == "-0.1, -0.2");
  try {
    config::parse_key_values("alpha = 1\nnot a pair\n", "bad.cfg");
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK(std::string(e.what()).find("bad.cfg:2") != std::string::npos);
  }
  CHECK_THROWS_AS(config::read_config_file("/nonexistent/run.cfg"), Error);
}

TEST_CASE("apply and validate") {
  config::RunConfig c;
  config::apply(c, "alpha", "2.5");
  config::apply(c, "k-list", "-0.1,-0.4");
  config::apply(c, "T_count", "7");
  config::apply(c, "T-spacing", "log");
  config::apply(c, "strategy", "poisson");
  config::apply(c, "variant", "both");
  CHECK(c.alpha == 2.5);
  REQUIRE(c.k_list.size() == 2);
  CHECK(c.k_list[1] == -0.4);
  CHECK(c.T.count == 7);
  CHECK(c.T.spacing == config::Spacing::Log);
  CHECK(c.strategy == thermo::Strategy::PoissonPipeline);
  CHECK(c.variant == config::VariantChoice::Both);
  CHECK_NOTHROW(config::validate(c));

  CHECK_THROWS_AS(config::apply(c, "T_count", "abc"), Error);
  CHECK_THROWS_AS(config::apply(c, "colour", "red"), Error);
  CHECK_THROWS_AS(config::apply(c, "alpha", "1.0x"), Error);

  // later sources override earlier ones
  config::apply(c, "alpha", "3");
  CHECK(c.alpha == 3.0);

  config::RunConfig bad;
  bad.k_list = {0.2};
  CHECK_THROWS_AS(config::validate(bad), Error);
  bad.mode = osc::Mode::Exploratory;
  CHECK_NOTHROW(config::validate(bad));
  config::RunConfig cold;
  cold.T.min = 0.0;
  CHECK_THROWS_AS(config::validate(cold), Error);
}

TEST_CASE("echo reproduces the configuration") {
  config::RunConfig c;
  config::apply(c, "k_list", "-0.25,-0.05");
  config::apply(c, "m", "2");
  config::apply(c, "T_max", "20");
  config::apply(c, "format", "both");
  config::RunConfig d;
  for (const auto& [key, value] : config::echo(c)) config::apply(d, key, value);
  CHECK(config::echo(d) == config::echo(c));
  CHECK(d.k_list == c.k_list);
  CHECK(d.T.max == 20.0);
}

TEST_CASE("temperature grids") {
  for (auto spacing : {config::Spacing::Linear, config::Spacing::Log, config::Spacing::Mixed}) {
    config::TemperatureGrid g;
    g.min = 0.1;
    g.max = 50.0;
    g.count = 37;
    g.spacing = spacing;
    const auto t = config::temperatures(g);
    REQUIRE(t.size() == 37);
    CHECK(t.front() == doctest::Approx(0.1));
    CHECK(t.back() == doctest::Approx(50.0));
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
  }
  config::TemperatureGrid one;
  one.count = 1;
  CHECK(config::temperatures(one).size() == 1);
}

TEST_CASE("error lines are single-line and quoted") {
  const auto line = config::error_line("config", "bad \"value\"\nhere");
  CHECK(line.rfind("error kind=config message=\"", 0) == 0);
  CHECK(line.find('\n') == std::string::npos);
}

TEST_CASE("CSV rendering") {
  series::SeriesTable t;
  t.metadata = {"version=1"};
  t.x_label = "T [k_B=1]";
  t.column_names = {"Z(k=-0.1)"};
  t.x = {0.5, 1.0};
  t.columns = {{0.1, 1.0 / 3.0}};
  const auto csv = series::to_csv(t);
  CHECK(csv == "# version=1\nT [k_B=1],Z(k=-0.1)\n0.5,0.10000000000000001\n"
               "1,0.33333333333333331\n");
  CHECK(std::stod(series::format_number(1.0 / 3.0)) == 1.0 / 3.0);

  t.columns[0][1] = std::numeric_limits<double>::quiet_NaN();
  try {
    series::check(t);
    FAIL("expected NonPhysical");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPhysical);
    CHECK(std::string(e.what()).find("Z(k=-0.1)") != std::string::npos);
  }
  CHECK_NOTHROW(series::check(t, false));
  t.columns[0].pop_back();
  CHECK_THROWS_AS(series::check(t, false), Error);
}

TEST_CASE("SVG rendering") {
  series::SeriesTable t;
  t.x_label = "T";
  t.y_label = "C";
  t.column_names = {"a", "b"};
  t.x = {1, 2, 3};
  t.columns = {{1, 2, 3}, {3, 2, 1}};
  const auto svg = series::to_svg(t);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg == series::to_svg(t));
}

TEST_CASE("spectrum table") {
  config::RunConfig c;
  c.m = 0;
  c.n_max = 3;
  c.k_list = {-1e-12};
  auto ladder = commands::spectrum(c).table;
  REQUIRE(ladder.columns.size() == 1);
  for (int n = 0; n <= 3; ++n) CHECK(ladder.columns[0][n] == doctest::Approx(2 * n + 1));
  c.k_list = {-0.5};
  c.n_max = 1;
  const auto t = commands::spectrum(c).table;
  CHECK(t.columns[0][0] == doctest::Approx(1.6180339887).epsilon(1e-10));
  CHECK(t.columns[0][1] == doctest::Approx(5.8541019662).epsilon(1e-10));
}

TEST_CASE("figure tables are complete and reproducible") {
  config::RunConfig c;
  c.T.count = 12;
  const auto a = commands::figures(c, 1);
  const auto b = commands::figures(c, 3);
  REQUIRE(a.size() == 12);
  REQUIRE(b.size() == 12);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].stem == b[i].stem);
    CHECK(series::to_csv(a[i].table) == series::to_csv(b[i].table));
  }
  CHECK(a.front().stem == "fig1_N200_Z");
  CHECK(a.back().stem == "fig3_m2_S");
}
