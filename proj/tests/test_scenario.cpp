#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "thermo/errors.hpp"
#include "thermo/scenario.hpp"
#include "thermo/spectral.hpp"

using namespace thermo;

namespace {

std::string write_file(const std::string& stem, const std::string& content) {
  const std::string path =
      (std::filesystem::temp_directory_path() / (stem + ".json")).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  return path;
}

const char* kMinimal = R"({
  "dimension": 2,
  "component": 1,
  "model": {"kappa": 1.0, "a": 0.5, "b": 1.0, "gamma1": 1.0, "gamma2": 1.0},
  "data": {
    "u0": {"kind": "gaussian", "amplitude": 1.0},
    "u1": {"kind": "shifted_gaussian", "amplitude": 1.0, "center": [2.0, 0.0]},
    "theta0": {"kind": "gaussian", "amplitude": 0.5, "width": 1.5}
  },
  "time_grid": {"t_min": 100.0, "t_max": 10000.0, "points_per_decade": 12}
})";

Scenario valid_scenario() {
  Scenario s;
  s.name = "unit";
  s.dimension = 2;
  s.component = 1;
  s.u0.amplitude = 1.0;
  s.u1.amplitude = 1.0;
  s.theta0.amplitude = 0.5;
  return s;
}

}  // namespace

TEST_CASE("loading a minimal file fills defaults and derives the name") {
  const std::string path = write_file("scn_minimal_case", kMinimal);
  const Scenario s = load_scenario(path);
  CHECK(s.name == "scn_minimal_case");
  CHECK(s.dimension == 2);
  CHECK(s.component == 1);
  CHECK(s.model.b == 1.0);
  CHECK(s.u1.kind == DatumKind::shifted_gaussian);
  CHECK(s.u1.center[0] == 2.0);
  CHECK(s.theta0.width == 1.5);
  CHECK(s.u0.width == 1.0);
  CHECK(s.quadrature.nodes_per_panel == 10);
  CHECK(s.quadrature.panels_per_wavelength == 4);
  CHECK(s.quadrature.tail_threshold == 1e-12);
  CHECK(s.zones.epsilon0 == 0.0);
  CHECK(s.roots_grid.r_min == 1e-3);
  CHECK(s.roots_grid.r_max == 1e3);
  CHECK(s.claims.empty());
  REQUIRE(s.profile_times.size() == 4);
  CHECK(s.profile_times[3] == 100.0);
  std::remove(path.c_str());
}

TEST_CASE("explicit name field wins over the filename") {
  std::string text(kMinimal);
  text.insert(1, "\n  \"name\": \"custom\",");
  const std::string path = write_file("scn_named_case", text);
  CHECK(load_scenario(path).name == "custom");
  std::remove(path.c_str());
}

TEST_CASE("parse errors carry a line/column diagnostic") {
  const std::string path =
      write_file("scn_broken_case", "{\n  \"dimension\": 2,\n  oops\n}");
  try {
    load_scenario(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
  }
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_scenario("/nonexistent/dir/missing.json"), ConfigError);
}

TEST_CASE("missing and ill-typed fields are named in the error") {
  std::string no_model(kMinimal);
  const auto pos = no_model.find("\"model\"");
  no_model.replace(pos, 7, "\"modelx\"");
  const std::string path = write_file("scn_nomodel_case", no_model);
  try {
    load_scenario(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("model") != std::string::npos);
  }
  std::remove(path.c_str());

  std::string bad_kind(kMinimal);
  const auto kpos = bad_kind.find("\"gaussian\"");
  bad_kind.replace(kpos, 10, "\"wavelet\"");
  const std::string path2 = write_file("scn_badkind_case", bad_kind);
  CHECK_THROWS_AS(load_scenario(path2), ConfigError);
  std::remove(path2.c_str());
}

TEST_CASE("structural validation") {
  CHECK_NOTHROW(validate(valid_scenario()));

  Scenario s = valid_scenario();
  s.component = 3;  // exceeds dimension 2
  CHECK_THROWS_AS(validate(s), ConfigError);

  s = valid_scenario();
  s.time_grid.t_min = 0.5;
  CHECK_THROWS_AS(validate(s), ConfigError);

  s = valid_scenario();
  s.time_grid.points_per_decade = 7;
  CHECK_THROWS_AS(validate(s), ConfigError);

  s = valid_scenario();
  s.u1.kind = DatumKind::derivative_gaussian;
  s.u1.derivative_axis = 2;  // component is 1
  CHECK_THROWS_AS(validate(s), ConfigError);
  s.u1.derivative_axis = 1;
  CHECK_NOTHROW(validate(s));

  s = valid_scenario();
  s.theta0.kind = DatumKind::shifted_gaussian;
  s.theta0.center = {0.0, 1.0, 0.0};  // off the component axis
  CHECK_THROWS_AS(validate(s), ConfigError);
  s.theta0.center = {1.0, 0.0, 0.0};
  CHECK_NOTHROW(validate(s));

  s = valid_scenario();
  s.u0.width = 0.0;
  CHECK_THROWS_AS(validate(s), ConfigError);

  s = valid_scenario();
  s.claims = {"thm_optimal_est", "fermat_last"};
  CHECK_THROWS_AS(validate(s), ConfigError);
  s.claims = {"thm_optimal_est", "prop_mn", "appendix_wave"};
  CHECK_NOTHROW(validate(s));

  s = valid_scenario();
  s.quadrature.tail_threshold = 1e-5;
  CHECK_THROWS_AS(validate(s), ConfigError);
  s.quadrature.tail_threshold = 0.0;
  CHECK_THROWS_AS(validate(s), ConfigError);

  s = valid_scenario();
  s.quadrature.nodes_per_panel = 3;
  CHECK_THROWS_AS(validate(s), ConfigError);

  s = valid_scenario();
  s.zones.epsilon0 = 5.0;
  s.zones.N0 = 2.0;
  CHECK_THROWS_AS(validate(s), ConfigError);

  s = valid_scenario();
  s.roots_grid.r_max = s.roots_grid.r_min;
  CHECK_THROWS_AS(validate(s), ConfigError);

  s = valid_scenario();
  s.profile_times = {1.0, -2.0};
  CHECK_THROWS_AS(validate(s), ConfigError);
}

TEST_CASE("log grids hit both endpoints exactly") {
  TimeGridSpec tg;
  tg.t_min = 1e2;
  tg.t_max = 1e5;
  tg.points_per_decade = 12;
  const std::vector<double> ts = time_points(tg);
  REQUIRE(ts.size() == 37);
  CHECK(ts.front() == 1e2);
  CHECK(ts.back() == 1e5);
  CHECK(ts[12] == doctest::Approx(1e3).epsilon(1e-12));
  for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);

  RootsGridSpec rg;
  const std::vector<double> rs = roots_points(rg);
  REQUIRE(rs.size() == 73);  // 6 decades x 12 + 1
  CHECK(rs.front() == 1e-3);
  CHECK(rs.back() == 1e3);
}

TEST_CASE("zone boundaries: derived defaults and overrides") {
  Scenario s = valid_scenario();
  CHECK(scenario_epsilon0(s) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(scenario_N0(s) == doctest::Approx(20.0).epsilon(1e-12));
  s.zones.epsilon0 = 0.05;
  s.zones.N0 = 40.0;
  CHECK(scenario_epsilon0(s) == 0.05);
  CHECK(scenario_N0(s) == 40.0);
}
