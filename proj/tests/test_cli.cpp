#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "thermo/cli.hpp"

using namespace thermo;

namespace {

std::string tmp_path(const std::string& leaf) {
  return (std::filesystem::temp_directory_path() / leaf).string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"thermo_cli"};
  argv.insert(argv.end(), args.begin(), args.end());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

// n = 1 scenario, small grids, a rate claim that must fail: the wave-carrying
// datum is so faint that the solution norm decays instead of growing
const char* kFailing = R"({
  "dimension": 1,
  "component": 1,
  "model": {"kappa": 1.0, "a": 0.5, "b": 1.0, "gamma1": 1.0, "gamma2": 1.0},
  "data": {
    "u0": {"kind": "gaussian", "amplitude": 1.0},
    "u1": {"kind": "gaussian", "amplitude": 1e-8},
    "theta0": {"kind": "gaussian", "amplitude": 0.0}
  },
  "time_grid": {"t_min": 100.0, "t_max": 10000.0, "points_per_decade": 8},
  "claims": ["thm_optimal_est"]
})";

std::string small_scenario_file() {
  static const std::string path = [] {
    const std::string p = tmp_path("cli_small_case.json");
    write_file(p, R"({
  "dimension": 1,
  "component": 1,
  "model": {"kappa": 1.0, "a": 0.5, "b": 1.0, "gamma1": 1.0, "gamma2": 1.0},
  "data": {
    "u0": {"kind": "gaussian", "amplitude": 1.0},
    "u1": {"kind": "gaussian", "amplitude": 1.0},
    "theta0": {"kind": "gaussian", "amplitude": 0.5}
  },
  "time_grid": {"t_min": 100.0, "t_max": 316.0, "points_per_decade": 8},
  "roots_grid": {"r_min": 0.01, "r_max": 100.0, "points_per_decade": 6},
  "profile_times": [0.0, 10.0]
})");
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("root tables are deterministic byte for byte") {
  const std::string scn = small_scenario_file();
  const std::string out1 = tmp_path("cli_roots_one.csv");
  const std::string out2 = tmp_path("cli_roots_two.csv");
  CHECK(cli({"roots", "--scenario", scn.c_str(), "--out", out1.c_str()}) == 0);
  CHECK(cli({"roots", "--scenario", scn.c_str(), "--out", out2.c_str()}) == 0);
  const std::string a = read_file(out1);
  const std::string b = read_file(out2);
  REQUIRE(!a.empty());
  CHECK(a == b);
  CHECK(a.find("# scenario: cli_small_case, dimension 1, component 1") !=
        std::string::npos);
  CHECK(a.find("r,lambda1_exact") != std::string::npos);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("norm sweep emits all four sections") {
  const std::string scn = small_scenario_file();
  const std::string out = tmp_path("cli_norms_out.csv");
  CHECK(cli({"norms", "--scenario", scn.c_str(), "--out", out.c_str(),
             "--threads", "2"}) == 0);
  const std::string text = read_file(out);
  CHECK(text.find("# quantity: solution_norm") != std::string::npos);
  CHECK(text.find("# quantity: phi_norm") != std::string::npos);
  CHECK(text.find("# quantity: error_phi\n") != std::string::npos);
  CHECK(text.find("# quantity: error_phi_psi") != std::string::npos);
  CHECK(text.find("t,norm,rate_ref") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("multiplier sweep carries the heat-wave and free-wave sections") {
  const std::string scn = small_scenario_file();
  const std::string out = tmp_path("cli_mult_out.csv");
  CHECK(cli({"multiplier", "--scenario", scn.c_str(), "--out", out.c_str()}) ==
        0);
  const std::string text = read_file(out);
  CHECK(text.find("# quantity: mn_norm") != std::string::npos);
  CHECK(text.find("# quantity: wave_norm") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("profile tables start at the identity row") {
  const std::string scn = small_scenario_file();
  const std::string out = tmp_path("cli_prof_out.csv");
  CHECK(cli({"profiles", "--scenario", scn.c_str(), "--out", out.c_str()}) ==
        0);
  const std::string text = read_file(out);
  CHECK(text.find("t,r,g0,g1_radial,g2,g3,g4_radial,h0,h1_radial,m_u0,m_u1,"
                  "m_theta_radial") != std::string::npos);
  // t = 0, first r: g0 column 0, g2 column 1, m_u0 column 1
  CHECK(text.find("0,0.01,0,0,1,0,0,0,0,1,0,0") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("failed rate claims exit with status 2 and a fail row") {
  const std::string scn = tmp_path("cli_failing_case.json");
  write_file(scn, kFailing);
  const std::string out = tmp_path("cli_rates_out.csv");
  CHECK(cli({"rates", "--scenario", scn.c_str(), "--out", out.c_str(),
             "--threads", "2"}) == 2);
  const std::string text = read_file(out);
  CHECK(text.find("claim,n,fitted,target,tolerance,residual,verdict") !=
        std::string::npos);
  CHECK(text.find("thm_optimal_est,1,") != std::string::npos);
  CHECK(text.find("fail") != std::string::npos);
  std::remove(scn.c_str());
  std::remove(out.c_str());
}

TEST_CASE("surface errors become exit codes, help stays success") {
  const std::string out = tmp_path("cli_err_out.csv");
  CHECK(cli({"roots", "--scenario", "/no/such/file.json", "--out",
             out.c_str()}) == 1);

  const std::string bad = tmp_path("cli_bad_case.json");
  write_file(bad, "{ not json");
  CHECK(cli({"roots", "--scenario", bad.c_str(), "--out", out.c_str()}) == 1);
  std::remove(bad.c_str());

  const std::string scn = small_scenario_file();
  CHECK(cli({"roots", "--scenario", scn.c_str(), "--out", out.c_str(),
             "--frobnicate"}) == 1);
  CHECK(cli({"--scenario", scn.c_str(), "--out", out.c_str()}) == 1);
  CHECK(cli({"roots", "--scenario", scn.c_str(), "--out", out.c_str(),
             "--threads", "0"}) == 1);
  CHECK(cli({"--help"}) == 0);

  // seeded angular cross-check piggybacks on any subcommand
  CHECK(cli({"roots", "--scenario", scn.c_str(), "--out", out.c_str(),
             "--seed", "42"}) == 0);
  std::remove(out.c_str());
}
