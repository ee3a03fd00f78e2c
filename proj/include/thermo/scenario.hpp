#pragma once

#include <string>
#include <vector>

#include "thermo/datum.hpp"
#include "thermo/model.hpp"

namespace thermo {

// Geometric time sweep: points_per_decade log-spaced samples per factor 10,
// endpoints included exactly.
struct TimeGridSpec {
  double t_min = 1e2;
  double t_max = 1e4;
  int points_per_decade = 12;
};

struct QuadratureConfig {
  int nodes_per_panel = 10;
  int panels_per_wavelength = 4;
  // A certified tail bound below tail_threshold * total is accepted;
  // otherwise the grid is extended and the norm recomputed.
  double tail_threshold = 1e-12;
};

// Zone boundary overrides; nonpositive means "use the derived default".
struct ZoneConfig {
  double epsilon0 = 0.0;
  double N0 = 0.0;
};

// Log-spaced frequency grid for the root tables.
struct RootsGridSpec {
  double r_min = 1e-3;
  double r_max = 1e3;
  int points_per_decade = 12;
};

// A complete experiment definition: dimension, distinguished component k,
// model parameters, the three data (u0^k, u1^k, theta0), sweep grids, and
// the rate claims to verify. Loaded from a JSON file.
struct Scenario {
  std::string name;
  int dimension = 1;
  int component = 1;  // k, 1-based
  ModelParams model;
  DatumSpec u0;
  DatumSpec u1;
  DatumSpec theta0;
  TimeGridSpec time_grid;
  QuadratureConfig quadrature;
  ZoneConfig zones;
  RootsGridSpec roots_grid;
  std::vector<std::string> claims;
  std::vector<double> profile_times{0.0, 1.0, 10.0, 100.0};
};

// Parse and validate; throws ConfigError with a line/field diagnostic.
Scenario load_scenario(const std::string& path);

// Structural checks beyond per-field parsing: k <= n, t_min >= 1,
// points_per_decade >= 8, axis-aligned data (derivative axes and shift
// centers must lie along component k; the norm engine's angular reduction
// depends on it), known claim names.
void validate(const Scenario& s);

std::vector<double> time_points(const TimeGridSpec& g);
std::vector<double> roots_points(const RootsGridSpec& g);

// Zone boundaries: explicit override if positive, else the derived default.
double scenario_epsilon0(const Scenario& s);
double scenario_N0(const Scenario& s);

}  // namespace thermo
