#include "thermo/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "thermo/errors.hpp"
#include "thermo/spectral.hpp"

namespace thermo {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw ConfigError("scenario: " + msg);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing field '" + path + key + "'");
  return *it;
}

double get_number(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) fail("field '" + path + key + "' must be a number");
  return v.get<double>();
}

double get_number_or(const json& obj, const char* key, const std::string& path,
                     double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) fail("field '" + path + key + "' must be a number");
  return it->get<double>();
}

int get_int(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) {
    fail("field '" + path + key + "' must be an integer");
  }
  return v.get<int>();
}

int get_int_or(const json& obj, const char* key, const std::string& path,
               int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) {
    fail("field '" + path + key + "' must be an integer");
  }
  return it->get<int>();
}

DatumSpec parse_datum(const json& obj, const std::string& path) {
  if (!obj.is_object()) fail("field '" + path + "' must be an object");
  DatumSpec d;
  const json& kind = require(obj, "kind", path + ".");
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "gaussian") {
    d.kind = DatumKind::gaussian;
  } else if (k == "shifted_gaussian") {
    d.kind = DatumKind::shifted_gaussian;
  } else if (k == "derivative_gaussian") {
    d.kind = DatumKind::derivative_gaussian;
  } else {
    fail("field '" + path +
         ".kind' must be one of "
         "gaussian|shifted_gaussian|derivative_gaussian");
  }
  d.amplitude = get_number(obj, "amplitude", path + ".");
  d.width = get_number_or(obj, "width", path + ".", 1.0);
  if (auto it = obj.find("center"); it != obj.end()) {
    if (!it->is_array() || it->size() > 3) {
      fail("field '" + path + ".center' must be an array of <= 3 numbers");
    }
    for (std::size_t j = 0; j < it->size(); ++j) {
      if (!(*it)[j].is_number()) {
        fail("field '" + path + ".center' must contain numbers");
      }
      d.center[j] = (*it)[j].get<double>();
    }
  }
  d.derivative_axis = get_int_or(obj, "axis", path + ".", 0);
  return d;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail("parse error in '" + path + "' at line " + std::to_string(line) +
         ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!root.is_object()) fail("top level of '" + path + "' must be an object");

  Scenario s;
  if (auto it = root.find("name"); it != root.end() && it->is_string()) {
    s.name = it->get<std::string>();
  } else {
    const std::size_t slash = path.find_last_of('/');
    const std::size_t start = (slash == std::string::npos) ? 0 : slash + 1;
    const std::size_t dot = path.find_last_of('.');
    s.name = path.substr(start, (dot == std::string::npos || dot < start)
                                    ? std::string::npos
                                    : dot - start);
  }
  s.dimension = get_int(root, "dimension", "");
  s.component = get_int(root, "component", "");

  const json& model = require(root, "model", "");
  s.model.kappa = get_number(model, "kappa", "model.");
  s.model.a = get_number(model, "a", "model.");
  s.model.b = get_number(model, "b", "model.");
  s.model.gamma1 = get_number(model, "gamma1", "model.");
  s.model.gamma2 = get_number(model, "gamma2", "model.");

  const json& data = require(root, "data", "");
  s.u0 = parse_datum(require(data, "u0", "data."), "data.u0");
  s.u1 = parse_datum(require(data, "u1", "data."), "data.u1");
  s.theta0 = parse_datum(require(data, "theta0", "data."), "data.theta0");

  const json& tg = require(root, "time_grid", "");
  s.time_grid.t_min = get_number(tg, "t_min", "time_grid.");
  s.time_grid.t_max = get_number(tg, "t_max", "time_grid.");
  s.time_grid.points_per_decade =
      get_int(tg, "points_per_decade", "time_grid.");

  if (auto it = root.find("quadrature"); it != root.end()) {
    s.quadrature.nodes_per_panel =
        get_int_or(*it, "nodes_per_panel", "quadrature.", 10);
    s.quadrature.panels_per_wavelength =
        get_int_or(*it, "panels_per_wavelength", "quadrature.", 4);
    s.quadrature.tail_threshold =
        get_number_or(*it, "tail_threshold", "quadrature.", 1e-12);
  }
  if (auto it = root.find("zones"); it != root.end()) {
    s.zones.epsilon0 = get_number_or(*it, "epsilon0", "zones.", 0.0);
    s.zones.N0 = get_number_or(*it, "N0", "zones.", 0.0);
  }
  if (auto it = root.find("roots_grid"); it != root.end()) {
    s.roots_grid.r_min = get_number_or(*it, "r_min", "roots_grid.", 1e-3);
    s.roots_grid.r_max = get_number_or(*it, "r_max", "roots_grid.", 1e3);
    s.roots_grid.points_per_decade =
        get_int_or(*it, "points_per_decade", "roots_grid.", 12);
  }
  if (auto it = root.find("claims"); it != root.end()) {
    if (!it->is_array()) fail("field 'claims' must be an array of strings");
    for (const auto& c : *it) {
      if (!c.is_string()) fail("field 'claims' must contain strings");
      s.claims.push_back(c.get<std::string>());
    }
  }
  if (auto it = root.find("profile_times"); it != root.end()) {
    if (!it->is_array()) fail("field 'profile_times' must be a number array");
    s.profile_times.clear();
    for (const auto& v : *it) {
      if (!v.is_number()) fail("field 'profile_times' must contain numbers");
      s.profile_times.push_back(v.get<double>());
    }
  }

  validate(s);
  return s;
}

void validate(const Scenario& s) {
  if (s.dimension < 1 || s.dimension > 3) {
    fail("dimension must be 1, 2, or 3");
  }
  if (s.component < 1 || s.component > s.dimension) {
    fail("component must satisfy 1 <= k <= dimension");
  }
  validate(s.model);

  const struct {
    const DatumSpec& d;
    const char* label;
  } data[] = {{s.u0, "u0"}, {s.u1, "u1"}, {s.theta0, "theta0"}};
  for (const auto& [d, label] : data) {
    try {
      thermo::validate(d, s.dimension);
    } catch (const ConfigError& e) {
      fail(std::string(label) + ": " + e.what());
    }
    // The norm engine reduces angular integrals to the k-axis; data breaking
    // that symmetry are rejected with the reason, not silently mis-integrated.
    if (d.kind == DatumKind::derivative_gaussian &&
        d.derivative_axis != s.component) {
      fail(std::string(label) +
           ": derivative axis must equal the scenario component k (the "
           "angular reduction needs k-aligned data)");
    }
    if (d.kind == DatumKind::shifted_gaussian) {
      for (int j = 0; j < 3; ++j) {
        if (j != s.component - 1 && d.center[j] != 0.0) {
          fail(std::string(label) +
               ": shift center must lie along the scenario component axis k "
               "(the angular reduction needs k-aligned data)");
        }
      }
    }
  }

  if (!(s.time_grid.t_min >= 1.0)) fail("time_grid.t_min must be >= 1");
  if (!(s.time_grid.t_max > s.time_grid.t_min)) {
    fail("time_grid.t_max must exceed t_min");
  }
  if (s.time_grid.points_per_decade < 8) {
    fail("time_grid.points_per_decade must be >= 8");
  }
  if (s.quadrature.nodes_per_panel < 4 || s.quadrature.nodes_per_panel > 64) {
    fail("quadrature.nodes_per_panel must be in 4..64");
  }
  if (s.quadrature.panels_per_wavelength < 4) {
    fail("quadrature.panels_per_wavelength must be >= 4");
  }
  if (!(s.quadrature.tail_threshold > 0.0) ||
      s.quadrature.tail_threshold > 1e-6) {
    fail("quadrature.tail_threshold must be in (0, 1e-6]");
  }
  if (s.zones.epsilon0 < 0.0 || s.zones.N0 < 0.0) {
    fail("zones overrides must be positive when given");
  }
  if (s.zones.epsilon0 > 0.0 && s.zones.N0 > 0.0 &&
      !(s.zones.epsilon0 < s.zones.N0)) {
    fail("zones.epsilon0 must be below zones.N0");
  }
  if (!(s.roots_grid.r_min > 0.0) ||
      !(s.roots_grid.r_max > s.roots_grid.r_min)) {
    fail("roots_grid must satisfy 0 < r_min < r_max");
  }
  if (s.roots_grid.points_per_decade < 4) {
    fail("roots_grid.points_per_decade must be >= 4");
  }

  static const std::set<std::string> known = {
      "thm_optimal_est", "thm_optimal_lead", "coro_second_order", "prop_mn",
      "appendix_wave"};
  for (const auto& c : s.claims) {
    if (known.find(c) == known.end()) fail("unknown claim '" + c + "'");
  }
  for (double t : s.profile_times) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
      fail("profile_times must be finite and >= 0");
    }
  }
}

namespace {

std::vector<double> log_points(double lo, double hi, int per_decade) {
  const double decades = std::log10(hi / lo);
  const int count = std::max(1, static_cast<int>(
                                    std::lround(decades * per_decade)));
  std::vector<double> out;
  out.reserve(count + 1);
  for (int i = 0; i <= count; ++i) {
    out.push_back(lo * std::pow(10.0, decades * i / count));
  }
  out.back() = hi;
  return out;
}

}  // namespace

std::vector<double> time_points(const TimeGridSpec& g) {
  return log_points(g.t_min, g.t_max, g.points_per_decade);
}

std::vector<double> roots_points(const RootsGridSpec& g) {
  return log_points(g.r_min, g.r_max, g.points_per_decade);
}

double scenario_epsilon0(const Scenario& s) {
  if (s.zones.epsilon0 > 0.0) return s.zones.epsilon0;
  return zone_epsilon0(derive_constants(s.model), s.model);
}

double scenario_N0(const Scenario& s) {
  if (s.zones.N0 > 0.0) return s.zones.N0;
  return zone_N0(s.model);
}

}  // namespace thermo
