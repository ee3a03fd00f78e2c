#include "thermo/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "thermo/errors.hpp"
#include "thermo/norms.hpp"
#include "thermo/profiles.hpp"
#include "thermo/quadrature.hpp"
#include "thermo/rates.hpp"
#include "thermo/scenario.hpp"
#include "thermo/spectral.hpp"

namespace thermo {

std::string csv_number(double v) {
  if (v == 0.0) return "0";  // fold the sign of zero away
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

constexpr const char* kConventionLine =
    "# convention: f_hat(xi) = integral e^{-i x.xi} f(x) dx; norms carry the "
    "Plancherel factor (2 pi)^{-n/2}; all quantities dimensionless\n";

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cli: cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw ConfigError("cli: write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw ConfigError("cli: atomic rename to '" + path + "' failed");
  }
}

double rate_reference(int n, double t) {
  if (n == 2 && !(t > 1.0)) return 0.0;
  return amplitude_law(n, t);
}

std::string scenario_header(const Scenario& s) {
  std::ostringstream os;
  os << "# scenario: " << s.name << ", dimension " << s.dimension
     << ", component " << s.component << "\n"
     << kConventionLine;
  return os.str();
}

void run_roots(const Scenario& s, const std::string& out_path) {
  const DerivedConstants c = derive_constants(s.model);
  std::ostringstream os;
  os << scenario_header(s)
     << "r,lambda1_exact,lambdaR_exact,lambdaI_exact,lambda1_int,lambdaI_int,"
        "lambda1_ext,err_int,err_ext\n";
  for (double r : roots_points(s.roots_grid)) {
    const CharRoots ex = char_roots(s.model, r);
    const CharRoots in = roots_expansion_interior(c, s.model, r);
    const CharRoots xt = roots_expansion_exterior(s.model, r);
    const double err_int =
        std::abs(ex.lambda1 - in.lambda1) +
        std::hypot(ex.lambdaR - in.lambdaR, ex.lambdaI - in.lambdaI);
    const double err_ext =
        std::hypot(ex.lambdaR - xt.lambdaR, ex.lambdaI - xt.lambdaI);
    os << csv_number(r) << ',' << csv_number(ex.lambda1) << ','
       << csv_number(ex.lambdaR) << ',' << csv_number(ex.lambdaI) << ','
       << csv_number(in.lambda1) << ',' << csv_number(in.lambdaI) << ','
       << csv_number(xt.lambda1) << ',' << csv_number(err_int) << ','
       << csv_number(err_ext) << '\n';
  }
  write_atomic(out_path, os.str());
}

void run_norms(const Scenario& s, const std::string& out_path, int threads) {
  const int n = s.dimension;
  const std::vector<double> ts = time_points(s.time_grid);
  struct Section {
    const char* name;
    std::vector<double> values;
    bool error_rate;  // rate_ref is t^{-n/4} instead of the amplitude law
  };
  std::vector<Section> sections = {
      {"solution_norm", std::vector<double>(ts.size()), false},
      {"phi_norm", std::vector<double>(ts.size()), false},
      {"error_phi", std::vector<double>(ts.size()), true},
      {"error_phi_psi", std::vector<double>(ts.size()), true},
  };
  parallel_for(ts.size(), threads, [&](std::size_t i) {
    sections[0].values[i] = solution_l2_norm(s, ts[i]);
    sections[1].values[i] = phi_l2_norm(s, ts[i]);
    sections[2].values[i] = error_l2_norm(s, ts[i], ErrorSubtract::phi);
    sections[3].values[i] =
        error_l2_norm(s, ts[i], ErrorSubtract::phi_plus_psi);
  });
  std::ostringstream os;
  os << scenario_header(s);
  for (const Section& sec : sections) {
    os << "# quantity: " << sec.name << "\n"
       << "t,norm,rate_ref\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double ref = sec.error_rate ? std::pow(ts[i], -0.25 * n)
                                        : rate_reference(n, ts[i]);
      os << csv_number(ts[i]) << ',' << csv_number(sec.values[i]) << ','
         << csv_number(ref) << '\n';
    }
  }
  write_atomic(out_path, os.str());
}

int run_rates(const Scenario& s, const std::string& out_path, int threads) {
  std::vector<Verdict> all;
  for (const std::string& claim : s.claims) {
    for (Verdict& v : theorem_harness(s, claim, threads)) {
      all.push_back(std::move(v));
    }
  }
  std::ostringstream os;
  os << scenario_header(s)
     << "claim,n,fitted,target,tolerance,residual,verdict\n";
  bool any_fail = false;
  for (const Verdict& v : all) {
    os << v.claim << ',' << v.n << ',' << csv_number(v.fitted) << ','
       << csv_number(v.target) << ',' << csv_number(v.tolerance) << ','
       << csv_number(v.residual) << ',' << (v.pass ? "pass" : "fail") << '\n';
    std::cout << v.claim << " (n = " << v.n << "): "
              << (v.pass ? "pass" : "fail") << "; " << v.note << "\n";
    any_fail = any_fail || !v.pass;
  }
  write_atomic(out_path, os.str());
  return any_fail ? 2 : 0;
}

void run_multiplier(const Scenario& s, const std::string& out_path,
                    int threads) {
  const int n = s.dimension;
  const DerivedConstants c = derive_constants(s.model);
  std::vector<double> mn_ts;
  for (double t : time_points(s.time_grid)) {
    if (t >= 10.0) mn_ts.push_back(t);
  }
  std::vector<double> mn_vals(mn_ts.size());
  parallel_for(mn_ts.size(), threads, [&](std::size_t i) {
    mn_vals[i] = mn_norm(c, mn_ts[i], n, mn_grid(c, mn_ts[i], s.quadrature));
  });
  std::ostringstream os;
  os << scenario_header(s) << "# quantity: mn_norm\n"
     << "t,norm,rate_ref\n";
  for (std::size_t i = 0; i < mn_ts.size(); ++i) {
    os << csv_number(mn_ts[i]) << ',' << csv_number(mn_vals[i]) << ','
       << csv_number(rate_reference(n, mn_ts[i])) << '\n';
  }
  if (n <= 2 && !s.u1.is_zero()) {
    const std::vector<double> ts = time_points(s.time_grid);
    std::vector<double> wave_vals(ts.size());
    parallel_for(ts.size(), threads, [&](std::size_t i) {
      wave_vals[i] = wave_multiplier_norm(s.u1, ts[i], n,
                                          wave_grid(s.u1, ts[i], s.quadrature));
    });
    os << "# quantity: wave_norm\n"
       << "t,norm,rate_ref\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      os << csv_number(ts[i]) << ',' << csv_number(wave_vals[i]) << ','
         << csv_number(rate_reference(n, ts[i])) << '\n';
    }
  }
  write_atomic(out_path, os.str());
}

void run_profiles(const Scenario& s, const std::string& out_path) {
  const DerivedConstants c = derive_constants(s.model);
  std::ostringstream os;
  os << scenario_header(s)
     << "t,r,g0,g1_radial,g2,g3,g4_radial,h0,h1_radial,m_u0,m_u1,"
        "m_theta_radial\n";
  for (double t : s.profile_times) {
    for (double r : roots_points(s.roots_grid)) {
      const ProfileMultipliers m = eval_profiles(c, s.model, t, r);
      const CharRoots roots = char_roots(s.model, r);
      const SolutionMultipliers sm = solution_multipliers(s.model, roots, t);
      os << csv_number(t) << ',' << csv_number(r) << ',' << csv_number(m.g0)
         << ',' << csv_number(m.g1_radial) << ',' << csv_number(m.g2) << ','
         << csv_number(m.g3) << ',' << csv_number(m.g4_radial) << ','
         << csv_number(m.h0) << ',' << csv_number(m.h1_radial) << ','
         << csv_number(sm.m_u0) << ',' << csv_number(sm.m_u1) << ','
         << csv_number(sm.m_theta_radial) << '\n';
    }
  }
  write_atomic(out_path, os.str());
}

void run_mc_check(const Scenario& s, unsigned long long seed) {
  const int n = s.dimension;
  const int k = s.component;
  std::array<double, 3> M{0.0, 0.0, 0.0};
  M[k - 1] = 1.0;
  const SphereMomentsMC mc = mc_sphere_moments(n, k, M, 1000000, seed);
  const double surf = sphere_surface(n);
  const double exact_riesz = surf / n;
  const double exact_mixed = surf * 3.0 / (n * (n + 2.0));
  std::cout << "mc angular check (seed " << seed << "): riesz mc = "
            << csv_number(mc.riesz) << " exact = " << csv_number(exact_riesz)
            << ", mixed mc = " << csv_number(mc.mixed)
            << " exact = " << csv_number(exact_mixed) << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"thermoelastic asymptotics workbench"};
  app.require_subcommand(1);
  std::string scenario_path, out_path;
  int threads = 1;
  unsigned long long seed = 0;
  app.add_option("--scenario", scenario_path, "scenario file (JSON)")
      ->required();
  app.add_option("--out", out_path, "output CSV path")->required();
  app.add_option("--threads", threads, "worker threads for norm sweeps");
  app.add_option("--seed", seed,
                 "enable the Monte-Carlo angular-moment check with this seed");
  app.fallthrough();
  CLI::App* cmd_roots = app.add_subcommand("roots", "root table over r-grid");
  CLI::App* cmd_norms = app.add_subcommand("norms", "norm time sweep");
  CLI::App* cmd_rates = app.add_subcommand("rates", "theorem harness verdicts");
  CLI::App* cmd_mult =
      app.add_subcommand("multiplier", "multiplier norm sweeps");
  CLI::App* cmd_prof = app.add_subcommand("profiles", "multiplier tables");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    if (threads < 1) throw ConfigError("cli: --threads must be >= 1");
    const Scenario s = load_scenario(scenario_path);
    int code = 0;
    if (cmd_roots->parsed()) {
      run_roots(s, out_path);
    } else if (cmd_norms->parsed()) {
      run_norms(s, out_path, threads);
    } else if (cmd_rates->parsed()) {
      code = run_rates(s, out_path, threads);
    } else if (cmd_mult->parsed()) {
      run_multiplier(s, out_path, threads);
    } else if (cmd_prof->parsed()) {
      run_profiles(s, out_path);
    }
    if (seed != 0) run_mc_check(s, seed);
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace thermo
