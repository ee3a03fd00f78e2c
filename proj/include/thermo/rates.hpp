#pragma once

#include <string>
#include <utility>
#include <vector>

#include "thermo/scenario.hpp"

namespace thermo {

// Least-squares rate laws fitted to norm-vs-time series, and the harness
// that turns fitted rates into pass/fail verdicts against the asymptotic
// growth/decay targets.

enum class RateModel {
  power,       // v ~ C * t^alpha
  log_square,  // v^2 ~ a * ln t + b
};

struct RateFit {
  RateModel model = RateModel::power;
  // alpha for power fits, the ln t slope a for log_square fits.
  double exponent_or_slope = 0.0;
  // C for power fits, the intercept b for log_square fits.
  double prefactor = 0.0;
  // Largest pointwise deviation from the fitted law; log scale for power
  // fits, value^2 scale for log_square fits. Reported, never discarded.
  double max_residual = 0.0;
  std::pair<double, double> t_range{0.0, 0.0};
};

// Ordinary least squares of ln(value) against ln(t).
// Requires >= 8 samples spanning >= 2 decades, strictly increasing times,
// and strictly positive values; violations raise ConfigError.
RateFit fit_power(const std::vector<std::pair<double, double>>& series);

// Same regression with the two-decade span requirement waived, for windowed
// stability diagnostics over a single decade. Still needs >= 8 samples.
RateFit fit_power_diagnostic(
    const std::vector<std::pair<double, double>>& series);

// Linear regression of value^2 against ln(t); a positive slope backs a
// sqrt(ln t) growth verdict. Preconditions as fit_power.
RateFit fit_log_square(const std::vector<std::pair<double, double>>& series);

// Growth/decay envelope per dimension: sqrt(t) for n=1, sqrt(ln t) for n=2,
// t^{-1/4} for n=3.
double amplitude_law(int n, double t);

// Mean-value nondegeneracy of a scenario's data.
//   A_squared = P_u1^2 + P_theta0^2
//   B_squared = P_u0^2 + P_u1^2 + P_theta0^2 + |M_u1|^2 + |M_theta0|^2
struct NondegeneracyReport {
  double A_squared = 0.0;
  double B_squared = 0.0;
};

NondegeneracyReport nondegeneracy(const Scenario& s);

// Data transforms for the degeneracy contrast runs.
// A-degenerate: u1 and theta0 become derivative data along axis k (killing
// their means), u0 unchanged.  B-degenerate: u0 becomes derivative data and
// u1, theta0 are zeroed, killing every moment entering B_squared.
Scenario make_A_degenerate(const Scenario& s);
Scenario make_B_degenerate(const Scenario& s);

struct Verdict {
  std::string claim;
  int n = 0;
  double fitted = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  double residual = 0.0;
  bool pass = false;
  std::string note;
};

// Runs the norm sweep mandated by `claim` on the scenario's grid, fits the
// per-dimension rate law, and returns the verdict rows (main claim first,
// then the degenerate counterpart where one applies). Claim names match the
// scenario file: thm_optimal_est, thm_optimal_lead, coro_second_order,
// prop_mn, appendix_wave. Precondition mismatches (degenerate data for a
// nondegenerate claim, missing grid coverage) raise ConfigError.
std::vector<Verdict> theorem_harness(const Scenario& s,
                                     const std::string& claim,
                                     int threads = 1);

}  // namespace thermo
