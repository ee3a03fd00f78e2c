#pragma once

#include <array>
#include <complex>
#include <functional>

#include "thermo/datum.hpp"
#include "thermo/model.hpp"
#include "thermo/quadrature.hpp"
#include "thermo/scenario.hpp"

namespace thermo {

// Angular structure of a multiplier. Exactly one per multiplier:
//   radial       F(r)
//   riesz_k      omega_k F(r)
//   riesz_mixed  omega_k (omega . M) F(r)
//   axis_shift   F(r, omega_k) carrying an e^{-i s r omega_k} phase
enum class AngularType { radial, riesz_k, riesz_mixed, axis_shift };

struct AngularSpec {
  AngularType type = AngularType::radial;
  int k = 1;                              // distinguished axis, 1-based
  std::array<double, 3> M{{0.0, 0.0, 0.0}};  // riesz_mixed moment vector
};

using RadialFn = std::function<std::complex<double>(double)>;
// (r, mu) with mu = omega_k in [-1, 1].
using PolarFn = std::function<std::complex<double>(double, double)>;

// Physical-convention L^2 norm of a separable multiplier:
//   (2 pi)^{-n/2} sqrt( surface * angular_moment * int |F|^2 r^{n-1} dr )
// with angular_moment 1, 1/n, or (|M|^2 + 2 M_k^2)/(n (n+2)). The grid is
// the caller's; an unconverged tail (geometric continuation bound above
// 1e-10 of the integral) raises NumericError. axis_shift multipliers use the
// polar overload.
double l2_norm(const RadialFn& F, const AngularSpec& ang, int n,
               const RadialGrid& grid);

// Norm of a polar-symmetric multiplier (depends on the k-direction cosine
// only): per radial node a 1-D angular quadrature with `angular_nodes`
// Gauss points (n = 1 sums the two poles).
double l2_norm(const PolarFn& F, int n, const RadialGrid& grid,
               int angular_nodes);

// Grids for the standalone multiplier norms. Tail cutoffs put the Gaussian
// factor below e^{-46}.
RadialGrid mn_grid(const DerivedConstants& c, double t,
                   const QuadratureConfig& q);
RadialGrid wave_grid(const DatumSpec& g, double t, const QuadratureConfig& q);

// L^2 norm of (e^{-beta0 r^2 t} - cos(beta1 r t) e^{-beta2 r^2 t}) / r,
// the removable singularity handled by the guarded gap evaluation. t >= 10.
double mn_norm(const DerivedConstants& c, double t, int n,
               const RadialGrid& grid);

// L^2 norm of sin(r t)/r * ghat(r), the free-wave smoothing of a datum with
// closed-form transform; n in {1, 2}.
double wave_multiplier_norm(const DatumSpec& g, double t, int n,
                            const RadialGrid& grid);

// Scenario-level norms. The solution is assembled per frequency from the
// closed-form multipliers and the data transforms; angular integration is
// exact (moment reduction) for centered axis-aligned data and a polar
// quadrature when shifted data introduce phases. r_max comes from the decay
// exponent 2 min(min(beta0, beta2) r^2, g1 g2/(2 kappa)) t + sigma_min^2 r^2
// = 46 (bisection), then the tail is certified by a geometric continuation
// bound below quadrature.tail_threshold * total, extending the grid and
// retrying if the certificate fails.
double solution_l2_norm(const Scenario& s, double t);

enum class ErrorSubtract { phi, phi_plus_psi };
double error_l2_norm(const Scenario& s, double t, ErrorSubtract subtract);

// Norm of the leading term alone (used by the rate-bracket diagnostics).
double phi_l2_norm(const Scenario& s, double t);

// Monte-Carlo estimates of the two sphere moments behind the angular
// reduction, for cross-checking against |S|/n and |S|(|M|^2 + 2 M_k^2) /
// (n (n+2)). Deterministic for a fixed seed (xorshift + Box-Muller, no
// library distributions).
struct SphereMomentsMC {
  double riesz = 0.0;  // estimates surface * <omega_k^2>
  double mixed = 0.0;  // estimates surface * <omega_k^2 (omega . M)^2>
};
SphereMomentsMC mc_sphere_moments(int n, int k, const std::array<double, 3>& M,
                                  std::size_t samples, unsigned long long seed);

}  // namespace thermo
