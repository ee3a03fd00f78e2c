#pragma once

#include <array>
#include <complex>

#include "thermo/model.hpp"
#include "thermo/spectral.hpp"

namespace thermo {

// The seven asymptotic profile multipliers at fixed (t, r). Angular factors
// are never folded in: the *_radial fields carry the radial part of symbols
// of the form i xi_k * m_radial(r), all other fields are fully radial.
//   g0        = sin(beta1 r t) / (beta1 r) e^{-beta2 r^2 t}
//   g1_radial = g1/(b^2+g1 g2) * (cos(beta1 r t) e^{-beta2 r^2 t}
//               - e^{-beta0 r^2 t}) / r^2
//   g2        = (g1 g2 e^{-beta0 r^2 t} + b^2 cos(beta1 r t) e^{-beta2 r^2 t})
//               / (b^2+g1 g2)
//   g3        = kappa g1 g2/(b^2+g1 g2)^2 * (e^{-beta0 r^2 t}
//               - cos(beta1 r t) e^{-beta2 r^2 t})
//   g4_radial = A2 t sinc(beta1 r t) e^{-beta2 r^2 t}
//   h0        = -(A1/g1) r^2 t cos(beta1 r t) e^{-beta2 r^2 t}
//   h1_radial = (A1/beta1) r t sin(beta1 r t) e^{-beta2 r^2 t}
// At t = 0: g0 = g1_radial = g3 = g4... = h0 = h1... = 0 except g4_radial = 0
// trivially; g2 = 1. All fields are finite at r = 0 (guarded limits).
struct ProfileMultipliers {
  double t = 0.0;
  double r = 0.0;
  double g0 = 0.0;
  double g1_radial = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
  double g4_radial = 0.0;
  double h0 = 0.0;
  double h1_radial = 0.0;
};

// (e^{-beta0 r^2 t} - cos(beta1 r t) e^{-beta2 r^2 t}) / r^2, evaluated
// without cancellation via expm1 and a half-angle sine, with a Maclaurin
// series once every argument is tiny. The r -> 0 limit is
// (beta2 - beta0) t + beta1^2 t^2 / 2.
double heat_wave_gap_over_r2(const DerivedConstants& c, double t, double r);

ProfileMultipliers eval_profiles(const DerivedConstants& c,
                                 const ModelParams& p, double t, double r);

// Data means and first moments entering the second-order profile.
struct PsiMoments {
  double P_u0 = 0.0;
  double P_u1 = 0.0;
  double P_theta0 = 0.0;
  std::array<double, 3> M_u1{{0.0, 0.0, 0.0}};
  std::array<double, 3> M_theta0{{0.0, 0.0, 0.0}};
};

// Leading-term symbol: g0 * P_u1 + i xi_k g1_radial * P_theta0, with
// xi_k = omega_k * r taken from the multipliers' own r. Real and imaginary
// parts stay separated by construction (the output's components).
std::complex<double> phi_hat(const ProfileMultipliers& m, double P_u1,
                             double P_theta0, double omega_k);

// Full second-order symbol at frequency r * omega (omega a unit vector,
// k the 1-based distinguished component):
//   -i (xi . M_u1) g0  -  i (xi . M_theta0) * (i xi_k g1_radial)
//   + g2 P_u0 + (h0 + g3) P_u1 + i xi_k (h1_radial + g4_radial) P_theta0.
// The moment terms carry the outward Taylor sign of the kernel expansion.
std::complex<double> psi_hat(const ProfileMultipliers& m, const PsiMoments& mo,
                             const std::array<double, 3>& omega, int k, int n);

// Dominant interior pieces of the exact solution. theta_term = i xi_k
// theta0hat, as in ode_oracle.
//   j0 = (-lambdaI^2 S uhat1 + g1 EmC theta_term) / D
//   j1 = ((b^2 r^2 - lambdaI^2) E - b^2 r^2 C)/D uhat0 + 2 lambdaR EmC/D uhat1
//        + g1 (lambdaR - lambda1) S/D theta_term
std::complex<double> j0_hat(const ModelParams& p, const CharRoots& roots,
                            double t, std::complex<double> u1hat,
                            std::complex<double> theta_term);
std::complex<double> j1_hat(const ModelParams& p, const CharRoots& roots,
                            double t, std::complex<double> u0hat,
                            std::complex<double> u1hat,
                            std::complex<double> theta_term);

// Analytic decomposition of the squared L^2 norm of the second-order symbol
// at large t. A3..A7 are the data-weighted constants; B0..B2 the sphere
// moments of the oscillatory part; B3 and B4_1 the heat and smooth-half
// diffusion-wave squares (all raw frequency-side values). `total` is the
// physical-space prediction (2 pi)^{-n} (E7 + B3 + B4_1); `remainder` the
// separately reported oscillatory rest (2 pi)^{-n} (B4_2 + 2 B5), evaluated
// by direct quadrature, which tends to zero faster than t^{-n/2}.
struct PsiNormBreakdown {
  double A3 = 0.0, A4 = 0.0, A5 = 0.0, A6 = 0.0, A7 = 0.0;
  double B0 = 0.0, B1 = 0.0, B2 = 0.0;
  double B3 = 0.0;
  double B4_1 = 0.0;
  double remainder = 0.0;
  double total = 0.0;
};
PsiNormBreakdown psi_norm_analytic(const DerivedConstants& c,
                                   const ModelParams& p, const PsiMoments& mo,
                                   double t, int n, int k);

// Direct quadrature of (2 pi)^{-n} || psi_hat ||^2_{L^2}: radial panels with
// exact angular moments. Oracle for the analytic decomposition.
double psi_norm_quadrature(const DerivedConstants& c, const ModelParams& p,
                           const PsiMoments& mo, double t, int n, int k);

}  // namespace thermo
