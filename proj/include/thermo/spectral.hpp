#pragma once

#include <array>
#include <complex>

#include "thermo/model.hpp"

namespace thermo {

// Roots of the characteristic cubic
//   z^3 + kappa r^2 z^2 + (b^2 + g1 g2) r^2 z + kappa b^2 r^4 = 0
// at frequency radius r: the unique real root lambda1 and the conjugate pair
// lambdaR +- i lambdaI (lambdaI >= 0). For r > 0 both real parts are
// strictly negative.
struct CharRoots {
  double r = 0.0;
  double lambda1 = 0.0;
  double lambdaR = 0.0;
  double lambdaI = 0.0;
};

// Exact roots. The real root is isolated by Newton iteration (with a
// bisection fallback) on the scaled cubic in z/r, then polished until the
// scaled-cubic residual is < 1e-14 * max(1, r^4); the pair is recovered from
// the trace and product identities, which is cancellation-free at small r.
// Throws NumericError if the pair degenerates (nonnegative discriminant) at
// some r > 0.
CharRoots char_roots(const ModelParams& p, double r);

// Truncated low-frequency expansions:
//   lambda1 = -beta0 r^2 - kappa^3 b^4 g1 g2 / (b^2+g1 g2)^4 * r^4
//   lambdaR = -beta2 r^2
//   lambdaI = beta1 r - kappa^2 g1 g2 (g1 g2 + 4 b^2) / (8 (b^2+g1 g2)^{5/2}) r^3
// Caller is responsible for r being inside the small-frequency zone.
CharRoots roots_expansion_interior(const DerivedConstants& c,
                                   const ModelParams& p, double r);

// Truncated high-frequency expansions:
//   lambda1 = -kappa r^2,  lambdaR = -g1 g2 / (2 kappa),  lambdaI = b r.
CharRoots roots_expansion_exterior(const ModelParams& p, double r);

// Default zone boundaries. The small zone ends at epsilon0, the large zone
// starts at N0; the band between is handled by the exact representation.
double zone_epsilon0(const DerivedConstants& c, const ModelParams& p);
double zone_N0(const ModelParams& p);

// Stable building blocks of the per-frequency evolution at time t:
//   E   = e^{lambda1 t}
//   C   = cos(lambdaI t) e^{lambdaR t}
//   S   = sin(lambdaI t)/lambdaI * e^{lambdaR t}   (guarded series near 0)
//   EmC = E - C evaluated cancellation-free via expm1 and a half-angle sine
//   D   = 2 lambdaR lambda1 - lambdaI^2 - lambdaR^2 - lambda1^2  (denominator)
// Throws NumericError when |D| < 1e-13 (r^2 + r^4): a degenerate denominator
// marks a zone boundary the representation cannot cross. Requires r > 0.
struct EvolutionPieces {
  double E = 0.0;
  double C = 0.0;
  double S = 0.0;
  double EmC = 0.0;
  double D = 0.0;
};
EvolutionPieces evolution_pieces(const CharRoots& roots, double t);

// Real radial coefficients of the closed-form solution,
//   uhat(t, xi) = m_u0 * u0hat + m_u1 * u1hat + i xi_k * m_theta_radial * theta0hat.
// At t = 0 the triple is exactly (1, 0, 0). The r = 0 degenerate limits are
// (1, t, -g1 t^2 / 2).
struct SolutionMultipliers {
  double m_u0 = 0.0;
  double m_u1 = 0.0;
  double m_theta_radial = 0.0;
};
SolutionMultipliers solution_multipliers(const ModelParams& p,
                                         const CharRoots& roots, double t);

// Real radial coefficients reconstructing the temperature,
//   thetahat(t, xi) = (m_u0 * u0hat + m_u1 * u1hat) / (i xi_k)
//                     + m_theta0 * theta0hat,
// obtained by applying thetahat = -(uhat_tt + b^2 r^2 uhat)/(i g1 xi_k) to the
// analytically differentiated representation. At t = 0 the triple is
// (0, 0, 1). Requires r > 0 (the identity is singular at zero frequency).
struct ThetaMultipliers {
  double m_u0 = 0.0;
  double m_u1 = 0.0;
  double m_theta0 = 0.0;
};
ThetaMultipliers theta_multiplier(const ModelParams& p, const CharRoots& roots,
                                  double t);

// Classical fourth-order one-step integration of the third-order scalar
// equation as a 3-system, from the initial triple
//   (u0hat, u1hat, -b^2 r^2 u0hat - g1 * theta_term)
// where theta_term = i xi_k theta0hat. Step-size preconditions
// dt <= 0.1/max(lambdaI, 1) and dt <= 0.1/max(|lambda1|, 1) are enforced.
std::complex<double> ode_oracle(const ModelParams& p, double r,
                                std::complex<double> u0hat,
                                std::complex<double> u1hat,
                                std::complex<double> theta_term, double t,
                                double dt);

// Joint integration of (uhat, uhat_t, thetahat) for the coupled system at one
// frequency; independent oracle for the temperature reconstruction. xik != 0.
struct CoupledState {
  std::complex<double> u;
  std::complex<double> theta;
};
CoupledState coupled_ode_oracle(const ModelParams& p, double r, double xik,
                                std::complex<double> u0hat,
                                std::complex<double> u1hat,
                                std::complex<double> theta0hat, double t,
                                double dt);

// Frequency-side potential projection xi (xi . uhat) / |xi|^2. The remainder
// uhat - projection is orthogonal to xi. Zero frequency rejected.
std::array<std::complex<double>, 3> helmholtz_project(
    const std::array<double, 3>& xi,
    const std::array<std::complex<double>, 3>& uhat, int n);

}  // namespace thermo
