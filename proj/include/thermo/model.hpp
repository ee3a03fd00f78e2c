#pragma once

#include "thermo/errors.hpp"

namespace thermo {

// Physical coefficients of the coupled elastic/heat system. Admissibility:
// kappa > 0, b > a > 0, gamma1 * gamma2 > 0. The shear speed `a` is carried
// for validation only; it never enters the potential-part formulas.
struct ModelParams {
  double kappa = 1.0;
  double a = 0.5;
  double b = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
};

// Closed-form constants of the low-frequency asymptotics:
//   beta0 = kappa b^2 / (b^2 + g1 g2)          heat-kernel rate
//   beta1 = sqrt(b^2 + g1 g2)                  wave speed of the diffusion wave
//   beta2 = kappa g1 g2 / (2 (b^2 + g1 g2))    diffusion-wave damping rate
//   A1    = kappa^2 g1^2 g2 (g1 g2 + 4 b^2) / (8 beta1^6)
//   A2    = g1 kappa (g1 g2 - 2 b^2) / beta1^4
// A1 and A2 are the amplitudes of the second-order dispersive corrections.
struct DerivedConstants {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double A1 = 0.0;
  double A2 = 0.0;
};

// Throws ConfigError naming the violated constraint.
void validate(const ModelParams& p);

// Validates and computes the five constants. Pure; bitwise deterministic.
DerivedConstants derive_constants(const ModelParams& p);

}  // namespace thermo
