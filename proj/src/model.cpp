#include "thermo/model.hpp"

#include <cmath>

namespace thermo {

void validate(const ModelParams& p) {
  if (!(p.kappa > 0.0)) throw ConfigError("model: kappa > 0 violated");
  if (!(p.a > 0.0)) throw ConfigError("model: a > 0 violated");
  if (!(p.b > p.a)) throw ConfigError("model: b > a violated");
  if (!(p.gamma1 * p.gamma2 > 0.0))
    throw ConfigError("model: gamma1 * gamma2 > 0 violated");
  if (!std::isfinite(p.kappa) || !std::isfinite(p.a) || !std::isfinite(p.b) ||
      !std::isfinite(p.gamma1) || !std::isfinite(p.gamma2))
    throw ConfigError("model: parameters must be finite");
}

DerivedConstants derive_constants(const ModelParams& p) {
  validate(p);
  const double gg = p.gamma1 * p.gamma2;
  const double b2 = p.b * p.b;
  const double s = b2 + gg;  // beta1^2
  DerivedConstants c;
  c.beta0 = p.kappa * b2 / s;
  c.beta1 = std::sqrt(s);
  c.beta2 = p.kappa * gg / (2.0 * s);
  c.A1 = p.kappa * p.kappa * p.gamma1 * p.gamma1 * p.gamma2 * (gg + 4.0 * b2) /
         (8.0 * s * s * s);
  c.A2 = p.gamma1 * p.kappa * (gg - 2.0 * b2) / (s * s);
  return c;
}

}  // namespace thermo
