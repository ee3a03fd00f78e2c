#pragma once

#include <array>
#include <complex>

#include "thermo/errors.hpp"

namespace thermo {

// Analytic initial-data family. Every member has a closed-form Fourier
// transform, so frequency-space quantities never involve a discrete
// transform. Convention: fhat(xi) = integral e^{-i x.xi} f(x) dx.
enum class DatumKind { gaussian, shifted_gaussian, derivative_gaussian };

struct DatumSpec {
  DatumKind kind = DatumKind::gaussian;
  double amplitude = 0.0;
  double width = 1.0;                    // sigma > 0
  std::array<double, 3> center{};        // shifted_gaussian only; x0
  int derivative_axis = 0;               // derivative_gaussian only; 1-based

  bool is_zero() const { return amplitude == 0.0; }
};

// Means and moments. For shifted data l11_norm is the triangle-inequality
// upper bound |x0| l1 + l11(centered); all invariants (|P| <= l1_norm,
// |M| <= l11_norm) still hold with it.
struct DatumMoments {
  double P = 0.0;
  std::array<double, 3> M{};
  double l1_norm = 0.0;
  double l11_norm = 0.0;
};

// Structural checks: width > 0, derivative_axis set iff derivative kind and
// within 1..n, center zero beyond dimension n. Throws ConfigError.
void validate(const DatumSpec& d, int n);

// Closed-form transform at a frequency point. The physical datum behind
// gaussian/shifted_gaussian is amplitude * exp(-|x-x0|^2/(2 sigma^2)), so
// fhat(xi) = amplitude (2 pi sigma^2)^{n/2} e^{-sigma^2 |xi|^2/2} e^{-i x0.xi};
// derivative_gaussian is the axis derivative of the centered member,
// fhat(xi) = i xi_j * (centered transform).
std::complex<double> fourier_at(const DatumSpec& d, int n,
                                const std::array<double, 3>& xi);

// P = fhat(0); M = integral x f dx (translation and integration-by-parts
// identities); l1/l11 by closed Gaussian-moment formulas.
DatumMoments moments(const DatumSpec& d, int n);

// Scalar Gaussian factor common to all kinds at frequency radius r:
//   amplitude * (2 pi sigma^2)^{n/2} * e^{-sigma^2 r^2 / 2}.
// Callers apply the shift phase or the i xi_j factor themselves.
double gaussian_factor(const DatumSpec& d, int n, double r);

}  // namespace thermo
