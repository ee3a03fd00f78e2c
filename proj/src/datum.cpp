#include "thermo/datum.hpp"

#include <cmath>

namespace thermo {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// E|omega_j| over the uniform unit sphere in dimension n.
double abs_component_mean(int n) {
  switch (n) {
    case 1: return 1.0;
    case 2: return 2.0 / 3.141592653589793238462643383279;
    default: return 0.5;
  }
}

double surface_measure(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return kTwoPi;
    default: return 2.0 * kTwoPi;
  }
}

}  // namespace

void validate(const DatumSpec& d, int n) {
  if (n < 1 || n > 3) throw ConfigError("datum: dimension must be 1, 2, or 3");
  if (!(d.width > 0.0)) throw ConfigError("datum: width > 0 violated");
  if (!std::isfinite(d.amplitude) || !std::isfinite(d.width))
    throw ConfigError("datum: amplitude and width must be finite");
  if (d.kind == DatumKind::derivative_gaussian) {
    if (d.derivative_axis < 1 || d.derivative_axis > n)
      throw ConfigError("datum: derivative_axis must lie in 1..n");
  } else if (d.derivative_axis != 0) {
    throw ConfigError("datum: derivative_axis only valid for derivative_gaussian");
  }
  if (d.kind != DatumKind::shifted_gaussian) {
    for (int j = 0; j < 3; ++j)
      if (d.center[j] != 0.0)
        throw ConfigError("datum: center only valid for shifted_gaussian");
  } else {
    for (int j = n; j < 3; ++j)
      if (d.center[j] != 0.0)
        throw ConfigError("datum: center has components beyond dimension n");
  }
}

double gaussian_factor(const DatumSpec& d, int n, double r) {
  const double s2 = d.width * d.width;
  return d.amplitude * std::pow(kTwoPi * s2, 0.5 * n) *
         std::exp(-0.5 * s2 * r * r);
}

std::complex<double> fourier_at(const DatumSpec& d, int n,
                                const std::array<double, 3>& xi) {
  double r2 = 0.0;
  for (int j = 0; j < n; ++j) r2 += xi[j] * xi[j];
  const double base = gaussian_factor(d, n, std::sqrt(r2));
  switch (d.kind) {
    case DatumKind::gaussian:
      return {base, 0.0};
    case DatumKind::shifted_gaussian: {
      double phase = 0.0;
      for (int j = 0; j < n; ++j) phase += d.center[j] * xi[j];
      return base * std::exp(std::complex<double>(0.0, -phase));
    }
    case DatumKind::derivative_gaussian:
      return std::complex<double>(0.0, xi[d.derivative_axis - 1]) * base;
  }
  return {0.0, 0.0};
}

DatumMoments moments(const DatumSpec& d, int n) {
  validate(d, n);
  DatumMoments m;
  const double s2 = d.width * d.width;
  const double P_base = d.amplitude * std::pow(kTwoPi * s2, 0.5 * n);
  // Centered Gaussian: integral |x| e^{-|x|^2/(2 s^2)} dx evaluated via
  // E|X| = sigma sqrt(2) Gamma((n+1)/2) / Gamma(n/2) for X ~ N(0, s^2 I).
  const double l11_centered =
      std::abs(P_base) * d.width * std::sqrt(2.0) *
      std::tgamma(0.5 * (n + 1)) / std::tgamma(0.5 * n);
  switch (d.kind) {
    case DatumKind::gaussian:
      m.P = P_base;
      m.l1_norm = std::abs(P_base);
      m.l11_norm = l11_centered;
      break;
    case DatumKind::shifted_gaussian: {
      m.P = P_base;
      double shift = 0.0;
      for (int j = 0; j < n; ++j) {
        m.M[j] = d.center[j] * P_base;
        shift += d.center[j] * d.center[j];
      }
      m.l1_norm = std::abs(P_base);
      m.l11_norm = std::sqrt(shift) * m.l1_norm + l11_centered;
      break;
    }
    case DatumKind::derivative_gaussian: {
      m.P = 0.0;
      m.M[d.derivative_axis - 1] = -P_base;
      m.l1_norm = 2.0 * std::abs(d.amplitude) *
                  std::pow(kTwoPi * s2, 0.5 * (n - 1));
      // integral |x| |x_j| e^{-|x|^2/(2 s^2)} dx in polar coordinates.
      const double radial =
          0.5 * std::pow(2.0 * s2, 0.5 * (n + 2)) * std::tgamma(0.5 * (n + 2));
      m.l11_norm = std::abs(d.amplitude) / s2 * surface_measure(n) *
                   abs_component_mean(n) * radial;
      break;
    }
  }
  return m;
}

}  // namespace thermo
