#include "thermo/spectral.hpp"

#include <cmath>
#include <string>

#include "thermo/errors.hpp"

namespace thermo {

namespace {

// Scaled cubic q(m) = m^3 + kappa r m^2 + (b^2 + g1 g2) m + kappa b^2 r,
// whose roots are the characteristic roots divided by r. Working in the
// scaled variable keeps the Newton iteration conditioned uniformly in r.
long double scaled_cubic(long double m, long double kr, long double s,
                         long double kb2r) {
  return ((m + kr) * m + s) * m + kb2r;
}

long double scaled_cubic_deriv(long double m, long double kr, long double s) {
  return (3.0L * m + 2.0L * kr) * m + s;
}

long double newton_real_root(long double seed, long double kr, long double s,
                             long double kb2r) {
  long double m = seed;
  for (int it = 0; it < 60; ++it) {
    const long double q = scaled_cubic(m, kr, s, kb2r);
    const long double dq = scaled_cubic_deriv(m, kr, s);
    if (dq == 0.0L) break;
    const long double step = q / dq;
    m -= step;
    if (std::abs(step) < 1e-18L * std::max(1.0L, std::abs(m))) break;
  }
  return m;
}

}  // namespace

CharRoots char_roots(const ModelParams& p, double r) {
  validate(p);
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw ConfigError("spectral: frequency radius must be finite and >= 0");
  }
  CharRoots out;
  out.r = r;
  if (r == 0.0) return out;  // triple root at zero

  const long double kr = static_cast<long double>(p.kappa) * r;
  const long double s =
      static_cast<long double>(p.b) * p.b +
      static_cast<long double>(p.gamma1) * p.gamma2;
  const long double kb2r =
      static_cast<long double>(p.kappa) * p.b * p.b * r;

  // Seeds from the two asymptotic regimes of the real root; pick the one the
  // cubic likes better, then polish.
  const DerivedConstants c = derive_constants(p);
  const long double seed_lo = -static_cast<long double>(c.beta0) * r;
  const long double seed_hi = -kr;
  long double m1 = (std::abs(scaled_cubic(seed_lo, kr, s, kb2r)) <=
                    std::abs(scaled_cubic(seed_hi, kr, s, kb2r)))
                       ? newton_real_root(seed_lo, kr, s, kb2r)
                       : newton_real_root(seed_hi, kr, s, kb2r);

  // Bisection fallback. The real root lies in (lo, 0): q(0) = kappa b^2 r > 0
  // and q is eventually negative to the left. The residual is measured on the
  // scaled cubic: the unscaled residual is amplified by r^3 and its rounding
  // floor grows like r^6, which no fixed r^4 tolerance can track.
  const long double r4 = static_cast<long double>(r) * r * r * r;
  const long double res_tol = 1e-14L * std::max(1.0L, r4);
  if (!(std::abs(scaled_cubic(m1, kr, s, kb2r)) <= res_tol) ||
      !(m1 < 0.0L)) {
    long double lo = -(kr + std::sqrt(s) + 1.0L);
    while (scaled_cubic(lo, kr, s, kb2r) > 0.0L) lo *= 2.0L;
    long double hi = 0.0L;
    for (int it = 0; it < 120; ++it) {
      const long double mid = 0.5L * (lo + hi);
      if (scaled_cubic(mid, kr, s, kb2r) > 0.0L) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    m1 = newton_real_root(0.5L * (lo + hi), kr, s, kb2r);
  }

  const long double lam1 = m1 * r;
  const long double resid = scaled_cubic(m1, kr, s, kb2r);
  if (!(std::abs(resid) <= res_tol)) {
    throw NumericError("spectral: real-root polish failed at r = " +
                       std::to_string(r));
  }

  // Pair from the trace and modulus identities:
  //   lambda1 + 2 lambdaR = -kappa r^2
  //   lambda1 |pair|^2    = -kappa b^2 r^4
  const long double lamR = 0.5L * (-kr * r - lam1);
  const long double pair_sq = -kb2r * r * r * r / lam1;
  const long double lamI_sq = pair_sq - lamR * lamR;
  if (!(lamI_sq > 0.0L)) {
    throw NumericError(
        "spectral: complex pair degenerated (nonnegative discriminant) at "
        "r = " +
        std::to_string(r));
  }

  out.lambda1 = static_cast<double>(lam1);
  out.lambdaR = static_cast<double>(lamR);
  out.lambdaI = static_cast<double>(std::sqrt(lamI_sq));
  if (!(out.lambda1 < 0.0 && out.lambdaR < 0.0)) {
    throw NumericError("spectral: root signs violated at r = " +
                       std::to_string(r));
  }
  return out;
}

CharRoots roots_expansion_interior(const DerivedConstants& c,
                                   const ModelParams& p, double r) {
  const double gg = p.gamma1 * p.gamma2;
  const double b2 = p.b * p.b;
  const double s = b2 + gg;  // beta1^2
  CharRoots out;
  out.r = r;
  const double r2 = r * r;
  out.lambda1 =
      -c.beta0 * r2 -
      std::pow(p.kappa, 3) * b2 * b2 * gg / (s * s * s * s) * r2 * r2;
  out.lambdaR = -c.beta2 * r2;
  const double c3 =
      p.kappa * p.kappa * gg * (gg + 4.0 * b2) / (8.0 * s * s * c.beta1);
  out.lambdaI = c.beta1 * r - c3 * r2 * r;
  return out;
}

CharRoots roots_expansion_exterior(const ModelParams& p, double r) {
  CharRoots out;
  out.r = r;
  out.lambda1 = -p.kappa * r * r;
  out.lambdaR = -p.gamma1 * p.gamma2 / (2.0 * p.kappa);
  out.lambdaI = p.b * r;
  return out;
}

double zone_epsilon0(const DerivedConstants& c, const ModelParams& p) {
  return 0.1 * std::min(1.0, c.beta1 / p.kappa);
}

double zone_N0(const ModelParams& p) {
  const double s = p.b * p.b + p.gamma1 * p.gamma2;
  return 10.0 * std::max(1.0, s / p.kappa);
}

EvolutionPieces evolution_pieces(const CharRoots& roots, double t) {
  const double r = roots.r;
  if (!(r > 0.0)) {
    throw ConfigError(
        "spectral: evolution pieces are singular at r = 0; use the analytic "
        "limits");
  }
  const double lam1 = roots.lambda1;
  const double lamR = roots.lambdaR;
  const double lamI = roots.lambdaI;

  EvolutionPieces ev;
  ev.D = 2.0 * lamR * lam1 - lamI * lamI - lamR * lamR - lam1 * lam1;
  const double dtol = 1e-13 * (r * r + r * r * r * r);
  if (!(std::abs(ev.D) > dtol)) {
    throw NumericError(
        "spectral: representation denominator degenerate at r = " +
        std::to_string(r));
  }

  const double growR = std::exp(lamR * t);
  const double x = lamI * t;
  ev.E = std::exp(lam1 * t);
  ev.C = std::cos(x) * growR;
  // sin(x)/lamI with a 2-term series once sin(x)/x loses digits.
  ev.S = (std::abs(x) < 1e-4) ? t * (1.0 - x * x / 6.0) * growR
                              : std::sin(x) / lamI * growR;
  // E - C without cancellation: split off the shared e^{lambdaR t} envelope,
  // then expm1 handles the real gap and a half-angle square the cosine gap.
  const double half = std::sin(0.5 * x);
  ev.EmC = growR * std::expm1((lam1 - lamR) * t) + 2.0 * half * half * growR;
  return ev;
}

SolutionMultipliers solution_multipliers(const ModelParams& p,
                                         const CharRoots& roots, double t) {
  SolutionMultipliers out;
  if (roots.r == 0.0) {
    out.m_u0 = 1.0;
    out.m_u1 = t;
    out.m_theta_radial = -0.5 * p.gamma1 * t * t;
    return out;
  }
  const EvolutionPieces ev = evolution_pieces(roots, t);
  const double r2 = roots.r * roots.r;
  const double b2r2 = p.b * p.b * r2;
  const double lam1 = roots.lambda1;
  const double lamR = roots.lambdaR;
  const double lamI2 = roots.lambdaI * roots.lambdaI;

  // Coefficient of E equals D minus the coefficient of C, so each multiplier
  // is rearranged onto (EmC, C, S); at t = 0 the pieces are (0, 1, 0) and the
  // triple below is exactly (1, 0, 0).
  const double a_u0 = (b2r2 - lamI2 - lamR * lamR) / ev.D;
  const double s_u0 =
      (lam1 * (lamR * lam1 + lamI2 - lamR * lamR) + b2r2 * (lamR - lam1)) /
      ev.D;
  out.m_u0 = a_u0 * ev.EmC + ev.C + s_u0 * ev.S;

  out.m_u1 = (2.0 * lamR * ev.EmC +
              (lamR * lamR - lamI2 - lam1 * lam1) * ev.S) /
             ev.D;

  out.m_theta_radial =
      p.gamma1 * (ev.EmC + (lamR - lam1) * ev.S) / ev.D;
  return out;
}

ThetaMultipliers theta_multiplier(const ModelParams& p, const CharRoots& roots,
                                  double t) {
  if (!(roots.r > 0.0)) {
    throw ConfigError("spectral: temperature reconstruction requires r > 0");
  }
  if (t == 0.0) {
    ThetaMultipliers id;
    id.m_theta0 = 1.0;
    return id;
  }
  const EvolutionPieces ev = evolution_pieces(roots, t);
  const double r2 = roots.r * roots.r;
  const double b2r2 = p.b * p.b * r2;
  const double lam1 = roots.lambda1;
  const double lamR = roots.lambdaR;
  const double lamI2 = roots.lambdaI * roots.lambdaI;

  // Basis coefficients (aE, aC, aS) of each displacement channel, from the
  // same representation as solution_multipliers.
  const double chan[3][3] = {
      {(b2r2 - lamI2 - lamR * lamR) / ev.D,
       (2.0 * lamR * lam1 - lam1 * lam1 - b2r2) / ev.D,
       (lam1 * (lamR * lam1 + lamI2 - lamR * lamR) + b2r2 * (lamR - lam1)) /
           ev.D},
      {2.0 * lamR / ev.D, -2.0 * lamR / ev.D,
       (lamR * lamR - lamI2 - lam1 * lam1) / ev.D},
      {p.gamma1 / ev.D, -p.gamma1 / ev.D, p.gamma1 * (lamR - lam1) / ev.D}};

  // Second time derivative in the (E, C, S) basis:
  //   E'' = lambda1^2 E
  //   C'' = (lambdaR^2 - lambdaI^2) C - 2 lambdaR lambdaI^2 S
  //   S'' = 2 lambdaR C + (lambdaR^2 - lambdaI^2) S
  // then m_theta = -(m'' + b^2 r^2 m)/gamma1, regrouped onto (EmC, C, S).
  double vals[3];
  const double w = lamR * lamR - lamI2;
  for (int i = 0; i < 3; ++i) {
    const double aE = chan[i][0];
    const double aC = chan[i][1];
    const double aS = chan[i][2];
    const double bE = -(aE * lam1 * lam1 + b2r2 * aE) / p.gamma1;
    const double bC = -(aC * w + 2.0 * lamR * aS + b2r2 * aC) / p.gamma1;
    const double bS =
        -(-2.0 * lamR * lamI2 * aC + aS * w + b2r2 * aS) / p.gamma1;
    vals[i] = bE * ev.EmC + (bE + bC) * ev.C + bS * ev.S;
  }

  ThetaMultipliers out;
  out.m_u0 = vals[0];
  out.m_u1 = vals[1];
  out.m_theta0 = vals[2];
  return out;
}

std::complex<double> ode_oracle(const ModelParams& p, double r,
                                std::complex<double> u0hat,
                                std::complex<double> u1hat,
                                std::complex<double> theta_term, double t,
                                double dt) {
  validate(p);
  if (!(t >= 0.0) || !(dt > 0.0)) {
    throw ConfigError("spectral: oracle requires t >= 0 and dt > 0");
  }
  const CharRoots roots = char_roots(p, r);
  if (dt > 0.1 / std::max(roots.lambdaI, 1.0) ||
      dt > 0.1 / std::max(std::abs(roots.lambda1), 1.0)) {
    throw ConfigError(
        "spectral: oracle step too large for the root magnitudes at r = " +
        std::to_string(r));
  }

  const double r2 = r * r;
  const double c2 = p.kappa * r2;
  const double c1 = (p.b * p.b + p.gamma1 * p.gamma2) * r2;
  const double c0 = p.kappa * p.b * p.b * r2 * r2;

  using C = std::complex<double>;
  struct State {
    C u, v, w;
  };
  const auto rhs = [&](const State& y) {
    return State{y.v, y.w, -c2 * y.w - c1 * y.v - c0 * y.u};
  };
  const auto axpy = [](const State& y, double h, const State& k) {
    return State{y.u + h * k.u, y.v + h * k.v, y.w + h * k.w};
  };

  State y{u0hat, u1hat, -p.b * p.b * r2 * u0hat - p.gamma1 * theta_term};
  if (t == 0.0) return y.u;
  const long steps = static_cast<long>(std::ceil(t / dt - 1e-12));
  const double h = t / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    const State k1 = rhs(y);
    const State k2 = rhs(axpy(y, 0.5 * h, k1));
    const State k3 = rhs(axpy(y, 0.5 * h, k2));
    const State k4 = rhs(axpy(y, h, k3));
    y.u += h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    y.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    y.w += h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
  }
  return y.u;
}

CoupledState coupled_ode_oracle(const ModelParams& p, double r, double xik,
                                std::complex<double> u0hat,
                                std::complex<double> u1hat,
                                std::complex<double> theta0hat, double t,
                                double dt) {
  validate(p);
  if (xik == 0.0) {
    throw ConfigError("spectral: coupled oracle requires xi_k != 0");
  }
  if (!(t >= 0.0) || !(dt > 0.0)) {
    throw ConfigError("spectral: oracle requires t >= 0 and dt > 0");
  }
  const CharRoots roots = char_roots(p, r);
  if (dt > 0.1 / std::max(roots.lambdaI, 1.0) ||
      dt > 0.1 / std::max(std::abs(roots.lambda1), 1.0)) {
    throw ConfigError(
        "spectral: oracle step too large for the root magnitudes at r = " +
        std::to_string(r));
  }

  const double r2 = r * r;
  const double b2r2 = p.b * p.b * r2;
  using C = std::complex<double>;
  const C i_g1_xik(0.0, p.gamma1 * xik);
  const C i_g2_r2_over_xik(0.0, p.gamma2 * r2 / xik);
  struct State {
    C u, v, th;
  };
  const auto rhs = [&](const State& y) {
    return State{y.v, -b2r2 * y.u - i_g1_xik * y.th,
                 -p.kappa * r2 * y.th - i_g2_r2_over_xik * y.v};
  };
  const auto axpy = [](const State& y, double h, const State& k) {
    return State{y.u + h * k.u, y.v + h * k.v, y.th + h * k.th};
  };

  State y{u0hat, u1hat, theta0hat};
  if (t > 0.0) {
    const long steps = static_cast<long>(std::ceil(t / dt - 1e-12));
    const double h = t / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) {
      const State k1 = rhs(y);
      const State k2 = rhs(axpy(y, 0.5 * h, k1));
      const State k3 = rhs(axpy(y, 0.5 * h, k2));
      const State k4 = rhs(axpy(y, h, k3));
      y.u += h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
      y.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
      y.th += h / 6.0 * (k1.th + 2.0 * k2.th + 2.0 * k3.th + k4.th);
    }
  }
  return CoupledState{y.u, y.th};
}

std::array<std::complex<double>, 3> helmholtz_project(
    const std::array<double, 3>& xi,
    const std::array<std::complex<double>, 3>& uhat, int n) {
  if (n < 1 || n > 3) {
    throw ConfigError("spectral: dimension must be 1, 2, or 3");
  }
  double norm2 = 0.0;
  std::complex<double> dot(0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    norm2 += xi[j] * xi[j];
    dot += xi[j] * uhat[j];
  }
  if (norm2 == 0.0) {
    throw ConfigError("spectral: projection undefined at zero frequency");
  }
  std::array<std::complex<double>, 3> out{};
  for (int j = 0; j < n; ++j) out[j] = xi[j] * (dot / norm2);
  return out;
}

}  // namespace thermo
