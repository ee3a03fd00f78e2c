#include "thermo/profiles.hpp"

#include <cmath>

#include "thermo/errors.hpp"
#include "thermo/quadrature.hpp"

namespace thermo {

namespace {

// sin(x)/x with a 2-term series once the quotient loses digits.
double sinc(double x) {
  return (std::abs(x) < 1e-4) ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

}  // namespace

double heat_wave_gap_over_r2(const DerivedConstants& c, double t, double r) {
  const double u = r * r * t;
  const double x = c.beta1 * r * t;
  if (r == 0.0) {
    return (c.beta2 - c.beta0) * t + 0.5 * c.beta1 * c.beta1 * t * t;
  }
  const double b0 = c.beta0, b1 = c.beta1, b2 = c.beta2;
  if (x < 1e-3 && std::max(b0, b2) * u < 1e-3) {
    // Maclaurin groups in r^2; each successive group is down by >= ~1e-3.
    const double b1sq = b1 * b1;
    const double g1 = (b2 - b0) * t + 0.5 * b1sq * t * t;
    const double g2 = r * r *
                      ((b0 * b0 - b2 * b2) * t * t / 2.0 -
                       b2 * b1sq * t * t * t / 2.0 -
                       b1sq * b1sq * t * t * t * t / 24.0);
    const double g3 =
        r * r * r * r *
        ((b2 * b2 * b2 - b0 * b0 * b0) * t * t * t / 6.0 +
         b2 * b2 * b1sq * t * t * t * t / 4.0 +
         b2 * b1sq * b1sq * t * t * t * t * t / 24.0 +
         b1sq * b1sq * b1sq * t * t * t * t * t * t / 720.0);
    return g1 + g2 + g3;
  }
  const double gap_exp = (b2 - b0) * u;
  if (gap_exp > 700.0) {
    // expm1 would overflow; the two exponentials differ so wildly that the
    // direct difference carries no cancellation.
    return (std::exp(-b0 * u) - std::cos(x) * std::exp(-b2 * u)) / (r * r);
  }
  const double half = std::sin(0.5 * x);
  return std::exp(-b2 * u) * (std::expm1(gap_exp) + 2.0 * half * half) /
         (r * r);
}

ProfileMultipliers eval_profiles(const DerivedConstants& c,
                                 const ModelParams& p, double t, double r) {
  if (!(t >= 0.0) || !(r >= 0.0) || !std::isfinite(t) || !std::isfinite(r)) {
    throw ConfigError("profiles: t and r must be finite and >= 0");
  }
  const double s = p.b * p.b + p.gamma1 * p.gamma2;  // beta1^2
  const double gg = p.gamma1 * p.gamma2;
  const double u = r * r * t;
  const double x = c.beta1 * r * t;
  const double eb0 = std::exp(-c.beta0 * u);
  const double eb2 = std::exp(-c.beta2 * u);
  const double cx = std::cos(x);
  const double sc = sinc(x);
  const double gap2 = heat_wave_gap_over_r2(c, t, r);

  ProfileMultipliers m;
  m.t = t;
  m.r = r;
  m.g0 = t * sc * eb2;
  m.g1_radial = -(p.gamma1 / s) * gap2;
  m.g2 = (gg * eb0 + p.b * p.b * cx * eb2) / s;
  m.g3 = (p.kappa * gg / (s * s)) * r * r * gap2;
  m.g4_radial = c.A2 * t * sc * eb2;
  m.h0 = -(c.A1 / p.gamma1) * u * cx * eb2;
  m.h1_radial = c.A1 * (r * t) * (r * t) * sc * eb2;
  return m;
}

std::complex<double> phi_hat(const ProfileMultipliers& m, double P_u1,
                             double P_theta0, double omega_k) {
  return {m.g0 * P_u1, omega_k * m.r * m.g1_radial * P_theta0};
}

std::complex<double> psi_hat(const ProfileMultipliers& m, const PsiMoments& mo,
                             const std::array<double, 3>& omega, int k,
                             int n) {
  if (n < 1 || n > 3 || k < 1 || k > n) {
    throw ConfigError("profiles: need 1 <= k <= n <= 3");
  }
  const double r = m.r;
  double dot_m1 = 0.0, dot_mth = 0.0;
  for (int j = 0; j < n; ++j) {
    dot_m1 += omega[j] * mo.M_u1[j];
    dot_mth += omega[j] * mo.M_theta0[j];
  }
  const double wk = omega[k - 1];
  const double re = m.g2 * mo.P_u0 + (m.h0 + m.g3) * mo.P_u1 +
                    r * r * wk * dot_mth * m.g1_radial;
  const double im = -r * dot_m1 * m.g0 +
                    r * wk * (m.h1_radial + m.g4_radial) * mo.P_theta0;
  return {re, im};
}

std::complex<double> j0_hat(const ModelParams& p, const CharRoots& roots,
                            double t, std::complex<double> u1hat,
                            std::complex<double> theta_term) {
  const EvolutionPieces ev = evolution_pieces(roots, t);
  const double lamI2 = roots.lambdaI * roots.lambdaI;
  return (-lamI2 * ev.S * u1hat + p.gamma1 * ev.EmC * theta_term) / ev.D;
}

std::complex<double> j1_hat(const ModelParams& p, const CharRoots& roots,
                            double t, std::complex<double> u0hat,
                            std::complex<double> u1hat,
                            std::complex<double> theta_term) {
  const EvolutionPieces ev = evolution_pieces(roots, t);
  const double b2r2 = p.b * p.b * roots.r * roots.r;
  const double lamI2 = roots.lambdaI * roots.lambdaI;
  const std::complex<double> c_u0 =
      (b2r2 * ev.EmC - lamI2 * ev.E) / ev.D * u0hat;
  const std::complex<double> c_u1 = 2.0 * roots.lambdaR * ev.EmC / ev.D * u1hat;
  const std::complex<double> c_th =
      p.gamma1 * (roots.lambdaR - roots.lambda1) * ev.S / ev.D * theta_term;
  return c_u0 + c_u1 + c_th;
}

namespace {

// Angular integrals over the sphere of the squared symbol, kept as
// polynomials in u = r^2 t. Exact sphere moments used throughout:
//   int w_k^2         = |S|/n
//   int w_k (w.M)     = |S| M_k / n
//   int w_k^2 (w.M)^2 = |S| (|M|^2 + 2 M_k^2) / (n (n+2))
struct PsiAngular {
  double A3, A4, A5, A6, A7;
  double e7_0, e7_1, e7_2;     // oscillatory-part quadratic (B0, B1, B2)
  double sq_p;                 // int P^2: heat-square, u-free
  double pq_0, pq_1;           // int P Q: cross, linear in u
  double q2_0, q2_1, q2_2;     // int Q^2: diffusion-wave square, quadratic
};

PsiAngular psi_angular(const DerivedConstants& c, const ModelParams& p,
                       const PsiMoments& mo, int n, int k) {
  const double s = p.b * p.b + p.gamma1 * p.gamma2;
  const double gg = p.gamma1 * p.gamma2;
  const double surf = sphere_surface(n);

  PsiAngular a;
  a.A3 = gg * mo.P_u0 / s;
  a.A4 = p.kappa * gg * mo.P_u1 / (s * s);
  a.A5 = p.gamma1 / s;
  a.A6 = p.b * p.b * mo.P_u0 / s;
  a.A7 = -(c.A1 / p.gamma1) * mo.P_u1;

  double m1_sq = 0.0, mth_sq = 0.0;
  for (int j = 0; j < n; ++j) {
    m1_sq += mo.M_u1[j] * mo.M_u1[j];
    mth_sq += mo.M_theta0[j] * mo.M_theta0[j];
  }
  const double m1k = mo.M_u1[k - 1];
  const double mthk = mo.M_theta0[k - 1];
  const double pth = mo.P_theta0;

  a.e7_0 = surf / n * (m1_sq - 2.0 * c.A2 * pth * m1k + c.A2 * c.A2 * pth * pth);
  a.e7_1 = 2.0 * c.A1 * pth * surf / n * (c.A2 * pth - m1k);
  a.e7_2 = c.A1 * c.A1 * pth * pth * surf / n;

  const double w2 = (mth_sq + 2.0 * mthk * mthk) / (n * (n + 2.0));
  const double heat = a.A3 + a.A4;   // coefficient of e^{-beta0 u}
  const double wave = a.A6 - a.A4;   // u-free coefficient of cos e^{-beta2 u}
  a.sq_p = surf * (heat * heat - 2.0 / n * heat * a.A5 * mthk + a.A5 * a.A5 * w2);
  a.pq_0 = surf * (heat * wave + (heat - wave) * a.A5 * mthk / n -
                   a.A5 * a.A5 * w2);
  a.pq_1 = surf * (heat * a.A7 - a.A7 * a.A5 * mthk / n);
  a.q2_0 = surf * (wave * wave + 2.0 * wave * a.A5 * mthk / n + a.A5 * a.A5 * w2);
  a.q2_1 = surf * (2.0 * wave * a.A7 + 2.0 * a.A7 * a.A5 * mthk / n);
  a.q2_2 = surf * (a.A7 * a.A7);
  return a;
}

// int_0^inf e^{-2 c t r^2} r^{n-1+a} dr
double radial_moment(double c, double t, int n, int a) {
  const double z = (n + a) / 2.0;
  return 0.5 * std::pow(2.0 * c * t, -z) * std::tgamma(z);
}

double r_cut(const DerivedConstants& c, double t) {
  return std::sqrt(46.0 / (2.0 * std::min(c.beta0, c.beta2) * t));
}

}  // namespace

PsiNormBreakdown psi_norm_analytic(const DerivedConstants& c,
                                   const ModelParams& p, const PsiMoments& mo,
                                   double t, int n, int k) {
  if (n < 1 || n > 3 || k < 1 || k > n) {
    throw ConfigError("profiles: need 1 <= k <= n <= 3");
  }
  if (!(t >= 100.0)) {
    throw ConfigError("profiles: the norm decomposition requires t >= 100");
  }
  const PsiAngular a = psi_angular(c, p, mo, n, k);
  const double s = p.b * p.b + p.gamma1 * p.gamma2;

  PsiNormBreakdown out;
  out.A3 = a.A3;
  out.A4 = a.A4;
  out.A5 = a.A5;
  out.A6 = a.A6;
  out.A7 = a.A7;
  out.B0 = a.e7_0;
  out.B1 = a.e7_1;
  out.B2 = a.e7_2;

  // Oscillatory part: sin^2 averaged to 1/2, then Gaussian radial moments.
  const double tb = 2.0 * c.beta2;
  const double e7 =
      std::pow(t, -0.5 * n) * std::pow(tb, -0.5 * n) / (4.0 * s) *
      (out.B0 * std::tgamma(0.5 * n) + out.B1 / tb * std::tgamma(0.5 * n + 1) +
       out.B2 / (tb * tb) * std::tgamma(0.5 * n + 2));

  out.B3 = a.sq_p * radial_moment(c.beta0, t, n, 0);
  out.B4_1 = 0.5 * (a.q2_0 * radial_moment(c.beta2, t, n, 0) +
                    a.q2_1 * t * radial_moment(c.beta2, t, n, 2) +
                    a.q2_2 * t * t * radial_moment(c.beta2, t, n, 4));

  // Riemann-Lebesgue rest: the cos 2x half of the diffusion-wave square plus
  // the heat/wave cross term, by direct quadrature.
  const RadialGrid grid = build_radial_grid(r_cut(c, t), 2.0 * c.beta1 * t, 4);
  const double b0 = c.beta0, b1 = c.beta1, b2 = c.beta2;
  const double raw_rem = integrate_radial(grid, [&](double r) {
    const double u = r * r * t;
    const double x = b1 * r * t;
    const double rn = std::pow(r, n - 1);
    const double osc = 0.5 * (a.q2_0 + a.q2_1 * u + a.q2_2 * u * u) *
                       std::cos(2.0 * x) * std::exp(-2.0 * b2 * u);
    const double cross = 2.0 * (a.pq_0 + a.pq_1 * u) * std::cos(x) *
                         std::exp(-(b0 + b2) * u);
    return (osc + cross) * rn;
  });

  const double conv = std::pow(2.0 * M_PI, -n);
  out.total = conv * (e7 + out.B3 + out.B4_1);
  out.remainder = conv * raw_rem;
  return out;
}

double psi_norm_quadrature(const DerivedConstants& c, const ModelParams& p,
                           const PsiMoments& mo, double t, int n, int k) {
  if (n < 1 || n > 3 || k < 1 || k > n) {
    throw ConfigError("profiles: need 1 <= k <= n <= 3");
  }
  if (!(t > 0.0)) {
    throw ConfigError("profiles: quadrature norm requires t > 0");
  }
  const PsiAngular a = psi_angular(c, p, mo, n, k);
  const double s = p.b * p.b + p.gamma1 * p.gamma2;
  const double b0 = c.beta0, b1 = c.beta1, b2 = c.beta2;
  const RadialGrid grid = build_radial_grid(r_cut(c, t), 2.0 * b1 * t, 4);
  const double raw = integrate_radial(grid, [&](double r) {
    const double u = r * r * t;
    const double x = b1 * r * t;
    const double sx = std::sin(x);
    const double cx = std::cos(x);
    const double rn = std::pow(r, n - 1);
    const double imag_sq = (a.e7_0 + a.e7_1 * u + a.e7_2 * u * u) * sx * sx *
                           std::exp(-2.0 * b2 * u) / s;
    const double real_sq =
        a.sq_p * std::exp(-2.0 * b0 * u) +
        2.0 * (a.pq_0 + a.pq_1 * u) * cx * std::exp(-(b0 + b2) * u) +
        (a.q2_0 + a.q2_1 * u + a.q2_2 * u * u) * cx * cx *
            std::exp(-2.0 * b2 * u);
    return (imag_sq + real_sq) * rn;
  });
  return std::pow(2.0 * M_PI, -n) * raw;
}

}  // namespace thermo
