#include "thermo/norms.hpp"

#include <cmath>
#include <cstdint>

#include "thermo/errors.hpp"
#include "thermo/profiles.hpp"
#include "thermo/spectral.hpp"

namespace thermo {

namespace {

constexpr double kTailExponent = 46.0;  // e^{-46} < 1e-16 relative headroom

double angular_moment(const AngularSpec& ang, int n) {
  switch (ang.type) {
    case AngularType::radial:
      return 1.0;
    case AngularType::riesz_k:
      return 1.0 / n;
    case AngularType::riesz_mixed: {
      double m_sq = 0.0;
      for (int j = 0; j < n; ++j) m_sq += ang.M[j] * ang.M[j];
      const double mk = ang.M[ang.k - 1];
      return (m_sq + 2.0 * mk * mk) / (n * (n + 2.0));
    }
    case AngularType::axis_shift:
      throw ConfigError(
          "norms: axis_shift multipliers need the polar overload");
  }
  throw ConfigError("norms: unknown angular type");
}

// Geometric continuation bound on the cut tail, from the last two trailing
// blocks. Returns a negative value when no certificate can be formed.
double tail_bound(const RadialIntegral& ri) {
  if (ri.last_block == 0.0) return 0.0;
  if (!(ri.prev_block > 0.0)) return -1.0;
  const double rho = ri.last_block / ri.prev_block;
  if (!(rho < 0.9)) return -1.0;
  return ri.last_block * rho / (1.0 - rho);
}

void check_fixed_grid_tail(const RadialIntegral& ri) {
  const double bound = tail_bound(ri);
  if (bound < 0.0 || bound > 1e-10 * std::max(ri.value, 1e-300)) {
    throw NumericError(
        "norms: unconverged tail; integrand at r_max is not negligible for "
        "this grid");
  }
}

// Integrate with the tail certificate, extending r_max until the bound drops
// below threshold * total; the certified bound is added to the result.
double certified_integral(double r_max0, double omega,
                          const QuadratureConfig& q,
                          const std::function<double(double)>& f) {
  double r_max = r_max0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const RadialGrid grid = build_radial_grid(
        r_max, omega, q.panels_per_wavelength, q.nodes_per_panel);
    const RadialIntegral ri = integrate_radial_tail(grid, f);
    const double bound = tail_bound(ri);
    if (bound == 0.0) return ri.value;
    if (bound > 0.0 &&
        bound <= q.tail_threshold * std::max(ri.value, 1e-300)) {
      return ri.value + bound;
    }
    r_max *= 1.5;
  }
  throw NumericError(
      "norms: radial tail failed to certify below the configured threshold");
}

double sq(double x) { return x * x; }

}  // namespace

double l2_norm(const RadialFn& F, const AngularSpec& ang, int n,
               const RadialGrid& grid) {
  if (n < 1 || n > 3) throw ConfigError("norms: dimension must be 1, 2, or 3");
  const double moment = angular_moment(ang, n);
  const RadialIntegral ri = integrate_radial_tail(grid, [&](double r) {
    return std::norm(F(r)) * std::pow(r, n - 1);
  });
  check_fixed_grid_tail(ri);
  const double raw = ri.value * moment * sphere_surface(n);
  return std::pow(2.0 * M_PI, -0.5 * n) * std::sqrt(std::max(raw, 0.0));
}

double l2_norm(const PolarFn& F, int n, const RadialGrid& grid,
               int angular_nodes) {
  if (n < 1 || n > 3) throw ConfigError("norms: dimension must be 1, 2, or 3");
  if (angular_nodes < 2 || angular_nodes > 128) {
    throw ConfigError("norms: angular_nodes must be in 2..128");
  }
  const GaussRule& rule = gauss_legendre(angular_nodes);
  const RadialIntegral ri = integrate_radial_tail(grid, [&](double r) {
    double acc = 0.0;
    if (n == 1) {
      acc = std::norm(F(r, 1.0)) + std::norm(F(r, -1.0));
    } else if (n == 2) {
      // int_0^{2pi} |F(r, cos theta)|^2 dtheta, folded onto [0, pi].
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double theta = 0.5 * M_PI * (rule.nodes[q] + 1.0);
        acc += rule.weights[q] * std::norm(F(r, std::cos(theta)));
      }
      acc *= M_PI;  // 2 * (pi/2)
    } else {
      // 2 pi int_{-1}^{1} |F(r, mu)|^2 dmu
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        acc += rule.weights[q] * std::norm(F(r, rule.nodes[q]));
      }
      acc *= 2.0 * M_PI;
    }
    return acc * std::pow(r, n - 1);
  });
  check_fixed_grid_tail(ri);
  return std::pow(2.0 * M_PI, -0.5 * n) * std::sqrt(std::max(ri.value, 0.0));
}

RadialGrid mn_grid(const DerivedConstants& c, double t,
                   const QuadratureConfig& q) {
  if (!(t > 0.0)) throw ConfigError("norms: mn grid requires t > 0");
  const double bmin = std::min(c.beta0, c.beta2);
  const double r_max = std::sqrt(kTailExponent / (2.0 * bmin * t));
  return build_radial_grid(r_max, c.beta1 * t, q.panels_per_wavelength,
                           q.nodes_per_panel);
}

RadialGrid wave_grid(const DatumSpec& g, double t, const QuadratureConfig& q) {
  if (!(t > 0.0)) throw ConfigError("norms: wave grid requires t > 0");
  const double r_max = std::sqrt(kTailExponent) / g.width;
  return build_radial_grid(r_max, t, q.panels_per_wavelength,
                           q.nodes_per_panel);
}

double mn_norm(const DerivedConstants& c, double t, int n,
               const RadialGrid& grid) {
  if (!(t >= 10.0)) {
    throw ConfigError("norms: the multiplier norm law needs t >= 10");
  }
  const AngularSpec ang{AngularType::radial, 1, {{0.0, 0.0, 0.0}}};
  return l2_norm(
      [&](double r) {
        return std::complex<double>(r * heat_wave_gap_over_r2(c, t, r), 0.0);
      },
      ang, n, grid);
}

double wave_multiplier_norm(const DatumSpec& g, double t, int n,
                            const RadialGrid& grid) {
  if (n != 1 && n != 2) {
    throw ConfigError("norms: the wave lower-bound law covers n = 1, 2 only");
  }
  if (!(t > 0.0)) throw ConfigError("norms: wave norm requires t > 0");
  validate(g, n);
  const bool deriv = g.kind == DatumKind::derivative_gaussian;
  AngularSpec ang;
  ang.type = deriv ? AngularType::riesz_k : AngularType::radial;
  ang.k = deriv ? g.derivative_axis : 1;
  return l2_norm(
      [&](double r) {
        const double x = r * t;
        const double sinc =
            (std::abs(x) < 1e-4) ? t * (1.0 - x * x / 6.0) : std::sin(x) / r;
        const double radial = gaussian_factor(g, n, r) * (deriv ? r : 1.0);
        return std::complex<double>(sinc * radial, 0.0);
      },
      ang, n, grid);
}

namespace {

// Shared assembly of uhat (minus optional profile subtractions) and its
// radially-reduced norm integrand.
struct NormAssembly {
  const Scenario& s;
  double t;
  int subtract;  // 0 solution, 1 minus phi, 2 minus phi and psi
  ModelParams p;
  DerivedConstants c;
  int n, k;
  DatumMoments mo_u1, mo_th;
  double P_u0 = 0.0;
  bool any_shift = false;
  bool any_data = false;
  double sigma_sq_min = 0.0;

  NormAssembly(const Scenario& sc, double time, int sub)
      : s(sc), t(time), subtract(sub), p(sc.model),
        c(derive_constants(sc.model)), n(sc.dimension), k(sc.component) {
    mo_u1 = moments(s.u1, n);
    mo_th = moments(s.theta0, n);
    P_u0 = moments(s.u0, n).P;
    for (const DatumSpec* d : {&s.u0, &s.u1, &s.theta0}) {
      if (d->is_zero()) continue;
      any_data = true;
      const double ssq = d->width * d->width;
      sigma_sq_min =
          (sigma_sq_min == 0.0) ? ssq : std::min(sigma_sq_min, ssq);
      if (d->kind == DatumKind::shifted_gaussian) any_shift = true;
    }
  }

  // Decay exponent of the integrand at radius r; reaching kTailExponent
  // marks the cutoff.
  double decay_exponent(double r) const {
    const double bmin = std::min(c.beta0, c.beta2);
    const double c_mid = p.gamma1 * p.gamma2 / (2.0 * p.kappa);
    const double sol =
        2.0 * std::min(bmin * r * r, c_mid) * t + sigma_sq_min * r * r;
    if (subtract == 0) return sol;
    return std::min(sol, 2.0 * bmin * r * r * t);
  }

  double solve_r_max() const {
    double hi = 1.0;
    int guard = 0;
    while (decay_exponent(hi) < kTailExponent && guard++ < 60) hi *= 2.0;
    if (decay_exponent(hi) < kTailExponent) {
      throw NumericError(
          "norms: integrand tail does not decay; no admissible r_max "
          "(profile subtraction at t = 0 with a nonzero mean?)");
    }
    double lo = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      (decay_exponent(mid) < kTailExponent ? lo : hi) = mid;
    }
    return hi;
  }

  // Centered, axis-aligned data: uhat = R0 + i mu R1 + mu^2 R2 with real
  // radial pieces; exact sphere moments close the angular integral.
  double integrand_fast(double r) const {
    const CharRoots roots = char_roots(p, r);
    const SolutionMultipliers sm = solution_multipliers(p, roots, t);
    double R0 = 0.0, R1 = 0.0, R2 = 0.0;
    if (!s.u0.is_zero()) {
      const double G = gaussian_factor(s.u0, n, r);
      if (s.u0.kind == DatumKind::derivative_gaussian) {
        R1 += r * sm.m_u0 * G;
      } else {
        R0 += sm.m_u0 * G;
      }
    }
    if (!s.u1.is_zero()) {
      const double G = gaussian_factor(s.u1, n, r);
      if (s.u1.kind == DatumKind::derivative_gaussian) {
        R1 += r * sm.m_u1 * G;
      } else {
        R0 += sm.m_u1 * G;
      }
    }
    if (!s.theta0.is_zero()) {
      const double G = gaussian_factor(s.theta0, n, r);
      if (s.theta0.kind == DatumKind::derivative_gaussian) {
        R2 += -r * r * sm.m_theta_radial * G;
      } else {
        R1 += r * sm.m_theta_radial * G;
      }
    }
    if (subtract >= 1) {
      const ProfileMultipliers prof = eval_profiles(c, p, t, r);
      R0 -= prof.g0 * mo_u1.P;
      R1 -= r * prof.g1_radial * mo_th.P;
      if (subtract >= 2) {
        R0 -= prof.g2 * P_u0 + (prof.h0 + prof.g3) * mo_u1.P;
        R1 -= -r * mo_u1.M[k - 1] * prof.g0 +
              r * (prof.h1_radial + prof.g4_radial) * mo_th.P;
        R2 -= r * r * mo_th.M[k - 1] * prof.g1_radial;
      }
    }
    const double ang = sphere_surface(n) *
                       (sq(R0) + (2.0 * R0 * R2 + sq(R1)) / n +
                        3.0 * sq(R2) / (n * (n + 2.0)));
    return ang * std::pow(r, n - 1);
  }

  std::complex<double> value_at(double r, double mu,
                                const SolutionMultipliers& sm,
                                const ProfileMultipliers* prof) const {
    using C = std::complex<double>;
    C out(0.0, 0.0);
    const auto datum_hat = [&](const DatumSpec& d) -> C {
      const double G = gaussian_factor(d, n, r);
      switch (d.kind) {
        case DatumKind::gaussian:
          return C(G, 0.0);
        case DatumKind::shifted_gaussian: {
          const double phase = -r * mu * d.center[k - 1];
          return C(G * std::cos(phase), G * std::sin(phase));
        }
        case DatumKind::derivative_gaussian:
          return C(0.0, r * mu * G);
      }
      return C(0.0, 0.0);
    };
    if (!s.u0.is_zero()) out += sm.m_u0 * datum_hat(s.u0);
    if (!s.u1.is_zero()) out += sm.m_u1 * datum_hat(s.u1);
    if (!s.theta0.is_zero()) {
      out += C(0.0, r * mu * sm.m_theta_radial) * datum_hat(s.theta0);
    }
    if (prof) {
      out -= C(prof->g0 * mo_u1.P, r * mu * prof->g1_radial * mo_th.P);
      if (subtract >= 2) {
        const double re = prof->g2 * P_u0 + (prof->h0 + prof->g3) * mo_u1.P +
                          r * r * mu * mu * mo_th.M[k - 1] * prof->g1_radial;
        const double im =
            -r * mu * mo_u1.M[k - 1] * prof->g0 +
            r * mu * (prof->h1_radial + prof->g4_radial) * mo_th.P;
        out -= C(re, im);
      }
    }
    return out;
  }

  double integrand_polar(double r, const GaussRule& rule) const {
    const CharRoots roots = char_roots(p, r);
    const SolutionMultipliers sm = solution_multipliers(p, roots, t);
    ProfileMultipliers prof;
    if (subtract >= 1) prof = eval_profiles(c, p, t, r);
    const ProfileMultipliers* pp = (subtract >= 1) ? &prof : nullptr;
    double acc = 0.0;
    if (n == 1) {
      acc = std::norm(value_at(r, 1.0, sm, pp)) +
            std::norm(value_at(r, -1.0, sm, pp));
    } else if (n == 2) {
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double theta = 0.5 * M_PI * (rule.nodes[q] + 1.0);
        acc += rule.weights[q] *
               std::norm(value_at(r, std::cos(theta), sm, pp));
      }
      acc *= M_PI;
    } else {
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        acc += rule.weights[q] * std::norm(value_at(r, rule.nodes[q], sm, pp));
      }
      acc *= 2.0 * M_PI;
    }
    return acc * std::pow(r, n - 1);
  }

  double run() const {
    if (!any_data && subtract == 0) return 0.0;
    if (!any_data && subtract >= 1) {
      // Profiles built from zero data vanish identically.
      return 0.0;
    }
    const double r_max0 = solve_r_max();
    const double omega = c.beta1 * t;
    double raw = 0.0;
    if (!any_shift) {
      raw = certified_integral(r_max0, omega, s.quadrature,
                               [&](double r) { return integrand_fast(r); });
    } else {
      double shift_max = 0.0;
      for (const DatumSpec* d : {&s.u0, &s.u1, &s.theta0}) {
        if (!d->is_zero() && d->kind == DatumKind::shifted_gaussian) {
          shift_max = std::max(shift_max, std::abs(d->center[k - 1]));
        }
      }
      const int nodes = std::min(
          128, 24 + static_cast<int>(std::ceil(2.0 * shift_max * r_max0 *
                                               2.0)) +
                   8 * n);
      const GaussRule& rule = gauss_legendre(nodes);
      raw = certified_integral(
          r_max0, omega, s.quadrature,
          [&](double r) { return integrand_polar(r, rule); });
    }
    return std::pow(2.0 * M_PI, -0.5 * n) * std::sqrt(std::max(raw, 0.0));
  }
};

}  // namespace

double solution_l2_norm(const Scenario& s, double t) {
  if (!(t >= 0.0)) throw ConfigError("norms: t must be >= 0");
  return NormAssembly(s, t, 0).run();
}

double error_l2_norm(const Scenario& s, double t, ErrorSubtract subtract) {
  if (!(t >= 0.0)) throw ConfigError("norms: t must be >= 0");
  return NormAssembly(s, t, subtract == ErrorSubtract::phi ? 1 : 2).run();
}

double phi_l2_norm(const Scenario& s, double t) {
  if (!(t > 0.0)) throw ConfigError("norms: phi norm requires t > 0");
  const DerivedConstants c = derive_constants(s.model);
  const int n = s.dimension;
  const double P_u1 = moments(s.u1, n).P;
  const double P_th = moments(s.theta0, n).P;
  if (P_u1 == 0.0 && P_th == 0.0) return 0.0;
  const double bmin = std::min(c.beta0, c.beta2);
  const double r_max = std::sqrt(kTailExponent / (2.0 * bmin * t));
  const RadialGrid grid =
      build_radial_grid(r_max, c.beta1 * t, s.quadrature.panels_per_wavelength,
                        s.quadrature.nodes_per_panel);
  // |phi|^2 = g0^2 P_u1^2 + mu^2 (r g1 P_th)^2: radial plus riesz_k parts.
  const RadialIntegral ri = integrate_radial_tail(grid, [&](double r) {
    const ProfileMultipliers m = eval_profiles(c, s.model, t, r);
    const double ang = sphere_surface(n) *
                       (sq(m.g0 * P_u1) + sq(r * m.g1_radial * P_th) / n);
    return ang * std::pow(r, n - 1);
  });
  check_fixed_grid_tail(ri);
  return std::pow(2.0 * M_PI, -0.5 * n) * std::sqrt(std::max(ri.value, 0.0));
}

namespace {

struct XorShift {
  std::uint64_t state;
  explicit XorShift(std::uint64_t seed) : state(seed ? seed : 0x9E3779B97F4A7C15ull) {}
  double uniform() {
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    const std::uint64_t z = state * 0x2545F4914F6CDD1Dull;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }
};

}  // namespace

SphereMomentsMC mc_sphere_moments(int n, int k, const std::array<double, 3>& M,
                                  std::size_t samples,
                                  unsigned long long seed) {
  if (n < 1 || n > 3 || k < 1 || k > n) {
    throw ConfigError("norms: need 1 <= k <= n <= 3");
  }
  if (samples == 0) throw ConfigError("norms: samples must be positive");
  XorShift rng(seed);
  double sum_riesz = 0.0, sum_mixed = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    // Isotropic direction via Box-Muller normals.
    double w[3] = {0.0, 0.0, 0.0};
    double norm_sq = 0.0;
    do {
      for (int j = 0; j < n; j += 2) {
        double u1 = rng.uniform();
        while (u1 <= 0.0) u1 = rng.uniform();
        const double u2 = rng.uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        w[j] = mag * std::cos(2.0 * M_PI * u2);
        if (j + 1 < n) w[j + 1] = mag * std::sin(2.0 * M_PI * u2);
      }
      norm_sq = 0.0;
      for (int j = 0; j < n; ++j) norm_sq += w[j] * w[j];
    } while (norm_sq == 0.0);
    const double inv = 1.0 / std::sqrt(norm_sq);
    double dot = 0.0;
    for (int j = 0; j < n; ++j) dot += w[j] * inv * M[j];
    const double wk = w[k - 1] * inv;
    sum_riesz += wk * wk;
    sum_mixed += wk * wk * dot * dot;
  }
  const double surf = sphere_surface(n);
  SphereMomentsMC out;
  out.riesz = surf * sum_riesz / static_cast<double>(samples);
  out.mixed = surf * sum_mixed / static_cast<double>(samples);
  return out;
}

}  // namespace thermo
