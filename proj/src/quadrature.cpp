#include "thermo/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "thermo/errors.hpp"

namespace thermo {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
void legendre(int n, long double x, long double& p, long double& dp) {
  long double p0 = 1.0L, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = (n == 0) ? p0 : p1;
  dp = (n == 0) ? 0.0L : n * (x * p1 - p0) / (x * x - 1.0L);
}

GaussRule make_rule(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    // Chebyshev-like seed, then Newton.
    long double x = std::cos(M_PI * (i + 0.75L) / (order + 0.5L));
    long double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(order, x, p, dp);
      const long double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-19L) break;
    }
    legendre(order, x, p, dp);
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[order - 1 - i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(w);
    rule.weights[order - 1 - i] = static_cast<double>(w);
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 128) {
    throw ConfigError("quadrature: rule order must be in 1..128");
  }
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

double sphere_surface(int n) {
  switch (n) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * M_PI;
    case 3:
      return 4.0 * M_PI;
    default:
      throw ConfigError("quadrature: dimension must be 1, 2, or 3");
  }
}

RadialGrid build_radial_grid(double r_max, double omega,
                             int panels_per_wavelength, int nodes_per_panel,
                             double r_min) {
  if (!(r_max > r_min) || !(r_min >= 0.0) || !std::isfinite(r_max)) {
    throw ConfigError("quadrature: need 0 <= r_min < r_max < inf");
  }
  if (panels_per_wavelength < 4) {
    throw ConfigError("quadrature: panels_per_wavelength must be >= 4");
  }
  if (nodes_per_panel < 2 || nodes_per_panel > 128) {
    throw ConfigError("quadrature: nodes_per_panel must be in 2..128");
  }
  RadialGrid grid;
  grid.r_min = r_min;
  grid.r_max = r_max;
  grid.nodes_per_panel = nodes_per_panel;
  grid.oscillation_wavelength =
      (omega > 0.0) ? M_PI / omega : std::numeric_limits<double>::infinity();
  const double span = r_max - r_min;
  const double cap = (omega > 0.0)
                         ? M_PI / (panels_per_wavelength * omega)
                         : span / 16.0;
  const double width = std::min(span / 16.0, cap);
  std::size_t count =
      static_cast<std::size_t>(std::ceil(span / width - 1e-12));
  count = std::max<std::size_t>(count, 16);
  grid.panels.resize(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    grid.panels[i] =
        r_min + span * static_cast<double>(i) / static_cast<double>(count);
  }
  grid.panels.back() = r_max;
  return grid;
}

double integrate_radial(const RadialGrid& grid,
                        const std::function<double(double)>& f) {
  return integrate_radial_tail(grid, f).value;
}

RadialIntegral integrate_radial_tail(const RadialGrid& grid,
                                     const std::function<double(double)>& f) {
  if (grid.panels.size() < 2) {
    throw ConfigError("quadrature: grid has no panels");
  }
  const GaussRule& rule = gauss_legendre(grid.nodes_per_panel);
  RadialIntegral out;
  const std::size_t count = grid.panels.size() - 1;
  const std::size_t block = std::max<std::size_t>(1, count / 20);
  for (std::size_t pnl = 0; pnl < count; ++pnl) {
    const double a = grid.panels[pnl];
    const double b = grid.panels[pnl + 1];
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    double abs_acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double v = f(mid + half * rule.nodes[q]);
      acc += rule.weights[q] * v;
      abs_acc += rule.weights[q] * std::abs(v);
    }
    out.value += half * acc;
    if (pnl + block >= count) {
      out.last_block += half * abs_acc;
    } else if (pnl + 2 * block >= count) {
      out.prev_block += half * abs_acc;
    }
  }
  return out;
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t hw = std::thread::hardware_concurrency()
                             ? std::thread::hardware_concurrency()
                             : 1;
  const std::size_t workers =
      std::min<std::size_t>(std::max(threads, 1), std::min(count, hw));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1)) {
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace thermo
