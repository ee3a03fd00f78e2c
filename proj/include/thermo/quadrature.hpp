#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace thermo {

// Gauss-Legendre rule on [-1, 1]. Nodes are symmetric, weights positive and
// summing to 2.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rule of the given order (1..128), computed once and cached for the process.
const GaussRule& gauss_legendre(int order);

// Surface measure of the unit sphere S^{n-1}: 2, 2 pi, 4 pi for n = 1, 2, 3.
double sphere_surface(int n);

// Panel decomposition of [r_min, r_max] for radial integrals of
// oscillatory-decaying spectra. Panels are uniform with width at most
// oscillation_wavelength / panels_per_wavelength, so in particular every
// panel in the oscillatory band has width <= wavelength / 4 when built with
// the default 4 panels per wavelength.
struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  // Ordered panel boundaries; size = panel count + 1, front() = r_min,
  // back() = r_max.
  std::vector<double> panels;
  int nodes_per_panel = 10;
  // Half-period pi / omega of the fastest oscillation the integrand carries;
  // infinite for non-oscillatory integrands.
  double oscillation_wavelength = 0.0;
};

// Build a grid for integrands oscillating like trig(omega * r) that have
// effectively vanished beyond r_max. panels_per_wavelength >= 4.
RadialGrid build_radial_grid(double r_max, double omega,
                             int panels_per_wavelength,
                             int nodes_per_panel = 10, double r_min = 0.0);

// Integrate f over [grid.r_min, grid.r_max] with the grid's per-panel rule.
// Panels are evaluated in order and reduced in fixed order, so results are
// reproducible bit-for-bit for a fixed grid.
double integrate_radial(const RadialGrid& grid,
                        const std::function<double(double)>& f);

// Same, but also reports the absolute-value contribution of the final two
// trailing blocks (each spanning ~5% of the radial range, at least one panel)
// so the caller can certify the tail cut off at r_max by a geometric
// continuation bound. Blocks, not single panels: per-panel decay tends to 1
// when the panel width shrinks with the oscillation frequency while the
// damping length does not.
struct RadialIntegral {
  double value = 0.0;
  double last_block = 0.0;
  double prev_block = 0.0;
};
RadialIntegral integrate_radial_tail(const RadialGrid& grid,
                                     const std::function<double(double)>& f);

// Run body(i) for i in [0, count) across at most `threads` workers. Results
// must be written to disjoint slots; the call returns after all workers join.
// threads <= 1 runs inline.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace thermo
