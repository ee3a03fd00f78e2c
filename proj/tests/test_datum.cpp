#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "thermo/datum.hpp"
#include "thermo/errors.hpp"

using namespace thermo;

namespace {

DatumSpec gauss(double amp, double sigma) {
  DatumSpec d;
  d.kind = DatumKind::gaussian;
  d.amplitude = amp;
  d.width = sigma;
  return d;
}

DatumSpec shifted(double amp, double sigma, std::array<double, 3> x0) {
  DatumSpec d;
  d.kind = DatumKind::shifted_gaussian;
  d.amplitude = amp;
  d.width = sigma;
  d.center = x0;
  return d;
}

DatumSpec deriv(double amp, double sigma, int axis) {
  DatumSpec d;
  d.kind = DatumKind::derivative_gaussian;
  d.amplitude = amp;
  d.width = sigma;
  d.derivative_axis = axis;
  return d;
}

}  // namespace

TEST_CASE("transform values at pinned frequencies") {
  const double root_2pi = std::sqrt(2.0 * M_PI);
  const DatumSpec g = gauss(1.0, 1.0);
  CHECK(fourier_at(g, 1, {0.0, 0.0, 0.0}).real() ==
        doctest::Approx(root_2pi).epsilon(1e-14));
  CHECK(fourier_at(g, 1, {0.0, 0.0, 0.0}).imag() == 0.0);
  // loose check against the quoted decimal ~0.33924
  CHECK(fourier_at(g, 1, {2.0, 0.0, 0.0}).real() ==
        doctest::Approx(root_2pi * std::exp(-2.0)).epsilon(1e-14));
  CHECK(std::abs(fourier_at(g, 1, {2.0, 0.0, 0.0}).real() - 0.33924) < 1e-4);

  CHECK(std::abs(fourier_at(deriv(1.0, 1.0, 1), 1, {0.0, 0.0, 0.0})) == 0.0);

  // shift contributes a pure phase
  const DatumSpec sh = shifted(1.0, 1.0, {3.0, 0.0, 0.0});
  const auto v = fourier_at(sh, 1, {0.7, 0.0, 0.0});
  const double mag = root_2pi * std::exp(-0.5 * 0.49);
  CHECK(v.real() == doctest::Approx(mag * std::cos(-3.0 * 0.7)).epsilon(1e-13));
  CHECK(v.imag() == doctest::Approx(mag * std::sin(-3.0 * 0.7)).epsilon(1e-13));
}

TEST_CASE("moments: closed forms and pinned examples") {
  const double root_2pi = std::sqrt(2.0 * M_PI);
  const DatumMoments sh = moments(shifted(1.0, 1.0, {3.0, 0.0, 0.0}), 1);
  CHECK(sh.P == doctest::Approx(root_2pi).epsilon(1e-14));
  CHECK(sh.M[0] == doctest::Approx(3.0 * root_2pi).epsilon(1e-14));

  const DatumMoments dv = moments(deriv(1.0, 1.0, 1), 2);
  CHECK(dv.P == 0.0);
  CHECK(dv.M[0] == doctest::Approx(-2.0 * M_PI).epsilon(1e-14));
  CHECK(dv.M[1] == 0.0);

  const DatumMoments z = moments(gauss(0.0, 1.0), 3);
  CHECK(z.P == 0.0);
  CHECK(z.M[0] == 0.0);
  CHECK(z.l1_norm == 0.0);
}

TEST_CASE("moment invariants |P| <= l1 and |M| <= l11") {
  const std::vector<DatumSpec> specs = {
      gauss(1.0, 1.0),          gauss(-2.0, 0.5),
      shifted(1.5, 2.0, {1.0, 0.0, 0.0}),
      deriv(0.7, 1.3, 1),       deriv(-0.7, 0.8, 2),
  };
  for (int n = 1; n <= 3; ++n) {
    for (const DatumSpec& d : specs) {
      if (d.kind == DatumKind::derivative_gaussian && d.derivative_axis > n) {
        continue;
      }
      const DatumMoments m = moments(d, n);
      double msq = 0.0;
      for (int j = 0; j < n; ++j) msq += m.M[j] * m.M[j];
      CHECK(std::abs(m.P) <= m.l1_norm * (1.0 + 1e-12));
      CHECK(std::sqrt(msq) <= m.l11_norm * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("small-frequency Lipschitz bound |fhat(xi) - P| <= |xi| l11") {
  const std::vector<DatumSpec> specs = {
      gauss(1.0, 1.0), shifted(1.0, 1.0, {2.0, 0.0, 0.0}), deriv(1.0, 1.0, 1)};
  for (const DatumSpec& d : specs) {
    const DatumMoments m = moments(d, 2);
    for (double rho : {1e-3, 1e-2, 0.1, 0.3, 1.0}) {
      for (double angle : {0.0, 0.7, 2.1}) {
        const std::array<double, 3> xi{rho * std::cos(angle),
                                       rho * std::sin(angle), 0.0};
        const double gap = std::abs(fourier_at(d, 2, xi) - m.P);
        CHECK(gap <= rho * m.l11_norm * (1.0 + 1e-10));
      }
    }
  }
}

TEST_CASE("fourier_at(0) equals P and the FD gradient matches M") {
  const std::vector<DatumSpec> specs = {
      gauss(1.3, 0.9), shifted(0.8, 1.2, {1.5, 0.0, 0.0}), deriv(1.1, 1.0, 2)};
  const double h = 1e-5;
  for (const DatumSpec& d : specs) {
    const DatumMoments m = moments(d, 2);
    CHECK(std::abs(fourier_at(d, 2, {0.0, 0.0, 0.0}) -
                   std::complex<double>(m.P, 0.0)) < 1e-14);
    for (int j = 0; j < 2; ++j) {
      std::array<double, 3> plus{0.0, 0.0, 0.0}, minus{0.0, 0.0, 0.0};
      plus[j] = h;
      minus[j] = -h;
      const std::complex<double> grad =
          (fourier_at(d, 2, plus) - fourier_at(d, 2, minus)) / (2.0 * h);
      const std::complex<double> m_fd = std::complex<double>(0.0, 1.0) * grad;
      CHECK(std::abs(m_fd - std::complex<double>(m.M[j], 0.0)) < 1e-7);
    }
  }
}

TEST_CASE("structural validation") {
  DatumSpec d = gauss(1.0, 0.0);
  CHECK_THROWS_AS(validate(d, 1), ConfigError);

  d = gauss(1.0, 1.0);
  d.derivative_axis = 1;  // axis set on a non-derivative kind
  CHECK_THROWS_AS(validate(d, 1), ConfigError);

  d = deriv(1.0, 1.0, 0);  // axis missing
  CHECK_THROWS_AS(validate(d, 1), ConfigError);

  d = deriv(1.0, 1.0, 3);  // axis beyond dimension
  CHECK_THROWS_AS(validate(d, 2), ConfigError);

  d = shifted(1.0, 1.0, {0.0, 0.0, 1.0});  // center beyond dimension
  CHECK_THROWS_AS(validate(d, 2), ConfigError);

  CHECK_NOTHROW(validate(gauss(1.0, 1.0), 3));
  CHECK_NOTHROW(validate(deriv(1.0, 1.0, 2), 2));
}
