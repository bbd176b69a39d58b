#include <doctest.h>

#include <cmath>
#include <random>

#include "confheat/constants.hpp"
#include "confheat/errors.hpp"
#include "confheat/specfun.hpp"
#include "oracle/extended.hpp"

using namespace confheat;
using namespace confheat::specfun;

namespace {

double rel(cdouble a, cdouble b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("cylindrical Bessel functions at the origin and at the first J0 root") {
  CHECK(cyl_bessel_j(0, 0.0) == 1.0);
  CHECK(cyl_bessel_j(1, 0.0) == 0.0);
  CHECK(cyl_bessel_j(2, 0.0) == 0.0);
  CHECK(std::abs(cyl_bessel_j(0, 2.4048255576957728)) < 1e-12);
  CHECK(j1_over_x(0.0) == 0.5);
  CHECK(j1_over_x(1e-9) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("cylindrical Bessel functions against the multiprecision series") {
  for (int n = 0; n <= 2; ++n)
    for (double x : {1e-3, 0.5, 2.0, 7.3, 19.9, 55.5, 130.0, 200.0}) {
      const double ref = static_cast<double>(oracle::cyl_j_series(n, oracle::real(x)));
      CAPTURE(n);
      CAPTURE(x);
      CHECK(std::abs(cyl_bessel_j(n, x) - ref) < 1e-14);
    }
  CHECK(j1_over_x(3.7) == doctest::Approx(cyl_bessel_j(1, 3.7) / 3.7).epsilon(1e-15));
}

TEST_CASE("spherical Bessel closed forms and small-argument limits") {
  CHECK(rel(sph_bessel_regular(0, 1.0), std::sin(1.0)) < 1e-15);
  CHECK(rel(sph_bessel_regular(1, 1e-4), 1e-4 / 3) < 1e-8);
  const cdouble I(0, 1);
  CHECK(rel(sph_hankel1(0, 1.0), cdouble(std::sin(1.0), -std::cos(1.0))) < 1e-15);
  const cdouble z = 1.0;
  CHECK(rel(sph_hankel1(1, z), -std::exp(I * z) * (z + I) / (z * z)) < 1e-15);
  const cdouble w(3.0, 2.0);
  CHECK(rel(sph_hankel1_scaled(4, w), sph_hankel1(4, w) * std::exp(-I * w)) < 1e-13);
}

TEST_CASE("spherical Bessel j_l against the multiprecision ascending series") {
  struct P {
    int l;
    cdouble z;
  };
  for (P p : {P{5, {2, 3}}, P{0, {0.3, 0}}, P{12, {7, -1}}, P{40, {15, 4}}, P{100, {50, 5}},
              P{3, {80, 0.5}}}) {
    const cdouble ref = oracle::to_double(oracle::sph_j_series(p.l, oracle::to_cplx(p.z)));
    CAPTURE(p.l);
    CAPTURE(p.z);
    CHECK(rel(sph_bessel_regular(p.l, p.z), ref) < 1e-12);
  }
}

TEST_CASE("j/y Wronskian at l = 50, z = 30") {
  const cdouble z = 30.0, I(0, 1);
  const int l = 50;
  // y_l = (h_l - j_l)/i;  j_{l} y_{l-1} - j_{l-1} y_l = 1/z^2 ... expressed through h.
  const cdouble j0 = sph_bessel_regular(l, z), j1 = sph_bessel_regular(l + 1, z);
  const cdouble y0 = (sph_hankel1(l, z) - j0) / I, y1 = (sph_hankel1(l + 1, z) - j1) / I;
  // z^2 (j_{l+1} y_l - j_l y_{l+1}) = 1, scaled by i to compare with the Riccati form.
  CHECK(std::abs(I * z * z * (j1 * y0 - j0 * y1) - I) < 1e-10);
}

TEST_CASE("Riccati bundle: closed forms at l = 0 and reality on the real axis") {
  const auto b = riccati_bundle(0, 1.0);
  CHECK(rel(b.psi_value(), std::sin(1.0)) < 1e-15);
  CHECK(rel(b.psi_prime_value(), std::cos(1.0)) < 1e-15);
  for (int l : {1, 7, 60})
    for (double x : {0.01, 1.3, 25.0, 400.0}) {
      const auto r = riccati_bundle(l, x);
      CHECK(r.psi.imag() == 0.0);
      CHECK(r.psi_prime.imag() == 0.0);
    }
}

TEST_CASE("Riccati bundle Wronskian equals i on a randomized grid") {
  std::mt19937_64 rng(20170611);
  std::uniform_int_distribution<int> L(0, 400);
  std::uniform_real_distribution<double> logmag(-3.0, 3.0), arg(-2.9, 2.9);
  const cdouble I(0, 1);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const int l = L(rng);
    const cdouble z = std::polar(std::pow(10.0, logmag(rng)), arg(rng));
    if (z.imag() < 0) continue;  // outgoing Hankel branch
    RiccatiBundle b;
    try {
      b = riccati_bundle(l, z);
    } catch (const OverflowError&) {
      continue;  // psi*xi itself is finite, but single factors may not be
    }
    CAPTURE(l);
    CAPTURE(z);
    CHECK(std::abs(b.wronskian() - I) < 1e-10);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("Riccati bundle at l = 100, z = 50 + 5i against the multiprecision oracle") {
  const int l = 100;
  const cdouble z(50, 5);
  const auto zo = oracle::to_cplx(z);
  const oracle::cplx I(oracle::real(0), oracle::real(1));
  const oracle::cplx j = oracle::sph_j_series(l, zo), jm = oracle::sph_j_series(l - 1, zo);
  const oracle::cplx h = j + I * oracle::sph_y_upward(l, zo);
  const oracle::cplx hm = jm + I * oracle::sph_y_upward(l - 1, zo);
  // psi' = z j_{l-1} - l j_l, xi' = z h_{l-1} - l h_l
  const oracle::cplx lr = oracle::real(l);
  const auto b = riccati_bundle(l, z);
  CHECK(rel(b.psi_value(), oracle::to_double(zo * j)) < 1e-9);
  CHECK(rel(b.psi_prime_value(), oracle::to_double(zo * jm - lr * j)) < 1e-9);
  CHECK(rel(b.xi_value(), oracle::to_double(zo * h)) < 1e-9);
  CHECK(rel(b.xi_prime_value(), oracle::to_double(zo * hm - lr * h)) < 1e-9);
}

TEST_CASE("Planck factor limits and multiprecision value") {
  const double kT = kConstants.k_B * 300.0;
  const double w_small = 1e-9 * kT / kConstants.hbar;
  CHECK(planck_factor(w_small, 300.0) == doctest::Approx(kT).epsilon(1e-8));
  const double w50 = 50 * kT / kConstants.hbar;
  CHECK(planck_factor(w50, 300.0) == doctest::Approx(kT * 50 * std::exp(-50.0)).epsilon(1e-12));
  const double ref = static_cast<double>(oracle::planck(oracle::real(2.47e14), oracle::real(300)));
  CHECK(planck_factor(2.47e14, 300.0) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("thermal wavelength") {
  CHECK(std::abs(thermal_wavelength(300.0) - 7.63e-6) <= 0.01e-6);
  CHECK(thermal_wavelength(600.0) == thermal_wavelength(300.0) / 2);
  CHECK(std::abs(thermal_wavelength(150.0) - 15.27e-6) <= 0.02e-6);
}
