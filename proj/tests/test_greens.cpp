#include <doctest.h>

#include <cmath>

#include "confheat/constants.hpp"
#include "confheat/errors.hpp"
#include "confheat/greens.hpp"

using namespace confheat;
using namespace confheat::greens;
using materials::PerfectMirror;
using materials::Transparent;

namespace {

double rel_diff(const ComplexTensor3& a, const ComplexTensor3& b) {
  return (a - b).frobenius_norm() / b.frobenius_norm();
}

/// Rotation about the z axis by phi applied to a tensor: R G R^T.
ComplexTensor3 rotate_z(const ComplexTensor3& g, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const double R[3][3] = {{c, -s, 0}, {s, c, 0}, {0, 0, 1}};
  ComplexTensor3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) out(i, j) += R[i][k] * g(k, l) * R[j][l];
  return out;
}

}  // namespace

TEST_CASE("vacuum Green's function: far-field slope") {
  const double w = 1.7e14, lambda = 2 * kPi * kConstants.c / w;
  const double r1 = 10 * lambda, r2 = 100 * lambda;
  const double s = (std::log(vacuum_gf({r2, 0, 0}, w).sum_abs2()) -
                    std::log(vacuum_gf({r1, 0, 0}, w).sum_abs2())) /
                   std::log(r2 / r1);
  CHECK(s == doctest::Approx(-2.0).epsilon(0.005));
}

TEST_CASE("vacuum Green's function: coincidence limit of the imaginary part") {
  const double w = 1.7e14, k = w / kConstants.c;
  const auto g = vacuum_gf({1e-6 / k, 0, 0}, w);
  for (int i = 0; i < 3; ++i) CHECK(g(i, i).imag() == doctest::Approx(k / (6 * kPi)).epsilon(1e-9));
}

TEST_CASE("vacuum Green's function: rotation invariance") {
  const double w = 1.2e14, r = 3e-6, phi = 0.7;
  const auto g = vacuum_gf({r, 0, 0}, w);
  const auto gr = vacuum_gf({r * std::cos(phi), r * std::sin(phi), 0}, w);
  CHECK(rel_diff(gr, rotate_z(g, phi)) < 1e-13);
  // and symmetric
  CHECK(rel_diff(gr.transpose(), gr) < 1e-15);
}

TEST_CASE("angular matrices: structure and brute-force angular integration") {
  const double w = 1.6e14, k = w / kConstants.c;
  for (double kp : {0.4 * k, 3.0 * k}) {
    const double r = 5.0 / kp;
    const auto m = angular_matrices(kp, r, w);
    CHECK(m.M[8] == 0.0);
    CHECK(m.N[0] == -m.N_prime[0]);
    CHECK(m.N[4] == -m.N_prime[4]);
    CHECK(m.N[8] == m.N_prime[8]);
    // periodic trapezoid rule converges geometrically
    const int n = 400;
    const double kz2 = k * k - kp * kp;
    double M11 = 0, M22 = 0, N11 = 0, N22 = 0, N33 = 0;
    for (int i = 0; i < n; ++i) {
      const double t = 2 * kPi * i / n, kx = kp * std::cos(t), ky = kp * std::sin(t);
      const double c = std::cos(kx * r) * 2 * kPi / n;  // the sine part is odd in theta
      M11 += c * ky * ky / (kp * kp);
      M22 += c * kx * kx / (kp * kp);
      N11 += c * kx * kx * kz2 / (k * k * kp * kp);
      N22 += c * ky * ky * kz2 / (k * k * kp * kp);
      N33 += c * kp * kp / (k * k);
    }
    CAPTURE(kp / k);
    CHECK(std::abs(m.M[0] - M11) < 1e-10);
    CHECK(std::abs(m.M[4] - M22) < 1e-10);
    CHECK(std::abs(m.N[0] - N11) < 1e-10 * std::max(1.0, std::abs(N11)));
    CHECK(std::abs(m.N[4] - N22) < 1e-10 * std::max(1.0, std::abs(N22)));
    CHECK(std::abs(m.N[8] - N33) < 1e-10 * std::max(1.0, std::abs(N33)));
  }
}

TEST_CASE("two plates: transparent plates give the vacuum Green's function") {
  const double w = 1.7e14, r = 1e-6;
  const auto g = two_plate_midplane_gf({0.2e-6, r, Transparent{}}, w, {});
  CHECK(rel_diff(g, vacuum_gf({r, 0, 0}, w)) < 1e-12);
}

TEST_CASE("two plates: the midplane tensor is diagonal") {
  for (double w : {1.0e14, 1.6e14, 2.5e14})
    for (double r : {0.5e-6, 5e-6}) {
      for (const materials::PermittivityModel& m :
           {materials::PermittivityModel(materials::silicon_carbide()),
            materials::PermittivityModel(materials::gold())}) {
        const auto g = two_plate_midplane_gf({0.2e-6, r, m}, w, {});
        CHECK(g.off_diagonal_norm() <= 1e-12 * g.frobenius_norm());
      }
    }
}

TEST_CASE("two plates: image series converges to the closed form outside the band") {
  // Below omega_TO the SiC round-trip ratio |F^2 e^{2ikz d}| stays below one.
  const PlateCavityGeometry geom{0.2e-6, 1e-6, materials::silicon_carbide()};
  for (double w : {0.8e14, 1.2e14, 2.2e14}) {
    KPerpQuadratureSpec q;
    q.rel_tol = 1e-11;
    const auto closed = two_plate_midplane_gf(geom, w, q);
    const auto series = image_series_gf(geom, w, 64, q);
    CAPTURE(w);
    CHECK(rel_diff(series, closed) < 1e-8);
  }
}

TEST_CASE("two plates: zeroth-order image series and mirror refusal") {
  const PlateCavityGeometry geom{0.2e-6, 1e-6, materials::silicon_carbide()};
  const auto g0 = image_series_gf(geom, 1e14, 0, {});
  const auto g64 = image_series_gf(geom, 1e14, 64, {});
  CHECK(rel_diff(g0, g64) > 1e-6);  // round trips matter at this gap
  const PlateCavityGeometry mirror{0.2e-6, 1e-6, PerfectMirror{}};
  CHECK_THROWS_AS(image_series_gf(mirror, 1e14, 8, {}), ConditioningError);
  // gold supports evanescent modes with |F^2 e^{2ik_z d}| > 1: no geometric expansion
  const PlateCavityGeometry au{0.2e-6, 1e-6, materials::gold()};
  CHECK_THROWS_AS(image_series_gf(au, 1e14, 8, {}), ConditioningError);
}

TEST_CASE("single plate limits") {
  const double w = 1.5e14, r = 2e-6;
  const auto vac = vacuum_gf({r, 0, 0}, w);
  CHECK(rel_diff(single_plate_gf(r, 0.1e-6, w, Transparent{}, {}), vac) < 1e-12);
  const double far = 1e-2;  // h >> lambda
  CHECK(rel_diff(single_plate_gf(r, far, w, PerfectMirror{}, {}), vac) < 1e-3);
  const auto near = single_plate_gf(r, 0.1e-6, w, materials::silicon_carbide(), {});
  CHECK(near.off_diagonal_norm() <= 1e-12 * near.frobenius_norm());
}

TEST_CASE("k_perp quadrature spec validation") {
  KPerpQuadratureSpec q;
  q.rel_tol = 0.5;
  CHECK_THROWS_AS(q.validate(), DomainError);
  q = {};
  q.evanescent_cutoff_exponent = 10;
  CHECK_THROWS_AS(q.validate(), DomainError);
}
