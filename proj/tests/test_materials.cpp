#include <doctest.h>

#include <cmath>
#include <fstream>

#include "confheat/errors.hpp"
#include "confheat/materials.hpp"

using namespace confheat;
using namespace confheat::materials;

TEST_CASE("SiC permittivity limits") {
  const auto sic = silicon_carbide();
  CHECK(std::abs(permittivity(sic, 1e20) - cdouble(6.7)) < 1e-6);
  const double static_eps = 6.7 * 1.82e14 * 1.82e14 / (1.48e14 * 1.48e14);
  CHECK(permittivity(sic, 1e3).real() == doctest::Approx(static_eps).epsilon(1e-9));
  CHECK(static_eps == doctest::Approx(10.13).epsilon(1e-3));
}

TEST_CASE("gold permittivity at the plasma frequency") {
  const auto au = gold();
  const cdouble expected = 1.0 - 1.37e16 / cdouble(1.37e16, 4.06e13);
  CHECK(std::abs(permittivity(au, 1.37e16) - expected) < 1e-15);
  const auto slow = gold_scaled_damping(0.1);
  CHECK(slow.omega_tau_tilde == doctest::Approx(4.06e12));
}

TEST_CASE("passivity of the built-in models") {
  for (double w = 1e11; w < 1e17; w *= 1.37) {
    CHECK(permittivity(silicon_carbide(), w).imag() > 0);
    CHECK(permittivity(gold(), w).imag() > 0);
  }
}

TEST_CASE("symbolic and trivial models") {
  CHECK(permittivity(Transparent{}, 1e14) == cdouble(1.0));
  CHECK_THROWS_AS(permittivity(PerfectMirror{}, 1e14), ContractViolation);
  CHECK_THROWS_AS(permittivity(gold(), 0.0), DomainError);
  CHECK(is_mirror(PerfectMirror{}));
  CHECK(is_transparent(Transparent{}));
}

TEST_CASE("Fresnel coefficients") {
  const double w = 1.7e14;
  for (auto p : {Polarization::M, Polarization::N}) {
    CHECK(fresnel(cdouble(1.0), 3e6, w, p) == cdouble(0.0));
    CHECK(fresnel(Transparent{}, 3e6, w, p) == cdouble(0.0));
  }
  const cdouble eps(3.0, 0.7);
  const cdouble n = sqrt_upper(eps);
  const cdouble normal = (n - 1.0) / (n + 1.0);
  CHECK(std::abs(fresnel(eps, 0.0, w, Polarization::N) - normal) < 1e-15);
  CHECK(std::abs(fresnel(eps, 0.0, w, Polarization::M) + normal) < 1e-15);
  // |eps| = 1e8: |F^M + 1| ~ 2 k_z/(k n) and |F^N - 1| ~ 2 k/(n k_z), so each
  // limit is checked where its residual is below 1e-4 (no single k_perp serves both)
  const cdouble big(1e8, 0.0);
  const double k = w / 299792458.0;
  CHECK(std::abs(fresnel(big, 0.9 * k, w, Polarization::M) + 1.0) < 1e-4);
  CHECK(std::abs(fresnel(big, 10.0 * k, w, Polarization::N) - 1.0) < 1e-4);
  CHECK(fresnel(PerfectMirror{}, 2e5, w, Polarization::M) == cdouble(-1.0));
  CHECK(fresnel(PerfectMirror{}, 2e5, w, Polarization::N) == cdouble(1.0));
  // evanescent sector: still |F^M| <= 1 for passive media
  CHECK(std::abs(fresnel(permittivity(silicon_carbide(), w), 1e8, w, Polarization::M)) <= 1.0);
}

TEST_CASE("sqrt branch") {
  CHECK(sqrt_upper(cdouble(-4.0, 0.0)) == cdouble(0.0, 2.0));
  CHECK(sqrt_upper(cdouble(-4.0, -0.0)).imag() >= 0);
  CHECK(sqrt_upper(cdouble(1.0, -1e-3)).imag() >= 0);
}

TEST_CASE("polarizability") {
  const double R = 10e-9, w = 1.7e14;
  CHECK(polarizability({Transparent{}, R}, w) == cdouble(0.0));
  CHECK(polarizability({PerfectMirror{}, R}, w) == cdouble(R * R * R));
  const cdouble e = permittivity(silicon_carbide(), w);
  const cdouble direct = R * R * R * (e - 1.0) / (e + 2.0);
  CHECK(std::abs(polarizability({silicon_carbide(), R}, w) - direct) <= 1e-15 * std::abs(direct));
  CHECK(std::abs(polarizability({Drude{1e30, 1.0}, R}, w) - cdouble(R * R * R)) < 1e-4 * R * R * R);
  CHECK(volume({gold(), R}) == doctest::Approx(4.0 / 3.0 * M_PI * R * R * R));
}

TEST_CASE("tabulated models") {
  const std::string path = "test_materials_table.txt";
  {
    std::ofstream f(path);
    f << "# omega re im\n1e13 2.0 0.5\n1e15 4.0 1.5\n";
  }
  const auto t = load_tabulated(path);
  const double mid = std::sqrt(1e13 * 1e15);
  CHECK(std::abs(permittivity(t, mid) - cdouble(3.0, 1.0)) < 1e-12);
  CHECK_THROWS_AS(permittivity(t, 1e16), DomainError);
  {
    std::ofstream f(path);
    f << "1e13 2.0\n1e15 4.0\n";
  }
  CHECK(permittivity(load_tabulated(path), mid).imag() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("feature frequencies") {
  const auto f = feature_frequencies(silicon_carbide());
  CHECK(f.size() == 4);
  // surface resonance eps = -1 between TO and LO
  const double ws = f[2];
  CHECK(permittivity(silicon_carbide(), ws).real() == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(feature_frequencies(Transparent{}).empty());
}
