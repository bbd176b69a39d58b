#include <doctest.h>

#include <cmath>

#include "confheat/errors.hpp"
#include "confheat/materials.hpp"
#include "confheat/mie.hpp"
#include "confheat/specfun.hpp"
#include "oracle/extended.hpp"

using namespace confheat;
using namespace confheat::mie;
using materials::PerfectMirror;
using materials::Polarization;
using materials::Transparent;

namespace {
constexpr Polarization kBoth[] = {Polarization::M, Polarization::N};
}

TEST_CASE("transparent sphere and cavity scatter nothing") {
  for (auto p : kBoth)
    for (int l : {1, 4, 30}) {
      CHECK(sphere_t(l, p, {Transparent{}, 0.1e-6}, 1.5e14) == cdouble(0.0));
      CHECK(cavity_t(l, p, {Transparent{}, 2e-6}, 1.5e14) == cdouble(0.0));
    }
}

TEST_CASE("perfectly reflecting sphere is lossless") {
  for (double R : {0.1e-6, 3e-6})
    for (auto p : kBoth)
      for (int l = 1; l <= 50; ++l) {
        const cdouble T = sphere_t(l, p, {PerfectMirror{}, R}, 1.5e14);
        if (T == cdouble(0.0)) continue;  // underflowed at high l
        CAPTURE(l);
        CHECK(std::abs(T.real() + std::norm(T)) <= 1e-12 * std::abs(T));
      }
}

TEST_CASE("mirror cavity: Re T~ = -1 and the closed forms") {
  const double R = 3e-6, w = 1.5e14;
  const double x = size_parameter(R, w);
  for (int l = 1; l <= 12; ++l) {
    const cdouble tm = cavity_t(l, Polarization::M, {PerfectMirror{}, R}, w);
    const cdouble tn = cavity_t(l, Polarization::N, {PerfectMirror{}, R}, w);
    CAPTURE(l);
    CHECK(std::abs(tm.real() + 1.0) < 1e-12);
    CHECK(std::abs(tn.real() + 1.0) < 1e-12);
    const auto b = specfun::riccati_bundle(l, x);
    const cdouble hm = -b.xi_value() / b.psi_value();  // -h_l/j_l
    const cdouble hn = -b.xi_prime_value() / b.psi_prime_value();
    CHECK(std::abs(tm - hm) < 1e-10 * std::abs(hm));
    CHECK(std::abs(tn - hn) < 1e-10 * std::abs(hn));
  }
}

TEST_CASE("Rayleigh limit of the electric dipole amplitude") {
  const double R = 10e-9;
  for (double w : {1.65e14, 1.7e14, 1.75e14}) {
    const cdouble eps = materials::permittivity(materials::silicon_carbide(), w);
    const double x = size_parameter(R, w);
    const cdouble rayleigh = cdouble(0, 2.0 / 3.0) * x * x * x * (eps - 1.0) / (eps + 2.0);
    const cdouble T = sphere_t(1, Polarization::N, {materials::silicon_carbide(), R}, w);
    CHECK(std::abs(T / rayleigh - 1.0) < 1e-3);
  }
}

TEST_CASE("gold cavity l = 1 against the multiprecision boundary-matching solve") {
  const double R = 2e-6;
  for (double w : {2e13, 1e14, 3e14}) {
    const cdouble eps = materials::permittivity(materials::gold(), w);
    const oracle::cplx n = sqrt(oracle::to_cplx(eps));
    const oracle::real x = oracle::real(w) * oracle::real(R) / oracle::real(kConstants.c);
    for (auto p : kBoth) {
      const cdouble ref = oracle::to_double(oracle::cavity_l1_solve(n, x, p == Polarization::M));
      const cdouble got = cavity_t(1, p, {materials::gold(), R}, w);
      CAPTURE(w);
      CAPTURE(static_cast<int>(p));
      CHECK(std::abs(got - ref) < 1e-10 * std::abs(ref));
    }
  }
}

TEST_CASE("passivity: sphere loss and cavity gain are non-negative") {
  for (double w = 2e13; w < 5e14; w *= 1.3)
    for (int l = 1; l <= 8; ++l)
      for (auto p : kBoth) {
        const cdouble T = sphere_t(l, p, {materials::gold(), 0.1e-6}, w);
        CHECK(-(T.real() + std::norm(T)) >= -1e-15 * std::abs(T));
        const cdouble Tc = cavity_t(l, p, {materials::silicon_carbide(), 2e-6}, w);
        CHECK(Tc.real() + 1.0 >= -1e-12);
      }
}

TEST_CASE("mode tables reproduce the single-amplitude entry points") {
  const SphereSpec s{materials::silicon_carbide(), 0.3e-6};
  const CavitySpec c{materials::gold(), 2e-6};
  const double w = 1.6e14;
  detail::ModeTable<double> ts, tc;
  sphere_table(s, w, 10, ts);
  cavity_table(c, w, 10, tc);
  for (int l = 1; l <= 10; ++l)
    for (int p = 0; p < 2; ++p) {
      const auto pol = kBoth[p];
      const cdouble T = sphere_t(l, pol, s, w), Tc = cavity_t(l, pol, c, w);
      const std::size_t i = static_cast<std::size_t>(l);
      const double es = std::exp(ts.scale[i]), ec = std::exp(tc.scale[i]);
      CHECK(std::abs(ts.t[p][i] * es - T) <= 1e-13 * std::abs(T));
      CHECK(std::abs(tc.t[p][i] * ec - Tc) <= 1e-13 * std::abs(Tc));
      const double loss = -(T.real() + std::norm(T));
      CHECK(ts.weight[p][i] * es == doctest::Approx(loss).epsilon(1e-8));
      CHECK(tc.weight[p][i] * ec == doctest::Approx(Tc.real() + 1.0).epsilon(1e-8));
    }
}

TEST_CASE("domain errors and overflow") {
  CHECK_THROWS_AS(sphere_t(0, Polarization::M, {materials::gold(), 1e-7}, 1e14), DomainError);
  CHECK_THROWS_AS(cavity_t(1, Polarization::M, {materials::gold(), -1.0}, 1e14), DomainError);
  CHECK_THROWS_AS(cavity_t(400, Polarization::M, {materials::gold(), 1e-7}, 1e13), OverflowError);
}
