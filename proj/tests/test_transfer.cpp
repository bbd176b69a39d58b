#include <doctest.h>

#include <cmath>

#include "confheat/constants.hpp"
#include "confheat/errors.hpp"
#include "confheat/specfun.hpp"
#include "confheat/transfer.hpp"

using namespace confheat;
using namespace confheat::transfer;
using materials::PerfectMirror;
using materials::Transparent;

namespace {

const auto kSiC = materials::silicon_carbide();
const auto kAu = materials::gold();

/// Coarse fixed partition: both sides of a comparison see identical nodes.
FrequencyOptions fixed_partition() {
  FrequencyOptions o;
  o.adaptive = false;
  o.panels_per_decade = 2;
  o.rule = quad::Rule::GK15;
  return o;
}

FrequencyOptions loose() {
  FrequencyOptions o;
  o.rel_tol = 1e-5;
  return o;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("particle-particle: transparent particle gives zero") {
  const ParticleSpec sic{kSiC, 10e-9}, clear{Transparent{}, 10e-9};
  CHECK(pp_pp_transfer(sic, clear, 300, vacuum_provider(5e-6), loose()).result.power == 0.0);
  CHECK(pp_pp_transfer(clear, sic, 300, vacuum_provider(5e-6), loose()).result.power == 0.0);
}

TEST_CASE("particle-particle: vacuum far-field slope") {
  const ParticleSpec p{kSiC, 10e-9};
  const double r1 = 50e-6, r2 = 500e-6;
  const double h1 = pp_pp_transfer(p, p, 300, vacuum_provider(r1)).per_volume2;
  const double h2 = pp_pp_transfer(p, p, 300, vacuum_provider(r2)).per_volume2;
  const double slope = std::log(h2 / h1) / std::log(r2 / r1);
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.025));
}

TEST_CASE("particle-particle: two SiC plates enhance the transfer at r = 2 um") {
  const ParticleSpec p{kSiC, 10e-9};
  const double r = 2e-6;
  greens::KPerpQuadratureSpec q;
  q.rel_tol = 1e-8;
  FrequencyOptions o;
  o.rel_tol = 1e-6;
  const auto plates = pp_pp_transfer(p, p, 300, two_plate_provider({0.2e-6, r, kSiC}, q), o);
  const auto vac = pp_pp_transfer(p, p, 300, vacuum_provider(r), o);
  CHECK(plates.per_volume2 / vac.per_volume2 >= 5e3);
  CHECK(plates.result.quadrature_error <= 1e-5 * plates.result.power);
  const double V = materials::volume(p);
  CHECK(plates.per_volume2 == doctest::Approx(plates.result.power / (V * V)).epsilon(1e-14));
}

TEST_CASE("particle-particle: provider failures carry the frequency") {
  const ParticleSpec p{kSiC, 10e-9};
  const GfProvider bad = [](double w) -> greens::ComplexTensor3 {
    if (w > 1e14) throw std::runtime_error("boom");
    return greens::vacuum_gf({1e-6, 0, 0}, w);
  };
  try {
    pp_pp_transfer(p, p, 300, bad, loose());
    FAIL("expected ProviderError");
  } catch (const ProviderError& e) {
    CHECK(e.omega() > 1e14);
  }
}

TEST_CASE("sphere in cavity: mirror limits vanish") {
  const SphereSpec sic{kSiC, 0.1e-6};
  const CavitySpec au{kAu, 2e-6};
  const auto ref = sphere_in_cavity_hr(sic, au, 300, LControl::at(10), loose());
  CHECK(ref.power > 0);
  CHECK(sphere_in_cavity_hr({PerfectMirror{}, 0.1e-6}, au, 300, LControl::at(10), loose()).power ==
        0.0);
  CHECK(sphere_in_cavity_hr(sic, {PerfectMirror{}, 2e-6}, 300, LControl::at(10), loose()).power ==
        0.0);
  CHECK(sphere_in_cavity_hr({Transparent{}, 0.1e-6}, au, 300, LControl::at(10), loose()).power ==
        0.0);
  // the free path evaluates -(Re T + |T|^2) literally: roundoff, not an exact zero
  auto abs_floor = loose();
  abs_floor.abs_tol = 1e-12 * ref.power;
  const auto free_mirror = free_sphere_hr({PerfectMirror{}, 0.1e-6}, 300, LControl::at(10), abs_floor);
  CHECK(std::abs(free_mirror.power) <= 1e-8 * ref.power);
  CHECK(free_sphere_hr({Transparent{}, 0.1e-6}, 300, LControl::at(10), loose()).power == 0.0);
}

TEST_CASE("sphere in cavity: no cavity reproduces the independent free-sphere path") {
  const auto o = fixed_partition();
  for (const SphereSpec& s : {SphereSpec{kAu, 0.1e-6}, SphereSpec{kSiC, 0.5e-6}}) {
    const auto in_cavity = sphere_in_cavity_hr(s, {Transparent{}, 3e-6}, 300, LControl::at(20), o);
    const auto free = free_sphere_hr(s, 300, LControl::at(20), o);
    CHECK(free.power > 0);
    CHECK(rel(in_cavity.power, free.power) <= 1e-10);
  }
}

TEST_CASE("sphere in cavity: dense trace oracle agrees at l_max = 1") {
  const auto o = fixed_partition();
  const int l1[] = {1};
  for (const auto& [s, c] : {std::pair{SphereSpec{kSiC, 0.1e-6}, CavitySpec{kAu, 2e-6}},
                             std::pair{SphereSpec{kAu, 0.1e-6}, CavitySpec{kSiC, 0.2e-6}},
                             std::pair{SphereSpec{kAu, 0.5e-6}, CavitySpec{kAu, 1e-6}}}) {
    const auto eq = sphere_in_cavity_partial_sums(s, c, 300, l1, o).front();
    const auto tr = hr_trace_oracle(s, c, 300, 1, o);
    CHECK(rel(eq.power, tr.power) <= 1e-12);
  }
}

TEST_CASE("trace oracle without cavity is the truncated free-sphere sum") {
  const auto o = fixed_partition();
  const SphereSpec s{kSiC, 0.3e-6};
  const auto tr = hr_trace_oracle(s, {Transparent{}, 2e-6}, 300, 5, o);
  const auto fr = free_sphere_hr(s, 300, LControl::at(5), o);
  CHECK(rel(tr.power, fr.power) <= 1e-12);
  CHECK_THROWS_AS(hr_trace_oracle(s, {kAu, 2e-6}, 300, 65, o), DomainError);
}

TEST_CASE("partial sums increase with l_max and end at the fixed-order result") {
  const auto o = fixed_partition();
  const SphereSpec s{kAu, 0.1e-6};
  const CavitySpec c{kSiC, 0.2e-6};
  const int ls[] = {1, 2, 4, 8, 16};
  const auto ps = sphere_in_cavity_partial_sums(s, c, 300, ls, o);
  for (std::size_t i = 1; i < ps.size(); ++i) CHECK(ps[i].power >= ps[i - 1].power);
  const auto full = sphere_in_cavity_hr(s, c, 300, LControl::at(16), o);
  CHECK(rel(ps.back().power, full.power) <= 1e-13);
}

TEST_CASE("automatic multipole control") {
  CHECK(auto_l_start(0.1e-6, 1e14) == 10);
  // x = 20 -> ceil(20 + 7 * 20^(1/3)) = 40
  const double w = 20 * kConstants.c / 1e-6;
  CHECK(auto_l_start(1e-6, w) == static_cast<int>(std::ceil(20 + 7 * std::cbrt(20.0))));
  const SphereSpec s{kAu, 0.1e-6};
  const CavitySpec c{kSiC, 0.1e-6 + 1e-9};
  LControl tight;
  tight.cap = 32;
  CHECK_THROWS_AS(sphere_in_cavity_hr(s, c, 300, tight, loose()), ConvergenceError);
  const auto ok = sphere_in_cavity_hr(s, {kSiC, 0.2e-6}, 300, LControl::automatic(), loose());
  CHECK(ok.l_max_used >= 10);
}

TEST_CASE("geometry and argument checks") {
  CHECK_THROWS_AS(sphere_in_cavity_hr({kAu, 2e-6}, {kSiC, 1e-6}, 300), DomainError);
  CHECK_THROWS_AS(sphere_in_cavity_hr({kAu, 1e-6}, {kSiC, 1e-6}, 300), DomainError);
  CHECK_THROWS_AS(free_sphere_hr({kAu, 1e-7}, -3.0), DomainError);
  FrequencyOptions bad;
  bad.x_min = 60;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("dipole limit: mirror wall vanishes, no wall is the l = 1 free term") {
  const SphereSpec s{kSiC, 0.1e-6};
  const auto o = fixed_partition();
  CHECK(dipole_limit_hr(s, {PerfectMirror{}, 2e-6}, 300, o).power == 0.0);
  const auto d = dipole_limit_hr(s, {Transparent{}, 2e-6}, 300, o);
  const auto f = free_sphere_hr(s, 300, LControl::at(1), o);
  CHECK(rel(d.power, f.power) <= 1e-12);
}

TEST_CASE("point particle in a cavity: no wall is the free dipole emission") {
  const ParticleSpec p{kSiC, 10e-9};
  FrequencyOptions o;
  o.rel_tol = 1e-9;
  const auto got = pp_in_cavity_hr(p, {Transparent{}, 2e-6}, 300, o);
  // (4 / (pi c^3)) \int w^3 Theta(w) Im alpha(w) dw by an independent quadrature
  const double c = kConstants.c;
  const double wmax = 50 * kConstants.k_B * 300 / kConstants.hbar;
  const double wmin = 1e-2 * kConstants.k_B * 300 / kConstants.hbar;
  auto bp = quad::log_panels(wmin, wmax, 40);
  const double extra[] = {1.48e14, 1.82e14, 1.6e14, 1.7e14, 1.75e14, 1.78e14};
  bp = quad::merge_breakpoints(bp, extra);
  quad::Options qo;
  qo.rel_tol = 1e-11;
  qo.max_intervals = 100000;
  const auto ref = quad::integrate(
      [&](double w, std::span<double> out) {
        out[0] = 4 / (kPi * c * c * c) * w * w * w * specfun::planck_factor(w, 300) *
                 materials::polarizability(p, w).imag();
      },
      1, bp, qo);
  REQUIRE(ref.converged);
  CHECK(rel(got.power, ref.value[0]) <= 1e-7);
  CHECK(pp_in_cavity_hr(p, {PerfectMirror{}, 2e-6}, 300, o).power == 0.0);
}

TEST_CASE("net radiation with a warm wall") {
  const SphereSpec s{kAu, 0.1e-6};
  const CavitySpec c{kSiC, 0.3e-6};
  const auto o = loose();
  const auto l = LControl::at(30);
  CHECK(net_sphere_hr(s, c, {300, 300}, l, o).power == 0.0);
  const auto h300 = sphere_in_cavity_hr(s, c, 300, l, o);
  CHECK(net_sphere_hr(s, c, {300, 0}, l, o).power == h300.power);
  const auto h150 = sphere_in_cavity_hr(s, c, 150, l, o);
  const auto net = net_sphere_hr(s, c, {300, 150}, l, o);
  CHECK(net.power == doctest::Approx(h300.power - h150.power).epsilon(1e-12));
  CHECK(net.power > 0);
  CHECK(net_sphere_hr(s, c, {150, 300}, l, o).power < 0);
}

TEST_CASE("plate-plate flux: limits and the far-field blackbody bound") {
  const auto o = loose();
  CHECK(plate_plate_ht_per_area(Transparent{}, Transparent{}, 1e-7, 300, 0, o).power == 0.0);
  CHECK(plate_plate_ht_per_area(kSiC, Transparent{}, 1e-7, 300, 0, o).power == 0.0);
  CHECK(plate_plate_ht_per_area(kSiC, kSiC, 1e-7, 300, 300, o).power == 0.0);
  const double sigma = kPi * kPi * std::pow(kConstants.k_B, 4) /
                       (60 * std::pow(kConstants.hbar, 3) * kConstants.c * kConstants.c);
  for (const auto& [m1, m2] : {std::pair{PermittivityModel(kSiC), PermittivityModel(kSiC)},
                               std::pair{PermittivityModel(kAu), PermittivityModel(kSiC)}}) {
    const double far = plate_plate_ht_per_area(m1, m2, 200e-6, 300, 0, o).power;
    CHECK(far > 0);
    CHECK(far <= sigma * std::pow(300.0, 4));
  }
  // near field exceeds the blackbody value
  CHECK(plate_plate_ht_per_area(kSiC, kSiC, 10e-9, 300, 0, o).power > sigma * std::pow(300.0, 4));
  // antisymmetry under exchange of temperatures
  const double a = plate_plate_ht_per_area(kSiC, kAu, 50e-9, 300, 200, o).power;
  const double b = plate_plate_ht_per_area(kSiC, kAu, 50e-9, 200, 300, o).power;
  CHECK(a == doctest::Approx(-b).epsilon(1e-4));
}

TEST_CASE("frequency partition contains the material features") {
  const PermittivityModel sic = kSiC;
  const PermittivityModel* mats[] = {&sic};
  const auto bp = frequency_breakpoints(300, mats, {});
  const double wmin = 1e-2 * kConstants.k_B * 300 / kConstants.hbar;
  const double wmax = 50 * kConstants.k_B * 300 / kConstants.hbar;
  CHECK(bp.front() == doctest::Approx(wmin));
  CHECK(bp.back() == doctest::Approx(wmax));
  for (double f : materials::feature_frequencies(sic)) {
    bool found = false;
    for (double b : bp) found = found || std::abs(b - f) <= 1e-9 * f;
    CHECK(found);
  }
}
