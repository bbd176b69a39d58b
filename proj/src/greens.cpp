/*
 * greens.cpp -- vacuum, single-plate and two-plate midplane Green's functions.
 */
#include "confheat/greens.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "confheat/constants.hpp"
#include "confheat/errors.hpp"
#include "confheat/specfun.hpp"
#include "plate_kernel.hpp"

namespace confheat::greens {

using materials::Polarization;

// ---------------------------------------------------------------------------
// ComplexTensor3

double ComplexTensor3::sum_abs2() const {
  double s = 0.0;
  for (const cdouble& v : a) s += std::norm(v);
  return s;
}

double ComplexTensor3::frobenius_norm() const { return std::sqrt(sum_abs2()); }

double ComplexTensor3::off_diagonal_norm() const {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) s += std::norm((*this)(i, j));
  return std::sqrt(s);
}

ComplexTensor3 ComplexTensor3::transpose() const {
  ComplexTensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

ComplexTensor3& ComplexTensor3::operator+=(const ComplexTensor3& o) {
  for (std::size_t k = 0; k < 9; ++k) a[k] += o.a[k];
  return *this;
}

ComplexTensor3 operator-(ComplexTensor3 x, const ComplexTensor3& y) {
  for (std::size_t k = 0; k < 9; ++k) x.a[k] -= y.a[k];
  return x;
}

void KPerpQuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2))
    throw DomainError("k_perp quadrature: rel_tol must lie in (0, 1e-2]");
  if (!(evanescent_cutoff_exponent >= 30.0))
    throw DomainError("k_perp quadrature: evanescent cutoff exponent must be >= 30");
  if (max_intervals < 1) throw DomainError("k_perp quadrature: max_intervals must be >= 1");
}

// ---------------------------------------------------------------------------
// Vacuum

ComplexTensor3 vacuum_gf(const std::array<double, 3>& separation, double omega) {
  const double rho =
      std::sqrt(separation[0] * separation[0] + separation[1] * separation[1] +
                separation[2] * separation[2]);
  if (!(rho > 0.0)) throw DomainError("vacuum_gf: zero separation is singular");
  if (!(omega > 0.0)) throw DomainError("vacuum_gf: omega must be positive");
  const double k = omega / kConstants.c;
  const double x = k * rho;
  // With f_n = -y_n + i j_n (so f_0 = e^{ix}/x):
  //   G = (k/4pi) [ ((2 f_0 - f_2)/3) 1 + f_2 rho^ rho^ ]
  // The imaginary part goes through j_0, j_2 and stays accurate as x -> 0.
  const double j0 = specfun::sph_bessel_regular(0, x).real();
  const double j2 = specfun::sph_bessel_regular(2, x).real();
  const double s = std::sin(x), c = std::cos(x);
  const double y0 = -c / x;
  const double y2 = (1.0 - 3.0 / (x * x)) * c / x - 3.0 * s / (x * x);
  // e^{ikr}/(4 pi r) = (k/4pi)(-y0 + i j0); the same combination for order 2.
  const cdouble iso = (k / (4.0 * kPi)) * cdouble(-(2.0 * y0 - y2) / 3.0, (2.0 * j0 - j2) / 3.0);
  const cdouble dir = (k / (4.0 * kPi)) * cdouble(-y2, j2);
  ComplexTensor3 g;
  for (int i = 0; i < 3; ++i) {
    g(i, i) += iso;
    for (int j = 0; j < 3; ++j) g(i, j) += dir * (separation[i] / rho) * (separation[j] / rho);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Angular matrices

AngularMatrices angular_matrices(double k_perp, double r, double omega) {
  if (!(k_perp >= 0.0)) throw DomainError("angular_matrices: k_perp must be >= 0");
  if (!(r >= 0.0)) throw DomainError("angular_matrices: r must be >= 0");
  const double k = omega / kConstants.c;
  const double k2 = k * k;
  const double x = k_perp * r;
  const double J0 = specfun::cyl_bessel_j(0, x);
  const double J2 = specfun::cyl_bessel_j(2, x);
  const double j1x = specfun::j1_over_x(x);
  const double q = (k2 - k_perp * k_perp) / k2;  // k_z^2 / k^2
  const double p = k_perp * k_perp / k2;
  const double tp = 2.0 * kPi;
  AngularMatrices m;
  m.M = {tp * j1x, 0, 0, 0, tp * (j1x - J2), 0, 0, 0, 0};
  m.N_prime = {-tp * q * (j1x - J2), 0, 0, 0, -tp * q * j1x, 0, 0, 0, tp * p * J0};
  m.N = {tp * q * (j1x - J2), 0, 0, 0, tp * q * j1x, 0, 0, 0, tp * p * J0};
  return m;
}

// ---------------------------------------------------------------------------
// Shared k_perp kernel

namespace detail {

namespace {

struct Diag3 {
  cdouble xx, yy, zz;
};

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

ComplexTensor3 scattered_gf(double r, double omega, double kappa_max,
                            const materials::PermittivityModel& plate, const CoefficientFn& coef,
                            const KPerpQuadratureSpec& spec, GfDiagnostics* diag) {
  spec.validate();
  if (!(r > 0.0)) throw DomainError("plate Green's function: r must be positive");
  if (!(omega > 0.0)) throw DomainError("plate Green's function: omega must be positive");
  const double k = omega / kConstants.c;
  const double k2 = k * k;
  const bool mirror = materials::is_mirror(plate);
  const cdouble eps = mirror ? cdouble(1.0) : materials::permittivity(plate, omega);

  auto phi = [&](cdouble kz, double kp2) -> Diag3 {
    cdouble FM, FN;
    if (mirror) {
      FM = -1.0;
      FN = 1.0;
    } else {
      FM = materials::fresnel_kz(eps, kz, kp2, k2, Polarization::M);
      FN = materials::fresnel_kz(eps, kz, kp2, k2, Polarization::N);
    }
    const PlateCoefficients c = coef(FM, FN, kz);
    const double x = std::sqrt(kp2) * r;
    const double J0 = specfun::cyl_bessel_j(0, x);
    const double j1x = specfun::j1_over_x(x);
    const double q = (kz * kz).real() / k2;
    const double p = kp2 / k2;
    return {c.cM * j1x + q * c.dN * (J0 - j1x), c.cM * (J0 - j1x) + q * c.dN * j1x,
            p * c.sN * J0};
  };
  auto store = [](const Diag3& v, double w, std::span<double> out) {
    out[0] = w * v.xx.real();
    out[1] = w * v.xx.imag();
    out[2] = w * v.yy.real();
    out[3] = w * v.yy.imag();
    out[4] = w * v.zz.real();
    out[5] = w * v.zz.imag();
  };
  const double inv2pi = 1.0 / (2.0 * kPi);

  // Propagating sector: k_perp = k sin t, dk_perp k_perp / k_z = k sin t dt.
  quad::Integrand fprop = [&](double t, std::span<double> out) {
    const double st = std::sin(t), ct = std::cos(t);
    store(phi(cdouble(k * ct, 0.0), k2 * st * st), k * st * inv2pi, out);
  };
  std::vector<double> bp_prop = quad::linear_panels(0.0, kPi / 2.0, 8);
  {
    std::vector<double> extra;
    const double kr = k * r;
    for (int n = 1; n * kPi < kr; ++n) extra.push_back(std::asin(n * kPi / kr));
    bp_prop = quad::merge_breakpoints(bp_prop, extra);
  }

  // Evanescent sector: k_z = i kappa, dk_perp k_perp / k_z = dkappa / i.
  quad::Integrand fev = [&](double kappa, std::span<double> out) {
    store(phi(cdouble(0.0, kappa), k2 + kappa * kappa), inv2pi, out);
  };
  std::vector<double> bp_ev;
  {
    const double lo = std::min(1e-3 * k, 1e-3 * kappa_max);
    bp_ev = quad::log_panels(lo, kappa_max, std::max(8, static_cast<int>(std::ceil(
                                                            6.0 * std::log10(kappa_max / lo)))));
    bp_ev.insert(bp_ev.begin(), 0.0);
    std::vector<double> extra;
    const double kp_max = std::sqrt(kappa_max * kappa_max + k2);
    const long n_lo = static_cast<long>(std::floor(k * r / kPi)) + 1;
    const long n_hi = static_cast<long>(std::floor(kp_max * r / kPi));
    extra.reserve(static_cast<std::size_t>(std::max(0L, n_hi - n_lo + 1)));
    for (long n = n_lo; n <= n_hi; ++n) {
      const double kp = n * kPi / r;
      extra.push_back(std::sqrt((kp - k) * (kp + k)));
    }
    bp_ev = quad::merge_breakpoints(bp_ev, extra);
  }

  quad::Options opts;
  opts.rel_tol = spec.rel_tol;
  opts.rule = spec.panel_rule;
  opts.max_intervals = spec.max_intervals + static_cast<int>(bp_ev.size());
  const quad::Result rp = quad::integrate(fprop, 6, bp_prop, opts);
  double prop_scale = 0.0;
  for (double v : rp.value) prop_scale = std::max(prop_scale, std::abs(v));
  quad::Options opts_ev = opts;
  opts_ev.abs_tol = 0.1 * spec.rel_tol * prop_scale;
  const quad::Result re = quad::integrate(fev, 6, bp_ev, opts_ev);

  ComplexTensor3 g;
  const cdouble I(0.0, 1.0);
  for (int c = 0; c < 3; ++c) {
    const cdouble vp(rp.value[2 * c], rp.value[2 * c + 1]);
    const cdouble ve(re.value[2 * c], re.value[2 * c + 1]);
    g(c, c) = I * vp + ve;
  }
  double err2 = 0.0;
  for (int i = 0; i < 6; ++i) err2 += rp.error[i] * rp.error[i] + re.error[i] * re.error[i];
  if (diag) {
    diag->error = std::sqrt(err2);
    diag->evaluations = rp.evaluations + re.evaluations;
    diag->intervals = rp.intervals + re.intervals;
  }
  if (!rp.converged || !re.converged) {
    const double est = g.frobenius_norm();
    throw QuadratureError("k_perp quadrature did not reach rel_tol " + fmt_sci(spec.rel_tol) +
                              " (estimate " + fmt_sci(est) + ", error " +
                              fmt_sci(std::sqrt(err2)) + ", intervals " + std::to_string(rp.intervals) + "+" + std::to_string(re.intervals) + ")",
                          est, std::sqrt(err2));
  }
  return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public plate Green's functions

ComplexTensor3 two_plate_midplane_gf(const PlateCavityGeometry& geom, double omega,
                                     const KPerpQuadratureSpec& quad, GfDiagnostics* diag) {
  if (!(geom.d > 0.0)) throw DomainError("two_plate_midplane_gf: d must be positive");
  if (!(geom.r > 0.0)) throw DomainError("two_plate_midplane_gf: r must be positive");
  const ComplexTensor3 g0 = vacuum_gf({geom.r, 0.0, 0.0}, omega);
  if (materials::is_transparent(geom.plate)) {
    if (diag) *diag = GfDiagnostics{};
    return g0;
  }
  const double d = geom.d;
  const cdouble I(0.0, 1.0);
  // Midplane: every term carries e^{i k_z d}; the round-trip series sums to
  //   c_M  = F e / (1 - F e)            (M)
  //   c_N' = F e / (1 - F^2 e^2),  c_N = F^2 e^2 / (1 - F^2 e^2)   (N)
  detail::CoefficientFn coef = [d, I](cdouble FM, cdouble FN, cdouble kz) {
    const cdouble e = std::exp(I * kz * d);
    const cdouble fm = FM * e, fn = FN * e;
    return detail::PlateCoefficients{fm / (1.0 - fm), -fn / (1.0 + fn), fn / (1.0 - fn)};
  };
  const double kappa_max = quad.evanescent_cutoff_exponent / d;
  return g0 + detail::scattered_gf(geom.r, omega, kappa_max, geom.plate, coef, quad, diag);
}

ComplexTensor3 single_plate_gf(double r, double h, double omega,
                               const materials::PermittivityModel& plate,
                               const KPerpQuadratureSpec& quad, GfDiagnostics* diag) {
  if (!(r > 0.0)) throw DomainError("single_plate_gf: r must be positive");
  if (!(h > 0.0)) throw DomainError("single_plate_gf: h must be positive");
  const ComplexTensor3 g0 = vacuum_gf({r, 0.0, 0.0}, omega);
  if (materials::is_transparent(plate)) {
    if (diag) *diag = GfDiagnostics{};
    return g0;
  }
  const cdouble I(0.0, 1.0);
  // One reflection, phase e^{2 i k_z h}: c_M = F^M e2 / 2, c_N' = F^N e2 / 2, c_N = 0.
  detail::CoefficientFn coef = [h, I](cdouble FM, cdouble FN, cdouble kz) {
    const cdouble e2 = std::exp(2.0 * I * kz * h);
    return detail::PlateCoefficients{0.5 * FM * e2, -0.5 * FN * e2, 0.5 * FN * e2};
  };
  const double kappa_max = quad.evanescent_cutoff_exponent / (2.0 * h);
  return g0 + detail::scattered_gf(r, omega, kappa_max, plate, coef, quad, diag);
}

}  // namespace confheat::greens
