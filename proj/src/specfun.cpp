/*
 * specfun.cpp -- special functions and thermal weights.
 */
#include "confheat/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/detail/bessel_j0.hpp>
#include <boost/math/special_functions/detail/bessel_j1.hpp>

#include <cmath>
#include <string>

#include "confheat/constants.hpp"
#include "confheat/detail/riccati_recurrences.hpp"
#include "confheat/errors.hpp"

namespace confheat::specfun {

namespace {

using no_promote = boost::math::policies::policy<boost::math::policies::promote_double<false>>;

constexpr double kMaxLog = 709.0;

// value = m * exp(s)
struct Scaled {
  cdouble m;
  double s;
};

Scaled mul(const Scaled& a, const Scaled& b) {
  Scaled r{a.m * b.m, a.s + b.s};
  detail::rescale(r.m, r.s);
  return r;
}

Scaled div(const Scaled& a, const Scaled& b) {
  Scaled r{a.m / b.m, a.s - b.s};
  detail::rescale(r.m, r.s);
  return r;
}

double log_abs(const Scaled& a) { return std::log(std::abs(a.m)) + a.s; }

cdouble to_value(const Scaled& a, const char* what) {
  if (a.m == cdouble(0)) return 0.0;
  const double lm = log_abs(a);
  if (lm > kMaxLog) throw OverflowError(std::string(what) + " overflows double", lm);
  if (lm < -745.0) return 0.0;
  return a.m * std::exp(a.s);
}

// sin z and cos z for Im z >= 0 without overflow.
Scaled scaled_sin(cdouble z) {
  const cdouble I(0, 1);
  const cdouble e2 = std::exp(2.0 * I * z);
  cdouble m = (I / 2.0) * std::exp(-I * z.real()) * (1.0 - e2);
  Scaled r{m, z.imag()};
  detail::rescale(r.m, r.s);
  return r;
}

Scaled scaled_cos(cdouble z) {
  const cdouble I(0, 1);
  const cdouble e2 = std::exp(2.0 * I * z);
  cdouble m = 0.5 * std::exp(-I * z.real()) * (1.0 + e2);
  Scaled r{m, z.imag()};
  detail::rescale(r.m, r.s);
  return r;
}

// psi_{l-1}(z) and psi_l(z) for Im z >= 0 by Miller's normalized downward recurrence.
struct PsiPair {
  Scaled prev;  // psi_{l-1}; unset for l = 0
  Scaled cur;   // psi_l
};

PsiPair miller_psi(int l, cdouble z) {
  const Scaled sin_z = scaled_sin(z);
  const Scaled cos_z = scaled_cos(z);
  if (l == 0) return {Scaled{0.0, 0.0}, sin_z};

  const double az = std::abs(z);
  const int start = std::max(l, static_cast<int>(std::ceil(az))) + 16 +
                    static_cast<int>(std::ceil(6.0 * std::cbrt(az)));

  // Unnormalized values f_n with a shared running scale; f_{start+1} = 0.
  cdouble f_next = 0.0;
  cdouble f = 1e-30;
  double s = 0.0;
  Scaled f_l{0.0, 0.0}, f_lm1{0.0, 0.0}, f_1{0.0, 0.0}, f_0{0.0, 0.0};
  for (int n = start; n >= 1; --n) {
    if (n == l) f_l = {f, s};
    if (n == l - 1) f_lm1 = {f, s};
    if (n == 1) f_1 = {f, s};
    const cdouble f_prev = (2.0 * n + 1.0) / z * f - f_next;
    f_next = f;
    f = f_prev;
    const double a = std::max(std::abs(f.real()), std::abs(f.imag()));
    if (a > 1e200) {
      const int e = std::ilogb(a);
      f = cdouble(std::ldexp(f.real(), -e), std::ldexp(f.imag(), -e));
      f_next = cdouble(std::ldexp(f_next.real(), -e), std::ldexp(f_next.imag(), -e));
      s += e * std::numbers::ln2;
    }
  }
  f_0 = {f, s};
  if (l == 1) f_lm1 = f_0;

  // Anchor on psi_0 = sin z unless it is small against psi_1.
  Scaled factor;
  const Scaled psi1 = [&] {
    // sin z / z - cos z on a common scale (both carry scale Im z)
    const cdouble m1 = sin_z.m * std::exp(sin_z.s - cos_z.s) / z - cos_z.m;
    Scaled r{m1, cos_z.s};
    detail::rescale(r.m, r.s);
    return r;
  }();
  const bool use_psi0 = az < 1.0 || log_abs(sin_z) >= log_abs(psi1) - 1.0;
  if (use_psi0) {
    factor = div(sin_z, f_0);
  } else {
    factor = div(psi1, f_1);
  }
  return {mul(f_lm1, factor), mul(f_l, factor)};
}

Scaled conj(const Scaled& a) { return {std::conj(a.m), a.s}; }

PsiPair psi_pair(int l, cdouble z) {
  if (z.imag() < 0.0) {
    PsiPair p = miller_psi(l, std::conj(z));
    return {conj(p.prev), conj(p.cur)};
  }
  return miller_psi(l, z);
}

struct XiPair {
  Scaled prev;
  Scaled cur;
};

XiPair xi_pair(int l, cdouble z) {
  detail::OutgoingSequence<double> seq;
  detail::outgoing_sequence(l, z, seq);
  const auto L = static_cast<std::size_t>(l);
  Scaled cur{seq.mant[L], seq.scale[L]};
  Scaled prev{0.0, 0.0};
  if (l > 0) prev = {seq.mant[L - 1], seq.scale[L - 1]};
  return {prev, cur};
}

void check_order(int l) {
  if (l < 0) throw DomainError("spherical Bessel order must be >= 0");
}

}  // namespace

double cyl_bessel_j(int order, double x) {
  if (!std::isfinite(x)) throw DomainError("cyl_bessel_j: non-finite argument");
  if (x < 0.0) throw DomainError("cyl_bessel_j: negative argument");
  switch (order) {
    case 0:
      return boost::math::detail::bessel_j0(x);
    case 1:
      return boost::math::detail::bessel_j1(x);
    case 2:
      if (x < 1e-3) {
        const double x2 = x * x;
        return x2 / 8.0 * (1.0 - x2 / 12.0 + x2 * x2 / 384.0);
      }
      return boost::math::cyl_bessel_j(2, x, no_promote());
    default:
      throw DomainError("cyl_bessel_j: order must be 0, 1 or 2");
  }
}

double j1_over_x(double x) {
  if (std::abs(x) < 1e-4) return 0.5 - x * x / 16.0;
  return boost::math::detail::bessel_j1(x) / x;
}

cdouble sph_bessel_regular(int l, cdouble z) {
  check_order(l);
  if (z == cdouble(0)) return l == 0 ? 1.0 : 0.0;
  const PsiPair p = psi_pair(l, z);
  Scaled j = p.cur;
  j.m /= z;
  return to_value(j, "sph_bessel_regular");
}

cdouble sph_hankel1(int l, cdouble z) {
  check_order(l);
  if (z == cdouble(0)) throw DomainError("sph_hankel1: pole at z = 0");
  const XiPair x = xi_pair(l, z);
  Scaled h = x.cur;
  h.m /= z;
  return to_value(h, "sph_hankel1");
}

cdouble sph_hankel1_scaled(int l, cdouble z) {
  check_order(l);
  if (z == cdouble(0)) throw DomainError("sph_hankel1_scaled: pole at z = 0");
  const XiPair x = xi_pair(l, z);
  // multiply by e^{-iz} = e^{-i Re z} e^{Im z}
  Scaled h{x.cur.m * std::exp(cdouble(0, -z.real())) / z, x.cur.s + z.imag()};
  return to_value(h, "sph_hankel1_scaled");
}

RiccatiBundle riccati_bundle(int l, cdouble z) {
  check_order(l);
  if (z == cdouble(0)) throw DomainError("riccati_bundle: xi_l has a pole at z = 0");
  const PsiPair p = psi_pair(l, z);
  const XiPair x = xi_pair(l, z);

  RiccatiBundle b;
  const double S = p.cur.s;
  b.log_scale = S;
  auto at = [&](const Scaled& v, double target) { return v.m * std::exp(v.s - target); };
  if (l == 0) {
    const bool lower = z.imag() < 0.0;
    Scaled c = scaled_cos(lower ? std::conj(z) : z);
    if (lower) c = conj(c);
    b.psi = at(p.cur, S);
    b.psi_prime = at(c, S);
    b.xi = at(x.cur, -S);
    b.xi_prime = cdouble(0, 1) * b.xi;
    return b;
  }
  b.psi = at(p.cur, S);
  b.psi_prime = at(p.prev, S) - double(l) / z * b.psi;
  b.xi = at(x.cur, -S);
  b.xi_prime = at(x.prev, -S) - double(l) / z * b.xi;
  if (z.imag() == 0.0) {
    // psi_l is real on the real axis; drop the recurrence's rounding residue.
    b.psi.imag(0.0);
    b.psi_prime.imag(0.0);
  }
  return b;
}

cdouble RiccatiBundle::psi_value() const {
  return to_value({psi, log_scale}, "psi_l");
}
cdouble RiccatiBundle::psi_prime_value() const {
  return to_value({psi_prime, log_scale}, "psi_l'");
}
cdouble RiccatiBundle::xi_value() const { return to_value({xi, -log_scale}, "xi_l"); }
cdouble RiccatiBundle::xi_prime_value() const {
  return to_value({xi_prime, -log_scale}, "xi_l'");
}

double planck_factor(double omega, double T) {
  if (!(T > 0.0)) throw DomainError("planck_factor: temperature must be positive");
  if (!(omega > 0.0)) throw DomainError("planck_factor: frequency must be positive");
  const double e = kConstants.hbar * omega;
  const double x = e / (kConstants.k_B * T);
  if (x > 745.0) return 0.0;
  return e / std::expm1(x);
}

double thermal_wavelength(double T) {
  if (!(T > 0.0)) throw DomainError("thermal_wavelength: temperature must be positive");
  return kConstants.hbar * kConstants.c / (kConstants.k_B * T);
}

}  // namespace confheat::specfun
