/*
 * riccati_recurrences.hpp -- ratio-form recurrences for Riccati-Bessel
 * functions, templated on the real type so the dense trace oracle can run
 * the same amplitudes in extended precision.
 *
 *   D_l(z) = psi_l'(z)/psi_l(z)   downward from well above max(l, |z|)
 *   G_l(z) = xi_l'(z)/xi_l(z)     upward from closed forms
 *   xi_l(z) = mant_l * exp(scale_l)   kept finite by power-of-two rescaling
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace confheat::detail {

template <class Real>
using cplx = std::complex<Real>;

template <class Real>
inline void rescale(cplx<Real>& m, Real& s) {
  using std::abs;
  const Real a = std::max(abs(m.real()), abs(m.imag()));
  if (a > Real(1e100) || (a < Real(1e-100) && a > Real(0))) {
    const int e = std::ilogb(a);
    m = cplx<Real>(std::ldexp(m.real(), -e), std::ldexp(m.imag(), -e));
    s += Real(e) * std::numbers::ln2_v<Real>;
  }
}

/// Starting order for the downward log-derivative recurrence.
template <class Real>
inline int downward_start(int l_max, const cplx<Real>& z) {
  const double az = static_cast<double>(std::abs(z));
  return std::max(l_max, static_cast<int>(std::ceil(az))) + 16 +
         static_cast<int>(std::ceil(4.0 * std::cbrt(az)));
}

/// Fills D[0..l_max] with psi_l'/psi_l.
template <class Real>
void psi_log_derivative(int l_max, const cplx<Real>& z, std::vector<cplx<Real>>& D) {
  D.assign(static_cast<std::size_t>(l_max) + 1, cplx<Real>(0));
  const int start = downward_start(l_max, z);
  cplx<Real> d(0);
  for (int n = start; n > l_max; --n) {
    const cplx<Real> nz = Real(n) / z;
    d = nz - Real(1) / (d + nz);
  }
  D[l_max] = d;
  for (int n = l_max; n >= 1; --n) {
    const cplx<Real> nz = Real(n) / z;
    D[n - 1] = nz - Real(1) / (D[n] + nz);
  }
}

/// Outgoing Riccati-Hankel data for l = 0..l_max.
template <class Real>
struct OutgoingSequence {
  std::vector<cplx<Real>> G;      // xi_l'/xi_l
  std::vector<cplx<Real>> mant;   // xi_l = mant * exp(scale)
  std::vector<Real> scale;
};

template <class Real>
void outgoing_sequence(int l_max, const cplx<Real>& z, OutgoingSequence<Real>& out) {
  const std::size_t n = static_cast<std::size_t>(l_max) + 1;
  out.G.resize(n);
  out.mant.resize(n);
  out.scale.resize(n);
  const cplx<Real> I(0, 1);
  // xi_0 = -i e^{iz}, xi_0'/xi_0 = i
  cplx<Real> m = -I * std::exp(I * cplx<Real>(z.real(), Real(0)));
  Real s = -z.imag();
  out.G[0] = I;
  out.mant[0] = m;
  out.scale[0] = s;
  if (l_max == 0) return;
  cplx<Real> q = -I + Real(1) / z;  // xi_1/xi_0
  for (int l = 1; l <= l_max; ++l) {
    if (l > 1) q = Real(2 * l - 1) / z - Real(1) / q;
    m *= q;
    rescale(m, s);
    out.G[l] = Real(1) / q - Real(l) / z;
    out.mant[l] = m;
    out.scale[l] = s;
  }
}

}  // namespace confheat::detail
