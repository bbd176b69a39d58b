/*
 * extended.hpp -- slow, independent reference values in multiprecision
 * arithmetic (Boost.Multiprecision). Shares no code with the library.
 *
 *   cyl_j_series        J_n(x) by its power series
 *   sph_j_series        j_l(z) by its ascending series
 *   sph_y_upward        y_l(z) by upward recurrence from the closed forms
 *   riccati_l1          psi_1, xi_1 and derivatives in closed form
 *   cavity_l1_solve     T~_1 from the 2x2 tangential-matching system
 *   planck              hbar w / (exp(hbar w / k T) - 1)
 */
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <complex>

namespace oracle {

using cplx = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<boost::multiprecision::cpp_bin_float<150>>,
    boost::multiprecision::et_off>;
using real = boost::multiprecision::component_type<cplx>::type;

inline cplx to_cplx(std::complex<double> z) { return cplx(real(z.real()), real(z.imag())); }
inline std::complex<double> to_double(const cplx& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// J_n(x) = sum_k (-1)^k (x/2)^{2k+n} / (k! (k+n)!)
inline real cyl_j_series(int n, const real& x) {
  const real h = x / 2, h2 = h * h;
  real term = 1;
  for (int i = 1; i <= n; ++i) term *= h / i;
  real sum = term;
  const real eps = real(1e-140) * (1 + abs(term));
  for (int k = 1; k < 100000; ++k) {
    term *= -h2 / (real(k) * real(k + n));
    sum += term;
    if (abs(term) < eps * 1e-10 && k > h) break;
  }
  return sum;
}

/// j_l(z) = z^l/(2l+1)!! sum_k (-z^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
inline cplx sph_j_series(int l, const cplx& z) {
  cplx lead = 1;
  for (int i = 1; i <= l; ++i) lead *= z / real(2 * i + 1);
  const cplx q = -z * z / real(2);
  cplx term = 1, sum = 1;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (real(k) * real(2 * l + 2 * k + 1));
    sum += term;
    if (abs(term) < real(1e-145) * abs(sum) && real(k) > abs(z)) break;
  }
  return lead * sum;
}

/// y_l(z) from y_0 = -cos z / z, y_1 = -cos z / z^2 - sin z / z.
inline cplx sph_y_upward(int l, const cplx& z) {
  cplx y0 = -cos(z) / z;
  if (l == 0) return y0;
  cplx y1 = -cos(z) / (z * z) - sin(z) / z;
  for (int n = 1; n < l; ++n) {
    const cplx y2 = real(2 * n + 1) / z * y1 - y0;
    y0 = y1;
    y1 = y2;
  }
  return y1;
}

struct Riccati {
  cplx psi, dpsi, xi, dxi;
};

/// Closed forms of psi_1 = sin z / z - cos z and xi_1 = -e^{iz}(1 + i/z).
inline Riccati riccati_l1(const cplx& z) {
  const cplx I(real(0), real(1));
  Riccati r;
  r.psi = sin(z) / z - cos(z);
  r.dpsi = cos(z) / z - sin(z) / (z * z) + sin(z);
  const cplx e = exp(I * z);
  r.xi = -e * (real(1) + I / z);
  r.dxi = -e * (I - real(1) / z - I / (z * z));
  return r;
}

/// T~_1 for a cavity of radius parameter x in a wall of index n: solves
///   M:  xi + T psi = t xi_w,      xi' + T psi' = t n xi_w'
///   N:  xi + T psi = t n xi_w,    xi' + T psi' = t xi_w'
/// with xi_w = xi_1(n x) (outgoing in the wall), by Cramer's rule.
inline cplx cavity_l1_solve(const cplx& n, const real& x, bool magnetic) {
  const Riccati v = riccati_l1(cplx(x, real(0)));
  const Riccati w = riccati_l1(n * x);
  const cplx a = magnetic ? w.xi : n * w.xi;    // coefficient of t, first row
  const cplx b = magnetic ? n * w.dxi : w.dxi;  // coefficient of t, second row
  // [psi  -a] [T]   [-xi ]
  // [psi' -b] [t] = [-xi']
  const cplx det = -v.psi * b + a * v.dpsi;
  return (v.xi * b - a * v.dxi) / det;
}

inline real planck(const real& omega, const real& T) {
  const real hbar("1.054571817e-34"), kB("1.380649e-23");
  const real e = hbar * omega;
  return e / (exp(e / (kB * T)) - 1);
}

}  // namespace oracle
