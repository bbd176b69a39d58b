/*
 * specfun.hpp -- special functions and thermal weights.
 *
 * Cylindrical Bessel functions of order 0, 1, 2 for the angular-integrated
 * plate Green's function; spherical Bessel/Hankel functions and the
 * Riccati-Bessel bundle for sphere and cavity scattering; Planck factor and
 * thermal wavelength.
 *
 * All functions are pure and re-entrant.
 */
#pragma once

#include <complex>

namespace confheat::specfun {

using cdouble = std::complex<double>;

/// J_order(x) for order in {0, 1, 2} and finite x >= 0.
double cyl_bessel_j(int order, double x);

/// J_1(x)/x with the x -> 0 limit 1/2.
double j1_over_x(double x);

/// Spherical Bessel j_l(z). Throws OverflowError when |j_l| exceeds double range.
cdouble sph_bessel_regular(int l, cdouble z);

/// Spherical Hankel h_l^(1)(z) for Im z >= 0, z != 0.
cdouble sph_hankel1(int l, cdouble z);

/// h_l^(1)(z) e^{-iz}; finite where the unscaled value would underflow.
cdouble sph_hankel1_scaled(int l, cdouble z);

/*! \brief Riccati-Bessel functions psi_l = z j_l, xi_l = z h_l^(1) and their
 *  derivatives at one (l, z).
 *
 *  Stored values carry a common real exponent so that huge/tiny pairs stay
 *  representable:
 *
 *      psi_true = psi * e^{+log_scale},   xi_true = xi * e^{-log_scale}
 *
 *  (and likewise for the primes). Products psi*xi, and hence the Wronskian,
 *  are unaffected by the scale.
 */
struct RiccatiBundle {
  cdouble psi;
  cdouble psi_prime;
  cdouble xi;
  cdouble xi_prime;
  double log_scale = 0.0;

  cdouble wronskian() const { return psi * xi_prime - psi_prime * xi; }

  // Unscaled accessors; throw OverflowError if not representable.
  cdouble psi_value() const;
  cdouble psi_prime_value() const;
  cdouble xi_value() const;
  cdouble xi_prime_value() const;
};

RiccatiBundle riccati_bundle(int l, cdouble z);

/// hbar*omega / (exp(hbar*omega/(k_B T)) - 1)  [J].
double planck_factor(double omega, double T);

/// hbar*c/(k_B T)  [m].
double thermal_wavelength(double T);

}  // namespace confheat::specfun
