/*
 * mie.hpp -- scattering amplitudes of a homogeneous sphere (exterior field
 * = regular + T * outgoing) and of a spherical cavity in an infinite wall
 * (interior field = outgoing + T~ * regular).
 *
 * Conventions are those forced by the limit identities:
 *   eps -> 1:          T = 0, T~ = 0
 *   mirror sphere:     Re T = -|T|^2
 *   mirror wall:       Re T~ = -1,  T~_M = -h_l/j_l,  T~_N = -xi_l'/psi_l'
 *   small sphere:      T_1^N -> i (2/3) x^3 (eps - 1)/(eps + 2)
 */
#pragma once

#include <complex>

#include "confheat/constants.hpp"
#include "confheat/detail/mie_modes.hpp"
#include "confheat/materials.hpp"

namespace confheat::mie {

using cdouble = std::complex<double>;
using materials::Polarization;

struct SphereSpec {
  materials::PermittivityModel permittivity;
  double radius;  // m
};

struct CavitySpec {
  materials::PermittivityModel wall_permittivity;
  double radius;  // m
};

/// T_l^P of the sphere; l >= 1.
cdouble sphere_t(int l, Polarization p, const SphereSpec& sphere, double omega);

/// T~_l^P of the cavity; l >= 1. Throws OverflowError when |T~| exceeds
/// double range (high l at small radius parameter).
cdouble cavity_t(int l, Polarization p, const CavitySpec& cavity, double omega);

/// Medium classification and refractive index (Im n >= 0) at omega.
struct MediumIndex {
  detail::MediumKind kind;
  cdouble n;
};
MediumIndex medium_index(const materials::PermittivityModel& model, double omega);

/// Size parameter omega R / c.
inline double size_parameter(double radius, double omega) { return omega * radius / kConstants.c; }

/// All amplitudes l = 1..L at one frequency (scaled form, see mie_modes.hpp).
template <class Real>
void sphere_table(const SphereSpec& sphere, double omega, int L, detail::ModeTable<Real>& tab) {
  const MediumIndex mi = medium_index(sphere.permittivity, omega);
  detail::sphere_modes<Real>(L, mi.kind, detail::cplx<Real>(mi.n.real(), mi.n.imag()),
                             Real(size_parameter(sphere.radius, omega)), tab);
}

template <class Real>
void cavity_table(const CavitySpec& cavity, double omega, int L, detail::ModeTable<Real>& tab) {
  const MediumIndex mi = medium_index(cavity.wall_permittivity, omega);
  detail::cavity_modes<Real>(L, mi.kind, detail::cplx<Real>(mi.n.real(), mi.n.imag()),
                             Real(size_parameter(cavity.radius, omega)), tab);
}

}  // namespace confheat::mie
