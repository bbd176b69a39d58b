/*
 * mie_modes.hpp -- sphere and cavity scattering amplitudes for l = 1..L at
 * one frequency, templated on the real type.
 *
 * With u the interface parameter of the other medium (u_M = n D_l(n x),
 * u_N = D_l(n x)/n for a sphere; u_M = n G_l(n x), u_N = G_l(n x)/n for a
 * cavity wall), D = psi'/psi and G = xi'/xi at the vacuum argument x, and
 * the Wronskian psi xi' - psi' xi = i:
 *
 *   sphere   T  = -i (D - u) / (xi^2 (G - D)(G - u))
 *            -(Re T + |T|^2) = -Im u / (|xi|^2 |G - u|^2)
 *   cavity   T~ = i xi^2 (G - D)(G - u) / (D - u)
 *            Re T~ + 1 = Im u |xi|^2 |G - D|^2 / |D - u|^2
 *
 * xi^2 = mant^2 e^{2 s} is carried as a mantissa plus exponent, so every
 * amplitude is  value = mantissa * e^{scale}  with a per-l scale shared by
 * both polarizations (-2 s_l for the sphere, +2 s_l for the cavity).
 */
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "confheat/detail/riccati_recurrences.hpp"

namespace confheat::detail {

enum class MediumKind { Regular, Transparent, Mirror };

template <class Real>
struct ModeTable {
  // index l = 0..L (entry 0 unused); [0] = M, [1] = N
  std::vector<cplx<Real>> t[2];   // amplitude mantissa
  std::vector<Real> weight[2];    // sphere: loss = -(Re T + |T|^2); cavity: Re T~ + 1
  std::vector<Real> scale;        // value = mantissa * exp(scale)
};

template <class Real>
struct RealArgumentData {
  std::vector<cplx<Real>> D;
  OutgoingSequence<Real> out;
};

template <class Real>
void real_argument_data(int L, Real x, RealArgumentData<Real>& r) {
  psi_log_derivative(L, cplx<Real>(x, 0), r.D);
  outgoing_sequence(L, cplx<Real>(x, 0), r.out);
}

/// Homogeneous sphere of refractive index n (Im n >= 0) and size parameter x.
template <class Real>
void sphere_modes(int L, MediumKind kind, cplx<Real> n, Real x, ModeTable<Real>& tab) {
  const std::size_t size = static_cast<std::size_t>(L) + 1;
  for (auto& v : tab.t) v.assign(size, cplx<Real>(0));
  for (auto& v : tab.weight) v.assign(size, Real(0));
  tab.scale.assign(size, Real(0));
  if (kind == MediumKind::Transparent) return;

  RealArgumentData<Real> ra;
  real_argument_data(L, x, ra);
  std::vector<cplx<Real>> Dn;
  if (kind == MediumKind::Regular) psi_log_derivative(L, n * x, Dn);
  const cplx<Real> I(0, 1);
  for (int l = 1; l <= L; ++l) {
    const std::size_t i = static_cast<std::size_t>(l);
    const cplx<Real> D = ra.D[i], G = ra.out.G[i], xm = ra.out.mant[i];
    const cplx<Real> xi2 = xm * xm;
    const Real axi2 = std::norm(xm);
    tab.scale[i] = -Real(2) * ra.out.scale[i];
    if (kind == MediumKind::Mirror) {
      // u_M -> infinity, u_N -> 0
      tab.t[0][i] = -I / (xi2 * (G - D));
      tab.t[1][i] = -I * D / (xi2 * (G - D) * G);
      continue;
    }
    const cplx<Real> u[2] = {n * Dn[i], Dn[i] / n};
    for (int p = 0; p < 2; ++p) {
      tab.t[p][i] = -I * (D - u[p]) / (xi2 * (G - D) * (G - u[p]));
      tab.weight[p][i] = -u[p].imag() / (axi2 * std::norm(G - u[p]));
    }
  }
}

/// Spherical cavity of radius parameter x in a wall of refractive index n.
template <class Real>
void cavity_modes(int L, MediumKind kind, cplx<Real> n, Real x, ModeTable<Real>& tab) {
  const std::size_t size = static_cast<std::size_t>(L) + 1;
  for (auto& v : tab.t) v.assign(size, cplx<Real>(0));
  for (auto& v : tab.weight) v.assign(size, Real(0));
  tab.scale.assign(size, Real(0));
  if (kind == MediumKind::Transparent) {
    for (auto& v : tab.weight) v.assign(size, Real(1));
    return;
  }

  RealArgumentData<Real> ra;
  real_argument_data(L, x, ra);
  OutgoingSequence<Real> wall;
  if (kind == MediumKind::Regular) outgoing_sequence(L, n * x, wall);
  const cplx<Real> I(0, 1);
  for (int l = 1; l <= L; ++l) {
    const std::size_t i = static_cast<std::size_t>(l);
    const cplx<Real> D = ra.D[i], G = ra.out.G[i], xm = ra.out.mant[i];
    const cplx<Real> xi2 = xm * xm;
    const Real axi2 = std::norm(xm);
    tab.scale[i] = Real(2) * ra.out.scale[i];
    if (kind == MediumKind::Mirror) {
      // -xi/psi and -xi'/psi' at real x are -1 + i*(real); pin the real part
      // exactly instead of recovering it from the difference G - D.
      const Real re = -std::exp(-tab.scale[i]);
      tab.t[0][i] = cplx<Real>(re, (I * xi2 * (G - D)).imag());
      tab.t[1][i] = cplx<Real>(re, (I * xi2 * (G - D) * G / D).imag());
      continue;
    }
    const cplx<Real> u[2] = {n * wall.G[i], wall.G[i] / n};
    for (int p = 0; p < 2; ++p) {
      tab.t[p][i] = I * xi2 * (G - D) * (G - u[p]) / (D - u[p]);
      tab.weight[p][i] = u[p].imag() * axi2 * std::norm(G - D) / std::norm(D - u[p]);
    }
  }
}

}  // namespace confheat::detail
