/*
 * greens.hpp -- dyadic Green's functions: vacuum, one plate, and the
 * midplane of two identical plates.
 *
 * Frame: plates at z = 0 and z = -d, both points at z = -d/2 (two plates)
 * or at height h below a single plate at z = 0; the source sits at the
 * origin of the x-y plane and the observation point at (r, 0). All tensors
 * are in this frame and carry units 1/m.
 *
 * The scattered parts are one-dimensional k_perp integrals after analytic
 * angular integration. The propagating sector k_perp < k is integrated in
 * the polar angle (k_perp = k sin t), the evanescent sector in
 * kappa = sqrt(k_perp^2 - k^2), truncated at kappa_max = cutoff / d.
 */
#pragma once

#include <array>
#include <complex>

#include "confheat/materials.hpp"
#include "confheat/quadrature.hpp"

namespace confheat::greens {

using cdouble = std::complex<double>;

struct ComplexTensor3 {
  std::array<cdouble, 9> a{};

  cdouble& operator()(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
  const cdouble& operator()(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }

  /// sum_ij |G_ij|^2
  double sum_abs2() const;
  double frobenius_norm() const;
  double off_diagonal_norm() const;
  ComplexTensor3 transpose() const;

  ComplexTensor3& operator+=(const ComplexTensor3& o);
  friend ComplexTensor3 operator+(ComplexTensor3 x, const ComplexTensor3& y) { return x += y; }
  friend ComplexTensor3 operator-(ComplexTensor3 x, const ComplexTensor3& y);
};

struct PlateCavityGeometry {
  double d;  // plate separation, m
  double r;  // in-plane particle separation, m
  materials::PermittivityModel plate;
};

struct KPerpQuadratureSpec {
  double rel_tol = 1e-9;
  double evanescent_cutoff_exponent = 37.0;
  quad::Rule panel_rule = quad::Rule::GK15;
  int max_intervals = 400000;

  /// Throws DomainError unless rel_tol in (0, 1e-2] and cutoff >= 30.
  void validate() const;
};

/// Diagnostics of one k_perp integration.
struct GfDiagnostics {
  double error = 0.0;  // absolute error estimate on the scattered part (Frobenius)
  long evaluations = 0;
  int intervals = 0;
};

/// Free-space dyadic Green's function (1 + grad grad / k^2) e^{ik rho}/(4 pi rho).
ComplexTensor3 vacuum_gf(const std::array<double, 3>& separation, double omega);

/// Diagonals of the angular-integrated matrices M, N', N (real 3x3; all
/// off-diagonal entries vanish). k_z^2 = k^2 - k_perp^2 may be negative.
struct AngularMatrices {
  std::array<double, 9> M{}, N_prime{}, N{};
};
AngularMatrices angular_matrices(double k_perp, double r, double omega);

/// G(r2, r1) at the midplane of two identical plates.
ComplexTensor3 two_plate_midplane_gf(const PlateCavityGeometry& geom, double omega,
                                     const KPerpQuadratureSpec& quad,
                                     GfDiagnostics* diag = nullptr);

/// Partial sum of the multiple-reflection expansion of the two-plate
/// midplane Green's function, keeping n_reflections round trips between the
/// plates (n = 0: the two single-bounce and the two double-bounce images).
/// Throws ConditioningError for mirror plates, where the round-trip ratio
/// has unit modulus on the propagating sector.
ComplexTensor3 image_series_gf(const PlateCavityGeometry& geom, double omega, int n_reflections,
                               const KPerpQuadratureSpec& quad, GfDiagnostics* diag = nullptr);

/// G(r2, r1) with both points at height h in front of a single plate.
ComplexTensor3 single_plate_gf(double r, double h, double omega,
                               const materials::PermittivityModel& plate,
                               const KPerpQuadratureSpec& quad, GfDiagnostics* diag = nullptr);

}  // namespace confheat::greens
