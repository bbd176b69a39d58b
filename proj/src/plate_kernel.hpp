/*
 * plate_kernel.hpp -- shared k_perp integration for planar scattered Green's
 * functions (private to the library).
 *
 * After angular integration every planar configuration here reduces to
 *
 *   G_s = i/(4 pi^2) Int dk_perp k_perp/k_z { c_M M + c_N' N' + c_N N },
 *
 * so a configuration is characterised by its three reflection coefficients.
 * The kernel is written in terms of c_M, dN = c_N - c_N' and sN = c_N + c_N',
 * which is what enters the diagonal entries.
 */
#pragma once

#include <functional>

#include "confheat/greens.hpp"

namespace confheat::greens::detail {

struct PlateCoefficients {
  cdouble cM, dN, sN;
};

/// (F_M, F_N, k_z) -> coefficients; k_z has Im >= 0.
using CoefficientFn = std::function<PlateCoefficients(cdouble, cdouble, cdouble)>;

/// Scattered part at in-plane separation r. kappa_max bounds the evanescent
/// sector; `plate` supplies the Fresnel coefficients.
ComplexTensor3 scattered_gf(double r, double omega, double kappa_max,
                            const materials::PermittivityModel& plate, const CoefficientFn& coef,
                            const KPerpQuadratureSpec& quad, GfDiagnostics* diag);

}  // namespace confheat::greens::detail
