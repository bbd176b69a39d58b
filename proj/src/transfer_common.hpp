/*
 * transfer_common.hpp -- helpers shared by the spectral integrals and the
 * dense trace oracle (private to the library).
 */
#pragma once

#include <span>
#include <utility>

#include "confheat/quadrature.hpp"
#include "confheat/transfer.hpp"

namespace confheat::transfer::detail {

/// [x_min, x_max] * k_B T / hbar.
std::pair<double, double> omega_window(double T, const FrequencyOptions& opts);

/// Adaptive or fixed-partition integration per opts; throws QuadratureError
/// when the adaptive run misses its tolerance.
quad::Result run_frequency_quadrature(const quad::Integrand& f, int dim,
                                      std::span<const double> breakpoints,
                                      const FrequencyOptions& opts, const char* what);

SpectralResult make_result(const quad::Result& r, int component, std::pair<double, double> window,
                           int l_max);

void check_sphere_cavity(const SphereSpec& sphere, const CavitySpec& cavity, double T1);

}  // namespace confheat::transfer::detail
