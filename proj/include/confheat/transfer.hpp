/*
 * transfer.hpp -- heat-flux quantities.
 *
 *   pp_pp_transfer        point particle 1 -> point particle 2 in a given
 *                         environment (Green's-function provider)
 *   sphere_in_cavity_hr   radiation of a sphere centred in a spherical cavity
 *   free_sphere_hr        the same without the cavity (separate code path)
 *   hr_trace_oracle       dense-matrix trace form of the sphere/cavity
 *                         radiation (test oracle, l_max <= 64)
 *   dipole_limit_hr       l = 1 term without multiple reflections
 *   pp_in_cavity_hr       dipole emission with the cavity l = 1 reflection
 *   net_sphere_hr         H(T1) - H(TC), positive when the sphere cools
 *   plate_plate_ht_per_area
 *                         two half-spaces across a vacuum gap
 *
 * Every spectral integral runs over hbar omega / (k_B T) in
 * [x_min, x_max] (default [1e-2, 50]) with material resonances inserted as
 * panel boundaries.
 */
#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "confheat/greens.hpp"
#include "confheat/materials.hpp"
#include "confheat/mie.hpp"
#include "confheat/quadrature.hpp"

namespace confheat::transfer {

using materials::ParticleSpec;
using materials::PermittivityModel;
using mie::CavitySpec;
using mie::SphereSpec;

struct SpectralResult {
  double power = 0.0;             // W (W/m^2 for per-area quantities)
  double quadrature_error = 0.0;  // same unit
  std::pair<double, double> omega_window{0.0, 0.0};  // rad/s
  int l_max_used = 0;
  long evaluations = 0;
};

struct TemperatureAssignment {
  double T1;  // emitter, K
  double TC;  // cavity wall, K (0 = cold)
};

struct FrequencyOptions {
  double rel_tol = 1e-7;
  double abs_tol = 0.0;                // W per unit of the quantity
  double x_min = 1e-2;                 // hbar omega / k_B T
  double x_max = 50.0;
  int panels_per_decade = 4;           // initial log partition
  int max_intervals = 20000;
  double min_width_rel = 1e-6;         // smallest panel, relative to omega
  quad::Rule rule = quad::Rule::GK21;
  bool adaptive = true;                // false: evaluate the initial partition only
  std::vector<double> extra_breakpoints;  // rad/s

  void validate() const;
};

/// Multipole truncation: fixed order, or doubling from an automatic start
/// until the integral changes by less than rel_change.
struct LControl {
  int fixed = 0;  // > 0: use exactly this l_max
  int cap = 2048;
  double rel_change = 1e-6;

  static LControl automatic() { return {}; }
  static LControl at(int l_max) { return {l_max, 2048, 1e-6}; }
};

/// omega -> G(r1, r2, omega) for the particle pair.
using GfProvider = std::function<greens::ComplexTensor3(double omega)>;

GfProvider vacuum_provider(double r);
GfProvider two_plate_provider(greens::PlateCavityGeometry geom, greens::KPerpQuadratureSpec quad);
/// Both particles at height h below one plate.
GfProvider single_plate_provider(double r, double h, PermittivityModel plate,
                                 greens::KPerpQuadratureSpec quad);

struct PPTransferResult {
  SpectralResult result;           // W
  double per_volume2 = 0.0;        // H / (V1 V2), W/m^6
  double per_volume2_error = 0.0;
};

/// Heat emitted by particle 1 at T1 and absorbed by particle 2.
/// Provider failures are rethrown as ProviderError carrying omega.
PPTransferResult pp_pp_transfer(const ParticleSpec& p1, const ParticleSpec& p2, double T1,
                                const GfProvider& gf, const FrequencyOptions& opts = {});

SpectralResult sphere_in_cavity_hr(const SphereSpec& sphere, const CavitySpec& cavity, double T1,
                                   const LControl& l_control = LControl::automatic(),
                                   const FrequencyOptions& opts = {});

/// Partial sums of the sphere/cavity radiation for every l_max in l_values
/// (strictly increasing), integrated on shared panels.
std::vector<SpectralResult> sphere_in_cavity_partial_sums(const SphereSpec& sphere,
                                                          const CavitySpec& cavity, double T1,
                                                          std::span<const int> l_values,
                                                          const FrequencyOptions& opts = {});

SpectralResult free_sphere_hr(const SphereSpec& sphere, double T1,
                              const LControl& l_control = LControl::automatic(),
                              const FrequencyOptions& opts = {});

/// Always integrates on the fixed initial partition of opts (no refinement),
/// so comparisons use opts.adaptive = false on the other side as well.
SpectralResult hr_trace_oracle(const SphereSpec& sphere, const CavitySpec& cavity, double T1,
                               int l_max, const FrequencyOptions& opts = {});

SpectralResult dipole_limit_hr(const SphereSpec& sphere, const CavitySpec& cavity, double T1,
                               const FrequencyOptions& opts = {});

SpectralResult pp_in_cavity_hr(const ParticleSpec& particle, const CavitySpec& cavity, double T1,
                               const FrequencyOptions& opts = {});

/// Signed; power > 0 means the sphere loses heat.
SpectralResult net_sphere_hr(const SphereSpec& sphere, const CavitySpec& cavity,
                             const TemperatureAssignment& temps,
                             const LControl& l_control = LControl::automatic(),
                             const FrequencyOptions& opts = {});

/// W/m^2 from plate 1 (T1) to plate 2 (T2). A transparent plate neither
/// absorbs nor emits, so it gives 0.
SpectralResult plate_plate_ht_per_area(const PermittivityModel& plate1,
                                       const PermittivityModel& plate2, double gap, double T1,
                                       double T2, const FrequencyOptions& opts = {});

/// Default frequency partition for temperature T and the given materials.
std::vector<double> frequency_breakpoints(double T, std::span<const PermittivityModel* const> mats,
                                          const FrequencyOptions& opts);

/// Starting multipole order of the automatic control.
int auto_l_start(double sphere_radius, double omega_max);

}  // namespace confheat::transfer
