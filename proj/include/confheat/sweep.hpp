/*
 * sweep.hpp -- parameter sweeps and multipole convergence studies.
 *
 * Grid points are independent; they are distributed over a small pool of
 * worker threads (CONFHEAT_WORKERS, default: hardware concurrency) and the
 * records are assembled in grid order. Each point runs its frequency
 * quadrature serially, so output is bit-identical for any worker count.
 */
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "confheat/greens.hpp"
#include "confheat/transfer.hpp"

namespace confheat::sweep {

enum class Quantity {
  PPTwoPlates,     // particle-particle transfer at the midplane of two plates
  PPSinglePlate,   // same, both particles at d/2 below one plate
  PPVacuum,        // same, free space
  SphereCavityHR,  // sphere radiation inside the cavity, full multipole sum
  DipoleLimitHR,   // l = 1 term without multiple reflections
  PPCavityHR,      // point-particle emission with the cavity l = 1 reflection
  PlatePlatePA,    // plate-plate flux per area, sphere material vs. wall material
  FreeSphereHR,    // sphere radiation without cavity
};

const char* quantity_name(Quantity q);                  // e.g. "sphere-cavity-hr"
std::optional<Quantity> parse_quantity(const std::string& name);
/// CSV column stem, e.g. "H_over_V1V2_two_plates" or "H_cavity_W".
const char* quantity_column(Quantity q);

/// Parameters shared by all quantities; the swept one is overwritten per point.
struct Configuration {
  materials::ParticleSpec particle1{materials::silicon_carbide(), 10e-9};
  materials::ParticleSpec particle2{materials::silicon_carbide(), 10e-9};
  materials::PermittivityModel plates = materials::silicon_carbide();
  double d = 0.2e-6;  // plate separation, m
  double r = 2e-6;    // particle separation, m
  mie::SphereSpec sphere{materials::silicon_carbide(), 0.1e-6};
  mie::CavitySpec cavity{materials::gold(), 2e-6};
  double T1 = 300.0;  // emitter, K
  double T2 = 0.0;    // receiver / wall for the plate-plate flux, K
};

/// Names accepted as swept parameters.
inline constexpr const char* kSweepParameters[] = {"r", "d", "gap", "cavity_radius",
                                                   "sphere_radius", "particle_radius", "T1"};
bool is_length_parameter(const std::string& name);
void apply_parameter(Configuration& config, const std::string& name, double value);

enum class Spacing { Linear, Log };

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 2;
  Spacing spacing = Spacing::Log;

  std::vector<double> values() const;
  void validate() const;
};

struct Tolerances {
  transfer::FrequencyOptions frequency;
  greens::KPerpQuadratureSpec kperp;
  transfer::LControl l_control;
};

struct Variant {
  std::string label;  // empty for a single unlabeled configuration
  Configuration config;
};

struct SweepSpec {
  std::vector<Quantity> quantities;
  std::string parameter;
  Grid grid;
  std::vector<Variant> variants;
  Tolerances tolerances;

  void validate() const;
};

struct QuantityResult {
  Quantity quantity;
  std::string variant;
  bool ok = false;
  transfer::SpectralResult result;
  /// H/(V1 V2) in W/m^6 for particle quantities, (H/A) 4 pi R^2 in W for the
  /// plate-plate flux, otherwise the power itself.
  double normalized = 0.0;
  double normalized_error = 0.0;
  std::string error;  // empty when ok
};

struct SweepRecord {
  double parameter = 0.0;
  std::vector<QuantityResult> results;
  /// Normalized ratios, present only when numerator and normalizer succeeded.
  std::vector<std::pair<std::string, double>> ratios;

  bool ok() const;
};

/// Evaluates one grid point (all quantities, all variants).
SweepRecord evaluate_point(const SweepSpec& spec, double value);

/// workers <= 0: take CONFHEAT_WORKERS, else hardware concurrency.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int workers = 0);

int worker_count();

/// Deterministic parallel map over [0, n).
void parallel_for(int n, int workers, const std::function<void(int)>& body);

// ------------------------------------------------------------ convergence

struct ConvergenceConfig {
  std::string label;
  mie::SphereSpec sphere;
  mie::CavitySpec cavity;
  double T1 = 300.0;
  Tolerances tolerances;
};

struct ConvergenceStudy {
  std::string label;
  std::vector<int> l_values;
  std::vector<double> ratio;        // partial(l_max) / converged
  transfer::SpectralResult converged;
  std::vector<double> free_ratio;   // same for the sphere without cavity
  transfer::SpectralResult free_converged;
};

ConvergenceStudy convergence_study(const ConvergenceConfig& config, std::span<const int> l_values);

std::vector<ConvergenceStudy> convergence_studies(const std::vector<ConvergenceConfig>& configs,
                                                  std::span<const int> l_values, int workers = 0);

/// Smallest l_max whose ratio reaches `level` (0 when none does).
int first_reaching(const ConvergenceStudy& s, double level);

}  // namespace confheat::sweep
