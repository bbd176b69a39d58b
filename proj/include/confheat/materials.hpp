/*
 * materials.hpp -- dielectric models, Fresnel coefficients and the dipole
 * polarizability of a small sphere.
 *
 * Square roots follow the outgoing/decaying branch: Im sqrt(.) >= 0.
 * PerfectMirror is symbolic; the code paths that can take the limit
 * analytically (Fresnel, polarizability, Mie) do so, everything else
 * rejects it with ContractViolation.
 */
#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace confheat::materials {

using cdouble = std::complex<double>;

/// eps_inf (w^2 - w_LO^2 + i w g) / (w^2 - w_TO^2 + i w g)
struct LorentzOscillator {
  double eps_inf;
  double omega_LO;
  double omega_TO;
  double gamma;
};

/// 1 - w_p^2 / (w (w + i w_tau))
struct Drude {
  double omega_p;
  double omega_tau;
};

/// Drude with the damping rate replaced by omega_tau_tilde.
struct ScaledDampingDrude {
  double omega_p;
  double omega_tau_tilde;
};

struct Transparent {};
struct PerfectMirror {};

/// Sampled eps(omega), interpolated linearly in log(omega) on Re and Im
/// separately. Queries outside [omega.front(), omega.back()] are errors.
struct Tabulated {
  std::vector<double> omega;  // strictly increasing, > 0
  std::vector<cdouble> eps;
  std::string source;         // file name, for metadata
};

using PermittivityModel =
    std::variant<LorentzOscillator, Drude, ScaledDampingDrude, Transparent, PerfectMirror, Tabulated>;

enum class Polarization { M, N };

struct ParticleSpec {
  PermittivityModel permittivity;
  double radius;  // m
};

// Built-in parameter sets.
LorentzOscillator silicon_carbide();
Drude gold();
/// Gold plasma frequency with damping omega_tau * ratio.
ScaledDampingDrude gold_scaled_damping(double ratio);

bool is_mirror(const PermittivityModel& m);
bool is_transparent(const PermittivityModel& m);

/// eps(omega). Throws ContractViolation for PerfectMirror, DomainError for
/// omega <= 0 or a tabulated query out of range.
cdouble permittivity(const PermittivityModel& model, double omega);

/// Reads a tabulated model: columns (omega [rad/s], Re eps, Im eps) or
/// (omega, Re eps) for a lossless table; '#' starts a comment line.
Tabulated load_tabulated(const std::string& path);

/// sqrt with Im >= 0 (the +i0 prescription on the negative real axis).
cdouble sqrt_upper(cdouble z);

/// Fresnel coefficient given the vacuum normal wavenumber kz (Im kz >= 0),
/// the squared in-plane wavenumber and k^2 = (omega/c)^2. Written so that
/// F -> 0 without cancellation as eps -> 1.
cdouble fresnel_kz(cdouble eps, cdouble kz, double k_perp2, double k2, Polarization p);

/// Fresnel coefficient at (k_perp, omega) for a numeric permittivity.
cdouble fresnel(cdouble eps, double k_perp, double omega, Polarization p);

/// Same for a model; PerfectMirror gives F^M = -1, F^N = +1 exactly.
cdouble fresnel(const PermittivityModel& model, double k_perp, double omega, Polarization p);

/// alpha = R^3 (eps - 1)/(eps + 2); PerfectMirror gives R^3, Transparent 0.
cdouble polarizability(const ParticleSpec& particle, double omega);

/// Particle volume 4 pi R^3 / 3.
double volume(const ParticleSpec& particle);

/// Frequencies where the model has sharp features (TO/LO, surface and
/// sphere resonances, plasma-related points); used as quadrature breakpoints.
std::vector<double> feature_frequencies(const PermittivityModel& model);

/// Short human-readable description, e.g. "lorentz(6.7,1.82e14,1.48e14,8.93e11)".
std::string describe(const PermittivityModel& model);

}  // namespace confheat::materials
