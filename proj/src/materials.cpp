/*
 * materials.cpp -- dielectric models, Fresnel coefficients, polarizability.
 */
#include "confheat/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "confheat/constants.hpp"
#include "confheat/errors.hpp"

namespace confheat::materials {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cdouble drude_eps(double omega_p, double omega_tau, double omega) {
  return 1.0 - omega_p * omega_p / (omega * cdouble(omega, omega_tau));
}

cdouble tabulated_eps(const Tabulated& t, double omega) {
  if (t.omega.size() < 2) throw DomainError("tabulated permittivity needs at least two rows");
  if (omega < t.omega.front() || omega > t.omega.back())
    throw DomainError("tabulated permittivity queried outside its range at omega = " +
                      std::to_string(omega));
  auto it = std::upper_bound(t.omega.begin(), t.omega.end(), omega);
  std::size_t hi = static_cast<std::size_t>(it - t.omega.begin());
  if (hi >= t.omega.size()) hi = t.omega.size() - 1;
  const std::size_t lo = hi - 1;
  const double u = std::log(omega / t.omega[lo]) / std::log(t.omega[hi] / t.omega[lo]);
  return t.eps[lo] + u * (t.eps[hi] - t.eps[lo]);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

LorentzOscillator silicon_carbide() { return {6.7, 1.82e14, 1.48e14, 8.93e11}; }

Drude gold() { return {1.37e16, 4.06e13}; }

ScaledDampingDrude gold_scaled_damping(double ratio) {
  if (!(ratio > 0.0)) throw DomainError("damping scale must be positive");
  const Drude g = gold();
  return {g.omega_p, g.omega_tau * ratio};
}

bool is_mirror(const PermittivityModel& m) { return std::holds_alternative<PerfectMirror>(m); }

bool is_transparent(const PermittivityModel& m) {
  return std::holds_alternative<Transparent>(m);
}

cdouble permittivity(const PermittivityModel& model, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw DomainError("permittivity: frequency must be positive and finite");
  return std::visit(
      overloaded{
          [&](const LorentzOscillator& m) -> cdouble {
            const cdouble num(omega * omega - m.omega_LO * m.omega_LO, omega * m.gamma);
            const cdouble den(omega * omega - m.omega_TO * m.omega_TO, omega * m.gamma);
            return m.eps_inf * num / den;
          },
          [&](const Drude& m) -> cdouble { return drude_eps(m.omega_p, m.omega_tau, omega); },
          [&](const ScaledDampingDrude& m) -> cdouble {
            return drude_eps(m.omega_p, m.omega_tau_tilde, omega);
          },
          [&](const Transparent&) -> cdouble { return 1.0; },
          [&](const PerfectMirror&) -> cdouble {
            throw ContractViolation("a perfect mirror has no finite permittivity");
          },
          [&](const Tabulated& t) -> cdouble { return tabulated_eps(t, omega); },
      },
      model);
}

Tabulated load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open permittivity table '" + path + "'");
  Tabulated t;
  t.source = path;
  std::string line;
  int lineno = 0;
  int columns = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<double> v;
    double x;
    while (ls >> x) v.push_back(x);
    if (!ls.eof() || (v.size() != 2 && v.size() != 3))
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected 2 or 3 numeric columns");
    if (columns == 0) columns = static_cast<int>(v.size());
    if (static_cast<int>(v.size()) != columns)
      throw DomainError(path + ":" + std::to_string(lineno) + ": inconsistent column count");
    if (!(v[0] > 0.0)) throw DomainError(path + ":" + std::to_string(lineno) + ": omega must be > 0");
    if (!t.omega.empty() && !(v[0] > t.omega.back()))
      throw DomainError(path + ":" + std::to_string(lineno) + ": omega must be strictly increasing");
    t.omega.push_back(v[0]);
    t.eps.emplace_back(v[1], v.size() == 3 ? v[2] : 0.0);
  }
  if (t.omega.size() < 2) throw DomainError(path + ": need at least two data rows");
  return t;
}

cdouble sqrt_upper(cdouble z) {
  // sqrt(-a - 0i) = -i sqrt(a) in std::sqrt; flipping restores the +i0 branch
  const cdouble r = std::sqrt(z);
  return r.imag() < 0.0 ? -r : r;
}

cdouble fresnel_kz(cdouble eps, cdouble kz, double k_perp2, double k2, Polarization p) {
  const cdouble kze = sqrt_upper(eps * k2 - k_perp2);
  if (p == Polarization::M) {
    const cdouble s = kz + kze;
    return (1.0 - eps) * k2 / (s * s);
  }
  const cdouble s = eps * kz + kze;
  return (eps - 1.0) * (eps * k2 - (eps + 1.0) * k_perp2) / (s * s);
}

cdouble fresnel(cdouble eps, double k_perp, double omega, Polarization p) {
  if (!(k_perp >= 0.0)) throw DomainError("fresnel: k_perp must be >= 0");
  if (!(omega > 0.0)) throw DomainError("fresnel: omega must be > 0");
  const double k = omega / kConstants.c;
  const double k2 = k * k;
  const double kp2 = k_perp * k_perp;
  const cdouble kz = sqrt_upper(cdouble(k2 - kp2, 0.0));
  return fresnel_kz(eps, kz, kp2, k2, p);
}

cdouble fresnel(const PermittivityModel& model, double k_perp, double omega, Polarization p) {
  if (is_mirror(model)) return p == Polarization::M ? -1.0 : 1.0;
  if (is_transparent(model)) return 0.0;
  return fresnel(permittivity(model, omega), k_perp, omega, p);
}

cdouble polarizability(const ParticleSpec& particle, double omega) {
  if (!(particle.radius > 0.0)) throw DomainError("particle radius must be positive");
  const double r3 = particle.radius * particle.radius * particle.radius;
  if (is_mirror(particle.permittivity)) return r3;
  if (is_transparent(particle.permittivity)) return 0.0;
  const cdouble eps = permittivity(particle.permittivity, omega);
  return r3 * (eps - 1.0) / (eps + 2.0);
}

double volume(const ParticleSpec& particle) {
  return 4.0 * kPi / 3.0 * particle.radius * particle.radius * particle.radius;
}

std::vector<double> feature_frequencies(const PermittivityModel& model) {
  return std::visit(
      overloaded{
          [](const LorentzOscillator& m) -> std::vector<double> {
            const double to2 = m.omega_TO * m.omega_TO, lo2 = m.omega_LO * m.omega_LO;
            // eps = -2 (small-sphere resonance) and eps = -1 (surface resonance)
            const double w_sphere = std::sqrt((m.eps_inf * lo2 + 2.0 * to2) / (m.eps_inf + 2.0));
            const double w_surface = std::sqrt((m.eps_inf * lo2 + to2) / (m.eps_inf + 1.0));
            return {m.omega_TO, w_sphere, w_surface, m.omega_LO};
          },
          [](const Drude& m) -> std::vector<double> {
            return {m.omega_tau, m.omega_p / std::sqrt(3.0), m.omega_p / std::sqrt(2.0), m.omega_p};
          },
          [](const ScaledDampingDrude& m) -> std::vector<double> {
            return {m.omega_tau_tilde, m.omega_p / std::sqrt(3.0), m.omega_p / std::sqrt(2.0),
                    m.omega_p};
          },
          [](const Transparent&) -> std::vector<double> { return {}; },
          [](const PerfectMirror&) -> std::vector<double> { return {}; },
          [](const Tabulated&) -> std::vector<double> { return {}; },
      },
      model);
}

std::string describe(const PermittivityModel& model) {
  return std::visit(
      overloaded{
          [](const LorentzOscillator& m) {
            return "lorentz(eps_inf=" + fmt(m.eps_inf) + ",omega_LO=" + fmt(m.omega_LO) +
                   ",omega_TO=" + fmt(m.omega_TO) + ",gamma=" + fmt(m.gamma) + ")";
          },
          [](const Drude& m) {
            return "drude(omega_p=" + fmt(m.omega_p) + ",omega_tau=" + fmt(m.omega_tau) + ")";
          },
          [](const ScaledDampingDrude& m) {
            return "drude(omega_p=" + fmt(m.omega_p) + ",omega_tau=" + fmt(m.omega_tau_tilde) + ")";
          },
          [](const Transparent&) { return std::string("transparent"); },
          [](const PerfectMirror&) { return std::string("mirror"); },
          [](const Tabulated& t) { return "table(" + t.source + ")"; },
      },
      model);
}

}  // namespace confheat::materials
