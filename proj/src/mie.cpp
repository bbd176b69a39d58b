/*
 * mie.cpp -- single-amplitude entry points of the sphere/cavity module.
 */
#include "confheat/mie.hpp"

#include <cmath>
#include <string>

#include "confheat/errors.hpp"

namespace confheat::mie {

namespace {

void check(int l, double radius, double omega) {
  if (l < 1) throw DomainError("scattering amplitudes start at l = 1");
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
}

cdouble unscale(cdouble m, double s, const char* what) {
  if (m == cdouble(0)) return 0.0;
  const double lm = std::log(std::abs(m)) + s;
  if (lm > 709.0) throw OverflowError(std::string(what) + " overflows double", lm);
  if (lm < -745.0) return 0.0;
  return m * std::exp(s);
}

}  // namespace

MediumIndex medium_index(const materials::PermittivityModel& model, double omega) {
  if (materials::is_mirror(model)) return {detail::MediumKind::Mirror, 0.0};
  if (materials::is_transparent(model)) return {detail::MediumKind::Transparent, 1.0};
  return {detail::MediumKind::Regular, materials::sqrt_upper(materials::permittivity(model, omega))};
}

cdouble sphere_t(int l, Polarization p, const SphereSpec& sphere, double omega) {
  check(l, sphere.radius, omega);
  detail::ModeTable<double> tab;
  sphere_table(sphere, omega, l, tab);
  const int k = p == Polarization::M ? 0 : 1;
  return unscale(tab.t[k][static_cast<std::size_t>(l)], tab.scale[static_cast<std::size_t>(l)],
                 "sphere amplitude");
}

cdouble cavity_t(int l, Polarization p, const CavitySpec& cavity, double omega) {
  check(l, cavity.radius, omega);
  detail::ModeTable<double> tab;
  cavity_table(cavity, omega, l, tab);
  const int k = p == Polarization::M ? 0 : 1;
  return unscale(tab.t[k][static_cast<std::size_t>(l)], tab.scale[static_cast<std::size_t>(l)],
                 "cavity amplitude");
}

}  // namespace confheat::mie
