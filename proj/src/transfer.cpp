/*
 * transfer.cpp -- spectral integrals for particle, sphere/cavity and plate
 * heat fluxes.
 */
#include "confheat/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "confheat/constants.hpp"
#include "confheat/errors.hpp"
#include "confheat/specfun.hpp"
#include "transfer_common.hpp"

namespace confheat::transfer {

using cdouble = std::complex<double>;

void FrequencyOptions::validate() const {
  if (!(rel_tol > 0.0) && !(abs_tol > 0.0)) throw DomainError("frequency quadrature needs a tolerance");
  if (!(x_min > 0.0) || !(x_max > x_min)) throw DomainError("frequency window must satisfy 0 < x_min < x_max");
  if (panels_per_decade < 1) throw DomainError("panels_per_decade must be >= 1");
  if (max_intervals < 1) throw DomainError("max_intervals must be >= 1");
  if (!(min_width_rel > 0.0)) throw DomainError("min_width_rel must be positive");
}

std::vector<double> frequency_breakpoints(double T, std::span<const PermittivityModel* const> mats,
                                          const FrequencyOptions& opts) {
  const auto [lo, hi] = detail::omega_window(T, opts);
  const int n = std::max(1, static_cast<int>(std::ceil(std::log10(hi / lo) * opts.panels_per_decade)));
  std::vector<double> extra = opts.extra_breakpoints;
  for (const PermittivityModel* m : mats) {
    if (!m) continue;
    for (double w : materials::feature_frequencies(*m)) extra.push_back(w);
  }
  return quad::merge_breakpoints(quad::log_panels(lo, hi, n), extra);
}

int auto_l_start(double sphere_radius, double omega_max) {
  const double x = mie::size_parameter(sphere_radius, omega_max);
  return std::max(10, static_cast<int>(std::ceil(x + 7.0 * std::cbrt(x))));
}

namespace detail {

std::pair<double, double> omega_window(double T, const FrequencyOptions& opts) {
  const double unit = kConstants.k_B * T / kConstants.hbar;
  return {opts.x_min * unit, opts.x_max * unit};
}

quad::Result run_frequency_quadrature(const quad::Integrand& f, int dim,
                                      std::span<const double> breakpoints,
                                      const FrequencyOptions& opts, const char* what) {
  quad::Result r;
  if (opts.adaptive) {
    quad::Options q;
    q.rel_tol = opts.rel_tol;
    q.abs_tol = opts.abs_tol;
    q.max_intervals = opts.max_intervals;
    q.min_width_rel = opts.min_width_rel;
    q.rule = opts.rule;
    r = quad::integrate(f, dim, breakpoints, q);
  } else {
    r = quad::integrate_fixed(f, dim, breakpoints, opts.rule);
    r.converged = true;
  }
  if (!r.converged) {
    std::ostringstream msg;
    msg << what << ": frequency quadrature did not reach rel_tol " << opts.rel_tol << " within "
        << r.intervals << " panels (estimate " << r.value.back() << ", error " << r.max_error << ")";
    throw QuadratureError(msg.str(), r.value.back(), r.max_error);
  }
  return r;
}

SpectralResult make_result(const quad::Result& r, int component, std::pair<double, double> window,
                           int l_max) {
  SpectralResult s;
  s.power = r.value[static_cast<std::size_t>(component)];
  s.quadrature_error = r.error[static_cast<std::size_t>(component)];
  s.omega_window = window;
  s.l_max_used = l_max;
  s.evaluations = r.evaluations;
  return s;
}

void check_sphere_cavity(const SphereSpec& sphere, const CavitySpec& cavity, double T1) {
  if (!(sphere.radius > 0.0)) throw DomainError("sphere radius must be positive");
  if (!(cavity.radius > 0.0)) throw DomainError("cavity radius must be positive");
  if (!(sphere.radius < cavity.radius))
    throw DomainError("sphere radius must be smaller than the cavity radius");
  if (!(T1 > 0.0)) throw DomainError("temperature must be positive");
}

}  // namespace detail

namespace {

// ---------------------------------------------------------------- particles

PPTransferResult pp_transfer_impl(const ParticleSpec& p1, const ParticleSpec& p2, double T1,
                                  const GfProvider& gf, const FrequencyOptions& opts) {
  const double c = kConstants.c;
  const double pref = 32.0 * kPi / (c * c * c * c);
  auto f = [&](double w, std::span<double> out) {
    const double ia = materials::polarizability(p1, w).imag() * materials::polarizability(p2, w).imag();
    if (ia == 0.0) {
      out[0] = 0.0;
      return;
    }
    greens::ComplexTensor3 g;
    try {
      g = gf(w);
    } catch (const ProviderError&) {
      throw;
    } catch (const std::exception& e) {
      throw ProviderError(std::string("Green's-function provider failed: ") + e.what(), w);
    }
    const double w2 = w * w;
    out[0] = pref * w2 * w2 * specfun::planck_factor(w, T1) * ia * g.sum_abs2();
  };
  const PermittivityModel* mats[] = {&p1.permittivity, &p2.permittivity};
  const auto bp = frequency_breakpoints(T1, mats, opts);
  const auto r = detail::run_frequency_quadrature(f, 1, bp, opts, "pp_pp_transfer");
  PPTransferResult out;
  out.result = detail::make_result(r, 0, detail::omega_window(T1, opts), 0);
  const double v = materials::volume(p1) * materials::volume(p2);
  out.per_volume2 = out.result.power / v;
  out.per_volume2_error = out.result.quadrature_error / v;
  return out;
}

// ------------------------------------------------------------ sphere/cavity

/// (2/pi) Theta(omega, T) * sum_{l <= L_k} (2l+1) sum_P gain * loss / |1 - T~ T|^2
/// for every checkpoint L_k.
void hr_partial_sums(const SphereSpec& sphere, const CavitySpec& cavity, double T1,
                     std::span<const int> ls, double w, std::span<double> out) {
  thread_local confheat::detail::ModeTable<double> ts, tc;
  const int L = ls.back();
  mie::sphere_table(sphere, w, L, ts);
  mie::cavity_table(cavity, w, L, tc);
  const double pref = 2.0 / kPi * specfun::planck_factor(w, T1);
  double sum = 0.0;
  std::size_t k = 0;
  for (int l = 1; l <= L; ++l) {
    const std::size_t i = static_cast<std::size_t>(l);
    double term = 0.0;
    for (int p = 0; p < 2; ++p) {
      const double gain = tc.weight[p][i], loss = ts.weight[p][i];
      if (gain == 0.0 || loss == 0.0) continue;
      const double e = std::exp(tc.scale[i] + ts.scale[i]);
      term += gain * loss * e / std::norm(1.0 - tc.t[p][i] * ts.t[p][i] * e);
    }
    sum += (2.0 * l + 1.0) * term;
    while (k < ls.size() && ls[k] == l) out[k++] = pref * sum;
  }
}

/// Free sphere from the Riccati-Bessel bundles (Bohren-Huffman a_l, b_l with
/// T^N = -a_l, T^M = -b_l) and the literal loss -(Re T + |T|^2).
void free_sphere_partial_sums(const SphereSpec& sphere, double T1, std::span<const int> ls,
                              double w, std::span<double> out) {
  const int L = ls.back();
  const double pref = 2.0 / kPi * specfun::planck_factor(w, T1);
  const double x = mie::size_parameter(sphere.radius, w);
  const bool mirror = materials::is_mirror(sphere.permittivity);
  const bool transparent = materials::is_transparent(sphere.permittivity);
  cdouble m = 1.0;
  if (!mirror && !transparent) m = materials::sqrt_upper(materials::permittivity(sphere.permittivity, w));
  double sum = 0.0;
  std::size_t k = 0;
  for (int l = 1; l <= L; ++l) {
    double term = 0.0;
    if (!transparent) {
      const specfun::RiccatiBundle bx = specfun::riccati_bundle(l, x);
      cdouble a, b;
      if (mirror) {
        a = bx.psi_prime / bx.xi_prime;
        b = bx.psi / bx.xi;
      } else {
        const specfun::RiccatiBundle bm = specfun::riccati_bundle(l, m * x);
        const cdouble Dm = bm.psi_prime / bm.psi;
        a = (m * bx.psi_prime - bx.psi * Dm) / (m * bx.xi_prime - bx.xi * Dm);
        b = (bx.psi_prime - m * bx.psi * Dm) / (bx.xi_prime - m * bx.xi * Dm);
      }
      const double s = std::exp(2.0 * bx.log_scale);
      for (const cdouble t : {-a * s, -b * s}) term += -(t.real() + std::norm(t));
    }
    sum += (2.0 * l + 1.0) * term;
    while (k < ls.size() && ls[k] == l) out[k++] = pref * sum;
  }
}

using PartialSumFn = std::function<void(std::span<const int>, double, std::span<double>)>;

/// Integrates partial sums at the given orders on shared panels.
std::vector<SpectralResult> integrate_partial_sums(const PartialSumFn& f, std::span<const int> ls,
                                                   std::span<const double> bp,
                                                   std::pair<double, double> window,
                                                   const FrequencyOptions& opts, const char* what) {
  std::vector<int> orders(ls.begin(), ls.end());
  auto g = [&](double w, std::span<double> out) { f(orders, w, out); };
  const auto r = detail::run_frequency_quadrature(g, static_cast<int>(orders.size()), bp, opts, what);
  std::vector<SpectralResult> res;
  for (std::size_t k = 0; k < orders.size(); ++k)
    res.push_back(detail::make_result(r, static_cast<int>(k), window, orders[k]));
  return res;
}

SpectralResult l_controlled(const PartialSumFn& f, double sphere_radius, double T1,
                            const LControl& lc, std::span<const double> bp,
                            const FrequencyOptions& opts, const char* what) {
  const auto window = detail::omega_window(T1, opts);
  if (lc.fixed > 0) {
    const int l[] = {lc.fixed};
    return integrate_partial_sums(f, l, bp, window, opts, what)[0];
  }
  if (lc.cap < 1) throw DomainError(std::string(what) + ": l cap must be >= 1");
  // With a cap at or below the automatic start, the last doubling step ends at the cap.
  int lo = auto_l_start(sphere_radius, window.second);
  if (lo >= lc.cap) lo = std::max(1, lc.cap / 2);
  long evaluations = 0;
  double previous = 0.0, last = 0.0;
  while (true) {
    const int hi = std::min(2 * lo, lc.cap);
    if (hi == lo) break;
    const int l[] = {lo, hi};
    const auto r = integrate_partial_sums(f, l, bp, window, opts, what);
    evaluations += r[1].evaluations;
    previous = r[0].power;
    last = r[1].power;
    if (std::abs(last - previous) <= lc.rel_change * std::abs(last)) {
      SpectralResult out = r[1];
      out.evaluations = evaluations;
      return out;
    }
    lo = hi;
  }
  std::ostringstream msg;
  msg << what << ": multipole sum not converged to " << lc.rel_change << " by l_max = " << lc.cap
      << " (last two partial results " << previous << ", " << last << ")";
  throw ConvergenceError(msg.str(), previous, last);
}

PartialSumFn sphere_cavity_fn(const SphereSpec& sphere, const CavitySpec& cavity, double T1) {
  return [&sphere, &cavity, T1](std::span<const int> ls, double w, std::span<double> out) {
    hr_partial_sums(sphere, cavity, T1, ls, w, out);
  };
}

std::vector<double> sphere_cavity_breakpoints(const SphereSpec& sphere, const CavitySpec& cavity,
                                              double T1, const FrequencyOptions& opts) {
  const PermittivityModel* mats[] = {&sphere.permittivity, &cavity.wall_permittivity};
  return frequency_breakpoints(T1, mats, opts);
}

// ------------------------------------------------------------------ plates

/// \int dk_perp k_perp sum_P tau^P for two half-spaces across `gap`.
double plate_transmission(cdouble e1, cdouble e2, double gap, double w, double rel_tol) {
  using materials::Polarization;
  const double k = w / kConstants.c, k2 = k * k;
  const Polarization pols[] = {Polarization::M, Polarization::N};
  // propagating, k_perp = k sin t:  k_perp dk_perp = k^2 sin t cos t dt
  auto prop = [&](double t, std::span<double> out) {
    const double kz = k * std::cos(t), kp2 = k2 * std::sin(t) * std::sin(t);
    const cdouble ph = std::exp(cdouble(0.0, 2.0 * kz * gap));
    double s = 0.0;
    for (auto p : pols) {
      const cdouble f1 = materials::fresnel_kz(e1, kz, kp2, k2, p);
      const cdouble f2 = materials::fresnel_kz(e2, kz, kp2, k2, p);
      s += (1.0 - std::norm(f1)) * (1.0 - std::norm(f2)) / std::norm(1.0 - f1 * f2 * ph);
    }
    out[0] = k2 * std::sin(t) * std::cos(t) * s;
  };
  // evanescent, k_z = i kappa:  k_perp dk_perp = kappa dkappa
  auto evan = [&](double kappa, std::span<double> out) {
    const cdouble kz(0.0, kappa);
    const double kp2 = k2 + kappa * kappa, damp = std::exp(-2.0 * kappa * gap);
    double s = 0.0;
    for (auto p : pols) {
      const cdouble f1 = materials::fresnel_kz(e1, kz, kp2, k2, p);
      const cdouble f2 = materials::fresnel_kz(e2, kz, kp2, k2, p);
      s += 4.0 * f1.imag() * f2.imag() * damp / std::norm(1.0 - f1 * f2 * damp);
    }
    out[0] = kappa * s;
  };
  quad::Options q;
  q.rel_tol = rel_tol;
  q.max_intervals = 20000;
  q.rule = quad::Rule::GK21;
  const auto tp = quad::linear_panels(0.0, kPi / 2.0, 4);
  const auto rp = quad::integrate(prop, 1, tp, q);
  const double kappa_max = 30.0 / gap;
  std::vector<double> ke{0.0};
  const double kmin = 1e-3 * std::min(k, kappa_max);
  for (double b : quad::log_panels(kmin, kappa_max, std::max(1, static_cast<int>(std::ceil(4.0 * std::log10(kappa_max / kmin))))))
    ke.push_back(b);
  q.abs_tol = 0.1 * rel_tol * std::abs(rp.value[0]);
  const auto re = quad::integrate(evan, 1, ke, q);
  if (!rp.converged || !re.converged)
    throw QuadratureError("plate_plate_ht_per_area: transverse-wavenumber quadrature did not converge",
                          rp.value[0] + re.value[0], rp.max_error + re.max_error);
  return rp.value[0] + re.value[0];
}

}  // namespace

// ================================================================== public

GfProvider vacuum_provider(double r) {
  if (!(r > 0.0)) throw DomainError("particle separation must be positive");
  return [r](double w) { return greens::vacuum_gf({r, 0.0, 0.0}, w); };
}

GfProvider two_plate_provider(greens::PlateCavityGeometry geom, greens::KPerpQuadratureSpec quad) {
  quad.validate();
  return [geom = std::move(geom), quad](double w) {
    return greens::two_plate_midplane_gf(geom, w, quad);
  };
}

GfProvider single_plate_provider(double r, double h, PermittivityModel plate,
                                 greens::KPerpQuadratureSpec quad) {
  quad.validate();
  return [r, h, plate = std::move(plate), quad](double w) {
    return greens::single_plate_gf(r, h, w, plate, quad);
  };
}

PPTransferResult pp_pp_transfer(const ParticleSpec& p1, const ParticleSpec& p2, double T1,
                                const GfProvider& gf, const FrequencyOptions& opts) {
  opts.validate();
  if (!(T1 > 0.0)) throw DomainError("pp_pp_transfer: temperature must be positive");
  if (!(p1.radius > 0.0) || !(p2.radius > 0.0)) throw DomainError("particle radius must be positive");
  return pp_transfer_impl(p1, p2, T1, gf, opts);
}

SpectralResult sphere_in_cavity_hr(const SphereSpec& sphere, const CavitySpec& cavity, double T1,
                                   const LControl& l_control, const FrequencyOptions& opts) {
  opts.validate();
  detail::check_sphere_cavity(sphere, cavity, T1);
  const auto bp = sphere_cavity_breakpoints(sphere, cavity, T1, opts);
  return l_controlled(sphere_cavity_fn(sphere, cavity, T1), sphere.radius, T1, l_control, bp, opts,
                      "sphere_in_cavity_hr");
}

std::vector<SpectralResult> sphere_in_cavity_partial_sums(const SphereSpec& sphere,
                                                          const CavitySpec& cavity, double T1,
                                                          std::span<const int> l_values,
                                                          const FrequencyOptions& opts) {
  opts.validate();
  detail::check_sphere_cavity(sphere, cavity, T1);
  if (l_values.empty()) return {};
  for (std::size_t i = 0; i < l_values.size(); ++i)
    if (l_values[i] < 1 || (i > 0 && l_values[i] <= l_values[i - 1]))
      throw DomainError("l_values must be strictly increasing and >= 1");
  const auto bp = sphere_cavity_breakpoints(sphere, cavity, T1, opts);
  return integrate_partial_sums(sphere_cavity_fn(sphere, cavity, T1), l_values, bp,
                                detail::omega_window(T1, opts), opts, "sphere_in_cavity_partial_sums");
}

SpectralResult free_sphere_hr(const SphereSpec& sphere, double T1, const LControl& l_control,
                              const FrequencyOptions& opts) {
  opts.validate();
  if (!(sphere.radius > 0.0)) throw DomainError("sphere radius must be positive");
  if (!(T1 > 0.0)) throw DomainError("temperature must be positive");
  const PermittivityModel* mats[] = {&sphere.permittivity};
  const auto bp = frequency_breakpoints(T1, mats, opts);
  PartialSumFn f = [&sphere, T1](std::span<const int> ls, double w, std::span<double> out) {
    free_sphere_partial_sums(sphere, T1, ls, w, out);
  };
  return l_controlled(f, sphere.radius, T1, l_control, bp, opts, "free_sphere_hr");
}

SpectralResult dipole_limit_hr(const SphereSpec& sphere, const CavitySpec& cavity, double T1,
                               const FrequencyOptions& opts) {
  opts.validate();
  detail::check_sphere_cavity(sphere, cavity, T1);
  auto f = [&](double w, std::span<double> out) {
    thread_local confheat::detail::ModeTable<double> ts, tc;
    mie::sphere_table(sphere, w, 1, ts);
    mie::cavity_table(cavity, w, 1, tc);
    double term = 0.0;
    for (int p = 0; p < 2; ++p)
      term += tc.weight[p][1] * ts.weight[p][1] * std::exp(tc.scale[1] + ts.scale[1]);
    out[0] = 2.0 / kPi * specfun::planck_factor(w, T1) * 3.0 * term;
  };
  const auto bp = sphere_cavity_breakpoints(sphere, cavity, T1, opts);
  const auto r = detail::run_frequency_quadrature(f, 1, bp, opts, "dipole_limit_hr");
  return detail::make_result(r, 0, detail::omega_window(T1, opts), 1);
}

SpectralResult pp_in_cavity_hr(const ParticleSpec& particle, const CavitySpec& cavity, double T1,
                               const FrequencyOptions& opts) {
  opts.validate();
  detail::check_sphere_cavity({particle.permittivity, particle.radius}, cavity, T1);
  const double c = kConstants.c;
  auto f = [&](double w, std::span<double> out) {
    const double ia = materials::polarizability(particle, w).imag();
    if (ia == 0.0) {
      out[0] = 0.0;
      return;
    }
    thread_local confheat::detail::ModeTable<double> tc;
    mie::cavity_table(cavity, w, 1, tc);
    const double bracket = tc.weight[1][1] * std::exp(tc.scale[1]);  // 1 + Re T~_1^N
    out[0] = 4.0 / (kPi * c * c * c) * w * w * w * specfun::planck_factor(w, T1) * ia * bracket;
  };
  const PermittivityModel* mats[] = {&particle.permittivity, &cavity.wall_permittivity};
  const auto bp = frequency_breakpoints(T1, mats, opts);
  const auto r = detail::run_frequency_quadrature(f, 1, bp, opts, "pp_in_cavity_hr");
  return detail::make_result(r, 0, detail::omega_window(T1, opts), 1);
}

SpectralResult net_sphere_hr(const SphereSpec& sphere, const CavitySpec& cavity,
                             const TemperatureAssignment& temps, const LControl& l_control,
                             const FrequencyOptions& opts) {
  if (!(temps.TC >= 0.0)) throw DomainError("cavity temperature must be >= 0");
  SpectralResult h1 = sphere_in_cavity_hr(sphere, cavity, temps.T1, l_control, opts);
  if (temps.TC == 0.0) return h1;
  if (temps.TC == temps.T1) {
    h1.power = 0.0;
    h1.quadrature_error = 0.0;
    return h1;
  }
  const SpectralResult hc = sphere_in_cavity_hr(sphere, cavity, temps.TC, l_control, opts);
  SpectralResult net = h1;
  net.power = h1.power - hc.power;
  net.quadrature_error = h1.quadrature_error + hc.quadrature_error;
  net.omega_window = {std::min(h1.omega_window.first, hc.omega_window.first),
                      std::max(h1.omega_window.second, hc.omega_window.second)};
  net.l_max_used = std::max(h1.l_max_used, hc.l_max_used);
  net.evaluations = h1.evaluations + hc.evaluations;
  return net;
}

SpectralResult plate_plate_ht_per_area(const PermittivityModel& plate1,
                                       const PermittivityModel& plate2, double gap, double T1,
                                       double T2, const FrequencyOptions& opts) {
  opts.validate();
  if (!(gap > 0.0)) throw DomainError("plate gap must be positive");
  if (!(T1 >= 0.0) || !(T2 >= 0.0) || !(T1 > 0.0 || T2 > 0.0))
    throw DomainError("plate temperatures must be >= 0 and not both zero");
  const double Tmax = std::max(T1, T2);
  SpectralResult out;
  out.omega_window = detail::omega_window(Tmax, opts);
  // Transparent bodies do not absorb; mirrors neither absorb nor transmit.
  if (materials::is_transparent(plate1) || materials::is_transparent(plate2) ||
      materials::is_mirror(plate1) || materials::is_mirror(plate2) || T1 == T2)
    return out;
  auto theta = [](double w, double T) { return T > 0.0 ? specfun::planck_factor(w, T) : 0.0; };
  const double inner_tol = std::min(1e-3, 0.1 * opts.rel_tol);
  auto f = [&](double w, std::span<double> o) {
    const double dth = theta(w, T1) - theta(w, T2);
    if (dth == 0.0) {
      o[0] = 0.0;
      return;
    }
    const cdouble e1 = materials::permittivity(plate1, w), e2 = materials::permittivity(plate2, w);
    o[0] = dth * plate_transmission(e1, e2, gap, w, inner_tol) / (4.0 * kPi * kPi);
  };
  const PermittivityModel* mats[] = {&plate1, &plate2};
  const auto bp = frequency_breakpoints(Tmax, mats, opts);
  const auto r = detail::run_frequency_quadrature(f, 1, bp, opts, "plate_plate_ht_per_area");
  return detail::make_result(r, 0, out.omega_window, 0);
}

}  // namespace confheat::transfer
