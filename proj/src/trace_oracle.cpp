/*
 * trace_oracle.cpp -- sphere/cavity radiation from the literal trace
 *
 *   -(2/pi) Theta Re Tr{ (T~ + 1)(1 - T T~)^-1 [(T^+ + T)/2 + T T^+] (1 - T^+ T~^+)^-1 }
 *
 * with T, T~ built as dense diagonal matrices over mu = (P, l, m),
 * m = -l..l, and every product, inverse and trace carried out in long
 * double. Deliberately slow; only for cross-checking the reduced form.
 */
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "confheat/constants.hpp"
#include "confheat/detail/mie_modes.hpp"
#include "confheat/errors.hpp"
#include "confheat/specfun.hpp"
#include "confheat/transfer.hpp"
#include "transfer_common.hpp"

namespace confheat::transfer {

namespace {

using ld = long double;
using cld = std::complex<ld>;
using Mat = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;

cld unscaled(const cld& mant, ld scale) {
  if (mant == cld(0)) return 0;
  const ld lm = std::log(std::abs(mant)) + scale;
  if (lm > 11000.0L) throw OverflowError("trace oracle: amplitude exceeds long double range",
                                         static_cast<double>(lm));
  return mant * std::exp(scale);
}

ld trace_integrand(const SphereSpec& sphere, const CavitySpec& cavity, int L, double w) {
  confheat::detail::ModeTable<ld> ts, tc;
  mie::sphere_table(sphere, w, L, ts);
  mie::cavity_table(cavity, w, L, tc);
  const Eigen::Index n = 2 * (static_cast<Eigen::Index>(L + 1) * (L + 1) - 1);
  Mat T = Mat::Zero(n, n), Tc = Mat::Zero(n, n);
  Eigen::Index mu = 0;
  for (int p = 0; p < 2; ++p)
    for (int l = 1; l <= L; ++l) {
      const std::size_t i = static_cast<std::size_t>(l);
      const cld t = unscaled(ts.t[p][i], ts.scale[i]);
      const cld tt = unscaled(tc.t[p][i], tc.scale[i]);
      for (int m = -l; m <= l; ++m, ++mu) {
        T(mu, mu) = t;
        Tc(mu, mu) = tt;
      }
    }
  const Mat I = Mat::Identity(n, n);
  const Mat Td = T.adjoint(), Tcd = Tc.adjoint();
  const Mat left = (I - T * Tc).inverse();
  const Mat right = (I - Td * Tcd).inverse();
  const Mat middle = (Td + T) * cld(0.5L) + T * Td;
  const Mat A = (Tc + I) * left * middle * right;
  return A.trace().real();
}

}  // namespace

SpectralResult hr_trace_oracle(const SphereSpec& sphere, const CavitySpec& cavity, double T1,
                               int l_max, const FrequencyOptions& opts) {
  opts.validate();
  detail::check_sphere_cavity(sphere, cavity, T1);
  if (l_max < 1 || l_max > 64) throw DomainError("hr_trace_oracle: l_max must be in [1, 64]");
  auto f = [&](double w, std::span<double> out) {
    const ld theta = specfun::planck_factor(w, T1);
    out[0] = static_cast<double>(-2.0L / std::numbers::pi_v<ld> * theta *
                                 trace_integrand(sphere, cavity, l_max, w));
  };
  const PermittivityModel* mats[] = {&sphere.permittivity, &cavity.wall_permittivity};
  const auto bp = frequency_breakpoints(T1, mats, opts);
  FrequencyOptions fixed = opts;
  fixed.adaptive = false;
  const auto r = detail::run_frequency_quadrature(f, 1, bp, fixed, "hr_trace_oracle");
  return detail::make_result(r, 0, detail::omega_window(T1, opts), l_max);
}

}  // namespace confheat::transfer
