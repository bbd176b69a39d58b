/*
 * image_series.cpp -- truncated multiple-reflection expansion of the
 * two-plate midplane Green's function (test oracle for the closed form).
 */
#include <algorithm>
#include <cmath>
#include <string>

#include "confheat/errors.hpp"
#include "confheat/greens.hpp"
#include "plate_kernel.hpp"

namespace confheat::greens {

ComplexTensor3 image_series_gf(const PlateCavityGeometry& geom, double omega, int n_reflections,
                               const KPerpQuadratureSpec& quad, GfDiagnostics* diag) {
  if (n_reflections < 0) throw DomainError("image_series_gf: n_reflections must be >= 0");
  if (!(geom.d > 0.0) || !(geom.r > 0.0))
    throw DomainError("image_series_gf: d and r must be positive");
  if (materials::is_mirror(geom.plate))
    throw ConditioningError(
        "image series: mirror plates give a unit round-trip ratio on the propagating sector; "
        "the expansion does not converge absolutely");
  const ComplexTensor3 g0 = vacuum_gf({geom.r, 0.0, 0.0}, omega);
  if (materials::is_transparent(geom.plate)) {
    if (diag) *diag = GfDiagnostics{};
    return g0;
  }
  const double d = geom.d;
  const cdouble I(0.0, 1.0);
  const int n = n_reflections;
  // 1/(1 - F^2 e^{2 i k_z d}) -> sum_{j=0}^{n} (F^2 e^{2 i k_z d})^j, applied to the
  // single- and double-bounce terms of each polarization.
  detail::CoefficientFn coef = [d, I, n](cdouble FM, cdouble FN, cdouble kz) {
    const cdouble e = std::exp(I * kz * d);
    const cdouble fm = FM * e, fn = FN * e;
    auto partial = [n](cdouble y) {
      cdouble s = 1.0, t = 1.0;
      for (int j = 1; j <= n; ++j) {
        t *= y;
        s += t;
      }
      return s;
    };
    const double ratio = std::max(std::norm(fm * fm), std::norm(fn * fn));
    if (ratio >= 1.0)
      throw ConditioningError("image series: round-trip ratio |F^2 e^{2ik_z d}| = " +
                              std::to_string(std::sqrt(ratio)) + " >= 1 at k_z = " +
                              std::to_string(kz.real()) + (kz.imag() >= 0 ? "+" : "") +
                              std::to_string(kz.imag()) + "i; the expansion diverges");
    const cdouble sm = partial(fm * fm), sn = partial(fn * fn);
    return detail::PlateCoefficients{(fm + fm * fm) * sm, (fn * fn - fn) * sn, (fn * fn + fn) * sn};
  };
  const double kappa_max = quad.evanescent_cutoff_exponent / d;
  return g0 + detail::scattered_gf(geom.r, omega, kappa_max, geom.plate, coef, quad, diag);
}

}  // namespace confheat::greens
