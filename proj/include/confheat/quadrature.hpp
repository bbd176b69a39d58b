/*
 * quadrature.hpp -- globally adaptive Gauss-Kronrod integration of
 * vector-valued integrands on a finite interval.
 *
 * The integrand fills a fixed number of real components. Intervals are
 * refined worst-first until the largest component error drops below
 * max(abs_tol, rel_tol * max_i |I_i|). Panels whose error sits at the
 * roundoff floor of their own absolute integral are frozen: their error is
 * still reported but does not block convergence. The final sum
 * runs over panels in ascending position with compensated summation, so a
 * given integrand always reproduces the same bits.
 */
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace confheat::quad {

enum class Rule { GK15, GK21 };

struct Options {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_intervals = 20000;
  /// Intervals narrower than min_width_rel * |midpoint| are not split.
  double min_width_rel = 1e-12;
  Rule rule = Rule::GK15;
};

struct Result {
  std::vector<double> value;
  std::vector<double> error;  // per component
  double max_error = 0.0;
  long evaluations = 0;
  int intervals = 0;
  bool converged = false;
};

/// f(x, out) writes `dim` components into out.
using Integrand = std::function<void(double, std::span<double>)>;

/// Integrates over [breakpoints.front(), breakpoints.back()], starting from
/// the partition the (sorted, deduplicated) breakpoints define.
Result integrate(const Integrand& f, int dim, std::span<const double> breakpoints,
                 const Options& opts);

/// Same, with a fixed partition and no refinement (evaluation on given panels).
Result integrate_fixed(const Integrand& f, int dim, std::span<const double> breakpoints,
                       Rule rule);

/// Breakpoints for n equal panels on [a, b] (n >= 1).
std::vector<double> linear_panels(double a, double b, int n);

/// Breakpoints for n log-spaced panels on [a, b], 0 < a < b.
std::vector<double> log_panels(double a, double b, int n);

/// Sorted union of panel breakpoints and extra interior points (outside
/// points are dropped; near-duplicates within rel_gap are merged).
std::vector<double> merge_breakpoints(std::vector<double> base, std::span<const double> extra,
                                      double rel_gap = 1e-9);

}  // namespace confheat::quad
