/*
 * quadrature.cpp -- adaptive Gauss-Kronrod (QUADPACK QK15/QK21 rules and
 * error heuristic) with deterministic worst-first refinement.
 */
#include "confheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace confheat::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct RuleData {
  const double* xgk;
  const double* wgk;
  const double* wg;  // Gauss weights on the odd Kronrod nodes
  int n;             // number of non-negative Kronrod nodes (center last)
  bool center_is_gauss;
};

constexpr double xgk15[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                             0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                             0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                             0.207784955007898467600689403773245, 0.0};
constexpr double wgk15[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                             0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                             0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                             0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg7[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double xgk21[11] = {0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
                              0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
                              0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
                              0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
                              0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
                              0.0};
constexpr double wgk21[11] = {0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
                              0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
                              0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
                              0.123491976262065851077208745923617, 0.134709217311473325928054001771707,
                              0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
                              0.149445554002916905664936468389821};
constexpr double wg10[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                            0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                            0.295524224714752870173892994651338};

RuleData rule_data(Rule r) {
  if (r == Rule::GK15) return {xgk15, wgk15, wg7, 8, true};
  return {xgk21, wgk21, wg10, 11, false};
}

struct Panel {
  double a, b;
  std::vector<double> value, error;
  double badness;  // max component error
  bool frozen;
};

class Evaluator {
 public:
  Evaluator(const Integrand& f, int dim, Rule rule)
      : f_(f), dim_(dim), rd_(rule_data(rule)), fc_(dim), f1_(dim), f2_(dim),
        resk_(dim), resg_(dim), resabs_(dim), resasc_(dim) {
    const std::size_t n = static_cast<std::size_t>(rd_.n);
    fv1_.assign(n * dim, 0.0);
    fv2_.assign(n * dim, 0.0);
  }

  long evaluations = 0;

  Panel eval(double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int n = rd_.n;
    f_(center, fc_);
    ++evaluations;
    for (int i = 0; i < dim_; ++i) {
      resk_[i] = rd_.wgk[n - 1] * fc_[i];
      resabs_[i] = std::abs(resk_[i]);
      resg_[i] = rd_.center_is_gauss ? rd_.wg[(n - 1) / 2] * fc_[i] : 0.0;
    }
    for (int j = 0; j < n - 1; ++j) {
      const double dx = half * rd_.xgk[j];
      f_(center - dx, f1_);
      f_(center + dx, f2_);
      evaluations += 2;
      for (int i = 0; i < dim_; ++i) {
        const double s = f1_[i] + f2_[i];
        resk_[i] += rd_.wgk[j] * s;
        resabs_[i] += rd_.wgk[j] * (std::abs(f1_[i]) + std::abs(f2_[i]));
        if (j % 2 == 1) resg_[i] += rd_.wg[j / 2] * s;
        fv1_[j * dim_ + i] = f1_[i];
        fv2_[j * dim_ + i] = f2_[i];
      }
    }
    Panel p{a, b, std::vector<double>(dim_), std::vector<double>(dim_), 0.0, false};
    bool at_floor = true;
    for (int i = 0; i < dim_; ++i) {
      const double mean = resk_[i] * 0.5;
      double asc = rd_.wgk[n - 1] * std::abs(fc_[i] - mean);
      for (int j = 0; j < n - 1; ++j)
        asc += rd_.wgk[j] * (std::abs(fv1_[j * dim_ + i] - mean) + std::abs(fv2_[j * dim_ + i] - mean));
      const double result = resk_[i] * half;
      const double resabs = resabs_[i] * std::abs(half);
      asc *= std::abs(half);
      double err = std::abs((resk_[i] - resg_[i]) * half);
      if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
      const double floor = 50.0 * kEps * resabs;
      if (err > floor) at_floor = false;
      err = std::max(err, floor);
      if (!std::isfinite(result)) err = std::numeric_limits<double>::infinity();
      p.value[i] = result;
      p.error[i] = err;
      p.badness = std::max(p.badness, err);
    }
    p.frozen = at_floor;
    return p;
  }

 private:
  const Integrand& f_;
  int dim_;
  RuleData rd_;
  std::vector<double> fc_, f1_, f2_, resk_, resg_, resabs_, resasc_, fv1_, fv2_;
};

std::vector<double> prepare(std::span<const double> breakpoints) {
  std::vector<double> pts(breakpoints.begin(), breakpoints.end());
  if (pts.size() < 2) throw std::invalid_argument("quadrature needs at least two breakpoints");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) throw std::invalid_argument("quadrature interval is empty");
  for (double x : pts)
    if (!std::isfinite(x)) throw std::invalid_argument("quadrature breakpoint is not finite");
  return pts;
}

void finalize(std::vector<Panel>& panels, int dim, Result& r) {
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  r.value.assign(dim, 0.0);
  r.error.assign(dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    // Neumaier summation in fixed panel order
    double sum = 0.0, comp = 0.0, esum = 0.0;
    for (const Panel& p : panels) {
      const double v = p.value[i];
      const double t = sum + v;
      if (std::abs(sum) >= std::abs(v))
        comp += (sum - t) + v;
      else
        comp += (v - t) + sum;
      sum = t;
      esum += p.error[i];
    }
    r.value[i] = sum + comp;
    r.error[i] = esum;
  }
  r.max_error = *std::max_element(r.error.begin(), r.error.end());
  r.intervals = static_cast<int>(panels.size());
}

double tolerance(const Result& r, const Options& o) {
  double scale = 0.0;
  for (double v : r.value) scale = std::max(scale, std::abs(v));
  return std::max(o.abs_tol, o.rel_tol * scale);
}

}  // namespace

Result integrate(const Integrand& f, int dim, std::span<const double> breakpoints,
                 const Options& opts) {
  const std::vector<double> pts = prepare(breakpoints);
  Evaluator ev(f, dim, opts.rule);
  std::vector<Panel> panels;
  panels.reserve(pts.size() * 2);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) panels.push_back(ev.eval(pts[k], pts[k + 1]));

  // Running totals (plain sums; the reported value is recomputed at the end).
  // floor_err collects the error of panels frozen at their roundoff floor:
  // splitting them cannot help, so convergence is judged on the rest.
  std::vector<double> total(dim, 0.0), total_err(dim, 0.0), floor_err(dim, 0.0);
  auto account = [&](const Panel& p, double sign) {
    for (int i = 0; i < dim; ++i) {
      total[i] += sign * p.value[i];
      total_err[i] += sign * p.error[i];
      if (p.frozen) floor_err[i] += sign * p.error[i];
    }
  };
  for (const Panel& p : panels) account(p, 1.0);

  using Entry = std::pair<double, std::size_t>;
  auto cmp = [](const Entry& x, const Entry& y) {
    return x.first < y.first || (x.first == y.first && x.second > y.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  for (std::size_t k = 0; k < panels.size(); ++k)
    if (!panels[k].frozen) heap.push({panels[k].badness, k});

  auto current_tol = [&] {
    double scale = 0.0;
    for (double v : total) scale = std::max(scale, std::abs(v));
    return std::max(opts.abs_tol, opts.rel_tol * scale);
  };
  auto reducible_err = [&] {
    double e = 0.0;
    for (int i = 0; i < dim; ++i) e = std::max(e, total_err[i] - floor_err[i]);
    return e;
  };

  bool converged = reducible_err() <= current_tol();
  while (!converged && !heap.empty() && static_cast<int>(panels.size()) < opts.max_intervals) {
    const std::size_t k = heap.top().second;
    heap.pop();
    Panel& p = panels[k];
    const double width = p.b - p.a;
    const double mid = 0.5 * (p.a + p.b);
    if (width <= opts.min_width_rel * std::max(std::abs(p.a), std::abs(p.b)) || mid <= p.a ||
        mid >= p.b) {
      // too narrow to split; its error stays reducible so it blocks convergence
      continue;
    }
    Panel left = ev.eval(p.a, mid);
    Panel right = ev.eval(mid, p.b);
    account(p, -1.0);
    account(left, 1.0);
    account(right, 1.0);
    panels[k] = std::move(left);
    panels.push_back(std::move(right));
    if (!panels[k].frozen) heap.push({panels[k].badness, k});
    if (!panels.back().frozen) heap.push({panels.back().badness, panels.size() - 1});
    converged = reducible_err() <= current_tol();
  }

  Result r;
  finalize(panels, dim, r);
  r.evaluations = ev.evaluations;
  r.converged = converged || r.max_error <= tolerance(r, opts);
  return r;
}

Result integrate_fixed(const Integrand& f, int dim, std::span<const double> breakpoints,
                       Rule rule) {
  const std::vector<double> pts = prepare(breakpoints);
  Evaluator ev(f, dim, rule);
  std::vector<Panel> panels;
  panels.reserve(pts.size());
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) panels.push_back(ev.eval(pts[k], pts[k + 1]));
  Result r;
  finalize(panels, dim, r);
  r.evaluations = ev.evaluations;
  r.converged = true;
  return r;
}

std::vector<double> linear_panels(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("linear_panels: n must be >= 1");
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) p[k] = a + (b - a) * (double(k) / n);
  p[n] = b;
  return p;
}

std::vector<double> log_panels(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("log_panels: n must be >= 1");
  if (!(a > 0.0 && b > a)) throw std::invalid_argument("log_panels: need 0 < a < b");
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  const double la = std::log(a), lb = std::log(b);
  for (int k = 0; k <= n; ++k) p[k] = std::exp(la + (lb - la) * (double(k) / n));
  p[0] = a;
  p[n] = b;
  return p;
}

std::vector<double> merge_breakpoints(std::vector<double> base, std::span<const double> extra,
                                      double rel_gap) {
  std::sort(base.begin(), base.end());
  if (base.empty()) return base;
  const double lo = base.front(), hi = base.back();
  for (double x : extra)
    if (x > lo && x < hi) base.push_back(x);
  std::sort(base.begin(), base.end());
  std::vector<double> out;
  out.reserve(base.size());
  for (double x : base) {
    if (!out.empty() && std::abs(x - out.back()) <= rel_gap * std::max(std::abs(x), std::abs(out.back()))) {
      if (x == hi) out.back() = hi;
      continue;
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace confheat::quad
