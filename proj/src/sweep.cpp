/*
 * sweep.cpp -- grid evaluation, worker pool and convergence studies.
 */
#include "confheat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <thread>

#include "confheat/constants.hpp"
#include "confheat/errors.hpp"

namespace confheat::sweep {

namespace {

struct QuantityInfo {
  Quantity q;
  const char* name;
  const char* column;
};

constexpr QuantityInfo kQuantities[] = {
    {Quantity::PPTwoPlates, "pp-two-plates", "H_over_V1V2_two_plates"},
    {Quantity::PPSinglePlate, "pp-single-plate", "H_over_V1V2_single_plate"},
    {Quantity::PPVacuum, "pp-vacuum", "H_over_V1V2_vacuum"},
    {Quantity::SphereCavityHR, "sphere-cavity-hr", "H_cavity_W"},
    {Quantity::DipoleLimitHR, "dipole-limit-hr", "H_dipole_W"},
    {Quantity::PPCavityHR, "pp-cavity-hr", "H_pp_cavity_W"},
    {Quantity::PlatePlatePA, "plate-plate-pa", "H_plate_plate_4piR2_W"},
    {Quantity::FreeSphereHR, "free-sphere-hr", "H_free_W"},
};

const QuantityInfo& info(Quantity q) {
  for (const auto& i : kQuantities)
    if (i.q == q) return i;
  throw ContractViolation("unknown quantity");
}

std::string suffixed(const std::string& stem, const std::string& variant) {
  return variant.empty() ? stem : stem + "_" + variant;
}

QuantityResult evaluate(Quantity q, const Configuration& c, const Tolerances& tol,
                        const std::string& variant) {
  QuantityResult out;
  out.quantity = q;
  out.variant = variant;
  try {
    switch (q) {
      case Quantity::PPTwoPlates:
      case Quantity::PPSinglePlate:
      case Quantity::PPVacuum: {
        transfer::GfProvider gf;
        if (q == Quantity::PPVacuum)
          gf = transfer::vacuum_provider(c.r);
        else if (q == Quantity::PPTwoPlates)
          gf = transfer::two_plate_provider({c.d, c.r, c.plates}, tol.kperp);
        else
          gf = transfer::single_plate_provider(c.r, 0.5 * c.d, c.plates, tol.kperp);
        const auto r = transfer::pp_pp_transfer(c.particle1, c.particle2, c.T1, gf, tol.frequency);
        out.result = r.result;
        out.normalized = r.per_volume2;
        out.normalized_error = r.per_volume2_error;
        break;
      }
      case Quantity::SphereCavityHR:
        out.result = transfer::sphere_in_cavity_hr(c.sphere, c.cavity, c.T1, tol.l_control, tol.frequency);
        break;
      case Quantity::DipoleLimitHR:
        out.result = transfer::dipole_limit_hr(c.sphere, c.cavity, c.T1, tol.frequency);
        break;
      case Quantity::PPCavityHR:
        out.result = transfer::pp_in_cavity_hr({c.sphere.permittivity, c.sphere.radius}, c.cavity,
                                               c.T1, tol.frequency);
        break;
      case Quantity::PlatePlatePA: {
        const double gap = c.cavity.radius - c.sphere.radius;
        out.result = transfer::plate_plate_ht_per_area(c.sphere.permittivity, c.cavity.wall_permittivity,
                                                       gap, c.T1, c.T2, tol.frequency);
        const double area = 4.0 * kPi * c.sphere.radius * c.sphere.radius;
        out.normalized = out.result.power * area;
        out.normalized_error = out.result.quadrature_error * area;
        break;
      }
      case Quantity::FreeSphereHR:
        out.result = transfer::free_sphere_hr(c.sphere, c.T1, tol.l_control, tol.frequency);
        break;
    }
    if (q != Quantity::PPTwoPlates && q != Quantity::PPSinglePlate && q != Quantity::PPVacuum &&
        q != Quantity::PlatePlatePA) {
      out.normalized = out.result.power;
      out.normalized_error = out.result.quadrature_error;
    }
    out.ok = true;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
    out.normalized = std::numeric_limits<double>::quiet_NaN();
    out.normalized_error = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

void add_ratios(SweepRecord& rec) {
  std::map<std::string, std::map<Quantity, const QuantityResult*>> by_variant;
  std::vector<std::string> order;
  for (const auto& r : rec.results) {
    if (!by_variant.count(r.variant)) order.push_back(r.variant);
    by_variant[r.variant][r.quantity] = &r;
  }
  for (const auto& v : order) {
    const auto& m = by_variant[v];
    auto get = [&](Quantity q) -> const QuantityResult* {
      auto it = m.find(q);
      return it != m.end() && it->second->ok ? it->second : nullptr;
    };
    if (const auto* vac = get(Quantity::PPVacuum)) {
      for (Quantity q : {Quantity::PPTwoPlates, Quantity::PPSinglePlate})
        if (const auto* x = get(q))
          rec.ratios.emplace_back(suffixed(std::string(quantity_column(q)) + "_over_vacuum", v),
                                  x->normalized / vac->normalized);
    }
    if (const auto* fr = get(Quantity::FreeSphereHR)) {
      for (Quantity q : {Quantity::SphereCavityHR, Quantity::DipoleLimitHR, Quantity::PPCavityHR,
                         Quantity::PlatePlatePA})
        if (const auto* x = get(q))
          rec.ratios.emplace_back(suffixed(std::string(quantity_column(q)) + "_over_free", v),
                                  x->normalized / fr->normalized);
    }
  }
}

}  // namespace

const char* quantity_name(Quantity q) { return info(q).name; }
const char* quantity_column(Quantity q) { return info(q).column; }

std::optional<Quantity> parse_quantity(const std::string& name) {
  for (const auto& i : kQuantities)
    if (name == i.name) return i.q;
  return std::nullopt;
}

bool is_length_parameter(const std::string& name) { return name != "T1"; }

void apply_parameter(Configuration& c, const std::string& name, double value) {
  if (name == "r") {
    c.r = value;
  } else if (name == "d") {
    c.d = value;
  } else if (name == "gap") {
    c.cavity.radius = c.sphere.radius + value;
  } else if (name == "cavity_radius") {
    c.cavity.radius = value;
  } else if (name == "sphere_radius") {
    c.sphere.radius = value;
  } else if (name == "particle_radius") {
    c.particle1.radius = value;
    c.particle2.radius = value;
  } else if (name == "T1") {
    c.T1 = value;
  } else {
    throw DomainError("unknown sweep parameter '" + name + "'");
  }
}

std::vector<double> Grid::values() const {
  validate();
  if (count == 1) return {start};
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    v[static_cast<std::size_t>(i)] =
        spacing == Spacing::Linear ? start + (stop - start) * t
                                   : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * t);
  }
  v.front() = start;
  v.back() = stop;
  return v;
}

void Grid::validate() const {
  if (count < 1) throw DomainError("grid count must be >= 1");
  if (!std::isfinite(start) || !std::isfinite(stop))
    throw DomainError("grid endpoints must be finite");
  if ((count == 1) != (start == stop))
    throw DomainError(count == 1 ? "a one-point grid needs stop = start"
                                 : "grid endpoints must be distinct");
  if (spacing == Spacing::Log && (!(start > 0.0) || !(stop > 0.0)))
    throw DomainError("log grid endpoints must be positive");
}

void SweepSpec::validate() const {
  if (quantities.empty()) throw DomainError("sweep needs at least one quantity");
  if (variants.empty()) throw DomainError("sweep needs at least one configuration");
  if (std::find(std::begin(kSweepParameters), std::end(kSweepParameters), parameter) ==
      std::end(kSweepParameters))
    throw DomainError("unknown sweep parameter '" + parameter + "'");
  grid.validate();
  tolerances.frequency.validate();
  tolerances.kperp.validate();
}

bool SweepRecord::ok() const {
  return std::all_of(results.begin(), results.end(), [](const QuantityResult& r) { return r.ok; });
}

SweepRecord evaluate_point(const SweepSpec& spec, double value) {
  SweepRecord rec;
  rec.parameter = value;
  for (const auto& v : spec.variants) {
    Configuration c = v.config;
    apply_parameter(c, spec.parameter, value);
    for (Quantity q : spec.quantities) rec.results.push_back(evaluate(q, c, spec.tolerances, v.label));
  }
  add_ratios(rec);
  return rec;
}

int worker_count() {
  if (const char* env = std::getenv("CONFHEAT_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(std::min(n, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  if (workers <= 0) workers = worker_count();
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto run = [&] {
    for (int i = next++; i < n && !failed; i = next++) {
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  const auto grid = spec.grid.values();
  std::vector<SweepRecord> records(grid.size());
  parallel_for(static_cast<int>(grid.size()), workers, [&](int i) {
    records[static_cast<std::size_t>(i)] = evaluate_point(spec, grid[static_cast<std::size_t>(i)]);
  });
  return records;
}

ConvergenceStudy convergence_study(const ConvergenceConfig& config, std::span<const int> l_values) {
  ConvergenceStudy s;
  s.label = config.label;
  s.l_values.assign(l_values.begin(), l_values.end());
  const auto& tol = config.tolerances;
  s.converged = transfer::sphere_in_cavity_hr(config.sphere, config.cavity, config.T1, tol.l_control,
                                              tol.frequency);
  const auto partial = transfer::sphere_in_cavity_partial_sums(config.sphere, config.cavity, config.T1,
                                                               l_values, tol.frequency);
  for (const auto& p : partial) s.ratio.push_back(p.power / s.converged.power);

  const mie::CavitySpec none{materials::Transparent{}, config.cavity.radius};
  s.free_converged = transfer::free_sphere_hr(config.sphere, config.T1, tol.l_control, tol.frequency);
  const auto free_partial = transfer::sphere_in_cavity_partial_sums(config.sphere, none, config.T1,
                                                                    l_values, tol.frequency);
  for (const auto& p : free_partial) s.free_ratio.push_back(p.power / s.free_converged.power);
  return s;
}

std::vector<ConvergenceStudy> convergence_studies(const std::vector<ConvergenceConfig>& configs,
                                                  std::span<const int> l_values, int workers) {
  std::vector<ConvergenceStudy> out(configs.size());
  parallel_for(static_cast<int>(configs.size()), workers, [&](int i) {
    out[static_cast<std::size_t>(i)] = convergence_study(configs[static_cast<std::size_t>(i)], l_values);
  });
  return out;
}

int first_reaching(const ConvergenceStudy& s, double level) {
  for (std::size_t i = 0; i < s.ratio.size(); ++i)
    if (s.ratio[i] >= level) return s.l_values[i];
  return 0;
}

}  // namespace confheat::sweep
