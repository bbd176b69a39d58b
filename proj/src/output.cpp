/*
 * output.cpp -- CSV and JSON writers.
 */
#include "confheat/output.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include <json.hpp>

#include "confheat/constants.hpp"

#ifndef CONFHEAT_VERSION
#define CONFHEAT_VERSION "dev"
#endif

namespace confheat::output {

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string suffixed(const std::string& stem, const std::string& variant) {
  return variant.empty() ? stem : stem + "_" + variant;
}

std::string parameter_column(const std::string& p) { return p == "T1" ? "T1_K" : p + "_m"; }

bool has(const sweep::SweepSpec& spec, sweep::Quantity q) {
  for (auto x : spec.quantities)
    if (x == q) return true;
  return false;
}

/// Ratio names the spec can produce, in a fixed order.
std::vector<std::string> ratio_names(const sweep::SweepSpec& spec) {
  using Q = sweep::Quantity;
  std::vector<std::string> out;
  for (const auto& v : spec.variants) {
    if (has(spec, Q::PPVacuum))
      for (Q q : {Q::PPTwoPlates, Q::PPSinglePlate})
        if (has(spec, q)) out.push_back(suffixed(std::string(sweep::quantity_column(q)) + "_over_vacuum", v.label));
    if (has(spec, Q::FreeSphereHR))
      for (Q q : {Q::SphereCavityHR, Q::DipoleLimitHR, Q::PPCavityHR, Q::PlatePlatePA})
        if (has(spec, q)) out.push_back(suffixed(std::string(sweep::quantity_column(q)) + "_over_free", v.label));
  }
  return out;
}

nlohmann::json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

const char* version() { return CONFHEAT_VERSION; }

void write_header(std::ostream& os, const SettingList& settings) {
  os << "# confheat " << version() << "\n";
  os << "# constants " << kConstantsName << ": hbar = " << num(kConstants.hbar)
     << " J s, k_B = " << num(kConstants.k_B) << " J/K, c = " << num(kConstants.c) << " m/s\n";
  for (const auto& [k, v] : settings) {
    if (k == "output.path") continue;  // where the data went does not affect it
    os << "# " << k << " = " << v << "\n";
  }
}

std::vector<std::string> sweep_columns(const sweep::SweepSpec& spec) {
  std::vector<std::string> cols{parameter_column(spec.parameter)};
  for (const auto& v : spec.variants)
    for (auto q : spec.quantities) cols.push_back(suffixed(sweep::quantity_column(q), v.label));
  for (const auto& v : spec.variants)
    for (auto q : spec.quantities) cols.push_back("err_" + suffixed(sweep::quantity_column(q), v.label));
  for (const auto& r : ratio_names(spec)) cols.push_back(r);
  for (const auto& v : spec.variants)
    if (has(spec, sweep::Quantity::SphereCavityHR)) cols.push_back(suffixed("l_max", v.label));
  cols.push_back("status");
  return cols;
}

void write_sweep_csv(std::ostream& os, const sweep::SweepSpec& spec,
                     const std::vector<sweep::SweepRecord>& records, const SettingList& settings) {
  write_header(os, settings);
  const auto cols = sweep_columns(spec);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  const auto ratios = ratio_names(spec);
  for (const auto& rec : records) {
    os << num(rec.parameter);
    for (const auto& r : rec.results) os << "," << num(r.ok ? r.normalized : NAN);
    for (const auto& r : rec.results) os << "," << num(r.ok ? r.normalized_error : NAN);
    std::map<std::string, double> rv(rec.ratios.begin(), rec.ratios.end());
    for (const auto& name : ratios) {
      auto it = rv.find(name);
      os << "," << num(it == rv.end() ? NAN : it->second);
    }
    for (const auto& r : rec.results)
      if (r.quantity == sweep::Quantity::SphereCavityHR)
        os << "," << (r.ok ? std::to_string(r.result.l_max_used) : "nan");
    std::string status;
    for (const auto& r : rec.results)
      if (!r.ok)
        status += (status.empty() ? "" : "; ") + suffixed(sweep::quantity_name(r.quantity), r.variant) +
                  ": " + r.error;
    os << "," << (status.empty() ? "ok" : csv_escape(status)) << "\n";
  }
}

void write_sweep_json(std::ostream& os, const sweep::SweepSpec& spec,
                      const std::vector<sweep::SweepRecord>& records, const SettingList& settings) {
  nlohmann::ordered_json j;
  j["tool"] = "confheat";
  j["version"] = version();
  j["constants"] = {{"name", kConstantsName},
                    {"hbar", kConstants.hbar},
                    {"k_B", kConstants.k_B},
                    {"c", kConstants.c}};
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto& [k, v] : settings)
    if (k != "output.path") s[k] = v;
  j["settings"] = s;
  j["parameter_name"] = spec.parameter;
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const auto& rec : records) {
    nlohmann::ordered_json r;
    r["parameter"] = rec.parameter;
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (const auto& q : rec.results) {
      nlohmann::ordered_json x;
      x["quantity"] = sweep::quantity_name(q.quantity);
      x["variant"] = q.variant;
      x["ok"] = q.ok;
      x["result"] = {{"power", json_number(q.result.power)},
                     {"quadrature_error", json_number(q.result.quadrature_error)},
                     {"omega_window", {q.result.omega_window.first, q.result.omega_window.second}},
                     {"l_max_used", q.result.l_max_used},
                     {"evaluations", q.result.evaluations}};
      x["normalized"] = json_number(q.normalized);
      x["normalized_error"] = json_number(q.normalized_error);
      x["error"] = q.ok ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(q.error);
      results.push_back(x);
    }
    r["results"] = results;
    nlohmann::ordered_json ratios = nlohmann::ordered_json::object();
    for (const auto& [name, value] : rec.ratios) ratios[name] = json_number(value);
    r["ratios"] = ratios;
    recs.push_back(r);
  }
  j["records"] = recs;
  os << j.dump(2) << "\n";
}

void write_convergence_csv(std::ostream& os, const std::vector<sweep::ConvergenceStudy>& studies,
                           const SettingList& settings) {
  write_header(os, settings);
  os << "l_max";
  for (const auto& s : studies) os << ",ratio_" << s.label;
  if (!studies.empty()) os << ",ratio_vacuum";
  os << "\n";
  if (studies.empty()) return;
  const auto& ls = studies.front().l_values;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    os << ls[i];
    for (const auto& s : studies) os << "," << num(s.ratio[i]);
    os << "," << num(studies.front().free_ratio[i]) << "\n";
  }
}

}  // namespace confheat::output
