/*
 * config.cpp -- settings parsing and validation.
 */
#include "confheat/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "confheat/errors.hpp"

namespace confheat::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct UnitInfo {
  const char* name;
  double per_meter;
};
constexpr UnitInfo kUnits[] = {{"nm", 1e9}, {"um", 1e6}, {"mm", 1e3}};

// Keys that describe one physical configuration (overridable per variant),
// in canonical order, with defaults.
const std::vector<std::pair<std::string, std::string>>& configuration_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"particle1.material", "sic"},   {"particle1.radius", "10nm"},
      {"particle2.material", "sic"},   {"particle2.radius", "10nm"},
      {"plates.material", "sic"},      {"plates.damping_scale", "1"},
      {"plates.separation", "0.2um"},  {"pair.separation", "2um"},
      {"sphere.material", "sic"},      {"sphere.radius", "0.1um"},
      {"cavity.material", "gold"},     {"cavity.radius", "2um"},
      {"temperature.T1", "300"},       {"temperature.T2", "0"},
  };
  return keys;
}

const std::vector<std::pair<std::string, std::string>>& run_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"quantities", ""},
      {"sweep.parameter", ""},
      {"sweep.start", ""},
      {"sweep.stop", ""},
      {"sweep.count", ""},
      {"sweep.spacing", "log"},
      {"variants", ""},
      {"tolerance.frequency_rel", "1e-7"},
      {"tolerance.kperp_rel", "1e-9"},
      {"tolerance.l_max", "auto"},
      {"tolerance.l_cap", "2048"},
      {"output.format", "csv"},
      {"output.path", "-"},
  };
  return keys;
}

bool is_length_key(const std::string& key) {
  return key.ends_with(".radius") || key.ends_with(".separation");
}

int parse_int(const std::string& text, const std::string& key) {
  int v = 0;
  const std::string t = trim(text);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  return v;
}

double parse_temperature(const std::string& text, const std::string& key) {
  std::string t = trim(text);
  if (!t.empty() && t.back() == 'K') t.pop_back();
  const double v = parse_number(t, key);
  if (!(v >= 0.0)) throw ConfigError(key, "temperature must be >= 0 K");
  return v;
}

/// Canonical text of one value.
std::string canonical_value(const std::string& key, const std::string& value,
                            const std::string& parameter) {
  if (is_length_key(key)) return format_length(parse_length(value, key));
  if (key == "temperature.T1" || key == "temperature.T2")
    return format_number(parse_temperature(value, key));
  if (key == "plates.damping_scale" || key == "tolerance.frequency_rel" || key == "tolerance.kperp_rel")
    return format_number(parse_number(value, key));
  if (key == "sweep.start" || key == "sweep.stop") {
    if (parameter.empty() || !sweep::is_length_parameter(parameter))
      return format_number(parse_temperature(value, key));
    return format_length(parse_length(value, key));
  }
  if (key == "sweep.count" || key == "tolerance.l_cap") return std::to_string(parse_int(value, key));
  if (key == "quantities" || key == "variants") {
    std::string out;
    for (const auto& item : split_list(value)) out += (out.empty() ? "" : ",") + item;
    return out;
  }
  return trim(value);
}

}  // namespace

double Length::meters() const {
  for (const auto& u : kUnits)
    if (unit == u.name) return value / u.per_meter;  // exact divisor: 10um -> 1e-05
  throw ConfigError("length", "unknown unit '" + unit + "'");
}

Length parse_length(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  for (const auto& u : kUnits) {
    const std::string suffix = u.name;
    if (t.size() > suffix.size() && t.ends_with(suffix)) {
      Length l{parse_number(t.substr(0, t.size() - suffix.size()), key), suffix};
      if (!(l.value > 0.0)) throw ConfigError(key, "length must be positive, got '" + text + "'");
      return l;
    }
  }
  throw ConfigError(key, "length '" + text + "' needs a unit suffix (nm, um or mm)");
}

std::string format_length(const Length& l) { return format_number(l.value) + l.unit; }

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v))
    throw ConfigError(key, "expected a number, got '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

materials::PermittivityModel parse_material(const std::string& text, double damping_scale,
                                            const std::string& key) {
  const std::string t = trim(text);
  if (!(damping_scale > 0.0)) throw ConfigError(key, "damping scale must be positive");
  auto scaled = [&](double wp, double wt) -> materials::PermittivityModel {
    if (damping_scale == 1.0) return materials::Drude{wp, wt};
    return materials::ScaledDampingDrude{wp, wt * damping_scale};
  };
  const bool drude_like = t == "gold" || t.starts_with("drude:");
  if (damping_scale != 1.0 && !drude_like)
    throw ConfigError(key, "a damping scale applies only to gold or drude materials");
  if (t == "sic") return materials::silicon_carbide();
  if (t == "gold") return scaled(materials::gold().omega_p, materials::gold().omega_tau);
  if (t == "mirror") return materials::PerfectMirror{};
  if (t == "transparent") return materials::Transparent{};
  if (t.starts_with("drude:")) {
    const auto parts = split_list(t.substr(6));
    if (parts.size() != 2) throw ConfigError(key, "drude needs two values: drude:<omega_p>,<omega_tau>");
    const double wp = parse_number(parts[0], key), wt = parse_number(parts[1], key);
    if (!(wp > 0.0) || !(wt > 0.0)) throw ConfigError(key, "drude parameters must be positive");
    return scaled(wp, wt);
  }
  if (t.starts_with("table:")) {
    try {
      return materials::load_tabulated(t.substr(6));
    } catch (const std::exception& e) {
      throw ConfigError(key, e.what());
    }
  }
  throw ConfigError(key, "unknown material '" + text +
                             "' (expected sic, gold, mirror, transparent, drude:wp,wt or table:path)");
}

Settings parse_settings(const std::string& text, const std::string& source) {
  Settings s;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(n), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(n), "empty key");
    if (s.count(key)) throw ConfigError(key, "duplicate key");
    s[key] = trim(line.substr(eq + 1));
  }
  return s;
}

Settings load_settings(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, "cannot open config file");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_settings(ss.str(), path);
}

RunConfig build(const Settings& settings) {
  // A one-point sweep may omit its stop value.
  if (auto c = settings.find("sweep.count"), b = settings.find("sweep.start");
      c != settings.end() && b != settings.end() && !settings.count("sweep.stop") &&
      split_list(c->second) == std::vector<std::string>{"1"}) {
    Settings filled = settings;
    filled["sweep.stop"] = b->second;
    return build(filled);
  }
  // Unknown keys first, so a typo is reported by name.
  std::vector<std::string> labels;
  if (auto it = settings.find("variants"); it != settings.end()) labels = split_list(it->second);
  auto known_config_key = [](const std::string& k) {
    const auto& ck = configuration_keys();
    return std::any_of(ck.begin(), ck.end(), [&](const auto& p) { return p.first == k; });
  };
  for (const auto& [key, value] : settings) {
    const auto& rk = run_keys();
    if (known_config_key(key) ||
        std::any_of(rk.begin(), rk.end(), [&](const auto& p) { return p.first == key; }))
      continue;
    if (key.starts_with("variant.")) {
      // Labels may contain dots (damping_0.01), so match the listed labels.
      const std::string rest = key.substr(8);
      bool listed = false;
      for (const auto& l : labels)
        if (rest.starts_with(l + ".")) {
          listed = true;
          if (known_config_key(rest.substr(l.size() + 1))) goto next_key;
        }
      if (!listed) {
        const auto dot = rest.find('.');
        throw ConfigError(key, "variant '" + rest.substr(0, dot) + "' is not listed in 'variants'");
      }
    }
    throw ConfigError(key, "unknown key");
  next_key:;
  }

  auto base = [&](const std::string& key) -> std::string {
    if (auto it = settings.find(key); it != settings.end()) return it->second;
    for (const auto& p : run_keys())
      if (p.first == key) return p.second;
    for (const auto& p : configuration_keys())
      if (p.first == key) return p.second;
    return "";
  };
  auto required = [&](const std::string& key) {
    const std::string v = base(key);
    if (v.empty()) throw ConfigError(key, "required key is missing");
    return v;
  };

  RunConfig rc;
  sweep::SweepSpec& spec = rc.spec;
  for (const auto& name : split_list(required("quantities"))) {
    const auto q = sweep::parse_quantity(name);
    if (!q) throw ConfigError("quantities", "unknown quantity '" + name + "'");
    spec.quantities.push_back(*q);
  }
  spec.parameter = required("sweep.parameter");
  if (std::find(std::begin(sweep::kSweepParameters), std::end(sweep::kSweepParameters),
                spec.parameter) == std::end(sweep::kSweepParameters))
    throw ConfigError("sweep.parameter", "unknown parameter '" + spec.parameter + "'");
  const bool length = sweep::is_length_parameter(spec.parameter);
  auto endpoint = [&](const std::string& key) {
    const std::string v = required(key);
    return length ? parse_length(v, key).meters() : parse_temperature(v, key);
  };
  spec.grid.start = endpoint("sweep.start");
  spec.grid.stop = endpoint("sweep.stop");
  spec.grid.count = parse_int(required("sweep.count"), "sweep.count");
  if (spec.grid.count < 1) throw ConfigError("sweep.count", "must be >= 1");
  const std::string spacing = base("sweep.spacing");
  if (spacing == "log")
    spec.grid.spacing = sweep::Spacing::Log;
  else if (spacing == "linear")
    spec.grid.spacing = sweep::Spacing::Linear;
  else
    throw ConfigError("sweep.spacing", "expected log or linear");
  try {
    spec.grid.validate();
  } catch (const DomainError& e) {
    throw ConfigError("sweep", e.what());
  }

  auto& tol = spec.tolerances;
  tol.frequency.rel_tol = parse_number(base("tolerance.frequency_rel"), "tolerance.frequency_rel");
  if (!(tol.frequency.rel_tol > 0.0)) throw ConfigError("tolerance.frequency_rel", "must be positive");
  tol.kperp.rel_tol = parse_number(base("tolerance.kperp_rel"), "tolerance.kperp_rel");
  if (!(tol.kperp.rel_tol > 0.0)) throw ConfigError("tolerance.kperp_rel", "must be positive");
  const std::string lmax = base("tolerance.l_max");
  tol.l_control.cap = parse_int(base("tolerance.l_cap"), "tolerance.l_cap");
  if (tol.l_control.cap < 1) throw ConfigError("tolerance.l_cap", "must be >= 1");
  if (lmax != "auto") {
    tol.l_control.fixed = parse_int(lmax, "tolerance.l_max");
    if (tol.l_control.fixed < 1) throw ConfigError("tolerance.l_max", "must be 'auto' or >= 1");
  }

  const std::string format = base("output.format");
  if (format == "csv")
    rc.format = Format::Csv;
  else if (format == "json")
    rc.format = Format::Json;
  else
    throw ConfigError("output.format", "expected csv or json");
  rc.output_path = base("output.path");

  // Configurations.
  auto configuration = [&](const std::string& label) {
    auto get = [&](const std::string& key) -> std::pair<std::string, std::string> {
      if (!label.empty())
        if (auto it = settings.find("variant." + label + "." + key); it != settings.end())
          return {"variant." + label + "." + key, it->second};
      return {key, base(key)};
    };
    auto len = [&](const std::string& key) {
      const auto [k, v] = get(key);
      return parse_length(v, k).meters();
    };
    auto temp = [&](const std::string& key) {
      const auto [k, v] = get(key);
      return parse_temperature(v, k);
    };
    auto mat = [&](const std::string& key, double damping = 1.0) {
      const auto [k, v] = get(key);
      return parse_material(v, damping, k);
    };
    sweep::Configuration c;
    c.particle1 = {mat("particle1.material"), len("particle1.radius")};
    c.particle2 = {mat("particle2.material"), len("particle2.radius")};
    const auto [dk, dv] = get("plates.damping_scale");
    const double damping = parse_number(dv, dk);
    if (!(damping > 0.0)) throw ConfigError(dk, "must be positive");
    c.plates = mat("plates.material", damping);
    c.d = len("plates.separation");
    c.r = len("pair.separation");
    c.sphere = {mat("sphere.material"), len("sphere.radius")};
    c.cavity = {mat("cavity.material"), len("cavity.radius")};
    c.T1 = temp("temperature.T1");
    c.T2 = temp("temperature.T2");
    if (!(c.T1 > 0.0)) throw ConfigError(get("temperature.T1").first, "must be positive");
    return c;
  };
  if (labels.empty()) {
    spec.variants.push_back({"", configuration("")});
  } else {
    for (const auto& l : labels) {
      if (std::count(labels.begin(), labels.end(), l) > 1)
        throw ConfigError("variants", "duplicate label '" + l + "'");
      spec.variants.push_back({l, configuration(l)});
    }
  }
  // Geometry that can be checked before running.
  for (const auto& v : spec.variants) {
    const bool sphere_q = std::any_of(spec.quantities.begin(), spec.quantities.end(), [](auto q) {
      return q == sweep::Quantity::SphereCavityHR || q == sweep::Quantity::DipoleLimitHR ||
             q == sweep::Quantity::PPCavityHR || q == sweep::Quantity::PlatePlatePA;
    });
    if (!sphere_q) continue;
    for (double x : {spec.grid.start, spec.grid.stop}) {
      sweep::Configuration c = v.config;
      sweep::apply_parameter(c, spec.parameter, x);
      if (!(c.sphere.radius < c.cavity.radius))
        throw ConfigError(spec.parameter == "gap" ? "sweep.start" : "cavity.radius",
                          "sphere radius must be smaller than the cavity radius");
    }
  }

  // Canonical echo.
  for (const auto& [key, def] : run_keys()) {
    const std::string v = base(key);
    rc.canonical.emplace_back(key, canonical_value(key, v, spec.parameter));
  }
  for (const auto& [key, def] : configuration_keys())
    rc.canonical.emplace_back(key, canonical_value(key, base(key), spec.parameter));
  for (const auto& l : labels)
    for (const auto& [key, def] : configuration_keys())
      if (auto it = settings.find("variant." + l + "." + key); it != settings.end())
        rc.canonical.emplace_back(it->first, canonical_value(key, it->second, spec.parameter));
  return rc;
}

}  // namespace confheat::config
