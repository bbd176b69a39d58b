/*
 * config.hpp -- run configuration: key = value settings, unit-suffixed
 * lengths and material names.
 *
 * The same settings schema backs the config files of `confheat compute` and
 * the flags of the figure subcommands, which translate their flags into
 * settings. Output headers print the canonical settings back, so a run is
 * reproducible from its own header.
 *
 * Schema (every key optional unless noted; defaults in parentheses):
 *
 *   quantities           comma list of quantity names (required)
 *   sweep.parameter      r | d | gap | cavity_radius | sphere_radius |
 *                        particle_radius | T1   (required)
 *   sweep.start, sweep.stop   lengths with nm/um/mm suffix, or K for T1 (required)
 *   sweep.count          >= 1 (required; with 1, sweep.stop may be omitted)
 *   sweep.spacing        log | linear (log)
 *   variants             comma list of labels ("" = one unlabeled variant)
 *   particle1.material, particle2.material   (sic)
 *   particle1.radius, particle2.radius       (10nm)
 *   plates.material      (sic)
 *   plates.damping_scale scales the Drude damping of a gold/drude plate (1)
 *   plates.separation    (0.2um)
 *   pair.separation      (2um)
 *   sphere.material      (sic)       sphere.radius (0.1um)
 *   cavity.material      (gold)      cavity.radius (2um)
 *   temperature.T1       K (300)     temperature.T2  K (0)
 *   tolerance.frequency_rel  (1e-7)
 *   tolerance.kperp_rel      (1e-9)
 *   tolerance.l_max      auto | integer (auto)
 *   tolerance.l_cap      (2048)
 *   output.format        csv | json (csv)
 *   output.path          file name, "-" for stdout (-)
 *
 * Per-variant overrides: variant.<label>.<key> for any configuration key
 * (particle*, plates.*, pair.*, sphere.*, cavity.*, temperature.*).
 *
 * Materials: sic, gold, mirror, transparent, drude:<omega_p>,<omega_tau>
 * (rad/s), table:<path>.
 */
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "confheat/materials.hpp"
#include "confheat/sweep.hpp"

namespace confheat::config {

/// Invalid setting; what() starts with the offending key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct Length {
  double value = 0.0;  // in `unit`
  std::string unit;    // nm | um | mm
  double meters() const;
};

/// "0.2um" -> {0.2, "um"}; the suffix is mandatory.
Length parse_length(const std::string& text, const std::string& key = "length");
std::string format_length(const Length& l);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double x);
double parse_number(const std::string& text, const std::string& key);

materials::PermittivityModel parse_material(const std::string& text, double damping_scale = 1.0,
                                            const std::string& key = "material");

enum class Format { Csv, Json };

using Settings = std::map<std::string, std::string>;

struct RunConfig {
  sweep::SweepSpec spec;
  Format format = Format::Csv;
  std::string output_path = "-";
  /// Canonical key/value list (defaults filled in), in schema order.
  std::vector<std::pair<std::string, std::string>> canonical;
};

/// Parses "key = value" lines ('#' starts a comment).
Settings parse_settings(const std::string& text, const std::string& source);
Settings load_settings(const std::string& path);

/// Validates keys and values and builds the run. Throws ConfigError.
RunConfig build(const Settings& settings);

/// Comma-separated list, items trimmed.
std::vector<std::string> split_list(const std::string& text);

}  // namespace confheat::config
