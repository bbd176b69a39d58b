/*
 * cli.cpp -- subcommands. The figure subcommands translate their flags into
 * the settings schema of config.hpp, so `compute` with the same settings
 * writes the same bytes.
 */
#include "confheat/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <optional>

#include "confheat/config.hpp"
#include "confheat/errors.hpp"
#include "confheat/output.hpp"
#include "confheat/sweep.hpp"

namespace confheat::cli {

namespace {

using config::ConfigError;
using config::Settings;

struct Common {
  std::string format = "csv";
  std::string output = "-";
  std::string freq_rel = "1e-7";
  std::string kperp_rel = "1e-9";

  void add(CLI::App* app) {
    app->add_option("--format", format, "csv or json")->capture_default_str();
    app->add_option("--output,-o", output, "output file, - for stdout")->capture_default_str();
    app->add_option("--freq-rel-tol", freq_rel, "relative tolerance of the frequency integral")
        ->capture_default_str();
    app->add_option("--kperp-rel-tol", kperp_rel,
                    "relative tolerance of the plate Green's-function integral")
        ->capture_default_str();
  }
  void into(Settings& s) const {
    s["output.format"] = format;
    s["output.path"] = output;
    s["tolerance.frequency_rel"] = freq_rel;
    s["tolerance.kperp_rel"] = kperp_rel;
  }
};

/// Writes a sweep and maps record failures to the exit code.
int emit(const config::RunConfig& rc, const std::vector<sweep::SweepRecord>& records,
         std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (rc.output_path != "-") {
    file.open(rc.output_path);
    if (!file) {
      err << "error: --output: cannot write '" << rc.output_path << "'\n";
      return kExitUsage;
    }
    os = &file;
  }
  if (rc.format == config::Format::Json)
    output::write_sweep_json(*os, rc.spec, records, rc.canonical);
  else
    output::write_sweep_csv(*os, rc.spec, records, rc.canonical);
  int failed = 0;
  for (const auto& r : records) failed += r.ok() ? 0 : 1;
  if (failed) {
    err << "warning: " << failed << " of " << records.size() << " rows have failed values\n";
    return kExitPartial;
  }
  return kExitOk;
}

/// Builds and runs; ConfigError keys are reported under the user's flag names.
int run_settings(const Settings& s, const std::map<std::string, std::string>& flags,
                 std::ostream& out, std::ostream& err) {
  config::RunConfig rc;
  try {
    rc = config::build(s);
  } catch (const ConfigError& e) {
    std::string what = e.what();
    std::string key = e.key();
    if (key.starts_with("variant.")) key = key.substr(key.find('.', 8) + 1);
    if (auto it = flags.find(key); it != flags.end())
      what = it->second + what.substr(e.key().size());
    err << "error: " << what << "\n";
    return kExitUsage;
  }
  return emit(rc, sweep::run_sweep(rc.spec), out, err);
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"confheat -- near-field heat transfer between confined particles and in spherical cavities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("confheat ") + output::version());

  // ------------------------------------------------------------ pp-plates
  auto* pp = app.add_subcommand("pp-plates", "particle-particle heat transfer between plates vs. r");
  struct {
    std::string plates = "sic", particles = "sic", particle_radius = "10nm", d = "0.2um";
    std::string r_start = "0.1um", r_stop = "1000um", points = "60", T1 = "300";
    std::vector<std::string> damping{"1"};
    std::string quantities = "pp-two-plates,pp-single-plate,pp-vacuum";
    Common common;
  } ppo;
  pp->add_option("--plates", ppo.plates, "plate material")->capture_default_str();
  pp->add_option("--particles", ppo.particles, "particle material")->capture_default_str();
  pp->add_option("--particle-radius", ppo.particle_radius, "particle radius (nm/um/mm)")->capture_default_str();
  pp->add_option("-d,--d", ppo.d, "plate separation (nm/um/mm)")->capture_default_str();
  pp->add_option("--r-start", ppo.r_start, "first particle separation")->capture_default_str();
  pp->add_option("--r-stop", ppo.r_stop, "last particle separation")->capture_default_str();
  pp->add_option("--points", ppo.points, "number of log-spaced separations")->capture_default_str();
  pp->add_option("--T1", ppo.T1, "temperature of particle 1 (K)")->capture_default_str();
  pp->add_option("--damping-scale", ppo.damping,
                 "scale(s) of the Drude damping of gold/drude plates; several values give one "
                 "column group each")
      ->delimiter(',')
      ->capture_default_str();
  pp->add_option("--quantities", ppo.quantities, "quantities to compute")->capture_default_str();
  ppo.common.add(pp);

  // -------------------------------------------------------- sphere-cavity
  auto* sc = app.add_subcommand("sphere-cavity", "heat radiation of a sphere in a spherical cavity vs. gap");
  struct {
    std::string sphere = "sic", radius = "0.1um", gap_start = "1nm", gap_stop = "1000um";
    std::string points = "60", T1 = "300", TC = "0", l_max = "auto";
    std::vector<std::string> cavities{"sic", "gold"};
    std::string quantities = "sphere-cavity-hr,pp-cavity-hr,plate-plate-pa,free-sphere-hr";
    Common common;
  } sco;
  sc->add_option("--sphere", sco.sphere, "sphere material")->capture_default_str();
  sc->add_option("--radius", sco.radius, "sphere radius (nm/um/mm)")->capture_default_str();
  sc->add_option("--cavities", sco.cavities, "cavity wall materials, one column group each")
      ->delimiter(',')
      ->capture_default_str();
  sc->add_option("--gap-start", sco.gap_start, "first gap R~ - R")->capture_default_str();
  sc->add_option("--gap-stop", sco.gap_stop, "last gap")->capture_default_str();
  sc->add_option("--points", sco.points, "number of log-spaced gaps")->capture_default_str();
  sc->add_option("--T1", sco.T1, "sphere temperature (K)")->capture_default_str();
  sc->add_option("--TC", sco.TC, "cavity temperature for the plate-plate column (K)")->capture_default_str();
  sc->add_option("--l-max", sco.l_max, "multipole truncation: auto or an integer")->capture_default_str();
  sc->add_option("--quantities", sco.quantities, "quantities to compute")->capture_default_str();
  sco.common.add(sc);

  // ---------------------------------------------------------- convergence
  auto* cv = app.add_subcommand("convergence", "partial multipole sums relative to the converged value");
  struct {
    std::string sphere = "gold", radius = "0.1um", T1 = "300", l_max = "400";
    std::vector<std::string> cavities{"sic", "gold"};
    std::vector<std::string> gaps{"1nm", "10nm", "100nm"};
    Common common;
  } cvo;
  cv->add_option("--sphere", cvo.sphere, "sphere material")->capture_default_str();
  cv->add_option("--radius", cvo.radius, "sphere radius")->capture_default_str();
  cv->add_option("--cavities", cvo.cavities, "cavity wall materials")->delimiter(',')->capture_default_str();
  cv->add_option("--gaps", cvo.gaps, "gaps R~ - R")->delimiter(',')->capture_default_str();
  cv->add_option("--l-max", cvo.l_max, "largest truncation order")->capture_default_str();
  cv->add_option("--T1", cvo.T1, "sphere temperature (K)")->capture_default_str();
  cvo.common.add(cv);

  // -------------------------------------------------------------- compute
  auto* cp = app.add_subcommand("compute", "run a sweep described by a settings file");
  std::string config_path;
  cp->add_option("config", config_path, "settings file (key = value)")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pp->parsed()) {
      Settings s;
      s["quantities"] = ppo.quantities;
      s["sweep.parameter"] = "r";
      s["sweep.start"] = ppo.r_start;
      s["sweep.stop"] = ppo.r_stop;
      s["sweep.count"] = ppo.points;
      s["plates.material"] = ppo.plates;
      s["plates.separation"] = ppo.d;
      s["particle1.material"] = s["particle2.material"] = ppo.particles;
      s["particle1.radius"] = s["particle2.radius"] = ppo.particle_radius;
      s["temperature.T1"] = ppo.T1;
      if (ppo.damping.size() == 1) {
        s["plates.damping_scale"] = ppo.damping[0];
      } else {
        std::vector<std::string> labels;
        for (const auto& d : ppo.damping) {
          const std::string label = "damping_" + d;
          labels.push_back(label);
          s["variant." + label + ".plates.damping_scale"] = d;
        }
        s["variants"] = join(labels);
      }
      ppo.common.into(s);
      const std::map<std::string, std::string> flags = {
          {"quantities", "--quantities"},       {"sweep.start", "--r-start"},
          {"sweep.stop", "--r-stop"},           {"sweep.count", "--points"},
          {"sweep", "--r-start/--r-stop"},      {"plates.material", "--plates"},
          {"plates.separation", "--d"},         {"particle1.material", "--particles"},
          {"particle2.material", "--particles"}, {"particle1.radius", "--particle-radius"},
          {"particle2.radius", "--particle-radius"}, {"temperature.T1", "--T1"},
          {"plates.damping_scale", "--damping-scale"}, {"output.format", "--format"},
          {"tolerance.frequency_rel", "--freq-rel-tol"}, {"tolerance.kperp_rel", "--kperp-rel-tol"},
          {"variants", "--damping-scale"}};
      return run_settings(s, flags, out, err);
    }

    if (sc->parsed()) {
      Settings s;
      s["quantities"] = sco.quantities;
      s["sweep.parameter"] = "gap";
      s["sweep.start"] = sco.gap_start;
      s["sweep.stop"] = sco.gap_stop;
      s["sweep.count"] = sco.points;
      s["sphere.material"] = sco.sphere;
      s["sphere.radius"] = sco.radius;
      s["temperature.T1"] = sco.T1;
      s["temperature.T2"] = sco.TC;
      s["tolerance.l_max"] = sco.l_max;
      if (sco.cavities.size() == 1) {
        s["cavity.material"] = sco.cavities[0];
      } else {
        s["variants"] = join(sco.cavities);
        for (const auto& c : sco.cavities) s["variant." + c + ".cavity.material"] = c;
      }
      sco.common.into(s);
      const std::map<std::string, std::string> flags = {
          {"quantities", "--quantities"},    {"sweep.start", "--gap-start"},
          {"sweep.stop", "--gap-stop"},      {"sweep.count", "--points"},
          {"sweep", "--gap-start/--gap-stop"}, {"sphere.material", "--sphere"},
          {"sphere.radius", "--radius"},     {"cavity.material", "--cavities"},
          {"variants", "--cavities"},        {"temperature.T1", "--T1"},
          {"temperature.T2", "--TC"},        {"tolerance.l_max", "--l-max"},
          {"output.format", "--format"},     {"tolerance.frequency_rel", "--freq-rel-tol"},
          {"tolerance.kperp_rel", "--kperp-rel-tol"}};
      return run_settings(s, flags, out, err);
    }

    if (cv->parsed()) {
      // Validate through the same parsers as the sweeps.
      auto flag_error = [&](const std::string& flag, const ConfigError& e) {
        err << "error: " << flag << std::string(e.what()).substr(e.key().size()) << "\n";
        return kExitUsage;
      };
      sweep::Tolerances tol;
      int lmax = 0;
      double T1 = 0.0;
      mie::SphereSpec sphere;
      std::vector<sweep::ConvergenceConfig> configs;
      config::Format format = config::Format::Csv;
      try {
        tol.frequency.rel_tol = config::parse_number(cvo.common.freq_rel, "--freq-rel-tol");
        if (!(tol.frequency.rel_tol > 0.0)) throw ConfigError("--freq-rel-tol", "must be positive");
        lmax = static_cast<int>(config::parse_number(cvo.l_max, "--l-max"));
        if (lmax < 1) throw ConfigError("--l-max", "must be >= 1");
        T1 = config::parse_number(cvo.T1, "--T1");
        if (!(T1 > 0.0)) throw ConfigError("--T1", "must be positive");
        sphere = {config::parse_material(cvo.sphere, 1.0, "--sphere"),
                  config::parse_length(cvo.radius, "--radius").meters()};
        if (cvo.common.format == "json") format = config::Format::Json;
        else if (cvo.common.format != "csv") throw ConfigError("--format", "expected csv or json");
        for (const auto& c : cvo.cavities)
          for (const auto& g : cvo.gaps) {
            const auto gap = config::parse_length(g, "--gaps");
            configs.push_back({c + "_" + config::format_length(gap), sphere,
                               {config::parse_material(c, 1.0, "--cavities"), sphere.radius + gap.meters()},
                               T1, tol});
          }
      } catch (const ConfigError& e) {
        return flag_error(e.key(), e);
      }
      if (format == config::Format::Json) {
        err << "error: --format: the convergence study is written as CSV only\n";
        return kExitUsage;
      }
      std::vector<int> ls;
      for (int l = 1; l <= lmax; l += (l < 20 ? 1 : 5)) ls.push_back(l);
      if (ls.back() != lmax) ls.push_back(lmax);
      const auto studies = sweep::convergence_studies(configs, ls);
      output::SettingList settings = {{"study", "convergence"},
                                      {"sphere.material", cvo.sphere},
                                      {"sphere.radius", config::format_length(config::parse_length(cvo.radius))},
                                      {"cavities", join(cvo.cavities)},
                                      {"gaps", join(cvo.gaps)},
                                      {"l_max", std::to_string(lmax)},
                                      {"temperature.T1", config::format_number(T1)},
                                      {"tolerance.frequency_rel", config::format_number(tol.frequency.rel_tol)}};
      std::ofstream file;
      std::ostream* os = &out;
      if (cvo.common.output != "-") {
        file.open(cvo.common.output);
        if (!file) {
          err << "error: --output: cannot write '" << cvo.common.output << "'\n";
          return kExitUsage;
        }
        os = &file;
      }
      output::write_convergence_csv(*os, studies, settings);
      return kExitOk;
    }

    if (cp->parsed()) {
      config::Settings s;
      try {
        s = config::load_settings(config_path);
      } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      return run_settings(s, {}, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace confheat::cli
