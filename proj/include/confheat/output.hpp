/*
 * output.hpp -- CSV and JSON emission.
 *
 * CSV files open with a '#' block: tool version, constants, and the
 * canonical settings of the run (enough to reproduce it). Numbers are
 * written in shortest round-trip form; failed values are "nan".
 */
#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "confheat/sweep.hpp"

namespace confheat::output {

using SettingList = std::vector<std::pair<std::string, std::string>>;

/// "# confheat <version>", constants, then "# key = value" per setting.
void write_header(std::ostream& os, const SettingList& settings);

/// Column names of a sweep CSV (in order).
std::vector<std::string> sweep_columns(const sweep::SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const sweep::SweepSpec& spec,
                     const std::vector<sweep::SweepRecord>& records, const SettingList& settings);

/// {"tool", "version", "constants", "settings", "records": [SweepRecord...]}
void write_sweep_json(std::ostream& os, const sweep::SweepSpec& spec,
                      const std::vector<sweep::SweepRecord>& records, const SettingList& settings);

/// l_max, ratio_<label>... for every study, then ratio_vacuum from the first.
void write_convergence_csv(std::ostream& os, const std::vector<sweep::ConvergenceStudy>& studies,
                           const SettingList& settings);

const char* version();

}  // namespace confheat::output
