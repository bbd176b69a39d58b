/*
 * cli.hpp -- command-line front end.
 *
 *   confheat pp-plates      particle-particle transfer between plates (figs. 2-3)
 *   confheat sphere-cavity  sphere radiation vs. gap to the cavity wall (figs. 4-6)
 *   confheat convergence    partial multipole sums vs. l_max (fig. 7)
 *   confheat compute FILE   any sweep from a settings file
 *
 * Exit codes: 0 success, 1 bad arguments/configuration, 2 some rows failed.
 * Worker threads: CONFHEAT_WORKERS (default: hardware concurrency).
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace confheat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPartial = 2;

/// args excludes the program name. Data goes to `out` when the output path
/// is "-", diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confheat::cli
