/*
 * constants.hpp -- physical constants (CODATA 2018, exact where the SI
 * defines them) and the Bose/Planck thermal weights used by every flux
 * integral in the library.
 */
#pragma once

#include <numbers>

namespace confheat {

struct PhysicalConstants {
  double hbar;  // J s
  double k_B;   // J/K
  double c;     // m/s
};

inline constexpr PhysicalConstants kConstants{
    1.054571817e-34,
    1.380649e-23,
    299792458.0,
};

inline constexpr double kPi = std::numbers::pi;

/// Name of the constants set, recorded in output metadata.
inline constexpr const char* kConstantsName = "CODATA-2018";

}  // namespace confheat
