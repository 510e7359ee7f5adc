#pragma once

#include <numbers>

namespace mechent {

inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K
inline constexpr double kSpeedOfLight = 299792458.0;  // m / s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

#ifdef MECHENT_VERSION
inline constexpr const char* kVersion = MECHENT_VERSION;
#else
inline constexpr const char* kVersion = "0.1.0";
#endif

}  // namespace mechent
