#pragma once

#include <array>

#include "mechent/effective_model.hpp"
#include "mechent/linalg.hpp"

namespace mechent {

/// Real parts of a drift spectrum and the eigenvalue verdict.
struct EigenStability {
  VecX real_parts;  // sorted descending
  bool stable = false;
};

/// stable <=> max real part < 0. Throws Error if the eigen-solver fails.
EigenStability eigenvalue_stability(const MatX& drift);

/// Routh-Hurwitz analysis of the quartic det(B - lambda I) = 0,
///   lambda^4 + s1 lambda^3 + s2 lambda^2 + s3 lambda + s4.
struct StabilityReport {
  std::array<double, 4> coefficients{};  // s1..s4
  std::array<double, 3> hurwitz{};       // h1..h3, physical units
  std::array<double, 3> normalized{};    // h1/s^2, h2/s^3, h3/s^6
  double scale = 0.0;                    // s used above (Upsilon1 + Upsilon2)
  double margin = 0.0;                   // min(normalized)
  bool stable = false;
  std::array<double, 4> eigenvalue_real_parts{};
  bool eigenvalue_stable = false;
};

/// Normalized Hurwitz quantities within this of zero count as unstable.
inline constexpr double kMarginalTolerance = 1e-12;

StabilityReport routh_hurwitz(const EffectiveModel& m);

}  // namespace mechent
