#pragma once

#include <array>

#include "mechent/linalg.hpp"
#include "mechent/params.hpp"

namespace mechent {

/// Two-resonator model left after adiabatically eliminating both cavities.
///
///   d/dt d1 = -(U1/2) d1 + chi d2^dag + noise
///   d/dt d2 = -(U2/2) d2 + chi d1^dag + noise
///
/// with U_j = gamma_j + Gamma_j the effective dampings. Noise coefficients
/// a_j (own cavity input) and b_j (conjugate input of the other cavity) weight
/// the squeezed reservoir.
struct EffectiveModel {
  ModelInputs inputs;
  ModePair optical_damping{};   // Gamma_j
  ModePair damping{};           // Upsilon_j
  double denominator = 0.0;     // K = kappa1 kappa2 / 4 - Lambda^2
  Complex coupling{0.0, 0.0};   // chi
  ComplexPair a{};
  ComplexPair b{};
  bool beyond_threshold = false;  // K < 0
};

/// Throws SingularError when K vanishes (relative to kappa1 kappa2 / 4).
EffectiveModel build_effective_model(const ModelInputs& in);
EffectiveModel build_effective_model(const ReducedParams& p);
EffectiveModel build_effective_model(const OperatingPoint& op);

/// Drift matrix over (Q1, P1, Q2, P2), quadratures normalized so the vacuum
/// variance is 1/2.
Mat4 build_drift(const EffectiveModel& m);

/// The four independent diffusion entries.
struct DiffusionEntries {
  double f11 = 0.0;
  double f33 = 0.0;
  double f13 = 0.0;
  double f14 = 0.0;
};

DiffusionEntries diffusion_entries(const EffectiveModel& m);

/// Symmetric diffusion matrix laid out as
///   [ F11   0    F13  F14 ]
///   [ 0     F11  F14 -F13 ]
///   [ F13   F14  F33  0   ]
///   [ F14  -F13  0    F33 ]
/// Throws PhysicalityError if it is not positive semidefinite.
Mat4 build_diffusion(const EffectiveModel& m);

struct StateMatrices {
  Mat4 drift;
  Mat4 diffusion;
};

StateMatrices build_state_matrices(const EffectiveModel& m);

inline constexpr std::array<const char*, 4> kMechanicalLabels{"Q1", "P1", "Q2", "P2"};

}  // namespace mechent
