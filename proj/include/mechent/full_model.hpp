#pragma once

#include "mechent/linalg.hpp"
#include "mechent/params.hpp"

namespace mechent {

/// Linearized cavity + mirror model before elimination, in the resonant
/// (rotating-wave) frame at Delta_j = Omega_j with the pump frequency matched
/// to Delta_1 + Delta_2.
///
/// Quadrature order: (Q1c, P1c, Q2c, P2c, Q1m, P1m, Q2m, P2m).
struct FullStateMatrices {
  Mat8 drift = Mat8::Zero();
  Mat8 diffusion = Mat8::Zero();
};

FullStateMatrices build_full_model(const ModelInputs& in);
FullStateMatrices build_full_model(const OperatingPoint& op);

/// Offset of the mechanical 4x4 block inside the 8x8 layout.
inline constexpr int kMechanicalOffset = 4;

struct EliminationReport {
  double coupling_over_kappa = 0.0;       // max_j G_j / kappa_j
  double covariance_deviation = 0.0;      // max |R_full - R_reduced| / max |R_reduced|
  double negativity_full = 0.0;
  double negativity_reduced = 0.0;
  double negativity_deviation = 0.0;      // relative; 0 when both vanish
  double full_min_symplectic = 0.0;       // smallest of the four, physicality
  double tolerance = 0.0;
  bool full_stable = false;
  bool reduced_stable = false;
  bool passed = false;
  Mat4 reduced = Mat4::Zero();
  Mat4 full_mechanical = Mat4::Zero();
};

/// Solves both models and compares the mechanical covariances.
/// Requires G_j <= 0.1 kappa_j; throws UnstableError if the full model is
/// unstable.
EliminationReport validate_elimination(const ModelInputs& in, double tolerance);
EliminationReport validate_elimination(const OperatingPoint& op, double tolerance);

}  // namespace mechent
