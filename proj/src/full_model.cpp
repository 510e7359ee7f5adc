#include "mechent/full_model.hpp"

#include <algorithm>
#include <cmath>

#include "mechent/core_model.hpp"
#include "mechent/covariance.hpp"
#include "mechent/effective_model.hpp"
#include "mechent/entanglement.hpp"
#include "mechent/errors.hpp"
#include "mechent/quadrature.hpp"
#include "mechent/stability.hpp"

namespace mechent {

namespace {
// Mode indices for the complex amplitudes: c1, c2, d1, d2.
constexpr int kC1 = 0, kC2 = 1, kD1 = 2, kD2 = 3;
}  // namespace

FullStateMatrices build_full_model(const ModelInputs& in) {
  using namespace std::complex_literals;
  CMatX a = CMatX::Zero(4, 4);
  CMatX b = CMatX::Zero(4, 4);
  a(kC1, kC1) = -0.5 * in.kappa[0];
  a(kC2, kC2) = -0.5 * in.kappa[1];
  a(kD1, kD1) = -0.5 * in.gamma[0];
  a(kD2, kD2) = -0.5 * in.gamma[1];
  // Beam-splitter (red-sideband) exchange between cavity j and mirror j.
  a(kC1, kD1) = a(kD1, kC1) = 1.0i * in.coupling[0];
  a(kC2, kD2) = a(kD2, kC2) = 1.0i * in.coupling[1];
  // Two-mode squeezing from the NDOPA.
  const Complex pump = in.gain * std::polar(1.0, in.pump_phase);
  b(kC1, kC2) = b(kC2, kC1) = pump;

  FullStateMatrices out;
  out.drift = quadrature_map(a, b);

  const std::vector<double> occupancy{in.reservoir_n, in.reservoir_n, in.occupancy[0], in.occupancy[1]};
  const MatX inputs = white_noise_covariance(occupancy, {{kC1, kC2, in.reservoir_m}});
  CMatX weights = CMatX::Zero(4, 4);
  weights(kC1, kC1) = std::sqrt(in.kappa[0]);
  weights(kC2, kC2) = std::sqrt(in.kappa[1]);
  weights(kD1, kD1) = std::sqrt(in.gamma[0]);
  weights(kD2, kD2) = std::sqrt(in.gamma[1]);
  const MatX w = quadrature_map(weights, CMatX::Zero(4, 4));
  out.diffusion = w * inputs * w.transpose();
  return out;
}

FullStateMatrices build_full_model(const OperatingPoint& op) { return build_full_model(model_inputs(op)); }

EliminationReport validate_elimination(const ModelInputs& in, double tolerance) {
  EliminationReport rep;
  rep.tolerance = tolerance;
  rep.coupling_over_kappa = std::max(in.coupling[0] / in.kappa[0], in.coupling[1] / in.kappa[1]);
  if (rep.coupling_over_kappa > 0.1 * (1.0 + 1e-9)) {
    throw DomainError("validate_elimination: requires weak coupling G_j <= 0.1 kappa_j");
  }

  const FullStateMatrices full = build_full_model(in);
  rep.full_stable = eigenvalue_stability(full.drift).stable;
  const EffectiveModel model = build_effective_model(in);
  rep.reduced_stable = routh_hurwitz(model).stable;
  if (!rep.full_stable) throw UnstableError("validate_elimination: full model is unstable");
  if (!rep.reduced_stable) {
    throw UnstableError("validate_elimination: reduced model is unstable while the full model is stable");
  }

  const MatX full_cov = solve_lyapunov(full.drift, full.diffusion);
  rep.full_min_symplectic = symplectic_spectrum(full_cov).minCoeff();
  rep.full_mechanical = full_cov.block<4, 4>(kMechanicalOffset, kMechanicalOffset);

  const StateMatrices reduced = build_state_matrices(model);
  rep.reduced = solve_lyapunov_generic(reduced.drift, reduced.diffusion).matrix;
  rep.covariance_deviation =
      (rep.full_mechanical - rep.reduced).cwiseAbs().maxCoeff() / rep.reduced.cwiseAbs().maxCoeff();

  rep.negativity_full = log_negativity(rep.full_mechanical).negativity;
  rep.negativity_reduced = log_negativity(rep.reduced).negativity;
  const double top = std::max(rep.negativity_full, rep.negativity_reduced);
  rep.negativity_deviation = top > 0.0 ? std::abs(rep.negativity_full - rep.negativity_reduced) / top : 0.0;
  rep.passed = rep.covariance_deviation <= tolerance && rep.negativity_deviation <= tolerance;
  return rep;
}

EliminationReport validate_elimination(const OperatingPoint& op, double tolerance) {
  return validate_elimination(model_inputs(op), tolerance);
}

}  // namespace mechent
