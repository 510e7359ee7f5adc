#include "mechent/stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mechent/errors.hpp"

namespace mechent {

EigenStability eigenvalue_stability(const MatX& drift) {
  if (drift.rows() != drift.cols() || !drift.allFinite()) {
    throw DomainError("eigenvalue_stability: drift must be a finite square matrix");
  }
  Eigen::EigenSolver<MatX> solver(drift, false);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue_stability: eigen-solver failed");
  EigenStability out;
  out.real_parts = solver.eigenvalues().real();
  std::sort(out.real_parts.begin(), out.real_parts.end(), std::greater<>());
  out.stable = out.real_parts(0) < 0.0;
  return out;
}

StabilityReport routh_hurwitz(const EffectiveModel& m) {
  const double u1 = m.damping[0];
  const double u2 = m.damping[1];
  const double chi2 = std::norm(m.coupling);
  const double sum = u1 + u2;
  const double det_block = 0.25 * u1 * u2 - chi2;

  StabilityReport r;
  r.coefficients = {sum, (u1 * u1 + u2 * u2 + 4.0 * u1 * u2 - 8.0 * chi2) / 4.0, sum * det_block,
                    det_block * det_block};
  const double h1 = det_block;
  const double h2 = 0.25 * sum * (u1 * u1 + u2 * u2 + 3.0 * u1 * u2 - 4.0 * chi2);
  const double h3 = sum * (h2 - sum * h1) * h1;
  r.hurwitz = {h1, h2, h3};

  r.scale = sum > 0.0 ? sum : m.inputs.mean_kappa();
  const double s = r.scale;
  r.normalized = {h1 / (s * s), h2 / (s * s * s), h3 / std::pow(s, 6)};
  r.margin = *std::min_element(r.normalized.begin(), r.normalized.end());
  r.stable = r.margin > kMarginalTolerance;

  const EigenStability eig = eigenvalue_stability(build_drift(m));
  for (int i = 0; i < 4; ++i) r.eigenvalue_real_parts[i] = eig.real_parts(i);
  r.eigenvalue_stable = eig.stable;
  return r;
}

}  // namespace mechent
