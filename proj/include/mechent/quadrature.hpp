#pragma once

#include <vector>

#include "mechent/linalg.hpp"
#include "mechent/params.hpp"

namespace mechent {

/// For linear mode dynamics  d/dt alpha = A alpha + B alpha^dag  over n
/// bosonic modes, returns the real 2n x 2n generator acting on the quadrature
/// vector (Q_1, P_1, ..., Q_n, P_n), with alpha = (Q + iP)/sqrt(2).
///
/// The same map turns a noise term  A in + B in^dag  into its quadrature
/// coefficients over the input quadratures.
MatX quadrature_map(const CMatX& a, const CMatX& b);

/// Cross-correlated pair of input channels, <in_i in_j> = m.
struct SqueezedPair {
  int first = 0;
  int second = 1;
  Complex m{0.0, 0.0};
};

/// Symmetrized quadrature covariance of delta-correlated bosonic inputs with
/// occupancies <in^dag in> = occupancy[k] and the listed two-mode
/// correlations. Vacuum gives 1/2 on the diagonal.
MatX white_noise_covariance(const std::vector<double>& occupancy,
                            const std::vector<SqueezedPair>& pairs);

}  // namespace mechent
