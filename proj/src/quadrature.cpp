#include "mechent/quadrature.hpp"

#include "mechent/errors.hpp"

namespace mechent {

MatX quadrature_map(const CMatX& a, const CMatX& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("quadrature_map: A and B shapes differ");
  }
  const CMatX plus = a + b;
  const CMatX minus = a - b;
  MatX out(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    for (Eigen::Index l = 0; l < a.cols(); ++l) {
      out(2 * k, 2 * l) = plus(k, l).real();
      out(2 * k, 2 * l + 1) = -minus(k, l).imag();
      out(2 * k + 1, 2 * l) = plus(k, l).imag();
      out(2 * k + 1, 2 * l + 1) = minus(k, l).real();
    }
  }
  return out;
}

MatX white_noise_covariance(const std::vector<double>& occupancy,
                            const std::vector<SqueezedPair>& pairs) {
  const auto n = static_cast<Eigen::Index>(occupancy.size());
  MatX v = MatX::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v(2 * k, 2 * k) = occupancy[k] + 0.5;
    v(2 * k + 1, 2 * k + 1) = occupancy[k] + 0.5;
  }
  for (const SqueezedPair& p : pairs) {
    if (p.first < 0 || p.second < 0 || p.first >= n || p.second >= n || p.first == p.second) {
      throw DomainError("white_noise_covariance: bad channel pair");
    }
    const Eigen::Index q1 = 2 * p.first, p1 = q1 + 1;
    const Eigen::Index q2 = 2 * p.second, p2 = q2 + 1;
    v(q1, q2) = v(q2, q1) = p.m.real();
    v(p1, p2) = v(p2, p1) = -p.m.real();
    v(q1, p2) = v(p2, q1) = p.m.imag();
    v(p1, q2) = v(q2, p1) = p.m.imag();
  }
  return v;
}

}  // namespace mechent
