#include "mechent/covariance.hpp"

#include <algorithm>
#include <cmath>

#include "mechent/errors.hpp"
#include "mechent/stability.hpp"

namespace mechent {

std::string_view to_string(CovarianceMethod method) {
  switch (method) {
    case CovarianceMethod::kGenericLyapunov: return "generic-lyapunov";
    case CovarianceMethod::kCramer: return "cramer";
    case CovarianceMethod::kSymmetricClosedForm: return "symmetric-closed-form";
  }
  return "unknown";
}

MatX solve_lyapunov(const MatX& drift, const MatX& diffusion) {
  const Eigen::Index n = drift.rows();
  if (drift.cols() != n || diffusion.rows() != n || diffusion.cols() != n) {
    throw DomainError("solve_lyapunov: shape mismatch");
  }
  if (!diffusion.allFinite()) throw DomainError("solve_lyapunov: non-finite diffusion");
  if (!eigenvalue_stability(drift).stable) {
    throw UnstableError("solve_lyapunov: drift has an eigenvalue with non-negative real part");
  }

  // vec(B R + R B^T) = (I (x) B + B (x) I) vec(R), column-major vec.
  const Eigen::Index n2 = n * n;
  MatX op = MatX::Zero(n2, n2);
  for (Eigen::Index col = 0; col < n; ++col) {
    for (Eigen::Index row = 0; row < n; ++row) {
      const Eigen::Index out = col * n + row;
      for (Eigen::Index k = 0; k < n; ++k) {
        op(out, col * n + k) += drift(row, k);
        op(out, k * n + row) += drift(col, k);
      }
    }
  }
  const Eigen::PartialPivLU<MatX> lu(op);
  if (lu.rcond() < 1e-15) throw SingularError("solve_lyapunov: vectorized system is singular");
  const VecX rhs = -Eigen::Map<const VecX>(diffusion.data(), n2);
  const VecX sol = lu.solve(rhs);
  MatX r = Eigen::Map<const MatX>(sol.data(), n, n);
  return 0.5 * (r + r.transpose());
}

double lyapunov_residual(const MatX& drift, const MatX& diffusion, const MatX& covariance) {
  const MatX res = drift * covariance + covariance * drift.transpose() + diffusion;
  auto inf_norm = [](const MatX& a) { return a.cwiseAbs().rowwise().sum().maxCoeff(); };
  double denom = inf_norm(diffusion);
  if (denom == 0.0) denom = inf_norm(drift * covariance);
  if (denom == 0.0) return inf_norm(res);
  return inf_norm(res) / denom;
}

CovarianceMatrix solve_lyapunov_generic(const Mat4& drift, const Mat4& diffusion) {
  return {solve_lyapunov(drift, diffusion), CovarianceMethod::kGenericLyapunov};
}

Mat4 structured_covariance(double r11, double r13, double r14, double r33) {
  Mat4 r;
  // clang-format off
  r << r11, 0.0,  r13,  r14,
       0.0, r11,  r14, -r13,
       r13, r14,  r33,  0.0,
       r14, -r13, 0.0,  r33;
  // clang-format on
  return r;
}

double structure_violation(const Mat4& r) {
  const Mat4 ideal = structured_covariance(r(0, 0), r(0, 2), r(0, 3), r(2, 2));
  const double scale = std::max(r.cwiseAbs().maxCoeff(), 1e-300);
  return (r - ideal).cwiseAbs().maxCoeff() / scale;
}

CramerSystem cramer_system(const EffectiveModel& m, const Mat4& diffusion) {
  // Re/Im of chi equal |chi| cos(theta), |chi| sin(theta) whenever K > 0.
  const double c = m.coupling.real();
  const double s = m.coupling.imag();
  const double u1 = -0.5 * m.damping[0];
  const double u2 = -0.5 * m.damping[1];
  const double u12 = -0.5 * (m.damping[0] + m.damping[1]);

  CramerSystem sys;
  // clang-format off
  sys.matrix << u1,  c,   s,   0.0,
                c,   u12, 0.0, c,
                s,   0.0, u12, s,
                0.0, c,   s,   u2;
  // clang-format on
  Eigen::Vector4d rhs(-0.5 * diffusion(0, 0), -diffusion(0, 2), -diffusion(0, 3),
                      -0.5 * diffusion(2, 2));
  for (int k = 0; k < 4; ++k) {
    sys.numerators[k] = sys.matrix;
    sys.numerators[k].col(k) = rhs;
  }
  return sys;
}

double lu_determinant(const Mat4& a) { return Eigen::PartialPivLU<Mat4>(a).determinant(); }

CovarianceMatrix solve_covariance_cramer(const EffectiveModel& m, const Mat4& diffusion) {
  const CramerSystem sys = cramer_system(m, diffusion);
  const double det = lu_determinant(sys.matrix);
  const double scale = sys.matrix.cwiseAbs().maxCoeff();
  if (std::abs(det) < 1e-14 * std::pow(scale, 4)) {
    throw SingularError(
        "Cramer system is near-marginal; check stability with routh_hurwitz or use the generic solver");
  }
  std::array<double, 4> entries{};
  for (int k = 0; k < 4; ++k) entries[k] = lu_determinant(sys.numerators[k]) / det;
  return {structured_covariance(entries[0], entries[1], entries[2], entries[3]),
          CovarianceMethod::kCramer};
}

SymmetricDeterminants symmetric_determinants(const EffectiveModel& m, const Mat4& diffusion) {
  const ModelInputs& in = m.inputs;
  if (!in.symmetric()) throw DomainError("symmetric_closed_form: cavities/mirrors are not identical");
  const double theta = in.pump_phase;
  if (std::abs(std::sin(theta)) > 1e-12 || std::cos(theta) < 0.0) {
    throw DomainError("symmetric_closed_form: requires theta = 0");
  }
  const Complex mm = in.reservoir_m;
  if (std::abs(mm.imag()) > 1e-12 * std::max(std::abs(mm), 1.0) || mm.real() < 0.0) {
    throw DomainError("symmetric_closed_form: requires phi = 0");
  }

  const double u = 0.5 * (m.damping[0] + m.damping[1]);
  const double x = m.coupling.real();
  const double f11 = diffusion(0, 0);
  const double f33 = diffusion(2, 2);
  const double f13 = diffusion(0, 2);
  const double f14 = diffusion(0, 3);
  const double u2 = u * u;
  const double u3 = u2 * u;

  SymmetricDeterminants det;
  det.d = u2 * u2 / 4.0 - x * x * u2;
  det.numerators = {u3 * f11 / 4.0 + x * u2 * f13 / 2.0, u3 * f13 / 4.0 + x * u2 * f11 / 2.0,
                    (u3 - 4.0 * x * x * u) * f14 / 4.0, u3 * f33 / 4.0 + x * u2 * f13 / 2.0};
  return det;
}

CovarianceMatrix symmetric_closed_form(const EffectiveModel& m, const Mat4& diffusion) {
  const SymmetricDeterminants det = symmetric_determinants(m, diffusion);
  if (det.d == 0.0) throw SingularError("symmetric_closed_form: det D vanishes (marginal point)");
  const auto& n = det.numerators;
  return {structured_covariance(n[0] / det.d, n[1] / det.d, n[2] / det.d, n[3] / det.d),
          CovarianceMethod::kSymmetricClosedForm};
}

}  // namespace mechent
