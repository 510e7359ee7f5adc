#pragma once

#include <array>
#include <string_view>

#include "mechent/effective_model.hpp"
#include "mechent/linalg.hpp"

namespace mechent {

enum class CovarianceMethod { kGenericLyapunov, kCramer, kSymmetricClosedForm };

std::string_view to_string(CovarianceMethod method);

/// Steady-state mechanical covariance over (Q1, P1, Q2, P2); vacuum is I/2.
struct CovarianceMatrix {
  Mat4 matrix = Mat4::Zero();
  CovarianceMethod method = CovarianceMethod::kGenericLyapunov;
};

/// Solves B R + R B^T = -F for any dimension by vectorizing into an n^2 x n^2
/// system. Throws UnstableError unless every eigenvalue of B has negative real
/// part, SingularError if the vectorized system is numerically singular.
MatX solve_lyapunov(const MatX& drift, const MatX& diffusion);

/// ||B R + R B^T + F||_inf / ||F||_inf.
double lyapunov_residual(const MatX& drift, const MatX& diffusion, const MatX& covariance);

CovarianceMatrix solve_lyapunov_generic(const Mat4& drift, const Mat4& diffusion);

/// Builds the 4x4 covariance with the block structure
///   [ R11  0    R13  R14 ]
///   [ 0    R11  R14 -R13 ]
///   [ R13  R14  R33  0   ]
///   [ R14 -R13  0    R33 ]
Mat4 structured_covariance(double r11, double r13, double r14, double r33);

/// Largest deviation from the structure above, relative to max |R_ij|.
double structure_violation(const Mat4& r);

/// Linear system for (R11, R13, R14, R33) and its Cramer numerator matrices
/// (column k replaced by the right-hand side).
struct CramerSystem {
  Mat4 matrix;
  std::array<Mat4, 4> numerators;
};

CramerSystem cramer_system(const EffectiveModel& m, const Mat4& diffusion);

/// Determinant by LU with partial pivoting.
double lu_determinant(const Mat4& a);

/// Throws SingularError when |det D| < 1e-14 (max |D_ij|)^4.
CovarianceMatrix solve_covariance_cramer(const EffectiveModel& m, const Mat4& diffusion);

/// Closed-form determinants for identical cavities/mirrors at theta = phi = 0.
struct SymmetricDeterminants {
  double d = 0.0;
  std::array<double, 4> numerators{};
};

/// Throws DomainError outside the symmetric, theta = 0, phi = 0 case.
SymmetricDeterminants symmetric_determinants(const EffectiveModel& m, const Mat4& diffusion);

CovarianceMatrix symmetric_closed_form(const EffectiveModel& m, const Mat4& diffusion);

}  // namespace mechent
