#include "mechent/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mechent/errors.hpp"

namespace mechent {

namespace {

double det2(const Eigen::Ref<const Eigen::Matrix2d>& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// Smaller root nu^2 of x^2 - invariant x + det = 0. The invariants carry
// rounding of order eps * max|R_ij|^4, which is what the clamp tolerates; the
// root itself is taken as det / (larger root) to avoid cancellation.
double smallest_root(double invariant, double det_total, double entry_scale, const char* what) {
  double radicand = invariant * invariant - 4.0 * det_total;
  if (radicand < 0.0) {
    const double s2 = entry_scale * entry_scale;
    if (radicand > -1e-12 * std::max({1.0, invariant * invariant, s2 * s2})) {
      radicand = 0.0;
    } else {
      std::ostringstream msg;
      msg.precision(17);
      msg << what << ": negative radicand (invariant=" << invariant << ", det=" << det_total
          << ", radicand=" << radicand << ")";
      throw PhysicalityError(msg.str());
    }
  }
  const double larger = 0.5 * (invariant + std::sqrt(radicand));
  if (!(larger > 0.0) || det_total < 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": negative squared eigenvalue (invariant=" << invariant << ", det=" << det_total << ")";
    throw PhysicalityError(msg.str());
  }
  return std::sqrt(det_total / larger);
}

// Symplectic eigenvalues of a positive-definite 4x4 covariance, ascending.
// With R = L L^T, the Hermitian L^T (i Omega) L is similar to i Omega R, so its
// eigenvalues are +/- nu_k and stay accurate to eps |R| even when degenerate
// (the invariant formula loses half the digits there).
std::array<double, 2> hermitian_spectrum(const Mat4& r, const char* what) {
  const Eigen::LLT<Mat4> llt(r);
  if (llt.info() != Eigen::Success) {
    throw PhysicalityError(std::string(what) + ": covariance is not positive definite");
  }
  const Mat4 l = llt.matrixL();
  Eigen::Matrix4cd omega = Eigen::Matrix4cd::Zero();
  omega(0, 1) = omega(2, 3) = std::complex<double>(0.0, 1.0);
  omega(1, 0) = omega(3, 2) = std::complex<double>(0.0, -1.0);
  const Eigen::Matrix4cd h = l.transpose().cast<std::complex<double>>() * omega * l.cast<std::complex<double>>();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  // Ascending: -nu_2, -nu_1, nu_1, nu_2.
  const auto& e = es.eigenvalues();
  return {0.5 * (e(2) - e(1)), 0.5 * (e(3) - e(0))};
}

}  // namespace

SymplecticInvariants symplectic_invariants(const Mat4& r) {
  SymplecticInvariants inv;
  inv.det_a = det2(r.block<2, 2>(0, 0));
  inv.det_b = det2(r.block<2, 2>(2, 2));
  inv.det_c = det2(r.block<2, 2>(0, 2));
  inv.det_total = Eigen::PartialPivLU<Mat4>(r).determinant();
  inv.zeta = inv.det_a + inv.det_b - 2.0 * inv.det_c;
  inv.entry_scale = r.cwiseAbs().maxCoeff();
  return inv;
}

double min_symplectic_eigenvalue(const SymplecticInvariants& inv) {
  return smallest_root(inv.zeta, inv.det_total, inv.entry_scale, "min_symplectic_eigenvalue");
}

double min_physical_symplectic(const Mat4& r) {
  return hermitian_spectrum(r, "min_physical_symplectic")[0];
}

double min_transposed_symplectic(const Mat4& r) {
  return hermitian_spectrum(partial_transpose(r), "min_transposed_symplectic")[0];
}

EntanglementResult log_negativity(const Mat4& r) {
  const double scale = std::max(r.cwiseAbs().maxCoeff(), 1e-300);
  if (!r.allFinite() || (r - r.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw PhysicalityError("log_negativity: covariance must be finite and symmetric");
  }
  const double physical = min_physical_symplectic(r);
  if (physical < 0.5 - kPhysicalityTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "log_negativity: covariance violates the uncertainty principle (nu_min=" << physical << ")";
    throw PhysicalityError(msg.str());
  }

  EntanglementResult out;
  out.invariants = symplectic_invariants(r);
  out.min_symplectic = min_transposed_symplectic(r);
  // No cross-correlations means a product state: separable, whatever rounding
  // did to the local variances.
  const bool product = r.block<2, 2>(0, 2).isZero(0.0);
  out.entangled = !product && 2.0 * out.min_symplectic < 1.0;
  out.negativity = out.entangled ? -std::log(2.0 * out.min_symplectic) : 0.0;
  return out;
}

double negativity_db(double negativity) { return 10.0 * std::numbers::log10e * negativity; }

Mat4 partial_transpose(const Mat4& r) {
  const Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  return flip.asDiagonal() * r * flip.asDiagonal();
}

VecX symplectic_spectrum(const MatX& covariance) {
  const Eigen::Index n = covariance.rows();
  if (n % 2 != 0 || covariance.cols() != n) throw DomainError("symplectic_spectrum: need a 2n x 2n matrix");
  MatX omega = MatX::Zero(n, n);
  for (Eigen::Index k = 0; k < n; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  Eigen::EigenSolver<MatX> solver(omega * covariance, false);
  if (solver.info() != Eigen::Success) throw Error("symplectic_spectrum: eigen-solver failed");
  std::vector<double> values;
  for (Eigen::Index k = 0; k < n; ++k) values.push_back(std::abs(solver.eigenvalues()(k).imag()));
  std::sort(values.begin(), values.end());
  VecX out(n / 2);
  // Eigenvalues come in +/- i nu pairs.
  for (Eigen::Index k = 0; k < n / 2; ++k) out(k) = 0.5 * (values[2 * k] + values[2 * k + 1]);
  return out;
}

}  // namespace mechent
