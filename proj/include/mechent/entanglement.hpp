#pragma once

#include "mechent/linalg.hpp"

namespace mechent {

/// Local and global determinants of R = [[A, C], [C^T, B]].
struct SymplecticInvariants {
  double det_a = 0.0;
  double det_b = 0.0;
  double det_c = 0.0;
  double det_total = 0.0;
  double zeta = 0.0;  // det A + det B - 2 det C (partially transposed invariant)
  double entry_scale = 0.0;  // max |R_ij|, sets the rounding tolerance
};

SymplecticInvariants symplectic_invariants(const Mat4& r);

/// Smallest symplectic eigenvalue of the partially transposed state,
/// sqrt((zeta - sqrt(zeta^2 - 4 det R)) / 2). A slightly negative radicand
/// (within 1e-12 max(1, zeta^2, max|R_ij|^4)) is clamped to zero; anything
/// more negative throws PhysicalityError.
double min_symplectic_eigenvalue(const SymplecticInvariants& inv);

struct EntanglementResult {
  SymplecticInvariants invariants;
  double min_symplectic = 0.0;  // V_s
  double negativity = 0.0;      // E_N, nats
  bool entangled = false;       // 2 V_s < 1
};

/// E_N = max(0, -ln(2 V_s)) with V_s from min_transposed_symplectic; exactly
/// 0 when the cross block C is identically zero (product state). Throws PhysicalityError if R itself violates the
/// uncertainty principle beyond 1e-10.
EntanglementResult log_negativity(const Mat4& r);

/// E_N expressed in decibels: 10 log10(e) E_N, so ln 2 is about 3 dB.
double negativity_db(double negativity);

/// Flips the sign of P2 (mirror reflection of the second mode).
Mat4 partial_transpose(const Mat4& r);

/// Symplectic eigenvalues (ascending, one per mode) of an n-mode covariance
/// from the spectrum of i Omega R.
VecX symplectic_spectrum(const MatX& covariance);

/// Smaller symplectic eigenvalue of a positive-definite two-mode covariance,
/// from the Hermitian form L^T (i Omega) L with R = L L^T. Accurate to
/// eps max|R_ij| also for degenerate spectra. Throws PhysicalityError if R is
/// not positive definite.
double min_physical_symplectic(const Mat4& r);

/// Same for the partially transposed state: V_s. Agrees with
/// min_symplectic_eigenvalue(symplectic_invariants(r)) in exact arithmetic.
double min_transposed_symplectic(const Mat4& r);

inline constexpr double kPhysicalityTolerance = 1e-10;

}  // namespace mechent
