#include <doctest.h>

#include "mechent/covariance.hpp"
#include "mechent/entanglement.hpp"
#include "mechent/errors.hpp"
#include "mechent/stability.hpp"
#include "oracles.hpp"

using namespace mechent;

TEST_SUITE("entanglement") {
  TEST_CASE("two-mode squeezed vacuum has E_N = 2 s") {
    for (double s : {0.0, 0.1, 0.5, 1.0, 2.0}) {
      const EntanglementResult e = log_negativity(oracle::two_mode_squeezed(s));
      CHECK(e.negativity == doctest::Approx(2 * s).epsilon(1e-10));
      CHECK(e.min_symplectic == doctest::Approx(0.5 * std::exp(-2 * s)).epsilon(1e-10));
      CHECK(e.entangled == (s > 0.0));
      CHECK(min_physical_symplectic(oracle::two_mode_squeezed(s)) == doctest::Approx(0.5).epsilon(1e-10));
    }
  }

  TEST_CASE("product thermal states are separable") {
    Mat4 r = Mat4::Identity() * 0.5;
    r(2, 2) = r(3, 3) = 3.5;
    const EntanglementResult e = log_negativity(r);
    CHECK(e.negativity == 0.0);
    CHECK_FALSE(e.entangled);
    CHECK(e.min_symplectic == doctest::Approx(0.5));
  }

  TEST_CASE("product states stay separable under rounding of the vacuum") {
    Mat4 r = Mat4::Identity() * 0.5;
    r(0, 0) = 0.49999999999999978;  // what a Lyapunov solve returns for vacuum
    const EntanglementResult e = log_negativity(r);
    CHECK(e.negativity == 0.0);
    CHECK_FALSE(e.entangled);
    r(0, 2) = r(2, 0) = 1e-300;  // any correlation at all goes through the spectrum
    CHECK(log_negativity(r).entangled);
  }

  TEST_CASE("V_s matches the direct symplectic spectrum on steady states") {
    oracle::Rng rng(51);
    int checked = 0;
    while (checked < 300) {
      const EffectiveModel m = build_effective_model(oracle::random_inputs(rng));
      if (!routh_hurwitz(m).stable) continue;
      const StateMatrices sm = build_state_matrices(m);
      const Mat4 r = solve_lyapunov_generic(sm.drift, sm.diffusion).matrix;
      const EntanglementResult e = log_negativity(r);
      Mat4 pt = r;
      pt.row(3) *= -1.0;
      pt.col(3) *= -1.0;
      const double ref = oracle::symplectic_eigenvalues(pt).minCoeff();
      CHECK(e.min_symplectic == doctest::Approx(ref).epsilon(1e-8));
      CHECK(e.negativity == doctest::Approx(oracle::negativity(r)).epsilon(1e-8).scale(1.0));
      CHECK(min_physical_symplectic(r) >= 0.5 - kPhysicalityTolerance);
      CHECK(min_physical_symplectic(r) ==
            doctest::Approx(oracle::symplectic_eigenvalues(r).minCoeff()).epsilon(1e-8));
      ++checked;
    }
  }

  TEST_CASE("invariant formula agrees with the Hermitian spectrum") {
    oracle::Rng rng(53);
    int checked = 0;
    while (checked < 300) {
      const EffectiveModel m = build_effective_model(oracle::random_inputs(rng));
      if (!routh_hurwitz(m).stable) continue;
      const StateMatrices sm = build_state_matrices(m);
      const Mat4 r = solve_lyapunov_generic(sm.drift, sm.diffusion).matrix;
      // The closed root loses up to half the digits near degenerate spectra.
      CHECK(min_symplectic_eigenvalue(symplectic_invariants(r)) ==
            doctest::Approx(min_transposed_symplectic(r)).epsilon(1e-6));
      ++checked;
    }
    for (double s : {0.1, 0.7, 1.4}) {
      const Mat4 r = oracle::two_mode_squeezed(s);
      CHECK(min_symplectic_eigenvalue(symplectic_invariants(r)) == doctest::Approx(0.5 * std::exp(-2 * s)));
    }
  }

  TEST_CASE("symplectic invariants under local symplectic maps") {
    // Local squeezing and rotation leave E_N unchanged.
    oracle::Rng rng(52);
    for (int k = 0; k < 50; ++k) {
      const Mat4 r = oracle::two_mode_squeezed(rng.uniform(0.0, 1.5));
      Mat4 s = Mat4::Identity();
      const double a = rng.uniform(-1.0, 1.0), t = rng.uniform(0.0, kTwoPi);
      s(0, 0) = std::exp(a);
      s(1, 1) = std::exp(-a);
      s.block<2, 2>(2, 2) << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
      CHECK(log_negativity(s * r * s.transpose()).negativity ==
            doctest::Approx(log_negativity(r).negativity).epsilon(1e-10));
    }
  }

  TEST_CASE("unphysical covariances are rejected") {
    CHECK_THROWS_AS(log_negativity(Mat4::Identity() * 0.3), PhysicalityError);
    Mat4 asym = Mat4::Identity();
    asym(0, 1) = 0.1;
    CHECK_THROWS_AS(log_negativity(asym), PhysicalityError);
  }

  TEST_CASE("partial transpose flips the second momentum") {
    Mat4 r = oracle::two_mode_squeezed(0.3);
    const Mat4 pt = partial_transpose(r);
    CHECK(pt(1, 3) == doctest::Approx(-r(1, 3)));
    CHECK(pt(3, 3) == r(3, 3));
    CHECK(pt(0, 2) == r(0, 2));
  }

  TEST_CASE("symplectic spectrum of thermal states is n + 1/2") {
    VecX occ(3);
    occ << 0.0, 1.5, 4.0;
    MatX r = MatX::Zero(6, 6);
    for (int k = 0; k < 3; ++k) r(2 * k, 2 * k) = r(2 * k + 1, 2 * k + 1) = occ(k) + 0.5;
    const VecX nu = symplectic_spectrum(r);
    for (int k = 0; k < 3; ++k) CHECK(nu(k) == doctest::Approx(occ(k) + 0.5));
  }

  TEST_CASE("decibel conversion: ln 2 is about 3 dB") {
    CHECK(negativity_db(std::log(2.0)) == doctest::Approx(3.0103).epsilon(1e-4));
    CHECK(negativity_db(0.0) == 0.0);
  }
}
