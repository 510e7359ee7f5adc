#include <doctest.h>

#include "mechent/errors.hpp"
#include "mechent/stability.hpp"
#include "oracles.hpp"

using namespace mechent;

namespace {

ModelInputs symmetric_inputs(double gain_over_kappa, double cooperativity, double theta = 0.0) {
  ModelInputs in;
  const double k = kTwoPi * 215e3, g = kTwoPi * 140.0;
  in.kappa = {k, k};
  in.gamma = {g, g};
  const double gc = 0.5 * std::sqrt(cooperativity * g * k);
  in.coupling = {gc, gc};
  in.gain = gain_over_kappa * k;
  in.pump_phase = theta;
  return in;
}

}  // namespace

TEST_SUITE("stability") {
  TEST_CASE("quartic coefficients equal the characteristic polynomial") {
    oracle::Rng rng(31);
    for (int k = 0; k < 300; ++k) {
      const EffectiveModel m = build_effective_model(oracle::random_inputs(rng));
      const StabilityReport rep = routh_hurwitz(m);
      const auto ref = oracle::char_poly(build_drift(m));
      for (int i = 0; i < 4; ++i) {
        const double scale = std::pow(rep.scale, i + 1);
        CHECK(rep.coefficients[i] == doctest::Approx(ref[i]).epsilon(1e-9).scale(scale));
      }
    }
  }

  TEST_CASE("eigenvalues follow the closed form") {
    oracle::Rng rng(32);
    for (int k = 0; k < 100; ++k) {
      const EffectiveModel m = build_effective_model(oracle::random_inputs(rng));
      const double u1 = m.damping[0], u2 = m.damping[1];
      const double root = 0.5 * std::sqrt((u1 - u2) * (u1 - u2) / 4 + 4 * std::norm(m.coupling));
      const double top = -(u1 + u2) / 4 + root;
      const EigenStability es = eigenvalue_stability(build_drift(m));
      CHECK(es.real_parts(0) == doctest::Approx(top).scale(u1 + u2).epsilon(1e-9));
      CHECK(es.real_parts(3) == doctest::Approx(-(u1 + u2) / 4 - root).scale(u1 + u2).epsilon(1e-9));
    }
  }

  TEST_CASE("Routh-Hurwitz agrees with the eigenvalues away from the margin") {
    oracle::Rng rng(33);
    int stable = 0, unstable = 0;
    for (int k = 0; k < 3000; ++k) {
      ModelInputs in = oracle::random_inputs(rng);
      // Push some instances past the stability boundary, including beyond threshold.
      if (rng.coin()) in.gain *= rng.uniform(1.0, 2.0);
      EffectiveModel m;
      try {
        m = build_effective_model(in);
      } catch (const SingularError&) {
        continue;
      }
      const StabilityReport rep = routh_hurwitz(m);
      if (std::abs(rep.margin) < 1e-10) continue;
      CHECK(rep.stable == rep.eigenvalue_stable);
      (rep.stable ? stable : unstable)++;
    }
    CHECK(stable > 300);
    CHECK(unstable > 300);
  }

  TEST_CASE("h3 is proportional to h1") {
    oracle::Rng rng(34);
    for (int k = 0; k < 100; ++k) {
      const EffectiveModel m = build_effective_model(oracle::random_inputs(rng));
      const StabilityReport rep = routh_hurwitz(m);
      const double u1 = m.damping[0], u2 = m.damping[1];
      const double h1 = u1 * u2 / 4 - std::norm(m.coupling);
      CHECK(rep.hurwitz[0] == doctest::Approx(h1).scale(u1 * u2));
      CHECK(rep.hurwitz[2] * h1 >= -1e-12 * std::pow(u1 + u2, 8));
    }
  }

  TEST_CASE("stability does not depend on the pump phase") {
    for (double g : {0.1, 0.3, 0.45, 0.499}) {
      const StabilityReport ref = routh_hurwitz(build_effective_model(symmetric_inputs(g, 62.5)));
      for (double theta : {kPi / 7, kPi / 3, kPi / 2, kPi}) {
        const StabilityReport rep = routh_hurwitz(build_effective_model(symmetric_inputs(g, 62.5, theta)));
        for (int i = 0; i < 3; ++i) {
          CHECK(rep.hurwitz[i] == doctest::Approx(ref.hurwitz[i]).epsilon(1e-12));
        }
        CHECK(rep.stable == ref.stable);
      }
    }
  }

  TEST_CASE("threshold at Lambda = kappa/2 when mechanical damping is negligible") {
    // Gamma dominates gamma: the boundary moves to kappa/2 as gamma/Gamma -> 0.
    auto stable_at = [](double g) {
      const ModelInputs in = symmetric_inputs(g, 1e4);  // gamma / Gamma = 1e-4
      try {
        return routh_hurwitz(build_effective_model(in)).stable;
      } catch (const SingularError&) {
        return false;
      }
    };
    double lo = 0.3, hi = 0.6;
    REQUIRE(stable_at(lo));
    REQUIRE_FALSE(stable_at(hi));
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (stable_at(mid) ? lo : hi) = mid;
    }
    CHECK(lo == doctest::Approx(0.5).epsilon(1e-3));
  }

  TEST_CASE("beyond threshold is unstable and margins are scale invariant") {
    const StabilityReport above = routh_hurwitz(build_effective_model(symmetric_inputs(0.6, 62.5)));
    CHECK_FALSE(above.stable);
    CHECK_FALSE(above.eigenvalue_stable);

    ModelInputs a = symmetric_inputs(0.26, 62.5);
    ModelInputs b = a;
    for (auto* v : {&b.kappa, &b.gamma, &b.coupling}) (*v) = {(*v)[0] * 1e3, (*v)[1] * 1e3};
    b.gain *= 1e3;
    const StabilityReport ra = routh_hurwitz(build_effective_model(a));
    const StabilityReport rb = routh_hurwitz(build_effective_model(b));
    CHECK(ra.margin == doctest::Approx(rb.margin).epsilon(1e-10));
  }

  TEST_CASE("weakly coupled points are not flagged as marginal") {
    const StabilityReport rep = routh_hurwitz(build_effective_model(symmetric_inputs(0.1, 0.1)));
    CHECK(rep.stable);
    CHECK(rep.margin > kMarginalTolerance);
  }
}
