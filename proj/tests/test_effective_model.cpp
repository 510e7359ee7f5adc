#include <doctest.h>

#include "mechent/effective_model.hpp"
#include "mechent/errors.hpp"
#include "oracles.hpp"

using namespace mechent;

namespace {

// F14 with the a/b pairing of the squeezed-reservoir terms swapped; a tempting
// but wrong expansion, kept to show where it departs from the correlators.
double swapped_f14(const EffectiveModel& m) {
  const ModelInputs& in = m.inputs;
  const Complex a1 = m.a[0], a2 = m.a[1], b1 = m.b[0], b2 = m.b[1];
  const Complex mm = in.reservoir_m;
  const double root = std::sqrt(in.kappa[0] * in.kappa[1]);
  const Complex v = Complex(0.0, 0.25) *
                    (((std::conj(b2) * std::conj(a1) - b2 * a1) * in.kappa[0] +
                      (std::conj(b1) * std::conj(a2) - b1 * a2) * in.kappa[1]) *
                         (2 * in.reservoir_n + 1) -
                     2.0 * ((std::conj(b1) * std::conj(b2) + a1 * a2) * mm -
                            (b1 * b2 + std::conj(a1) * std::conj(a2)) * std::conj(mm)) *
                         root);
  return v.real();
}

}  // namespace

TEST_SUITE("effective-dynamics") {
  TEST_CASE("eliminated coefficients match the closed forms") {
    oracle::Rng rng(3);
    for (int k = 0; k < 200; ++k) {
      const ModelInputs in = oracle::random_inputs(rng);
      const EffectiveModel m = build_effective_model(in);
      const oracle::Eliminated e = oracle::eliminate(in);
      CHECK(m.denominator == doctest::Approx(e.k).epsilon(1e-13));
      for (int j = 0; j < 2; ++j) {
        CHECK(m.damping[j] == doctest::Approx(e.upsilon[j]).epsilon(1e-13));
        CHECK(std::abs(m.a[j] - e.a[j]) <= 1e-13 * std::abs(e.a[j]));
        CHECK(std::abs(m.b[j] - e.b[j]) <= 1e-13 * std::abs(e.b[j]) + 1e-300);
      }
      CHECK(std::abs(m.coupling - e.chi) <= 1e-13 * std::abs(e.chi) + 1e-300);
      CHECK_FALSE(m.beyond_threshold);
    }
  }

  TEST_CASE("elimination is singular exactly at threshold") {
    oracle::Rng rng(5);
    ModelInputs in = oracle::random_inputs(rng);
    in.gain = 0.5 * std::sqrt(in.kappa[0] * in.kappa[1]);
    CHECK_THROWS_AS(build_effective_model(in), SingularError);
    in.gain *= 1.2;
    CHECK(build_effective_model(in).beyond_threshold);
  }

  TEST_CASE("drift layout") {
    oracle::Rng rng(9);
    const ModelInputs in = oracle::random_inputs(rng);
    const EffectiveModel m = build_effective_model(in);
    const Mat4 b = build_drift(m);
    const double c = m.coupling.real(), s = m.coupling.imag();
    CHECK(b(0, 0) == doctest::Approx(-m.damping[0] / 2));
    CHECK(b(1, 1) == doctest::Approx(-m.damping[0] / 2));
    CHECK(b(2, 2) == doctest::Approx(-m.damping[1] / 2));
    CHECK(b(0, 2) == doctest::Approx(c));
    CHECK(b(0, 3) == doctest::Approx(s));
    CHECK(b(1, 3) == doctest::Approx(-c));
    CHECK(b(0, 1) == 0.0);
    // |chi| cos(theta), |chi| sin(theta) below threshold.
    CHECK(c == doctest::Approx(std::abs(m.coupling) * std::cos(in.pump_phase)));
    CHECK(s == doctest::Approx(std::abs(m.coupling) * std::sin(in.pump_phase)));
  }

  TEST_CASE("diffusion equals the operator-correlator oracle for arbitrary phases") {
    oracle::Rng rng(21);
    for (int k = 0; k < 500; ++k) {
      const ModelInputs in = oracle::random_inputs(rng, rng.coin());
      const Mat4 f = build_diffusion(build_effective_model(in));
      const Mat4 ref = oracle::operator_diffusion(in);
      CHECK((f - ref).cwiseAbs().maxCoeff() <= 1e-12 * ref.cwiseAbs().maxCoeff());
    }
  }

  TEST_CASE("diffusion structure: F12 = 0, F22 = F11, F24 = -F13, F23 = F14") {
    oracle::Rng rng(22);
    for (int k = 0; k < 100; ++k) {
      const Mat4 ref = oracle::operator_diffusion(oracle::random_inputs(rng));
      const double s = ref.cwiseAbs().maxCoeff();
      CHECK(std::abs(ref(0, 1)) <= 1e-12 * s);
      CHECK(std::abs(ref(1, 1) - ref(0, 0)) <= 1e-12 * s);
      CHECK(std::abs(ref(1, 3) + ref(0, 2)) <= 1e-12 * s);
      CHECK(std::abs(ref(1, 2) - ref(0, 3)) <= 1e-12 * s);
      CHECK(std::abs(ref(2, 3)) <= 1e-12 * s);
    }
  }

  TEST_CASE("swapped M-term pairing in F14 only survives an aligned squeezing phase") {
    oracle::Rng rng(23);
    ModelInputs in = oracle::random_inputs(rng, true);
    in.pump_phase = 0.0;
    in.squeeze_phase = 0.0;
    in.reservoir_m = std::abs(in.reservoir_m);
    EffectiveModel m = build_effective_model(in);
    CHECK(diffusion_entries(m).f14 == doctest::Approx(swapped_f14(m)).epsilon(1e-12));

    in.pump_phase = 0.4;
    in.squeeze_phase = 1.3;
    in.reservoir_m = std::polar(std::abs(in.reservoir_m), in.squeeze_phase);
    m = build_effective_model(in);
    const double ref = oracle::operator_diffusion(in)(0, 3);
    CHECK(diffusion_entries(m).f14 == doctest::Approx(ref).epsilon(1e-12));
    CHECK(std::abs(swapped_f14(m) - ref) > 1e-3 * std::abs(ref));
  }

  TEST_CASE("diffusion is positive semidefinite") {
    oracle::Rng rng(24);
    for (int k = 0; k < 200; ++k) {
      const Mat4 f = build_diffusion(build_effective_model(oracle::random_inputs(rng)));
      Eigen::SelfAdjointEigenSolver<Mat4> es(f);
      CHECK(es.eigenvalues().minCoeff() >= -1e-12 * f.cwiseAbs().maxCoeff());
    }
  }

  TEST_CASE("vacuum inputs and no coupling give the bare mechanical diffusion") {
    ModelInputs in;
    in.kappa = {1e6, 1e6};
    in.gamma = {100.0, 200.0};
    in.occupancy = {0.0, 3.0};
    const Mat4 f = build_diffusion(build_effective_model(in));
    CHECK(f(0, 0) == doctest::Approx(50.0));
    CHECK(f(2, 2) == doctest::Approx(100.0 * 7.0));
    CHECK(f(0, 2) == 0.0);
    CHECK(f(0, 3) == 0.0);
  }
}
