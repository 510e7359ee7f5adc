#include <doctest.h>

#include "mechent/core_model.hpp"
#include "mechent/errors.hpp"
#include "mechent/sweep.hpp"
#include "oracles.hpp"

using namespace mechent;

TEST_SUITE("sweep") {
  TEST_CASE("axis construction and validation") {
    const Axis a = Axis::linear("theta", 0.0, 1.0, 5);
    CHECK(a.values.size() == 5);
    CHECK(a.values[2] == doctest::Approx(0.5));
    CHECK(a.values.back() == 1.0);
    const Axis l = Axis::logarithmic("temperature", 1e-6, 1e-3, 4);
    CHECK(l.values[1] == doctest::Approx(1e-5));
    CHECK(l.values.back() == 1e-3);
    CHECK_THROWS_AS(Axis::linear("theta", 0.0, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(Axis::linear("theta", 1.0, 1.0, 5), ConfigError);
    CHECK_THROWS_AS(Axis::linear("theta", 2.0, 1.0, 5), ConfigError);
    CHECK_THROWS_AS(Axis::logarithmic("temperature", 0.0, 1.0, 5), ConfigError);
    CHECK_THROWS_AS(Axis::list("r", {1.0}), ConfigError);
  }

  TEST_CASE("spec validation") {
    SweepSpec s;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.axes = {Axis::linear("bogus", 0.0, 1.0, 3)};
    CHECK_THROWS_AS(run_sweep(s), ConfigError);
    s.axes = {Axis::linear("power", 0.0, 1.0, 3)};  // physical-only name on a reduced base
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.axes = {Axis::linear("theta", 0.0, 1.0, 3), Axis::linear("theta", 0.0, 1.0, 3)};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.axes = {Axis::linear("theta", 0.0, 1.0, 3)};
    s.columns = {"E_N", "nope"};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.columns = {"E_N"};
    CHECK_NOTHROW(s.validate());
  }

  TEST_CASE("parameter vocabulary") {
    BaseParams b = ReducedParams::figure_baseline();
    set_parameter(b, "coupling_over_kappa", 0.1);
    const ReducedParams& r = std::get<ReducedParams>(b);
    CHECK(r.coupling() / r.kappa == doctest::Approx(0.1));
    set_parameter(b, "temperature", 42e-6);
    CHECK(std::get<ReducedParams>(b).occupancy[0] == doctest::Approx(0.5126).epsilon(1e-3));
    CHECK_THROWS_AS(set_parameter(b, "power", 1.0), ConfigError);
    CHECK_THROWS_AS(set_parameter(b, "theta", std::nan("")), ConfigError);

    BaseParams p = PhysicalParams::experimental();
    set_parameter(p, "power", 1.2e-3);
    CHECK(std::get<PhysicalParams>(p).power[1] == 1.2e-3);
    set_parameter(p, "gain_over_kappa", 0.2);
    CHECK(std::get<PhysicalParams>(p).gain == doctest::Approx(0.2 * kTwoPi * 215e3));
    CHECK_THROWS_AS(set_parameter(p, "cooperativity", 1.0), ConfigError);
    CHECK(parameter_unit("theta") == "rad");
    CHECK(parameter_unit("temperature2") == "K");
    CHECK(parameter_unit("r") == "1");
  }

  TEST_CASE("rows are row-major and identical for any thread count") {
    SweepSpec s;
    s.axes = {Axis::linear("gain_over_kappa", 0.0, 0.6, 13), Axis::linear("theta", 0.0, kPi, 7)};
    s.jobs = 1;
    const SweepTable one = run_sweep(s);
    REQUIRE(one.rows.size() == 91);
    CHECK(one.rows[8].coordinates[0] == doctest::Approx(0.05));
    CHECK(one.rows[8].coordinates[1] == doctest::Approx(kPi / 6));
    for (unsigned jobs : {2u, 3u, 8u, 200u}) {
      s.jobs = jobs;
      const SweepTable many = run_sweep(s);
      REQUIRE(many.rows.size() == one.rows.size());
      for (std::size_t k = 0; k < one.rows.size(); ++k) {
        CHECK(many.rows[k].coordinates == one.rows[k].coordinates);
        CHECK(many.rows[k].negativity == one.rows[k].negativity);
        CHECK(many.rows[k].margin == one.rows[k].margin);
      }
    }
  }

  TEST_CASE("unstable rows are masked, stable rows carry everything") {
    SweepSpec s;
    s.axes = {Axis::linear("gain_over_kappa", 0.3, 0.7, 41)};
    const SweepTable t = run_sweep(s);
    std::size_t unstable = 0;
    for (const SweepRow& r : t.rows) {
      if (r.stable) {
        CHECK(r.negativity.has_value());
        CHECK(r.min_symplectic.has_value());
        CHECK(*r.physical_symplectic >= 0.5 - 1e-10);
        CHECK(*r.residual < 1e-10);
      } else {
        ++unstable;
        CHECK_FALSE(r.negativity.has_value());
        CHECK_FALSE(r.min_symplectic.has_value());
        CHECK_FALSE(r.entangled);
      }
    }
    CHECK(unstable > 0);
    CHECK(t.warnings.empty());
  }

  TEST_CASE("a fully unstable region still yields a table, with a warning") {
    SweepSpec s;
    s.axes = {Axis::linear("gain_over_kappa", 0.6, 0.9, 4)};
    const SweepTable t = run_sweep(s);
    CHECK(t.rows.size() == 4);
    CHECK(t.stable_count() == 0);
    CHECK(t.warnings.size() == 1);
  }

  TEST_CASE("exact threshold is reported as unstable, not thrown") {
    ReducedParams r = ReducedParams::figure_baseline();
    r.gain_over_kappa = 0.5;
    const PointEvaluation ev = evaluate_point(model_inputs(r));
    CHECK_FALSE(ev.stability.stable);
    CHECK_FALSE(ev.entanglement.has_value());
  }

  TEST_CASE("physical base sweeps power") {
    SweepSpec s;
    s.base = PhysicalParams::experimental();
    s.axes = {Axis::linear("power", 0.1e-3, 0.5e-3, 5)};
    const SweepTable t = run_sweep(s);
    CHECK(t.stable_count() == 5);
    for (std::size_t k = 1; k < t.rows.size(); ++k) CHECK(*t.rows[k].negativity > *t.rows[k - 1].negativity);
  }
}
