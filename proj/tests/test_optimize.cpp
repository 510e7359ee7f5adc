#include <doctest.h>

#include "mechent/constants.hpp"
#include "mechent/errors.hpp"
#include "mechent/optimize.hpp"

using namespace mechent;

namespace {

OptimizeSpec theta_spec() {
  OptimizeSpec s;
  ReducedParams b = ReducedParams::figure_baseline();
  b.gain_over_kappa = 0.26;
  s.base = b;
  s.free = {{"theta", 0.0, kPi}};
  return s;
}

void check_trace(const OptimizeSpec& s, const OptimizeResult& r) {
  for (const TraceEntry& t : r.trace) {
    for (std::size_t i = 0; i < t.x.size(); ++i) {
      CHECK(t.x[i] >= s.free[i].lower);
      CHECK(t.x[i] <= s.free[i].upper);
    }
  }
  for (std::size_t k = 1; k < r.best_history.size(); ++k) CHECK(r.best_history[k] > r.best_history[k - 1]);
  CHECK(r.negativity >= r.pregrid_best);
}

}  // namespace

TEST_SUITE("optimize") {
  TEST_CASE("optimal pump phase is zero") {
    const OptimizeSpec s = theta_spec();
    const OptimizeResult r = maximize_negativity(s);
    CHECK(r.argmax[0] < 0.02 * kPi);
    CHECK(r.converged);
    check_trace(s, r);
  }

  TEST_CASE("gain optimum sits on the upper bound below ln 2") {
    OptimizeSpec s;
    ReducedParams b = ReducedParams::figure_baseline();
    b.squeeze_r = 0.0;
    b.occupancy = {0.0, 0.0};
    s.base = b;
    s.free = {{"gain_over_kappa", 0.0, 0.499}};
    const OptimizeResult r = maximize_negativity(s);
    CHECK(r.argmax[0] == doctest::Approx(0.499).epsilon(1e-6));
    CHECK(r.negativity < std::log(2.0));
    CHECK(r.negativity > 0.5);
    check_trace(s, r);
  }

  TEST_CASE("two free parameters, penalty mode, against brute force") {
    OptimizeSpec s = theta_spec();
    s.free.push_back({"r", 0.0, 1.0});
    s.handling = InfeasibleHandling::kPenalty;
    const OptimizeResult r = maximize_negativity(s);
    check_trace(s, r);
    double grid_best = 0.0;
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        BaseParams p = s.base;
        set_parameter(p, "theta", kPi * i / 40);
        set_parameter(p, "r", 1.0 * j / 40);
        const PointEvaluation ev = evaluate_point(resolve_inputs(p));
        if (ev.entanglement) grid_best = std::max(grid_best, ev.entanglement->negativity);
      }
    }
    CHECK(r.negativity >= grid_best - 1e-9);
    CHECK(r.argmax[0] < 0.02 * kPi);
    CHECK(r.argmax[1] == doctest::Approx(1.0));
  }

  TEST_CASE("strong squeezing prefers the opposite pump phase") {
    // At r = 2 the theta = pi branch overtakes theta = 0.
    OptimizeSpec s = theta_spec();
    std::get<ReducedParams>(s.base).squeeze_r = 2.0;
    const OptimizeResult r = maximize_negativity(s);
    CHECK(r.argmax[0] > 0.98 * kPi);
  }

  TEST_CASE("flat objective terminates on the diameter") {
    OptimizeSpec s;
    ReducedParams b = ReducedParams::figure_baseline();
    b.squeeze_r = 0.0;  // no resource and theta is a pure gauge: E_N = 0 everywhere
    b.occupancy = {5.0, 5.0};
    s.base = b;
    s.free = {{"theta", 0.0, kPi}};
    s.tolerance = 1e-6;
    const OptimizeResult r = maximize_negativity(s);
    CHECK(r.converged);
    CHECK(r.iterations < s.max_iterations * s.multistart);
    CHECK(r.negativity == 0.0);
  }

  TEST_CASE("no stable point is an explicit error") {
    OptimizeSpec s = theta_spec();
    std::get<ReducedParams>(s.base).gain_over_kappa = 0.7;
    CHECK_THROWS_AS(maximize_negativity(s), NoFeasibleRegionError);
  }

  TEST_CASE("reject mode survives an unstable part of the box") {
    OptimizeSpec s;
    s.base = ReducedParams::figure_baseline();
    s.free = {{"cooperativity", 0.0, 100.0}, {"theta", 0.0, kPi}};
    const OptimizeResult r = maximize_negativity(s);
    check_trace(s, r);
    CHECK(r.negativity > 0.0);
  }

  TEST_CASE("spec validation") {
    OptimizeSpec s = theta_spec();
    s.free = {{"gain_over_kappa", 0.0, 0.5}};
    CHECK_THROWS_AS(maximize_negativity(s), ConfigError);
    s.free = {{"bogus", 0.0, 1.0}};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.free = {{"r", 1.0, 1.0}};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.free = {{"r", -1.0, 1.0}};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.free = {{"theta", 0.0, 1.0}, {"theta", 0.0, 2.0}};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = theta_spec();
    s.tolerance = 0.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    CHECK(parse_infeasible_handling("penalty") == InfeasibleHandling::kPenalty);
    CHECK_THROWS_AS(parse_infeasible_handling("ignore"), ConfigError);
  }

  TEST_CASE("same seed, same trace") {
    OptimizeSpec s = theta_spec();
    s.free.push_back({"r", 0.0, 2.0});
    const OptimizeResult a = maximize_negativity(s);
    const OptimizeResult b = maximize_negativity(s);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) CHECK(a.trace[k].x == b.trace[k].x);
  }
}
