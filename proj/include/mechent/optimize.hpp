#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mechent/sweep.hpp"

namespace mechent {

/// What to do with parameter points the stability analysis rejects.
///   reject  - initial vertices are re-sampled uniformly in the box (seeded);
///             unstable trial steps are refused, which forces contraction.
///   penalty - unstable points score a large finite objective.
enum class InfeasibleHandling { kReject, kPenalty };

std::string_view to_string(InfeasibleHandling h);
InfeasibleHandling parse_infeasible_handling(std::string_view text);

struct FreeParameter {
  std::string name;  // from the sweep parameter vocabulary
  double lower = 0.0;
  double upper = 0.0;
};

struct OptimizeSpec {
  BaseParams base = ReducedParams::figure_baseline();
  std::vector<FreeParameter> free;
  InfeasibleHandling handling = InfeasibleHandling::kReject;
  double tolerance = 1e-8;   // simplex diameter in box-normalized coordinates
  int max_iterations = 500;  // per start
  int multistart = 3;
  int pregrid_points = 21;   // per free dimension (capped for d > 2)
  std::uint64_t seed = 20240611;
  double penalty = 1e3;      // objective assigned to unstable points

  /// Known names, finite lower < upper, non-negative lower bounds where the
  /// parameter is non-negative, gain_over_kappa strictly below 1/2.
  void validate() const;
};

struct TraceEntry {
  int start = 0;        // -1 for pre-grid evaluations
  int iteration = 0;
  std::vector<double> x;
  bool feasible = false;
  double negativity = 0.0;  // meaningful only when feasible
};

struct OptimizeResult {
  std::vector<std::string> names;
  std::vector<double> argmax;
  double negativity = 0.0;
  double pregrid_best = 0.0;
  std::vector<double> best_history;  // strictly increasing E_N improvements
  std::vector<TraceEntry> trace;
  int iterations = 0;                // summed over starts
  bool converged = false;            // every start met the diameter tolerance
};

/// Multistart bounded Nelder-Mead on -E_N. Throws NoFeasibleRegionError when
/// the pre-grid contains no stable point.
OptimizeResult maximize_negativity(const OptimizeSpec& spec);

}  // namespace mechent
