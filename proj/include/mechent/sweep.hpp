#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mechent/covariance.hpp"
#include "mechent/effective_model.hpp"
#include "mechent/entanglement.hpp"
#include "mechent/params.hpp"
#include "mechent/stability.hpp"

namespace mechent {

/// A sweep or optimization can start from either parameterization.
using BaseParams = std::variant<ReducedParams, PhysicalParams>;

ModelInputs resolve_inputs(const BaseParams& base);

/// Closed vocabulary of parameters that axes, overrides and optimizers may
/// set. Reduced bases accept:
///   kappa, gamma [rad/s]; cooperativity; coupling_over_kappa; gain_over_kappa;
///   theta, phi [rad]; r; n, n1, n2; temperature [K] (needs mechanical_frequency);
///   mechanical_frequency [rad/s].
/// Physical bases accept:
///   power, power1, power2 [W]; gain_over_kappa; theta, phi [rad]; r;
///   temperature, temperature1, temperature2 [K].
/// Throws ConfigError for anything else.
void set_parameter(BaseParams& base, std::string_view name, double value);

std::vector<std::string> parameter_names(const BaseParams& base);

/// Unit annotation used in CSV headers ("1" for dimensionless).
std::string_view parameter_unit(std::string_view name);

/// One pipeline evaluation. Unstable points carry no covariance/negativity.
struct PointEvaluation {
  EffectiveModel model;
  StabilityReport stability;
  std::optional<CovarianceMatrix> covariance;
  std::optional<EntanglementResult> entanglement;
  double residual = 0.0;              // Lyapunov residual when solved
  double physical_symplectic = 0.0;   // min symplectic eigenvalue of R
};

/// Runs model -> stability -> generic Lyapunov -> negativity. A singular
/// elimination (Lambda exactly at threshold) is reported as unstable.
PointEvaluation evaluate_point(const ModelInputs& in);

enum class AxisScale { kLinear, kLog, kList };

struct Axis {
  std::string name;
  std::vector<double> values;
  AxisScale scale = AxisScale::kLinear;

  /// count >= 2 and min < max are enforced (ConfigError otherwise).
  static Axis linear(std::string name, double min, double max, int count);
  static Axis logarithmic(std::string name, double min, double max, int count);
  /// Explicit values (curve families), at least two.
  static Axis list(std::string name, std::vector<double> values);
};

inline constexpr std::string_view kResultColumns[] = {"stable", "margin", "V_s", "E_N", "entangled",
                                                      "nu_min", "residual"};

struct SweepSpec {
  BaseParams base = ReducedParams::figure_baseline();
  std::vector<Axis> axes;            // one or two, first axis outermost
  std::vector<std::string> columns;  // subset of kResultColumns; empty = all
  std::string id = "custom";
  unsigned jobs = 1;

  void validate() const;
};

struct SweepRow {
  std::vector<double> coordinates;
  bool stable = false;
  double margin = 0.0;
  std::optional<double> min_symplectic;  // V_s
  std::optional<double> negativity;      // E_N
  bool entangled = false;
  std::optional<double> physical_symplectic;
  std::optional<double> residual;
};

struct SweepTable {
  std::vector<std::string> axis_names;
  std::vector<SweepRow> rows;  // row-major over axes
  std::vector<std::string> warnings;

  std::size_t stable_count() const;
};

/// Grid evaluation. Rows come back in row-major axis order regardless of
/// `jobs`.
SweepTable run_sweep(const SweepSpec& spec);

}  // namespace mechent
