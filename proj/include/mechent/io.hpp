#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mechent/figures.hpp"
#include "mechent/full_model.hpp"
#include "mechent/optimize.hpp"
#include "mechent/sweep.hpp"

namespace mechent {

using Json = nlohmann::ordered_json;

// ---- parameter files -------------------------------------------------------
//
// A config is a JSON object with exactly one of "physical" or "reduced".
// Frequencies and rates are plain Hz and get multiplied by 2 pi, unless the
// top level sets "rad_s": true. Per-mode fields take a scalar (both modes) or
// a two-element array. Omitted fields keep the defaults of
// PhysicalParams::experimental() / ReducedParams::figure_baseline(); the
// resolved set is always echoed in full.
//
// physical: laser_frequency | laser_wavelength [m], cavity_frequency,
//   mechanical_frequency, mass [kg], length [m], kappa, gamma, power [W],
//   gain | gain_over_kappa, pump_phase [rad], squeeze_r, squeeze_phase [rad],
//   temperature [K], detuning
// reduced: kappa, gamma, cooperativity, gain_over_kappa, pump_phase,
//   squeeze_r, squeeze_phase, occupancy | temperature [K], mechanical_frequency

/// Throws ConfigError with the offending field path.
BaseParams parse_params(const Json& config);

/// Reads and parses a file; JSON syntax errors report line and column.
BaseParams load_params(const std::filesystem::path& path);

/// Echo of a resolved parameter set in rad/s; parse_params(params_to_json(p))
/// reproduces p exactly.
Json params_to_json(const BaseParams& params);

/// Parses "name=value" overrides (sweep vocabulary, SI / rad/s units).
void apply_override(BaseParams& params, std::string_view assignment);

// ---- reports ---------------------------------------------------------------

/// Full single-point pipeline: operating point (physical inputs), effective
/// model, stability, covariance via every applicable solver, entanglement.
/// With `strict`, an unstable point throws UnstableError.
Json compute_report(const BaseParams& params, bool strict);
Json stability_report(const BaseParams& params);
Json matrices_report(const BaseParams& params);
/// Covariance from the chosen solver ("generic", "cramer" or "closed-form").
Json covariance_report(const BaseParams& params, std::string_view solver);
Json elimination_report(const EliminationReport& r);
Json optimize_report(const OptimizeSpec& spec, const OptimizeResult& r);
Json figure_summary(const FigureReport& r);
Json sweep_summary(const SweepSpec& spec, const SweepTable& table);

/// RFC 4180 CSV with a '#' provenance prologue (version, id, resolved
/// parameters, axes) and unit-annotated headers. Masked values are empty
/// cells. Output depends only on the inputs.
std::string sweep_csv(const SweepSpec& spec, const SweepTable& table);
std::string trace_csv(const OptimizeResult& r);

// ---- files -----------------------------------------------------------------

/// Writes via a temporary sibling and rename; on failure nothing is left at
/// `path` or beside it. Throws IoError naming the path.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// `requested` if given, otherwise $MECHENT_OUTPUT_DIR (or the working
/// directory) joined with `fallback_name`.
std::filesystem::path resolve_output_path(const std::string& requested, std::string_view fallback_name);

/// Sibling path with the extension replaced by ".json".
std::filesystem::path summary_path_for(const std::filesystem::path& csv);

}  // namespace mechent
