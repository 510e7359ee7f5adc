#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mechent/sweep.hpp"

namespace mechent {

enum class FigureId { kFig2, kFig3, kFig4, kFig5, kFig6, kFig7 };

std::string_view to_string(FigureId id);
/// Accepts "fig2" .. "fig7"; throws ConfigError otherwise.
FigureId parse_figure_id(std::string_view text);
std::vector<FigureId> all_figures();

struct FigurePreset {
  FigureId id = FigureId::kFig2;
  std::string description;
  SweepSpec sweep;  // family axis first (if any), swept axis second
};

/// Fixed values per figure on top of the common baseline
/// (C = 62.5, r = 1, n = 0.5, phi = 0). `points` overrides the resolution of
/// the continuous axes (default 101).
FigurePreset figure_preset(FigureId id, int points = 101);

struct SignatureCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FigureReport {
  FigurePreset preset;
  SweepTable table;
  std::vector<SignatureCheck> checks;
  std::map<std::string, double> metrics;  // onsets, maxima, ...

  bool all_passed() const;
};

/// Runs the preset and evaluates the figure's qualitative signatures.
/// Failing signatures are recorded in `checks`, never thrown.
FigureReport reproduce_figure(FigureId id, unsigned jobs = 1, int points = 101);

/// Smallest value of `axis` in [lo, hi] at which E_N becomes positive,
/// by bisection (E_N assumed monotone across the bracket). Unstable points
/// count as not entangled.
double entanglement_onset(const BaseParams& base, std::string_view axis, double lo, double hi,
                          double tol = 1e-9);

/// Index of an interior maximum that exceeds both endpoints by more than
/// `rel_margin` of the peak, if any.
std::optional<std::size_t> interior_maximum(const std::vector<double>& curve,
                                            double rel_margin = 1e-6);

/// The E_N curve of family member `family_index` (masked points -> NaN).
std::vector<double> negativity_curve(const SweepTable& table, std::size_t family_index,
                                     std::size_t points);

}  // namespace mechent
