#include "mechent/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mechent/constants.hpp"
#include "mechent/errors.hpp"

namespace mechent {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Slack for "non-increasing"/"non-decreasing" comparisons on E_N.
constexpr double kMonotoneSlack = 1e-12;

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

BaseParams baseline_with(std::initializer_list<std::pair<const char*, double>> fixed) {
  BaseParams base = ReducedParams::figure_baseline();
  for (const auto& [name, value] : fixed) set_parameter(base, name, value);
  return base;
}

bool entangled_at(const BaseParams& base) {
  const PointEvaluation ev = evaluate_point(resolve_inputs(base));
  return ev.entanglement && ev.entanglement->negativity > 0.0;
}

// Largest upward step of a curve that should be non-increasing (<= 0 passes).
double worst_rise(const std::vector<double>& c) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < c.size(); ++i) worst = std::max(worst, c[i] - c[i - 1]);
  return worst;
}

double worst_drop(const std::vector<double>& c) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < c.size(); ++i) worst = std::max(worst, c[i - 1] - c[i]);
  return worst;
}

bool all_finite(const std::vector<double>& c) {
  return std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); });
}

std::vector<double> column(const SweepTable& t, std::size_t col, std::size_t inner) {
  std::vector<double> out;
  for (std::size_t k = col; k < t.rows.size(); k += inner) {
    out.push_back(t.rows[k].negativity.value_or(kNaN));
  }
  return out;
}

SignatureCheck monotone_check(std::string name, const std::vector<double>& c, bool increasing,
                              bool strict) {
  SignatureCheck chk{std::move(name), false, {}};
  if (!all_finite(c)) {
    chk.detail = "curve contains masked (unstable) points";
    return chk;
  }
  const double bad = increasing ? worst_drop(c) : worst_rise(c);
  chk.passed = strict ? bad < 0.0 : bad <= kMonotoneSlack;
  chk.detail = bad <= 0.0 ? fmt("smallest step along the trend %.3e", -bad)
                          : fmt("largest step against the trend %.3e", bad);
  return chk;
}

// Curves for the cooperativity families: onset per member, refined by bisection.
void onset_checks(FigureReport& rep, const char* family, const char* metric_prefix,
                  const char* check_name, bool decreasing) {
  const Axis& fam = rep.preset.sweep.axes[0];
  const Axis& sweep = rep.preset.sweep.axes[1];
  std::vector<double> onsets;
  bool bracketed = true;
  for (std::size_t f = 0; f < fam.values.size(); ++f) {
    const auto curve = negativity_curve(rep.table, f, sweep.values.size());
    auto first = std::find_if(curve.begin(), curve.end(), [](double v) { return v > 0.0; });
    if (first == curve.end() || first == curve.begin()) {
      bracketed = false;
      onsets.push_back(kNaN);
      continue;
    }
    const std::size_t i = static_cast<std::size_t>(first - curve.begin());
    BaseParams base = rep.preset.sweep.base;
    set_parameter(base, fam.name, fam.values[f]);
    const double c = entanglement_onset(base, sweep.name, sweep.values[i - 1], sweep.values[i]);
    onsets.push_back(c);
    rep.metrics[std::string(metric_prefix) + fmt("%g", fam.values[f]) + ")"] = c;
  }
  SignatureCheck chk{check_name, false, {}};
  if (!bracketed) {
    chk.detail = std::string("some ") + family + " member has no onset inside the swept range";
  } else {
    bool ok = true;
    for (std::size_t i = 1; i < onsets.size(); ++i) {
      ok = ok && (decreasing ? onsets[i] < onsets[i - 1] : onsets[i] > onsets[i - 1]);
    }
    chk.passed = ok;
    std::string d = "onsets:";
    for (double o : onsets) d += fmt(" %.4g", o);
    chk.detail = d;
  }
  rep.checks.push_back(chk);
}

}  // namespace

std::string_view to_string(FigureId id) {
  switch (id) {
    case FigureId::kFig2: return "fig2";
    case FigureId::kFig3: return "fig3";
    case FigureId::kFig4: return "fig4";
    case FigureId::kFig5: return "fig5";
    case FigureId::kFig6: return "fig6";
    case FigureId::kFig7: return "fig7";
  }
  return "?";
}

FigureId parse_figure_id(std::string_view text) {
  for (FigureId id : all_figures()) {
    if (to_string(id) == text) return id;
  }
  throw ConfigError("unknown figure preset '" + std::string(text) + "' (expected fig2..fig7)");
}

std::vector<FigureId> all_figures() {
  return {FigureId::kFig2, FigureId::kFig3, FigureId::kFig4,
          FigureId::kFig5, FigureId::kFig6, FigureId::kFig7};
}

FigurePreset figure_preset(FigureId id, int points) {
  FigurePreset p;
  p.id = id;
  SweepSpec& s = p.sweep;
  s.id = std::string(to_string(id));
  switch (id) {
    case FigureId::kFig2:
      p.description = "E_N over Lambda/kappa x theta; r = 1, n = 0.5, C = 62.5";
      s.base = baseline_with({});
      s.axes = {Axis::linear("gain_over_kappa", 0.0, 0.499, points),
                Axis::linear("theta", 0.0, kPi, points)};
      break;
    case FigureId::kFig3:
      p.description = "E_N versus r for several theta; Lambda = 0.26 kappa";
      s.base = baseline_with({{"gain_over_kappa", 0.26}});
      s.axes = {Axis::list("theta", {0.0, kPi / 6, kPi / 4, kPi / 3, kPi / 2}),
                Axis::linear("r", 0.0, 2.0, points)};
      break;
    case FigureId::kFig4:
      p.description = "E_N versus r for several Lambda/kappa; theta = pi/12";
      s.base = baseline_with({{"theta", kPi / 12}});
      s.axes = {Axis::list("gain_over_kappa", {0.0, 0.1, 0.26, 0.4, 0.49}),
                Axis::linear("r", 0.0, 2.0, points)};
      break;
    case FigureId::kFig5:
      p.description = "E_N versus C for several r; theta = 0, Lambda = 0.49 kappa";
      s.base = baseline_with({{"gain_over_kappa", 0.49}});
      s.axes = {Axis::list("r", {0.0, 0.5, 1.0, 1.5}), Axis::linear("cooperativity", 0.0, 100.0, points)};
      break;
    case FigureId::kFig6:
      p.description = "E_N versus C for several n; theta = 0, Lambda = 0.49 kappa";
      s.base = baseline_with({{"gain_over_kappa", 0.49}});
      s.axes = {Axis::list("n", {0.5, 1.0, 2.0}), Axis::linear("cooperativity", 0.0, 100.0, points)};
      break;
    case FigureId::kFig7:
      p.description = "E_N versus T for several r; theta = 0, Lambda = 0.49 kappa";
      s.base = baseline_with({{"gain_over_kappa", 0.49}});
      s.axes = {Axis::list("r", {0.0, 0.5, 1.0, 1.5}),
                Axis::logarithmic("temperature", 1e-6, 1e-3, points)};
      break;
  }
  return p;
}

bool FigureReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SignatureCheck& c) { return c.passed; });
}

std::vector<double> negativity_curve(const SweepTable& table, std::size_t family_index,
                                     std::size_t points) {
  std::vector<double> out(points, kNaN);
  for (std::size_t i = 0; i < points; ++i) {
    const SweepRow& row = table.rows.at(family_index * points + i);
    if (row.negativity) out[i] = *row.negativity;
  }
  return out;
}

std::optional<std::size_t> interior_maximum(const std::vector<double>& curve, double rel_margin) {
  if (curve.size() < 3 || !all_finite(curve)) return std::nullopt;
  const auto it = std::max_element(curve.begin(), curve.end());
  const std::size_t i = static_cast<std::size_t>(it - curve.begin());
  if (i == 0 || i + 1 == curve.size()) return std::nullopt;
  const double margin = rel_margin * std::abs(*it);
  if (*it - curve.front() <= margin || *it - curve.back() <= margin) return std::nullopt;
  return i;
}

double entanglement_onset(const BaseParams& base, std::string_view axis, double lo, double hi,
                          double tol) {
  auto at = [&](double v) {
    BaseParams b = base;
    set_parameter(b, axis, v);
    return entangled_at(b);
  };
  if (at(lo)) return lo;
  if (!at(hi)) throw DomainError("no entanglement onset inside the bracket");
  const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
  while (hi - lo > tol * scale) {
    const double mid = 0.5 * (lo + hi);
    (at(mid) ? hi : lo) = mid;
  }
  return hi;
}

FigureReport reproduce_figure(FigureId id, unsigned jobs, int points) {
  FigureReport rep;
  rep.preset = figure_preset(id, points);
  rep.preset.sweep.jobs = jobs;
  rep.table = run_sweep(rep.preset.sweep);
  const SweepSpec& s = rep.preset.sweep;
  const std::size_t inner = s.axes.back().values.size();

  double peak = 0.0;
  for (const SweepRow& r : rep.table.rows) peak = std::max(peak, r.negativity.value_or(0.0));
  rep.metrics["max_E_N"] = peak;
  rep.metrics["stable_points"] = static_cast<double>(rep.table.stable_count());

  switch (id) {
    case FigureId::kFig2: {
      rep.checks.push_back(
          monotone_check("E_N increasing in Lambda at theta = 0", column(rep.table, 0, inner), true, true));
      // Dedicated theta cut at large gain, 0 .. pi/2.
      SweepSpec cut;
      cut.base = s.base;
      set_parameter(cut.base, "gain_over_kappa", 0.45);
      cut.axes = {Axis::linear("theta", 0.0, kPi / 2, points)};
      cut.jobs = jobs;
      const SweepTable t = run_sweep(cut);
      const auto c = negativity_curve(t, 0, t.rows.size());
      SignatureCheck chk = monotone_check("E_N decreasing toward theta = pi/2 at Lambda = 0.45 kappa", c,
                                          false, false);
      if (chk.passed && !(c.back() < c.front())) {
        chk.passed = false;
        chk.detail = "curve is flat";
      }
      rep.metrics["E_N(0.45k, 0)"] = c.front();
      rep.metrics["E_N(0.45k, pi/2)"] = c.back();
      rep.checks.push_back(chk);
      break;
    }
    case FigureId::kFig3: {
      const auto flat = negativity_curve(rep.table, 0, inner);
      const auto perp = negativity_curve(rep.table, 4, inner);
      rep.checks.push_back(monotone_check("E_N non-decreasing in r at theta = 0", flat, true, false));
      const auto peak_at = interior_maximum(perp);
      SignatureCheck chk{"interior maximum in r at theta = pi/2", peak_at.has_value(), "no interior maximum"};
      if (peak_at) {
        rep.metrics["r_opt(theta=pi/2)"] = s.axes[1].values[*peak_at];
        chk.detail = fmt("peak E_N %.4g at r = %.4g", perp[*peak_at], s.axes[1].values[*peak_at]);
      }
      rep.checks.push_back(chk);
      // Without injected squeezing the pump phase is a pure gauge.
      double spread = 0.0;
      for (std::size_t f = 1; f < s.axes[0].values.size(); ++f) {
        spread = std::max(spread, std::abs(negativity_curve(rep.table, f, inner)[0] - flat[0]));
      }
      rep.checks.push_back({"E_N independent of theta at r = 0", spread <= 1e-12 * std::max(1.0, flat[0]),
                            fmt("spread %.3e", spread)});
      break;
    }
    case FigureId::kFig4: {
      std::vector<double> at_zero, at_max;
      for (std::size_t f = 0; f < s.axes[0].values.size(); ++f) {
        const auto c = negativity_curve(rep.table, f, inner);
        at_zero.push_back(c.front());
        at_max.push_back(c.back());
      }
      rep.checks.push_back(monotone_check("E_N increasing in Lambda at r = 0", at_zero, true, true));
      rep.checks.push_back(monotone_check("E_N decreasing in Lambda at r = 2", at_max, false, true));
      break;
    }
    case FigureId::kFig5:
      onset_checks(rep, "r", "onset_C(r=", "onset cooperativity decreasing in r", true);
      break;
    case FigureId::kFig6:
      onset_checks(rep, "n", "onset_C(n=", "onset cooperativity increasing in n", false);
      break;
    case FigureId::kFig7: {
      const std::size_t fam = s.axes[0].values.size();
      bool mono = true;
      double worst = -std::numeric_limits<double>::infinity();
      std::vector<std::vector<double>> curves;
      for (std::size_t f = 0; f < fam; ++f) {
        curves.push_back(negativity_curve(rep.table, f, inner));
        const auto chk = monotone_check("", curves.back(), false, false);
        mono = mono && chk.passed;
        if (all_finite(curves.back())) worst = std::max(worst, worst_rise(curves.back()));
      }
      rep.checks.push_back({"E_N non-increasing in T for every r", mono, fmt("worst rise %.3e", worst)});
      bool dominate = true;
      double gap = -std::numeric_limits<double>::infinity();
      for (std::size_t f = 1; f < fam; ++f) {
        for (std::size_t i = 0; i < inner; ++i) {
          const double d = curves[f - 1][i] - curves[f][i];
          gap = std::max(gap, d);
          dominate = dominate && std::isfinite(d) && d <= kMonotoneSlack;
        }
      }
      rep.checks.push_back({"larger r dominates at every T", dominate, fmt("worst deficit %.3e", gap)});
      break;
    }
  }
  rep.metrics["checks_passed"] = static_cast<double>(
      std::count_if(rep.checks.begin(), rep.checks.end(), [](const SignatureCheck& c) { return c.passed; }));
  return rep;
}

}  // namespace mechent
