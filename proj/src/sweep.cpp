#include "mechent/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "mechent/core_model.hpp"
#include "mechent/errors.hpp"

namespace mechent {
namespace {

constexpr std::string_view kReducedNames[] = {
    "kappa", "gamma", "cooperativity", "coupling_over_kappa", "gain_over_kappa", "theta", "phi", "r",
    "n",     "n1",    "n2",            "temperature",         "mechanical_frequency"};

constexpr std::string_view kPhysicalNames[] = {"power", "power1",      "power2",       "gain_over_kappa",
                                               "theta", "phi",         "r",            "temperature",
                                               "temperature1", "temperature2"};

[[noreturn]] void unknown(std::string_view name, const char* base) {
  throw ConfigError("unknown parameter '" + std::string(name) + "' for " + base + " parameters");
}

void set_reduced(ReducedParams& p, std::string_view name, double v) {
  if (name == "kappa") {
    p.kappa = v;
  } else if (name == "gamma") {
    p.gamma = v;
  } else if (name == "cooperativity") {
    p.cooperativity = v;
  } else if (name == "coupling_over_kappa") {
    p.cooperativity = 4.0 * v * v * p.kappa / p.gamma;
  } else if (name == "gain_over_kappa") {
    p.gain_over_kappa = v;
  } else if (name == "theta") {
    p.pump_phase = v;
  } else if (name == "phi") {
    p.squeeze_phase = v;
  } else if (name == "r") {
    p.squeeze_r = v;
  } else if (name == "n") {
    p.occupancy = {v, v};
  } else if (name == "n1") {
    p.occupancy[0] = v;
  } else if (name == "n2") {
    p.occupancy[1] = v;
  } else if (name == "temperature") {
    if (!(p.mechanical_frequency > 0.0)) {
      throw ConfigError("temperature needs a positive mechanical_frequency in reduced parameters");
    }
    const double n = thermal_occupancy(p.mechanical_frequency, v);
    p.occupancy = {n, n};
  } else if (name == "mechanical_frequency") {
    p.mechanical_frequency = v;
  } else {
    unknown(name, "reduced");
  }
}

void set_physical(PhysicalParams& p, std::string_view name, double v) {
  if (name == "power") {
    p.power = {v, v};
  } else if (name == "power1") {
    p.power[0] = v;
  } else if (name == "power2") {
    p.power[1] = v;
  } else if (name == "gain_over_kappa") {
    p.gain = v * std::sqrt(p.kappa[0] * p.kappa[1]);
  } else if (name == "theta") {
    p.pump_phase = v;
  } else if (name == "phi") {
    p.squeeze_phase = v;
  } else if (name == "r") {
    p.squeeze_r = v;
  } else if (name == "temperature") {
    p.temperature = {v, v};
  } else if (name == "temperature1") {
    p.temperature[0] = v;
  } else if (name == "temperature2") {
    p.temperature[1] = v;
  } else {
    unknown(name, "physical");
  }
}

template <std::size_t N>
bool contains(const std::string_view (&names)[N], std::string_view name) {
  return std::find(std::begin(names), std::end(names), name) != std::end(names);
}

bool known_parameter(const BaseParams& base, std::string_view name) {
  return std::holds_alternative<ReducedParams>(base) ? contains(kReducedNames, name)
                                                     : contains(kPhysicalNames, name);
}

void check_range(const std::string& name, double min, double max, int count) {
  if (count < 2) throw ConfigError("axis '" + name + "' needs at least 2 points");
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw ConfigError("axis '" + name + "' needs finite min < max");
  }
}

SweepRow evaluate_row(const SweepSpec& spec, const std::vector<double>& coords) {
  BaseParams base = spec.base;
  for (std::size_t a = 0; a < coords.size(); ++a) set_parameter(base, spec.axes[a].name, coords[a]);
  const PointEvaluation ev = evaluate_point(resolve_inputs(base));

  SweepRow row;
  row.coordinates = coords;
  row.stable = ev.stability.stable;
  row.margin = ev.stability.margin;
  if (ev.entanglement) {
    row.min_symplectic = ev.entanglement->min_symplectic;
    row.negativity = ev.entanglement->negativity;
    row.entangled = ev.entanglement->entangled;
    row.physical_symplectic = ev.physical_symplectic;
    row.residual = ev.residual;
  }
  return row;
}

}  // namespace

ModelInputs resolve_inputs(const BaseParams& base) {
  if (const auto* r = std::get_if<ReducedParams>(&base)) return model_inputs(*r);
  return model_inputs(derive_operating_point(std::get<PhysicalParams>(base)));
}

void set_parameter(BaseParams& base, std::string_view name, double value) {
  if (!std::isfinite(value)) {
    throw ConfigError("parameter '" + std::string(name) + "' must be finite");
  }
  std::visit(
      [&](auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, ReducedParams>) {
          set_reduced(p, name, value);
        } else {
          set_physical(p, name, value);
        }
      },
      base);
}

std::vector<std::string> parameter_names(const BaseParams& base) {
  std::vector<std::string> out;
  if (std::holds_alternative<ReducedParams>(base)) {
    for (auto n : kReducedNames) out.emplace_back(n);
  } else {
    for (auto n : kPhysicalNames) out.emplace_back(n);
  }
  return out;
}

std::string_view parameter_unit(std::string_view name) {
  if (name == "kappa" || name == "gamma" || name == "mechanical_frequency") return "rad/s";
  if (name == "theta" || name == "phi") return "rad";
  if (name.substr(0, 11) == "temperature") return "K";
  if (name.substr(0, 5) == "power") return "W";
  return "1";
}

PointEvaluation evaluate_point(const ModelInputs& in) {
  PointEvaluation ev;
  try {
    ev.model = build_effective_model(in);
  } catch (const SingularError&) {
    // Exactly at threshold: no finite eliminated model, report as marginal.
    ev.model.inputs = in;
    ev.stability.stable = false;
    ev.stability.margin = 0.0;
    return ev;
  }
  ev.stability = routh_hurwitz(ev.model);
  if (!ev.stability.stable) return ev;

  const StateMatrices sm = build_state_matrices(ev.model);
  ev.covariance = solve_lyapunov_generic(sm.drift, sm.diffusion);
  ev.residual = lyapunov_residual(sm.drift, sm.diffusion, ev.covariance->matrix);
  ev.entanglement = log_negativity(ev.covariance->matrix);
  ev.physical_symplectic = min_physical_symplectic(ev.covariance->matrix);
  return ev;
}

Axis Axis::linear(std::string name, double min, double max, int count) {
  check_range(name, min, max, count);
  Axis a{std::move(name), {}, AxisScale::kLinear};
  a.values.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) a.values[i] = min + (max - min) * i / (count - 1);
  a.values.back() = max;
  return a;
}

Axis Axis::logarithmic(std::string name, double min, double max, int count) {
  check_range(name, min, max, count);
  if (!(min > 0.0)) throw ConfigError("log axis '" + name + "' needs min > 0");
  Axis a{std::move(name), {}, AxisScale::kLog};
  a.values.resize(static_cast<std::size_t>(count));
  const double l0 = std::log(min);
  const double l1 = std::log(max);
  for (int i = 0; i < count; ++i) a.values[i] = std::exp(l0 + (l1 - l0) * i / (count - 1));
  a.values.front() = min;
  a.values.back() = max;
  return a;
}

Axis Axis::list(std::string name, std::vector<double> values) {
  if (values.size() < 2) throw ConfigError("axis '" + name + "' needs at least 2 values");
  for (double v : values) {
    if (!std::isfinite(v)) throw ConfigError("axis '" + name + "' has a non-finite value");
  }
  return Axis{std::move(name), std::move(values), AxisScale::kList};
}

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 2) throw ConfigError("a sweep takes one or two axes");
  for (const Axis& a : axes) {
    if (!known_parameter(base, a.name)) {
      throw ConfigError("invalid axis name '" + a.name + "'");
    }
    if (a.values.size() < 2) throw ConfigError("axis '" + a.name + "' needs at least 2 points");
  }
  if (axes.size() == 2 && axes[0].name == axes[1].name) {
    throw ConfigError("both axes set '" + axes[0].name + "'");
  }
  for (const std::string& c : columns) {
    if (!contains(kResultColumns, c)) throw ConfigError("unknown output column '" + c + "'");
  }
}

std::size_t SweepTable::stable_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.stable; }));
}

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepTable table;
  for (const Axis& a : spec.axes) table.axis_names.push_back(a.name);

  const std::size_t n0 = spec.axes[0].values.size();
  const std::size_t n1 = spec.axes.size() == 2 ? spec.axes[1].values.size() : 1;
  const std::size_t total = n0 * n1;
  table.rows.resize(total);

  auto coords_of = [&](std::size_t k) {
    std::vector<double> c{spec.axes[0].values[k / n1]};
    if (spec.axes.size() == 2) c.push_back(spec.axes[1].values[k % n1]);
    return c;
  };

  const std::size_t jobs = std::clamp<std::size_t>(spec.jobs, 1, total);
  if (jobs == 1) {
    for (std::size_t k = 0; k < total; ++k) table.rows[k] = evaluate_row(spec, coords_of(k));
  } else {
    // Strided partition; every row lands in its own slot, so order is fixed.
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t k = t; k < total; k += jobs) table.rows[k] = evaluate_row(spec, coords_of(k));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  if (table.stable_count() == 0) {
    table.warnings.push_back("no stable point in the swept region; all negativities are masked");
  }
  return table;
}

}  // namespace mechent
