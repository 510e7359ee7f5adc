#include "mechent/io.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mechent/constants.hpp"
#include "mechent/core_model.hpp"
#include "mechent/covariance.hpp"
#include "mechent/entanglement.hpp"
#include "mechent/errors.hpp"

namespace mechent {
namespace {

namespace fs = std::filesystem;

// ---- config parsing helpers ------------------------------------------------

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path + ": must be finite");
  return x;
}

ModePair pair(const Json& v, const std::string& path) {
  if (v.is_number()) {
    const double x = number(v, path);
    return {x, x};
  }
  if (!v.is_array() || v.size() != 2) throw ConfigError(path + ": expected a number or a [mode1, mode2] pair");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

ModePair scaled(ModePair v, double s) { return {v[0] * s, v[1] * s}; }

Json pair_json(const ModePair& v) { return Json::array({v[0], v[1]}); }

void exclusive(const Json& obj, const char* a, const char* b, const std::string& path) {
  if (obj.contains(a) && obj.contains(b)) {
    throw ConfigError(path + ": give either '" + a + "' or '" + b + "', not both");
  }
}

PhysicalParams parse_physical(const Json& obj, double scale, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path + ": expected an object");
  exclusive(obj, "laser_frequency", "laser_wavelength", path);
  exclusive(obj, "gain", "gain_over_kappa", path);
  PhysicalParams p = PhysicalParams::experimental();
  bool detuning_given = false;
  for (const auto& [key, v] : obj.items()) {
    const std::string at = path + "." + key;
    if (key == "laser_frequency") {
      p.laser_frequency = scaled(pair(v, at), scale);
    } else if (key == "laser_wavelength") {
      const ModePair w = pair(v, at);
      if (!(w[0] > 0.0 && w[1] > 0.0)) throw ConfigError(at + ": must be > 0");
      p.laser_frequency = {kTwoPi * kSpeedOfLight / w[0], kTwoPi * kSpeedOfLight / w[1]};
    } else if (key == "cavity_frequency") {
      p.cavity_frequency = scaled(pair(v, at), scale);
    } else if (key == "mechanical_frequency") {
      p.mechanical_frequency = scaled(pair(v, at), scale);
    } else if (key == "mass") {
      p.mass = pair(v, at);
    } else if (key == "length") {
      p.length = pair(v, at);
    } else if (key == "kappa") {
      p.kappa = scaled(pair(v, at), scale);
    } else if (key == "gamma") {
      p.gamma = scaled(pair(v, at), scale);
    } else if (key == "power") {
      p.power = pair(v, at);
    } else if (key == "gain") {
      p.gain = number(v, at) * scale;
    } else if (key == "gain_over_kappa") {
      number(v, at);  // applied once kappa is known
    } else if (key == "pump_phase") {
      p.pump_phase = number(v, at);
    } else if (key == "squeeze_r") {
      p.squeeze_r = number(v, at);
    } else if (key == "squeeze_phase") {
      p.squeeze_phase = number(v, at);
    } else if (key == "temperature") {
      p.temperature = pair(v, at);
    } else if (key == "detuning") {
      p.detuning = scaled(pair(v, at), scale);
      detuning_given = true;
    } else {
      throw ConfigError(at + ": unknown key");
    }
  }
  if (obj.contains("gain_over_kappa")) {
    p.gain = obj["gain_over_kappa"].get<double>() * std::sqrt(p.kappa[0] * p.kappa[1]);
  }
  // Red-detuned drive by default: Delta follows Omega unless given.
  if (!detuning_given) p.detuning = p.mechanical_frequency;
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return p;
}

ReducedParams parse_reduced(const Json& obj, double scale, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path + ": expected an object");
  exclusive(obj, "occupancy", "temperature", path);
  ReducedParams p = ReducedParams::figure_baseline();
  for (const auto& [key, v] : obj.items()) {
    const std::string at = path + "." + key;
    if (key == "kappa") {
      p.kappa = number(v, at) * scale;
    } else if (key == "gamma") {
      p.gamma = number(v, at) * scale;
    } else if (key == "cooperativity") {
      p.cooperativity = number(v, at);
    } else if (key == "gain_over_kappa") {
      p.gain_over_kappa = number(v, at);
    } else if (key == "pump_phase") {
      p.pump_phase = number(v, at);
    } else if (key == "squeeze_r") {
      p.squeeze_r = number(v, at);
    } else if (key == "squeeze_phase") {
      p.squeeze_phase = number(v, at);
    } else if (key == "occupancy") {
      p.occupancy = pair(v, at);
    } else if (key == "temperature") {
      pair(v, at);  // converted once the mechanical frequency is known
    } else if (key == "mechanical_frequency") {
      p.mechanical_frequency = number(v, at) * scale;
    } else {
      throw ConfigError(at + ": unknown key");
    }
  }
  try {
    if (obj.contains("temperature")) {
      if (!(p.mechanical_frequency > 0.0)) {
        throw ConfigError(path + ".temperature: needs a positive mechanical_frequency");
      }
      const ModePair t = pair(obj["temperature"], path + ".temperature");
      p.occupancy = {thermal_occupancy(p.mechanical_frequency, t[0]),
                     thermal_occupancy(p.mechanical_frequency, t[1])};
    }
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return p;
}

// ---- report helpers --------------------------------------------------------

Json matrix_json(const MatX& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json complex_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json inputs_json(const ModelInputs& in) {
  return Json{{"kappa", pair_json(in.kappa)},
              {"gamma", pair_json(in.gamma)},
              {"coupling", pair_json(in.coupling)},
              {"gain", in.gain},
              {"pump_phase", in.pump_phase},
              {"occupancy", pair_json(in.occupancy)},
              {"reservoir_n", in.reservoir_n},
              {"reservoir_m", complex_json(in.reservoir_m)}};
}

Json operating_point_json(const OperatingPoint& op) {
  Json amp = Json::array();
  Json disp = Json::array();
  for (int j = 0; j < 2; ++j) {
    amp.push_back(complex_json(op.cavity_amplitude[j]));
    disp.push_back(complex_json(op.mirror_displacement[j]));
  }
  return Json{{"single_photon_coupling", pair_json(op.single_photon_coupling)},
              {"drive_amplitude", pair_json(op.drive_amplitude)},
              {"cavity_amplitude", amp},
              {"laser_phase", pair_json(op.laser_phase)},
              {"mirror_displacement", disp},
              {"coupling", pair_json(op.coupling)},
              {"coupling_over_kappa", Json::array({op.coupling[0] / op.inputs.kappa[0],
                                                   op.coupling[1] / op.inputs.kappa[1]})},
              {"cooperativity", op.cooperativity},
              {"occupancy", pair_json(op.occupancy)},
              {"detuning_residual", pair_json(op.detuning_residual)},
              {"quality_factor", pair_json(op.quality_factor)},
              {"above_gain_threshold", op.above_gain_threshold},
              {"warnings", op.warnings}};
}

Json model_json(const EffectiveModel& m) {
  return Json{{"denominator", m.denominator},
              {"optical_damping", pair_json(m.optical_damping)},
              {"damping", pair_json(m.damping)},
              {"coupling", complex_json(m.coupling)},
              {"coupling_abs", std::abs(m.coupling)},
              {"a", Json::array({complex_json(m.a[0]), complex_json(m.a[1])})},
              {"b", Json::array({complex_json(m.b[0]), complex_json(m.b[1])})},
              {"beyond_threshold", m.beyond_threshold}};
}

Json stability_json(const StabilityReport& s) {
  return Json{{"stable", s.stable},
              {"margin", s.margin},
              {"coefficients", s.coefficients},
              {"hurwitz", s.hurwitz},
              {"normalized", s.normalized},
              {"scale", s.scale},
              {"eigenvalue_real_parts", s.eigenvalue_real_parts},
              {"eigenvalue_stable", s.eigenvalue_stable}};
}

Json entanglement_json(const EntanglementResult& e, const Mat4& r) {
  return Json{{"V_s", e.min_symplectic},
              {"E_N", e.negativity},
              {"E_N_dB", negativity_db(e.negativity)},
              {"entangled", e.entangled},
              {"det_A", e.invariants.det_a},
              {"det_B", e.invariants.det_b},
              {"det_C", e.invariants.det_c},
              {"det_R", e.invariants.det_total},
              {"zeta", e.invariants.zeta},
              {"min_physical_symplectic", min_physical_symplectic(r)}};
}

struct Resolved {
  std::optional<OperatingPoint> op;
  ModelInputs inputs;
};

Resolved resolve(const BaseParams& params) {
  Resolved r;
  if (const auto* p = std::get_if<PhysicalParams>(&params)) {
    r.op = derive_operating_point(*p);
    r.inputs = model_inputs(*r.op);
  } else {
    r.inputs = model_inputs(std::get<ReducedParams>(params));
  }
  return r;
}

Json header(const char* kind, const BaseParams& params) {
  return Json{{"version", kVersion}, {"kind", kind}, {"params", params_to_json(params)}};
}

Json axis_json(const Axis& a) {
  const char* scale = a.scale == AxisScale::kLinear ? "linear" : a.scale == AxisScale::kLog ? "log" : "list";
  Json j{{"name", a.name}, {"unit", parameter_unit(a.name)}, {"scale", scale}, {"count", a.values.size()}};
  if (a.scale == AxisScale::kList) {
    j["values"] = a.values;
  } else {
    j["min"] = a.values.front();
    j["max"] = a.values.back();
  }
  return j;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string column_header(std::string_view c) {
  if (c == "margin" || c == "V_s" || c == "nu_min" || c == "residual") return std::string(c) + "[1]";
  if (c == "E_N") return "E_N[nats]";
  return std::string(c);
}

std::string axis_header(const std::string& name) {
  return name + "[" + std::string(parameter_unit(name)) + "]";
}

// Headers never contain commas or quotes, but guard anyway.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

// ---- params ----------------------------------------------------------------

BaseParams parse_params(const Json& config) {
  if (!config.is_object()) throw ConfigError("config: top level must be an object");
  bool rad_s = false;
  for (const auto& [key, v] : config.items()) {
    if (key == "rad_s") {
      if (!v.is_boolean()) throw ConfigError("config.rad_s: expected true or false");
      rad_s = v.get<bool>();
    } else if (key != "physical" && key != "reduced") {
      throw ConfigError("config." + key + ": unknown key (expected 'physical' or 'reduced')");
    }
  }
  const bool phys = config.contains("physical");
  const bool red = config.contains("reduced");
  if (phys == red) throw ConfigError("config: give exactly one of 'physical' or 'reduced'");
  const double scale = rad_s ? 1.0 : kTwoPi;
  if (phys) return parse_physical(config["physical"], scale, "config.physical");
  return parse_reduced(config["reduced"], scale, "config.reduced");
}

BaseParams load_params(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  Json config;
  try {
    config = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": invalid JSON: " + e.what());
  }
  try {
    return parse_params(config);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Json params_to_json(const BaseParams& params) {
  if (const auto* p = std::get_if<PhysicalParams>(&params)) {
    return Json{{"rad_s", true},
                {"physical",
                 {{"laser_frequency", pair_json(p->laser_frequency)},
                  {"cavity_frequency", pair_json(p->cavity_frequency)},
                  {"mechanical_frequency", pair_json(p->mechanical_frequency)},
                  {"mass", pair_json(p->mass)},
                  {"length", pair_json(p->length)},
                  {"kappa", pair_json(p->kappa)},
                  {"gamma", pair_json(p->gamma)},
                  {"power", pair_json(p->power)},
                  {"gain", p->gain},
                  {"pump_phase", p->pump_phase},
                  {"squeeze_r", p->squeeze_r},
                  {"squeeze_phase", p->squeeze_phase},
                  {"temperature", pair_json(p->temperature)},
                  {"detuning", pair_json(p->detuning)}}}};
  }
  const auto& r = std::get<ReducedParams>(params);
  return Json{{"rad_s", true},
              {"reduced",
               {{"kappa", r.kappa},
                {"gamma", r.gamma},
                {"cooperativity", r.cooperativity},
                {"gain_over_kappa", r.gain_over_kappa},
                {"pump_phase", r.pump_phase},
                {"squeeze_r", r.squeeze_r},
                {"squeeze_phase", r.squeeze_phase},
                {"occupancy", pair_json(r.occupancy)},
                {"mechanical_frequency", r.mechanical_frequency}}}};
}

void apply_override(BaseParams& params, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "': expected name=value");
  }
  const std::string name(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError("override '" + name + "': '" + text + "' is not a number");
  }
  set_parameter(params, name, value);
  try {
    std::visit([](const auto& p) { p.validate(); }, params);
  } catch (const DomainError& e) {
    throw ConfigError("override '" + name + "': " + e.what());
  }
}

// ---- reports ---------------------------------------------------------------

Json compute_report(const BaseParams& params, bool strict) {
  Json out = header("compute", params);
  const Resolved res = resolve(params);
  if (res.op) out["operating_point"] = operating_point_json(*res.op);
  out["model_inputs"] = inputs_json(res.inputs);

  EffectiveModel m;
  try {
    m = build_effective_model(res.inputs);
  } catch (const SingularError& e) {
    if (strict) throw UnstableError(std::string("point sits exactly at threshold: ") + e.what());
    out["stable"] = false;
    out["E_N"] = nullptr;
    out["note"] = e.what();
    return out;
  }
  out["effective_model"] = model_json(m);
  const StabilityReport st = routh_hurwitz(m);
  out["stability"] = stability_json(st);
  out["stable"] = st.stable;
  if (!st.stable) {
    if (strict) {
      throw UnstableError("operating point is unstable (Routh-Hurwitz margin " + num(st.margin) + ")");
    }
    out["covariance"] = nullptr;
    out["entanglement"] = nullptr;
    out["E_N"] = nullptr;
    return out;
  }

  const StateMatrices sm = build_state_matrices(m);
  const CovarianceMatrix generic = solve_lyapunov_generic(sm.drift, sm.diffusion);
  Json cov{{"generic-lyapunov",
            {{"matrix", matrix_json(generic.matrix)},
             {"residual", lyapunov_residual(sm.drift, sm.diffusion, generic.matrix)}}}};
  try {
    const CovarianceMatrix cr = solve_covariance_cramer(m, sm.diffusion);
    const double scale = generic.matrix.cwiseAbs().maxCoeff();
    cov["cramer"] = {{"matrix", matrix_json(cr.matrix)},
                     {"max_relative_difference", (cr.matrix - generic.matrix).cwiseAbs().maxCoeff() / scale}};
  } catch (const SingularError& e) {
    cov["cramer"] = {{"error", e.what()}};
  }
  try {
    const CovarianceMatrix cf = symmetric_closed_form(m, sm.diffusion);
    cov["symmetric-closed-form"] = {{"matrix", matrix_json(cf.matrix)}};
  } catch (const DomainError&) {
    cov["symmetric-closed-form"] = {{"applicable", false}};
  }
  out["covariance"] = cov;
  const EntanglementResult e = log_negativity(generic.matrix);
  out["entanglement"] = entanglement_json(e, generic.matrix);
  out["E_N"] = e.negativity;
  return out;
}

Json stability_report(const BaseParams& params) {
  Json out = header("stability", params);
  const Resolved res = resolve(params);
  try {
    const EffectiveModel m = build_effective_model(res.inputs);
    out["effective_model"] = model_json(m);
    out["stability"] = stability_json(routh_hurwitz(m));
    out["stable"] = out["stability"]["stable"];
  } catch (const SingularError& e) {
    out["stable"] = false;
    out["note"] = e.what();
  }
  out["threshold_gain"] = 0.5 * res.inputs.mean_kappa();
  return out;
}

Json matrices_report(const BaseParams& params) {
  Json out = header("matrices", params);
  const Resolved res = resolve(params);
  const EffectiveModel m = build_effective_model(res.inputs);
  const DiffusionEntries f = diffusion_entries(m);
  out["labels"] = std::vector<std::string>(std::begin(kMechanicalLabels), std::end(kMechanicalLabels));
  out["drift"] = matrix_json(build_drift(m));
  out["diffusion"] = matrix_json(build_diffusion(m));
  out["diffusion_entries"] = {{"F11", f.f11}, {"F13", f.f13}, {"F14", f.f14}, {"F33", f.f33}};
  const FullStateMatrices full = build_full_model(res.inputs);
  out["full_model"] = {{"labels", {"Q1c", "P1c", "Q2c", "P2c", "Q1m", "P1m", "Q2m", "P2m"}},
                       {"drift", matrix_json(full.drift)},
                       {"diffusion", matrix_json(full.diffusion)}};
  return out;
}

Json covariance_report(const BaseParams& params, std::string_view solver) {
  Json out = header("covariance", params);
  const Resolved res = resolve(params);
  const EffectiveModel m = build_effective_model(res.inputs);
  if (!routh_hurwitz(m).stable) throw UnstableError("operating point is unstable; no steady state");
  const StateMatrices sm = build_state_matrices(m);
  CovarianceMatrix c;
  if (solver == "generic") {
    c = solve_lyapunov_generic(sm.drift, sm.diffusion);
  } else if (solver == "cramer") {
    c = solve_covariance_cramer(m, sm.diffusion);
  } else if (solver == "closed-form") {
    c = symmetric_closed_form(m, sm.diffusion);
  } else {
    throw ConfigError("unknown solver '" + std::string(solver) + "' (generic, cramer, closed-form)");
  }
  out["method"] = std::string(to_string(c.method));
  out["labels"] = std::vector<std::string>(std::begin(kMechanicalLabels), std::end(kMechanicalLabels));
  out["matrix"] = matrix_json(c.matrix);
  out["residual"] = lyapunov_residual(sm.drift, sm.diffusion, c.matrix);
  out["structure_violation"] = structure_violation(c.matrix);
  return out;
}

Json elimination_report(const EliminationReport& r) {
  return Json{{"version", kVersion},
              {"kind", "validate"},
              {"passed", r.passed},
              {"coupling_over_kappa", r.coupling_over_kappa},
              {"tolerance", r.tolerance},
              {"covariance_deviation", r.covariance_deviation},
              {"negativity_full", r.negativity_full},
              {"negativity_reduced", r.negativity_reduced},
              {"negativity_deviation", r.negativity_deviation},
              {"full_min_symplectic", r.full_min_symplectic},
              {"full_stable", r.full_stable},
              {"reduced_stable", r.reduced_stable},
              {"reduced_covariance", matrix_json(r.reduced)},
              {"full_mechanical_covariance", matrix_json(r.full_mechanical)}};
}

Json optimize_report(const OptimizeSpec& spec, const OptimizeResult& r) {
  Json out = header("optimize", spec.base);
  Json free = Json::array();
  for (const auto& p : spec.free) free.push_back({{"name", p.name}, {"lower", p.lower}, {"upper", p.upper}});
  out["spec"] = {{"free", free},
                 {"stability_handling", to_string(spec.handling)},
                 {"tolerance", spec.tolerance},
                 {"max_iterations", spec.max_iterations},
                 {"multistart", spec.multistart},
                 {"pregrid_points", spec.pregrid_points},
                 {"seed", spec.seed},
                 {"penalty", spec.penalty}};
  Json argmax = Json::object();
  for (std::size_t i = 0; i < r.names.size(); ++i) argmax[r.names[i]] = r.argmax[i];
  out["argmax"] = argmax;
  out["E_N"] = r.negativity;
  out["E_N_dB"] = negativity_db(r.negativity);
  out["pregrid_best"] = r.pregrid_best;
  out["iterations"] = r.iterations;
  out["evaluations"] = r.trace.size();
  out["converged"] = r.converged;
  out["best_history"] = r.best_history;
  return out;
}

Json sweep_summary(const SweepSpec& spec, const SweepTable& table) {
  Json out = header("sweep", spec.base);
  out["id"] = spec.id;
  Json axes = Json::array();
  for (const Axis& a : spec.axes) axes.push_back(axis_json(a));
  out["axes"] = axes;
  out["rows"] = table.rows.size();
  out["stable_points"] = table.stable_count();
  const SweepRow* best = nullptr;
  for (const SweepRow& r : table.rows) {
    if (r.negativity && (!best || *r.negativity > *best->negativity)) best = &r;
  }
  if (best) {
    out["max_E_N"] = *best->negativity;
    out["max_E_N_at"] = best->coordinates;
  } else {
    out["max_E_N"] = nullptr;
  }
  out["warnings"] = table.warnings;
  return out;
}

Json figure_summary(const FigureReport& r) {
  Json out = sweep_summary(r.preset.sweep, r.table);
  out["kind"] = "figure";
  out["description"] = r.preset.description;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  out["checks"] = checks;
  out["metrics"] = r.metrics;
  out["all_passed"] = r.all_passed();
  return out;
}

std::string sweep_csv(const SweepSpec& spec, const SweepTable& table) {
  std::vector<std::string> cols;
  if (spec.columns.empty()) {
    for (auto c : kResultColumns) cols.emplace_back(c);
  } else {
    cols = spec.columns;
  }

  std::ostringstream os;
  os << "# mechent " << kVersion << "\n";
  os << "# preset: " << spec.id << "\n";
  os << "# params: " << params_to_json(spec.base).dump() << "\n";
  for (const Axis& a : spec.axes) os << "# axis: " << axis_json(a).dump() << "\n";
  for (const auto& w : table.warnings) os << "# warning: " << w << "\n";

  bool first = true;
  for (const Axis& a : spec.axes) {
    os << (first ? "" : ",") << csv_field(axis_header(a.name));
    first = false;
  }
  for (const auto& c : cols) os << "," << csv_field(column_header(c));
  os << "\r\n";

  for (const SweepRow& r : table.rows) {
    for (std::size_t i = 0; i < r.coordinates.size(); ++i) os << (i ? "," : "") << num(r.coordinates[i]);
    for (const auto& c : cols) {
      os << ",";
      if (c == "stable") os << (r.stable ? "true" : "false");
      else if (c == "margin") os << num(r.margin);
      else if (c == "V_s") os << opt(r.min_symplectic);
      else if (c == "E_N") os << opt(r.negativity);
      else if (c == "entangled") os << (r.negativity ? (r.entangled ? "true" : "false") : "");
      else if (c == "nu_min") os << opt(r.physical_symplectic);
      else if (c == "residual") os << opt(r.residual);
    }
    os << "\r\n";
  }
  return os.str();
}

std::string trace_csv(const OptimizeResult& r) {
  std::ostringstream os;
  os << "# mechent " << kVersion << "\n";
  os << "start,iteration";
  for (const auto& n : r.names) os << "," << csv_field(axis_header(n));
  os << ",feasible,E_N[nats]\r\n";
  for (const TraceEntry& t : r.trace) {
    os << t.start << "," << t.iteration;
    for (double x : t.x) os << "," << num(x);
    os << "," << (t.feasible ? "true" : "false") << "," << (t.feasible ? num(t.negativity) : "") << "\r\n";
  }
  return os.str();
}

// ---- files -----------------------------------------------------------------

void write_atomic(const fs::path& path, std::string_view content) {
  std::error_code ec;
  const fs::path parent = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::create_directories(parent, ec);
  if (ec) throw IoError(path.string() + ": cannot create directory: " + ec.message());

  const fs::path tmp = parent / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string() + ": cannot open temporary file " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      throw IoError(path.string() + ": write failed");
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw IoError(path.string() + ": cannot move output into place: " + ec.message());
  }
}

fs::path resolve_output_path(const std::string& requested, std::string_view fallback_name) {
  if (!requested.empty()) return fs::path(requested);
  const char* dir = std::getenv("MECHENT_OUTPUT_DIR");
  return (dir && *dir ? fs::path(dir) : fs::path(".")) / std::string(fallback_name);
}

fs::path summary_path_for(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".json");
  if (p == csv) p += ".json";
  return p;
}

}  // namespace mechent
