// mechent: command-line front end.
//
//   mechent compute   [--config F] [--mode reduced|physical] [--set k=v]... [--lenient] [--out F]
//   mechent sweep     --preset figN | --axis name:min:max:count[:log] (x1-2) [--columns ...] [--jobs N]
//   mechent figure    figN [--points N] [--jobs N] [--out F]
//   mechent optimize  --free name:lo:hi ... [--handling reject|penalty] [--seed S] [--trace F]
//   mechent stability | validate | dump-matrices | dump-covariance
//
// Exit codes: 2 invalid configuration, 1 unstable point refused (strict) or
// other runtime failure, 0 otherwise.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mechent/constants.hpp"
#include "mechent/errors.hpp"
#include "mechent/figures.hpp"
#include "mechent/full_model.hpp"
#include "mechent/io.hpp"
#include "mechent/optimize.hpp"
#include "mechent/sweep.hpp"

namespace {

using namespace mechent;

constexpr int kExitOk = 0;
constexpr int kExitRefused = 1;
constexpr int kExitConfig = 2;

struct ParamOptions {
  std::string config;
  std::string mode = "reduced";
  std::vector<std::string> overrides;

  void attach(CLI::App* app) {
    app->add_option("--config,-c", config, "JSON parameter file");
    app->add_option("--mode", mode, "Parameterization when no config is given")
        ->check(CLI::IsMember({"reduced", "physical"}));
    app->add_option("--set", overrides, "Override a parameter, name=value (SI units, rad/s)");
  }

  BaseParams resolve(CLI::App* app) const {
    BaseParams p;
    if (!config.empty()) {
      p = load_params(config);
      const bool physical = std::holds_alternative<PhysicalParams>(p);
      if (app->count("--mode") && (mode == "physical") != physical) {
        throw ConfigError("--mode " + mode + " conflicts with the parameterization in " + config);
      }
    } else if (mode == "physical") {
      p = PhysicalParams::experimental();
    } else {
      p = ReducedParams::figure_baseline();
    }
    for (const auto& o : overrides) apply_override(p, o);
    return p;
  }
};

void emit_json(const Json& j, const std::string& out, const char* summary) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  write_atomic(out, j.dump(2) + "\n");
  std::cout << summary << " -> " << out << "\n";
}

// name:min:max:count[:linear|log]
Axis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 4 && parts.size() != 5) {
    throw ConfigError("axis '" + text + "': expected name:min:max:count[:linear|log]");
  }
  double lo = 0.0, hi = 0.0;
  int count = 0;
  try {
    lo = std::stod(parts[1]);
    hi = std::stod(parts[2]);
    count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw ConfigError("axis '" + text + "': min, max and count must be numbers");
  }
  const std::string scale = parts.size() == 5 ? parts[4] : "linear";
  if (scale == "log") return Axis::logarithmic(parts[0], lo, hi, count);
  if (scale != "linear") throw ConfigError("axis '" + text + "': scale must be linear or log");
  return Axis::linear(parts[0], lo, hi, count);
}

FreeParameter parse_free(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw ConfigError("free parameter '" + text + "': expected name:lower:upper");
  try {
    return {text.substr(0, a), std::stod(text.substr(a + 1, b - a - 1)), std::stod(text.substr(b + 1))};
  } catch (const std::exception&) {
    throw ConfigError("free parameter '" + text + "': bounds must be numbers");
  }
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(',', start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

void write_table(const SweepSpec& spec, const SweepTable& table, const Json& summary, const std::string& out,
                 const std::string& format) {
  const auto path = resolve_output_path(out, spec.id + (format == "json" ? ".json" : ".csv"));
  if (format == "json") {
    Json j = summary;
    Json rows = Json::array();
    for (const SweepRow& r : table.rows) {
      rows.push_back({{"coordinates", r.coordinates},
                      {"stable", r.stable},
                      {"margin", r.margin},
                      {"V_s", r.min_symplectic ? Json(*r.min_symplectic) : Json()},
                      {"E_N", r.negativity ? Json(*r.negativity) : Json()}});
    }
    j["table"] = rows;
    write_atomic(path, j.dump(2) + "\n");
  } else {
    write_atomic(path, sweep_csv(spec, table));
    write_atomic(summary_path_for(path), summary.dump(2) + "\n");
  }
  std::cout << spec.id << ": " << table.rows.size() << " rows, " << table.stable_count() << " stable";
  for (const auto& w : table.warnings) std::cout << " (warning: " << w << ")";
  std::cout << " -> " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mechanical entanglement in a doubly resonant optomechanical cavity with an intracavity "
               "parametric amplifier and squeezed-vacuum input."};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // compute
  ParamOptions compute_params;
  bool lenient = false;
  std::string compute_out;
  auto* compute = app.add_subcommand("compute", "Full pipeline at one parameter point (JSON)");
  compute_params.attach(compute);
  compute->add_flag("--lenient", lenient, "Report unstable points instead of refusing them");
  compute->add_option("--out,-o", compute_out, "Write JSON here instead of stdout");

  // sweep
  ParamOptions sweep_params;
  std::string preset, columns, sweep_out, sweep_format = "csv";
  std::vector<std::string> axes;
  unsigned jobs = 1;
  bool sweep_strict = false;
  auto* sweep = app.add_subcommand("sweep", "Grid sweep over one or two parameters");
  sweep_params.attach(sweep);
  sweep->add_option("--preset", preset, "Figure preset fig2..fig7 (axes and fixed values)");
  sweep->add_option("--axis", axes, "name:min:max:count[:linear|log]; give one or two");
  sweep->add_option("--columns", columns, "Comma-separated result columns");
  sweep->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out,-o", sweep_out, "Output file (default $MECHENT_OUTPUT_DIR/<id>.csv)");
  sweep->add_option("--format", sweep_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_flag("--strict", sweep_strict, "Exit 1 if any grid point is unstable");

  // figure
  std::string figure_id, figure_out;
  int points = 101;
  unsigned figure_jobs = 1;
  auto* figure = app.add_subcommand("figure", "Reproduce a figure preset with its signature checks");
  figure->add_option("id", figure_id, "fig2..fig7")->required();
  figure->add_option("--points", points, "Resolution of the continuous axes")->check(CLI::Range(2, 100000));
  figure->add_option("--jobs,-j", figure_jobs, "Worker threads")->check(CLI::PositiveNumber);
  figure->add_option("--out,-o", figure_out, "CSV path (summary JSON is written beside it)");

  // optimize
  ParamOptions opt_params;
  std::vector<std::string> free;
  std::string handling = "reject", opt_out, trace_out;
  OptimizeSpec ospec;
  auto* optimize = app.add_subcommand("optimize", "Maximize E_N over a box (multistart Nelder-Mead)");
  opt_params.attach(optimize);
  optimize->add_option("--free", free, "name:lower:upper, repeatable")->required();
  optimize->add_option("--handling", handling, "Unstable points: reject or penalty")
      ->check(CLI::IsMember({"reject", "penalty"}));
  optimize->add_option("--tol", ospec.tolerance, "Simplex diameter tolerance (box-normalized)")->capture_default_str();
  optimize->add_option("--max-iter", ospec.max_iterations, "Iteration cap per start")->capture_default_str();
  optimize->add_option("--multistart", ospec.multistart, "Number of local searches")->capture_default_str();
  optimize->add_option("--pregrid", ospec.pregrid_points, "Pre-grid points per dimension")->capture_default_str();
  optimize->add_option("--seed", ospec.seed, "Seed for re-sampling")->capture_default_str();
  optimize->add_option("--penalty", ospec.penalty, "Objective assigned to unstable points (penalty mode)")->capture_default_str();
  optimize->add_option("--out,-o", opt_out, "Write JSON here instead of stdout");
  optimize->add_option("--trace", trace_out, "Write the evaluation trace as CSV");

  // stability
  ParamOptions stab_params;
  std::string stab_out;
  auto* stability = app.add_subcommand("stability", "Routh-Hurwitz and eigenvalue stability report");
  stab_params.attach(stability);
  stability->add_option("--out,-o", stab_out, "Write JSON here instead of stdout");

  // validate
  ParamOptions val_params;
  double g_over_kappa = 0.02, gain_over_kappa = 0.26, val_tol = 0.02;
  std::string val_out;
  auto* validate = app.add_subcommand("validate", "Compare the eliminated model with the full 8x8 model");
  val_params.attach(validate);
  validate->add_option("--g-over-kappa", g_over_kappa, "Optomechanical coupling G/kappa (<= 0.1)")->capture_default_str();
  validate->add_option("--gain-over-kappa", gain_over_kappa, "Parametric gain Lambda/kappa")->capture_default_str();
  validate->add_option("--tol", val_tol, "Relative tolerance")->capture_default_str();
  validate->add_option("--out,-o", val_out, "Write JSON here instead of stdout");

  // dumps
  ParamOptions dm_params, dc_params;
  std::string dm_out, dc_out, solver = "generic";
  auto* dump_m = app.add_subcommand("dump-matrices", "Drift and diffusion matrices (reduced and full)");
  dm_params.attach(dump_m);
  dump_m->add_option("--out,-o", dm_out, "Write JSON here instead of stdout");
  auto* dump_c = app.add_subcommand("dump-covariance", "Steady-state mechanical covariance");
  dc_params.attach(dump_c);
  dump_c->add_option("--solver", solver, "generic, cramer or closed-form")
      ->check(CLI::IsMember({"generic", "cramer", "closed-form"}));
  dump_c->add_option("--out,-o", dc_out, "Write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*compute) {
      const Json j = compute_report(compute_params.resolve(compute), !lenient);
      emit_json(j, compute_out, j["stable"].get<bool>() ? "compute: stable" : "compute: unstable");
    } else if (*sweep) {
      SweepSpec spec;
      if (!preset.empty()) {
        if (!axes.empty()) throw ConfigError("--preset and --axis are mutually exclusive");
        if (!sweep_params.config.empty()) throw ConfigError("--preset fixes its own parameters; drop --config");
        spec = figure_preset(parse_figure_id(preset)).sweep;
        for (const auto& o : sweep_params.overrides) apply_override(spec.base, o);
      } else {
        if (axes.empty()) throw ConfigError("sweep needs --preset or at least one --axis");
        spec.base = sweep_params.resolve(sweep);
        for (const auto& a : axes) spec.axes.push_back(parse_axis(a));
      }
      if (!columns.empty()) spec.columns = split_csv(columns);
      spec.jobs = jobs;
      const SweepTable table = run_sweep(spec);
      write_table(spec, table, sweep_summary(spec, table), sweep_out, sweep_format);
      if (sweep_strict && table.stable_count() != table.rows.size()) return kExitRefused;
    } else if (*figure) {
      const FigureReport rep = reproduce_figure(parse_figure_id(figure_id), figure_jobs, points);
      const auto path = resolve_output_path(figure_out, figure_id + ".csv");
      write_atomic(path, sweep_csv(rep.preset.sweep, rep.table));
      write_atomic(summary_path_for(path), figure_summary(rep).dump(2) + "\n");
      for (const auto& c : rep.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
      }
      std::cout << figure_id << ": " << rep.table.rows.size() << " rows, "
                << (rep.all_passed() ? "all signatures hold" : "signature check failed") << " -> "
                << path.string() << "\n";
    } else if (*optimize) {
      ospec.base = opt_params.resolve(optimize);
      ospec.handling = parse_infeasible_handling(handling);
      for (const auto& f : free) ospec.free.push_back(parse_free(f));
      const OptimizeResult r = maximize_negativity(ospec);
      if (!trace_out.empty()) write_atomic(trace_out, trace_csv(r));
      char line[128];
      std::snprintf(line, sizeof line, "optimize: E_N* = %.6g after %zu evaluations", r.negativity,
                    r.trace.size());
      emit_json(optimize_report(ospec, r), opt_out, line);
    } else if (*stability) {
      const Json j = stability_report(stab_params.resolve(stability));
      emit_json(j, stab_out, j["stable"].get<bool>() ? "stability: stable" : "stability: unstable");
    } else if (*validate) {
      BaseParams p = val_params.resolve(validate);
      if (!std::holds_alternative<ReducedParams>(p)) {
        throw ConfigError("validate works on reduced parameters (use --mode reduced)");
      }
      set_parameter(p, "gain_over_kappa", gain_over_kappa);
      set_parameter(p, "coupling_over_kappa", g_over_kappa);
      const EliminationReport r = validate_elimination(resolve_inputs(p), val_tol);
      Json j = elimination_report(r);
      j["params"] = params_to_json(p);
      emit_json(j, val_out, r.passed ? "validate: pass" : "validate: fail");
    } else if (*dump_m) {
      emit_json(matrices_report(dm_params.resolve(dump_m)), dm_out, "dump-matrices");
    } else if (*dump_c) {
      emit_json(covariance_report(dc_params.resolve(dump_c), solver), dc_out, "dump-covariance");
    }
  } catch (const ConfigError& e) {
    std::cerr << "mechent: invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "mechent: invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnstableError& e) {
    std::cerr << "mechent: refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "mechent: " << e.what() << "\n";
    return kExitRefused;
  }
  return kExitOk;
}
