// Python bindings. Parameter sets travel as JSON documents in the config-file
// schema; matrices as numpy arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "mechent/constants.hpp"
#include "mechent/core_model.hpp"
#include "mechent/covariance.hpp"
#include "mechent/entanglement.hpp"
#include "mechent/errors.hpp"
#include "mechent/figures.hpp"
#include "mechent/full_model.hpp"
#include "mechent/io.hpp"
#include "mechent/optimize.hpp"
#include "mechent/sweep.hpp"

namespace py = pybind11;
using namespace mechent;

namespace {

BaseParams params_from(const std::string& config, const std::vector<std::string>& overrides) {
  BaseParams p = config.empty() ? BaseParams(ReducedParams::figure_baseline()) : parse_params(Json::parse(config));
  for (const auto& o : overrides) apply_override(p, o);
  return p;
}

py::dict sweep_dict(const SweepTable& t) {
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  const auto k = static_cast<Eigen::Index>(t.axis_names.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Eigen::MatrixXd coords(n, k);
  Eigen::VectorXd margin(n), vs(n), en(n), nu(n), residual(n);
  std::vector<bool> stable(t.rows.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const SweepRow& r = t.rows[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < k; ++j) coords(i, j) = r.coordinates[static_cast<std::size_t>(j)];
    stable[static_cast<std::size_t>(i)] = r.stable;
    margin(i) = r.margin;
    vs(i) = r.min_symplectic.value_or(nan);
    en(i) = r.negativity.value_or(nan);
    nu(i) = r.physical_symplectic.value_or(nan);
    residual(i) = r.residual.value_or(nan);
  }
  py::dict d;
  d["axes"] = t.axis_names;
  d["coordinates"] = coords;
  d["stable"] = stable;
  d["margin"] = margin;
  d["V_s"] = vs;
  d["E_N"] = en;
  d["nu_min"] = nu;
  d["residual"] = residual;
  d["warnings"] = t.warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steady-state mechanical entanglement: effective model, stability, covariance, negativity.";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "MechentError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<UnstableError>(m, "UnstableError", base.ptr());
  py::register_exception<SingularError>(m, "SingularError", base.ptr());
  py::register_exception<PhysicalityError>(m, "PhysicalityError", base.ptr());
  py::register_exception<NoFeasibleRegionError>(m, "NoFeasibleRegionError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def(
      "resolve_params",
      [](const std::string& config, const std::vector<std::string>& overrides) {
        return params_to_json(params_from(config, overrides)).dump();
      },
      py::arg("config") = "", py::arg("overrides") = std::vector<std::string>{},
      "Fully resolved parameter set (rad/s) as JSON.");

  m.def(
      "compute",
      [](const std::string& config, const std::vector<std::string>& overrides, bool strict) {
        const BaseParams p = params_from(config, overrides);
        py::gil_scoped_release release;
        return compute_report(p, strict).dump();
      },
      py::arg("config") = "", py::arg("overrides") = std::vector<std::string>{}, py::arg("strict") = true,
      "Single-point pipeline report as JSON.");

  m.def(
      "sweep",
      [](const std::string& config, const std::vector<std::string>& overrides,
         const std::vector<std::tuple<std::string, double, double, int, std::string>>& axes, unsigned jobs) {
        SweepSpec spec;
        spec.base = params_from(config, overrides);
        for (const auto& [name, lo, hi, count, scale] : axes) {
          if (scale == "log") {
            spec.axes.push_back(Axis::logarithmic(name, lo, hi, count));
          } else if (scale == "linear") {
            spec.axes.push_back(Axis::linear(name, lo, hi, count));
          } else {
            throw ConfigError("axis '" + name + "': scale must be linear or log");
          }
        }
        spec.jobs = jobs;
        SweepTable t;
        {
          py::gil_scoped_release release;
          t = run_sweep(spec);
        }
        return sweep_dict(t);
      },
      py::arg("config"), py::arg("overrides"), py::arg("axes"), py::arg("jobs") = 1,
      "Grid sweep; axes are (name, min, max, count, 'linear'|'log').");

  m.def(
      "figure",
      [](const std::string& id, int points, unsigned jobs) {
        FigureReport rep;
        {
          py::gil_scoped_release release;
          rep = reproduce_figure(parse_figure_id(id), jobs, points);
        }
        py::dict d = sweep_dict(rep.table);
        d["summary"] = figure_summary(rep).dump();
        return d;
      },
      py::arg("id"), py::arg("points") = 101, py::arg("jobs") = 1,
      "Figure preset table plus a JSON summary with its signature checks.");

  m.def(
      "optimize",
      [](const std::string& config, const std::vector<std::string>& overrides,
         const std::vector<std::tuple<std::string, double, double>>& free, const std::string& handling,
         std::uint64_t seed, double tolerance) {
        OptimizeSpec spec;
        spec.base = params_from(config, overrides);
        for (const auto& [name, lo, hi] : free) spec.free.push_back({name, lo, hi});
        spec.handling = parse_infeasible_handling(handling);
        spec.seed = seed;
        spec.tolerance = tolerance;
        py::gil_scoped_release release;
        return optimize_report(spec, maximize_negativity(spec)).dump();
      },
      py::arg("config"), py::arg("overrides"), py::arg("free"), py::arg("handling") = "reject",
      py::arg("seed") = OptimizeSpec{}.seed, py::arg("tolerance") = OptimizeSpec{}.tolerance,
      "Maximize E_N over a box; report as JSON.");

  m.def(
      "validate",
      [](const std::string& config, const std::vector<std::string>& overrides, double tolerance) {
        const BaseParams p = params_from(config, overrides);
        py::gil_scoped_release release;
        return elimination_report(validate_elimination(resolve_inputs(p), tolerance)).dump();
      },
      py::arg("config"), py::arg("overrides"), py::arg("tolerance") = 0.02,
      "Eliminated model vs the full cavity + mirror model, as JSON.");

  m.def("thermal_occupancy", &thermal_occupancy, py::arg("mechanical_frequency"), py::arg("temperature"));
  m.def(
      "solve_lyapunov", [](const MatX& drift, const MatX& diffusion) { return solve_lyapunov(drift, diffusion); },
      py::arg("drift"), py::arg("diffusion"), "Solves B R + R B^T = -F.");
  m.def(
      "log_negativity",
      [](const Mat4& r) {
        const EntanglementResult e = log_negativity(r);
        return std::make_tuple(e.negativity, e.min_symplectic);
      },
      py::arg("covariance"), "(E_N, V_s) of a two-mode covariance in (Q1, P1, Q2, P2).");
}
