#include "mechent/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "mechent/errors.hpp"

namespace mechent {
namespace {

constexpr int kMaxResamples = 200;
constexpr double kInitialStep = 0.1;  // initial simplex edge, normalized units

bool non_negative_parameter(std::string_view name) {
  return name != "theta" && name != "phi";
}

struct Vertex {
  std::vector<double> u;  // box-normalized coordinates in [0, 1]
  double f = 0.0;         // objective, minimized
  bool feasible = false;
};

class Objective {
 public:
  Objective(const OptimizeSpec& spec, OptimizeResult& out) : spec_(spec), out_(out) {}

  std::vector<double> to_physical(const std::vector<double>& u) const {
    std::vector<double> x(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto& p = spec_.free[i];
      x[i] = std::clamp(p.lower + u[i] * (p.upper - p.lower), p.lower, p.upper);
    }
    return x;
  }

  Vertex evaluate(std::vector<double> u, int start, int iteration) {
    for (double& v : u) v = std::clamp(v, 0.0, 1.0);
    const std::vector<double> x = to_physical(u);
    BaseParams base = spec_.base;
    for (std::size_t i = 0; i < x.size(); ++i) set_parameter(base, spec_.free[i].name, x[i]);
    const PointEvaluation ev = evaluate_point(resolve_inputs(base));

    TraceEntry t{start, iteration, x, ev.entanglement.has_value(), 0.0};
    Vertex v{std::move(u), 0.0, t.feasible};
    if (t.feasible) {
      t.negativity = ev.entanglement->negativity;
      v.f = -t.negativity;
      if (t.negativity > best_) {
        best_ = t.negativity;
        out_.best_history.push_back(best_);
      }
    } else {
      v.f = spec_.handling == InfeasibleHandling::kPenalty ? spec_.penalty
                                                           : std::numeric_limits<double>::infinity();
    }
    out_.trace.push_back(std::move(t));
    return v;
  }

 private:
  const OptimizeSpec& spec_;
  OptimizeResult& out_;
  double best_ = -std::numeric_limits<double>::infinity();
};

double diameter(const std::vector<Vertex>& s) {
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < s[i].u.size(); ++k) acc = std::max(acc, std::abs(s[i].u[k] - s[j].u[k]));
      d = std::max(d, acc);
    }
  }
  return d;
}

std::vector<double> lerp(const std::vector<double>& a, const std::vector<double>& b, double t) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

std::vector<std::vector<double>> pregrid(std::size_t dims, int per_dim_requested) {
  int per_dim = per_dim_requested;
  if (dims > 2) {
    per_dim = std::max(2, static_cast<int>(std::pow(9261.0, 1.0 / static_cast<double>(dims))));
    per_dim = std::min(per_dim, per_dim_requested);
  }
  std::size_t total = 1;
  for (std::size_t d = 0; d < dims; ++d) total *= static_cast<std::size_t>(per_dim);
  std::vector<std::vector<double>> pts;
  pts.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<double> u(dims);
    std::size_t rem = k;
    for (std::size_t d = dims; d-- > 0;) {
      u[d] = static_cast<double>(rem % per_dim) / (per_dim - 1);
      rem /= per_dim;
    }
    pts.push_back(std::move(u));
  }
  return pts;
}

// One bounded Nelder-Mead run. Returns iterations used; sets `converged`.
int nelder_mead(Objective& obj, const OptimizeSpec& spec, Vertex start, int start_index,
                std::mt19937_64& rng, Vertex& best, bool& converged) {
  const std::size_t n = start.u.size();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Vertex> s{start};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> u = start.u;
    u[i] += u[i] + kInitialStep <= 1.0 ? kInitialStep : -kInitialStep;
    Vertex v = obj.evaluate(u, start_index, 0);
    for (int tries = 0; !v.feasible && spec.handling == InfeasibleHandling::kReject && tries < kMaxResamples;
         ++tries) {
      std::vector<double> r(n);
      for (double& x : r) x = unit(rng);
      v = obj.evaluate(r, start_index, 0);
    }
    s.push_back(std::move(v));
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  int it = 0;
  converged = false;
  while (true) {
    std::stable_sort(s.begin(), s.end(), by_value);
    if (diameter(s) < spec.tolerance) {
      converged = true;
      break;
    }
    if (it >= spec.max_iterations) break;
    ++it;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += s[i].u[k] / static_cast<double>(n);
    }
    Vertex& worst = s.back();
    Vertex r = obj.evaluate(lerp(centroid, worst.u, -1.0), start_index, it);
    if (r.f < s.front().f) {
      Vertex e = obj.evaluate(lerp(centroid, worst.u, -2.0), start_index, it);
      worst = e.f < r.f ? std::move(e) : std::move(r);
      continue;
    }
    if (r.f < s[n - 1].f) {
      worst = std::move(r);
      continue;
    }
    const bool outside = r.f < worst.f;
    Vertex c = obj.evaluate(lerp(centroid, outside ? r.u : worst.u, 0.5), start_index, it);
    if (c.f < (outside ? r.f : worst.f)) {
      worst = std::move(c);
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) s[i] = obj.evaluate(lerp(s[0].u, s[i].u, 0.5), start_index, it);
  }
  std::stable_sort(s.begin(), s.end(), by_value);
  best = s.front();
  return it;
}

}  // namespace

std::string_view to_string(InfeasibleHandling h) {
  return h == InfeasibleHandling::kReject ? "reject" : "penalty";
}

InfeasibleHandling parse_infeasible_handling(std::string_view text) {
  if (text == "reject") return InfeasibleHandling::kReject;
  if (text == "penalty") return InfeasibleHandling::kPenalty;
  throw ConfigError("stability handling must be 'reject' or 'penalty', got '" + std::string(text) + "'");
}

void OptimizeSpec::validate() const {
  if (free.empty()) throw ConfigError("optimization needs at least one free parameter");
  const auto names = parameter_names(base);
  for (std::size_t i = 0; i < free.size(); ++i) {
    const FreeParameter& p = free[i];
    if (std::find(names.begin(), names.end(), p.name) == names.end()) {
      throw ConfigError("unknown free parameter '" + p.name + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (free[j].name == p.name) throw ConfigError("free parameter '" + p.name + "' listed twice");
    }
    if (!std::isfinite(p.lower) || !std::isfinite(p.upper) || !(p.lower < p.upper)) {
      throw ConfigError("free parameter '" + p.name + "' needs finite lower < upper");
    }
    if (non_negative_parameter(p.name) && p.lower < 0.0) {
      throw ConfigError("free parameter '" + p.name + "' cannot go below 0");
    }
    if (p.name == "gain_over_kappa" && !(p.upper < 0.5)) {
      throw ConfigError("gain_over_kappa upper bound must stay strictly below the threshold 0.5");
    }
  }
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (multistart < 1) throw ConfigError("multistart must be >= 1");
  if (pregrid_points < 2) throw ConfigError("pregrid_points must be >= 2");
  if (!std::isfinite(penalty)) throw ConfigError("penalty must be finite");
}

OptimizeResult maximize_negativity(const OptimizeSpec& spec) {
  spec.validate();
  OptimizeResult out;
  for (const auto& p : spec.free) out.names.push_back(p.name);
  Objective obj(spec, out);

  std::vector<Vertex> grid;
  for (auto& u : pregrid(spec.free.size(), spec.pregrid_points)) grid.push_back(obj.evaluate(u, -1, 0));
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].feasible) order.push_back(i);
  }
  if (order.empty()) {
    throw NoFeasibleRegionError("no stable point found on the optimization pre-grid");
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grid[a].f < grid[b].f; });
  out.pregrid_best = -grid[order.front()].f;

  std::mt19937_64 rng(spec.seed);
  Vertex best = grid[order.front()];
  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(spec.multistart), order.size());
  out.converged = true;
  for (std::size_t k = 0; k < starts; ++k) {
    Vertex local;
    bool conv = false;
    out.iterations += nelder_mead(obj, spec, grid[order[k]], static_cast<int>(k), rng, local, conv);
    out.converged = out.converged && conv;
    if (local.feasible && local.f < best.f) best = local;
  }
  out.argmax = obj.to_physical(best.u);
  out.negativity = -best.f;
  return out;
}

}  // namespace mechent
