#include "dtc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "dtc/error.hpp"
#include "dtc/io/config.hpp"
#include "dtc/units.hpp"

namespace dtc {

using nlohmann::json;

void set_parameter(ModelParams& params, const std::string& name, double value) {
  if (name == "delta") {
    params.delta = value;
  } else if (name == "epsilon") {
    params.epsilon = value;
  } else if (name == "v") {
    params.interaction = value;
  } else if (name == "t2") {
    params.t2 = value;
  } else if (name == "t1") {
    params.t1 = value;
  } else if (name == "gamma") {
    params.gamma = value;
  } else if (name == "L") {
    if (value != std::round(value)) fail(ErrorKind::InvalidArgument, "L must be an integer");
    params.atoms = static_cast<int>(value);
  } else {
    fail(ErrorKind::InvalidArgument, "unknown sweep parameter '" + name + "'");
  }
}

double get_parameter(const ModelParams& params, const std::string& name) {
  if (name == "delta") return params.delta;
  if (name == "epsilon") return params.epsilon;
  if (name == "v") return params.interaction;
  if (name == "t2") return params.t2;
  if (name == "t1") return params.t1;
  if (name == "gamma") return params.gamma.value_or(0.0);
  if (name == "L") return params.atoms;
  fail(ErrorKind::InvalidArgument, "unknown sweep parameter '" + name + "'");
}

void SweepSpec::validate() const {
  base.validate();
  auto check_axis = [](const Axis& axis) {
    ModelParams probe;
    if (axis.grid.empty()) fail(ErrorKind::InvalidArgument, "axis '" + axis.name + "' has an empty grid");
    for (double v : axis.grid) {
      if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "axis '" + axis.name + "' has a non-finite value");
      set_parameter(probe, axis.name, v);
    }
  };
  check_axis(axis1);
  if (axis2) check_axis(*axis2);
  if (budget < 1) fail(ErrorKind::InvalidArgument, "budget must be >= 1");
  if (threads < 0) fail(ErrorKind::InvalidArgument, "threads must be >= 0");
}

namespace {

Axis axis_from_json(const json& j) {
  Axis axis;
  axis.name = j.at("name").get<std::string>();
  const json& grid = j.at("grid");
  if (grid.is_string()) {
    axis.grid = parse_grid(grid.get<std::string>());
  } else {
    axis.grid = grid.get<std::vector<double>>();
  }
  return axis;
}

json axis_to_json(const Axis& axis) { return {{"name", axis.name}, {"grid", axis.grid}}; }

}  // namespace

SweepSpec sweep_spec_from_json(const json& j) {
  static const std::set<std::string> known = {"params", "axis1", "axis2", "budget", "threads",
                                              "mode", "basis", "symmetry_audit", "record_wall_time"};
  SweepSpec spec;
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) fail(ErrorKind::InvalidArgument, "unknown sweep key '" + key + "'");
    }
    if (j.contains("params")) merge_params(spec.base, j.at("params"));
    spec.axis1 = axis_from_json(j.at("axis1"));
    if (j.contains("axis2") && !j.at("axis2").is_null()) spec.axis2 = axis_from_json(j.at("axis2"));
    spec.budget = j.value("budget", spec.budget);
    spec.threads = j.value("threads", spec.threads);
    if (j.contains("mode")) spec.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("basis")) spec.basis = parse_basis_kind(j.at("basis").get<std::string>());
    spec.symmetry_audit = j.value("symmetry_audit", spec.symmetry_audit);
    spec.record_wall_time = j.value("record_wall_time", spec.record_wall_time);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("sweep spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

json to_json(const SweepSpec& spec) {
  json j = {
      {"params", to_json(spec.base)},
      {"axis1", axis_to_json(spec.axis1)},
      {"budget", spec.budget},
      {"threads", spec.threads},
      {"mode", to_string(spec.mode)},
      {"basis", to_string(spec.basis)},
      {"symmetry_audit", spec.symmetry_audit},
      {"record_wall_time", spec.record_wall_time},
  };
  if (spec.axis2) j["axis2"] = axis_to_json(*spec.axis2);
  return j;
}

RunOptions run_options(const SweepSpec& spec) {
  RunOptions options;
  options.budget = spec.budget;
  options.threads = spec.threads;
  options.mode = spec.mode;
  options.basis = spec.basis;
  options.record_wall_time = spec.record_wall_time;
  return options;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            const std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

PointResult measure(const ModelParams& params, const RunOptions& options) {
  PointResult result;
  result.params = params;
  const auto start = std::chrono::steady_clock::now();
  try {
    CompileOptions compile;
    compile.basis = options.basis;
    compile.spectral = options.mode == EvolveMode::Spectral;
    const FloquetPropagator prop = compile_cycle(params, compile);
    EvolveOptions evolve_options;
    evolve_options.mode = options.mode;
    evolve_options.stop_at_first_flip = true;
    evolve_options.max_cycles = std::max(options.budget, evolve_options.max_cycles);
    const Trajectory t = evolve(prop, StateVector::ground(prop.basis), options.budget, evolve_options);
    result.n_c = t.critical.n_c;
    result.censored = t.critical.censored;
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  if (options.record_wall_time) {
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

}  // namespace

std::vector<PointResult> run_points(const std::vector<ModelParams>& points, const RunOptions& options) {
  std::vector<PointResult> results(points.size());
  parallel_for(points.size(), options.threads, [&](std::size_t i) { results[i] = measure(points[i], options); });
  return results;
}

namespace {

ModelParams mirror(ModelParams params) {
  params.delta = -params.delta;
  params.interaction = -params.interaction;
  return params;
}

std::vector<ModelParams> expand(const ModelParams& base, const Axis& axis) {
  std::vector<ModelParams> out;
  out.reserve(axis.grid.size());
  for (double v : axis.grid) {
    ModelParams p = base;
    set_parameter(p, axis.name, v);
    out.push_back(p);
  }
  return out;
}

}  // namespace

DetuningScan scan_detuning(const SweepSpec& spec) {
  spec.validate();
  if (spec.axis1.name != "delta") fail(ErrorKind::InvalidArgument, "a detuning scan needs axis1 = delta");
  const RunOptions options = run_options(spec);
  const std::vector<ModelParams> grid = expand(spec.base, spec.axis1);

  DetuningScan scan;
  if (!spec.symmetry_audit) {
    scan.points = run_points(grid, options);
    return scan;
  }
  std::vector<ModelParams> all = grid;
  for (const auto& p : grid) all.push_back(mirror(p));
  std::vector<PointResult> results = run_points(all, options);
  scan.points.assign(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(grid.size()));
  scan.mirrored.assign(results.begin() + static_cast<std::ptrdiff_t>(grid.size()), results.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& a = scan.points[i];
    const auto& b = scan.mirrored[i];
    if (a.ok() != b.ok() || a.n_c != b.n_c || a.censored != b.censored) scan.violations.push_back(i);
  }
  return scan;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorKind::InvalidArgument, "line fit needs >= 2 points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) fail(ErrorKind::InvalidArgument, "line fit needs distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = x.size();
  return fit;
}

ScalingResult scaling_nc_vs_L(const SweepSpec& spec) {
  spec.validate();
  if (spec.axis1.name != "L") fail(ErrorKind::InvalidArgument, "a scaling run needs axis1 = L");
  ScalingResult result;
  result.points = run_points(expand(spec.base, spec.axis1), run_options(spec));
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& p : result.points) {
    if (!p.ok() || p.censored || p.n_c <= 0) continue;
    x.push_back(p.params.atoms);
    y.push_back(std::log(static_cast<double>(p.n_c)));
  }
  if (x.size() >= kMinScalingPoints) result.fit = fit_line(x, y);
  return result;
}

std::string to_string(PhaseClass c) {
  switch (c) {
    case PhaseClass::Growing: return "growing";
    case PhaseClass::Flat: return "flat";
    case PhaseClass::Shrinking: return "shrinking";
  }
  return "?";
}

char symbol(PhaseClass c) {
  switch (c) {
    case PhaseClass::Growing: return '+';
    case PhaseClass::Flat: return '0';
    case PhaseClass::Shrinking: return '-';
  }
  return '?';
}

PhaseClass classify(long long delta_n_c) {
  if (delta_n_c > 0) return PhaseClass::Growing;
  if (delta_n_c < 0) return PhaseClass::Shrinking;
  return PhaseClass::Flat;
}

PhaseDiagram phase_diagram(const SweepSpec& spec) {
  spec.validate();
  if (!spec.axis2) fail(ErrorKind::InvalidArgument, "a phase diagram needs two axes (L, epsilon)");
  const Axis* l_axis = &spec.axis1;
  const Axis* e_axis = &*spec.axis2;
  if (l_axis->name == "epsilon") std::swap(l_axis, e_axis);
  if (l_axis->name != "L" || e_axis->name != "epsilon") {
    fail(ErrorKind::InvalidArgument, "phase diagram axes must be L and epsilon");
  }

  PhaseDiagram d;
  for (double v : l_axis->grid) d.atoms.push_back(static_cast<int>(v));
  std::sort(d.atoms.begin(), d.atoms.end());
  d.atoms.erase(std::unique(d.atoms.begin(), d.atoms.end()), d.atoms.end());
  d.epsilon = e_axis->grid;

  std::vector<ModelParams> grid;
  for (int atoms : d.atoms) {
    for (double eps : d.epsilon) {
      ModelParams p = spec.base;
      p.atoms = atoms;
      p.epsilon = eps;
      grid.push_back(p);
    }
  }
  d.points = run_points(grid, run_options(spec));

  const std::size_t ne = d.epsilon.size();
  d.critical_size.assign(ne, std::nullopt);
  for (std::size_t li = 1; li < d.atoms.size(); ++li) {
    for (std::size_t ei = 0; ei < ne; ++ei) {
      const PointResult& now = d.points[li * ne + ei];
      const PointResult& before = d.points[(li - 1) * ne + ei];
      PhaseCell cell;
      cell.atoms = d.atoms[li];
      cell.epsilon = d.epsilon[ei];
      cell.delta_n_c = now.n_c - before.n_c;
      cell.phase = classify(cell.delta_n_c);
      cell.censored = now.censored || before.censored || !now.ok() || !before.ok();
      if (cell.delta_n_c <= 0 && !d.critical_size[ei]) d.critical_size[ei] = cell.atoms;
      d.cells.push_back(cell);
    }
  }
  return d;
}

SymmetryReport symmetry_audit(const std::vector<ModelParams>& points, long long n_f, int threads,
                              BasisKind basis) {
  if (n_f < 1) fail(ErrorKind::InvalidArgument, "n_f must be >= 1");
  SymmetryReport report;
  report.cycles = n_f;
  report.entries.resize(points.size());
  std::vector<Trajectory> runs(points.size() * 2);
  parallel_for(runs.size(), threads, [&](std::size_t k) {
    const ModelParams params = k % 2 == 0 ? points[k / 2] : mirror(points[k / 2]);
    CompileOptions compile;
    compile.basis = basis;
    const FloquetPropagator prop = compile_cycle(params, compile);
    runs[k] = evolve(prop, StateVector::ground(prop.basis), n_f);
  });
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Trajectory& a = runs[2 * i];
    const Trajectory& b = runs[2 * i + 1];
    SymmetryEntry& e = report.entries[i];
    e.params = points[i];
    for (std::size_t n = 0; n < a.p.size(); ++n) {
      e.max_p_difference = std::max(e.max_p_difference, std::abs(a.p[n] - b.p[n]));
    }
    e.n_c = a.critical.n_c;
    e.mirrored_n_c = b.critical.n_c;
    e.violation = e.max_p_difference > kSymmetryTolerance || e.n_c != e.mirrored_n_c ||
                  a.critical.censored != b.critical.censored;
    report.violations += e.violation;
  }
  return report;
}

}  // namespace dtc
