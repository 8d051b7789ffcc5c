#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dtc/dissipative.hpp"
#include "dtc/error.hpp"
#include "dtc/floquet.hpp"
#include "dtc/io/config.hpp"
#include "dtc/io/csv.hpp"
#include "dtc/io/manifest.hpp"
#include "dtc/io/svg.hpp"
#include "dtc/observables.hpp"
#include "dtc/oracle.hpp"
#include "dtc/sweep.hpp"
#include "dtc/units.hpp"

namespace dtc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using io::RunManifest;

// Model parameters as typed on the command line. Frequencies stay strings until the
// kHz rule is known.
struct ParamFlags {
  std::string variant;
  std::string boundary;
  int atoms = 0;
  std::string epsilon;
  std::string delta;
  std::string interaction;
  double t1 = 0.0;
  double t2 = 0.0;
  std::string gamma;

  CLI::Option* o_variant = nullptr;
  CLI::Option* o_boundary = nullptr;
  CLI::Option* o_atoms = nullptr;
  CLI::Option* o_epsilon = nullptr;
  CLI::Option* o_delta = nullptr;
  CLI::Option* o_interaction = nullptr;
  CLI::Option* o_t1 = nullptr;
  CLI::Option* o_t2 = nullptr;
  CLI::Option* o_gamma = nullptr;
};

struct Common {
  std::string config;
  std::string output_dir = ".";
  int threads = 0;
  std::string prefix;
  bool no_svg = false;
  std::string khz_rule = "one-to-one";

  CLI::Option* o_output_dir = nullptr;
  CLI::Option* o_threads = nullptr;
  CLI::Option* o_khz_rule = nullptr;
};

void add_params(CLI::App* app, ParamFlags& f, bool atoms_flag = true, bool with_gamma = false) {
  f.o_variant = app->add_option("--variant", f.variant, "original | improved | simplified");
  f.o_boundary = app->add_option("--boundary", f.boundary, "ring | open");
  if (atoms_flag) f.o_atoms = app->add_option("-L,--atoms", f.atoms, "number of atoms");
  f.o_epsilon = app->add_option("--eps,--epsilon", f.epsilon, "Rabi perturbation (rad_us, MHz)");
  f.o_delta = app->add_option("--delta", f.delta, "detuning (rad_us, MHz)");
  f.o_interaction = app->add_option("--v", f.interaction, "nearest-neighbour interaction (rad_us, MHz)");
  f.o_t1 = app->add_option("--t1", f.t1, "first-stage duration (us)");
  f.o_t2 = app->add_option("--t2", f.t2, "second-stage duration (us)");
  if (with_gamma) f.o_gamma = app->add_option("--gamma", f.gamma, "decay rate with unit: 10kHz, 0.01MHz, 0.01rad_us");
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON config; command-line flags win");
  c.o_output_dir = app->add_option("-o,--output-dir", c.output_dir, "output directory")->envname("DTC_OUTPUT_DIR");
  c.o_threads = app->add_option("--threads", c.threads, "worker threads (0: all cores)")->envname("DTC_THREADS");
  app->add_option("--prefix", c.prefix, "output file stem");
  app->add_flag("--no-svg", c.no_svg, "skip SVG figures");
  c.o_khz_rule = app->add_option("--khz-rule", c.khz_rule, "kHz conversion: one-to-one | two-pi");
}

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

json load_config(const Common& c) {
  if (c.config.empty()) return json::object();
  json j = read_json_file(c.config);
  if (!j.is_object()) fail(ErrorKind::InvalidArgument, "config must be a JSON object");
  return j;
}

// Config value for `key` unless the flag was given on the command line.
template <class T>
void overlay(const json& cfg, const char* key, const CLI::Option* flag, T& target) {
  if (given(flag) || !cfg.contains(key)) return;
  try {
    target = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("config key '") + key + "': " + e.what());
  }
}

FrequencyParse frequency_rules(const Common& c, const json& cfg) {
  std::string rule = c.khz_rule;
  overlay(cfg, "khz_rule", c.o_khz_rule, rule);
  FrequencyParse rules;
  rules.kilohertz = parse_kilohertz_rule(rule);
  return rules;
}

ModelParams resolve_params(const ParamFlags& f, const json& cfg, const FrequencyParse& rules) {
  ModelParams p;
  if (cfg.contains("params")) merge_params(p, cfg.at("params"), rules);
  if (given(f.o_variant)) p.variant = parse_variant(f.variant);
  if (given(f.o_boundary)) p.boundary = parse_boundary(f.boundary);
  if (given(f.o_atoms)) p.atoms = f.atoms;
  if (given(f.o_epsilon)) p.epsilon = parse_frequency(f.epsilon, rules);
  if (given(f.o_delta)) p.delta = parse_frequency(f.delta, rules);
  if (given(f.o_interaction)) p.interaction = parse_frequency(f.interaction, rules);
  if (given(f.o_t1)) p.t1 = f.t1;
  if (given(f.o_t2)) p.t2 = f.t2;
  if (given(f.o_gamma)) {
    FrequencyParse strict = rules;
    strict.require_suffix = true;
    p.gamma = parse_frequency(f.gamma, strict);
  }
  p.validate();
  return p;
}

// Collects outputs of one command and seals them with a manifest.
class Run {
 public:
  Run(std::string command, Common& common, const json& cfg, std::ostream& out)
      : common_(common), out_(out) {
    overlay(cfg, "output_dir", common.o_output_dir, common.output_dir);
    overlay(cfg, "threads", common.o_threads, common.threads);
    if (common.threads < 0) fail(ErrorKind::InvalidArgument, "threads must be >= 0");
    prefix_ = common.prefix.empty() ? command : common.prefix;
    manifest_.command = std::move(command);
    manifest_.version = DTC_VERSION;
    manifest_.started = io::utc_timestamp();
    std::error_code ec;
    fs::create_directories(common.output_dir, ec);
    if (ec) fail(ErrorKind::Io, "cannot create " + common.output_dir + ": " + ec.message());
  }

  const std::string& prefix() const { return prefix_; }
  RunManifest& manifest() { return manifest_; }
  bool svg() const { return !common_.no_svg; }

  void emit(const std::string& name, const std::string& content) {
    io::write_file((fs::path(common_.output_dir) / name).string(), content);
    files_.push_back(name);
    out_ << "wrote " << (fs::path(common_.output_dir) / name).string() << '\n';
  }

  void emit_json(const std::string& name, const json& j) { emit(name, j.dump(2) + "\n"); }

  void finish() {
    manifest_.finished = io::utc_timestamp();
    io::write_manifest(manifest_, common_.output_dir, files_, prefix_ + ".manifest.json");
  }

 private:
  Common& common_;
  std::ostream& out_;
  std::string prefix_;
  RunManifest manifest_;
  std::vector<std::string> files_;
};

template <class F>
std::string render(F&& write) {
  std::ostringstream os;
  write(os);
  return os.str();
}

json point_summary(const Trajectory& t) {
  return {{"n_f", t.n_f},
          {"n_c", t.critical.n_c},
          {"censored", t.critical.censored},
          {"max_norm_drift", t.max_norm_drift},
          {"warnings", t.warnings}};
}

// --- simulate / spectrum ------------------------------------------------------------------

struct SimulateFlags {
  ParamFlags params;
  Common common;
  long long n_f = 200;
  std::string mode = "iterate";
  std::string basis = "full";
  std::string psi0;
  bool norm = false;
  CLI::Option* o_nf = nullptr;
  CLI::Option* o_mode = nullptr;
  CLI::Option* o_basis = nullptr;
  CLI::Option* o_psi0 = nullptr;

  // spectrum only
  std::size_t grid = 0;
  std::size_t peaks = 3;
  std::string input;
};

void add_simulate_flags(CLI::App* app, SimulateFlags& f) {
  add_params(app, f.params);
  add_common(app, f.common);
  f.o_nf = app->add_option("--nf", f.n_f, "Floquet cycles");
  f.o_mode = app->add_option("--mode", f.mode, "iterate | spectral");
  f.o_basis = app->add_option("--basis", f.basis, "full | translation (ring, symmetric initial state)");
  f.o_psi0 = app->add_option("--psi0", f.psi0, "initial product state as g/r string, atom 0 first");
  app->add_flag("--norm", f.norm, "add a state-norm column");
}

Trajectory simulate_trajectory(SimulateFlags& f, const json& cfg, ModelParams& params) {
  const FrequencyParse rules = frequency_rules(f.common, cfg);
  params = resolve_params(f.params, cfg, rules);
  overlay(cfg, "nf", f.o_nf, f.n_f);
  overlay(cfg, "mode", f.o_mode, f.mode);
  overlay(cfg, "basis", f.o_basis, f.basis);
  overlay(cfg, "psi0", f.o_psi0, f.psi0);

  CompileOptions compile;
  compile.basis = parse_basis_kind(f.basis);
  EvolveOptions evolve_options;
  evolve_options.mode = parse_mode(f.mode);
  evolve_options.record_norm = f.norm;
  compile.spectral = evolve_options.mode == EvolveMode::Spectral;
  const FloquetPropagator prop = compile_cycle(params, compile);
  const StateVector psi0 =
      f.psi0.empty() ? StateVector::ground(prop.basis) : StateVector::from_bitstring(prop.basis, f.psi0);
  return evolve(prop, psi0, f.n_f, evolve_options);
}

std::string describe(const ModelParams& p) {
  std::ostringstream os;
  os << to_string(p.variant) << " L=" << p.atoms << " eps=" << p.epsilon << " delta=" << p.delta
     << " V=" << p.interaction << " T2=" << p.t2;
  return os.str();
}

int cmd_simulate(SimulateFlags& f, std::ostream& out) {
  const json cfg = load_config(f.common);
  ModelParams params;
  const Trajectory t = simulate_trajectory(f, cfg, params);
  Run run("simulate", f.common, cfg, out);
  run.manifest().params = to_json(params);
  run.manifest().params["nf"] = f.n_f;
  run.manifest().params["mode"] = f.mode;
  run.emit(run.prefix() + ".csv", render([&](std::ostream& os) { io::write_trajectory(os, t, f.norm); }));
  if (run.svg()) run.emit(run.prefix() + ".svg", io::trajectory_svg(t, describe(params)));
  run.emit_json(run.prefix() + ".json", point_summary(t));
  run.finish();
  out << "n_c = " << t.critical.n_c << (t.critical.censored ? " (censored)" : "") << '\n';
  for (const auto& w : t.warnings) out << "warning: " << w << '\n';
  return kOk;
}

int cmd_spectrum(SimulateFlags& f, std::ostream& out) {
  const json cfg = load_config(f.common);
  Trajectory t;
  ModelParams params;
  if (!f.input.empty()) {
    std::ifstream in(f.input);
    if (!in) fail(ErrorKind::Io, "cannot open " + f.input);
    t = io::read_trajectory(in);
    params = t.params;
  } else {
    t = simulate_trajectory(f, cfg, params);
  }
  const Spectrum s = fourier_spectrum(t, f.grid == 0 ? std::nullopt : std::optional<std::size_t>(f.grid));
  const std::vector<std::size_t> peaks = top_peaks(s, f.peaks);

  Run run("spectrum", f.common, cfg, out);
  run.manifest().params = to_json(params);
  run.emit(run.prefix() + ".csv", render([&](std::ostream& os) { io::write_spectrum(os, s); }));
  if (run.svg()) run.emit(run.prefix() + ".svg", io::spectrum_svg(s, peaks, describe(params)));
  json jp = json::array();
  for (std::size_t k : peaks) jp.push_back({{"nu", s.nu[k]}, {"abs", s.magnitude[k]}});
  run.emit_json(run.prefix() + ".json", {{"peaks", jp}, {"n_f", t.n_f}});
  run.finish();
  for (std::size_t k : peaks) out << "peak nu=" << s.nu[k] << " |S|=" << s.magnitude[k] << '\n';
  return kOk;
}

// --- scan / phase-diagram -----------------------------------------------------------------

struct SweepFlags {
  ParamFlags params;
  Common common;
  std::string spec;
  std::string axis = "delta";
  std::string grid;
  std::string eps_grid;
  std::string l_grid;
  long long budget = kDefaultBudget;
  std::string mode = "iterate";
  std::string basis = "full";
  bool symmetry = false;
  bool deterministic = false;
  CLI::Option* o_axis = nullptr;
  CLI::Option* o_grid = nullptr;
  CLI::Option* o_budget = nullptr;
  CLI::Option* o_mode = nullptr;
  CLI::Option* o_basis = nullptr;
  CLI::Option* o_eps_grid = nullptr;
  CLI::Option* o_l_grid = nullptr;
};

void add_sweep_flags(CLI::App* app, SweepFlags& f) {
  add_common(app, f.common);
  f.o_budget = app->add_option("--budget", f.budget, "cycle budget per point (n_c is censored beyond it)");
  f.o_mode = app->add_option("--mode", f.mode, "iterate | spectral");
  f.o_basis = app->add_option("--basis", f.basis, "full | translation");
  app->add_flag("--deterministic", f.deterministic, "write wall_time as 0 so outputs are byte-stable");
}

SweepSpec sweep_base(SweepFlags& f, const json& cfg) {
  SweepSpec spec;
  if (!f.spec.empty()) spec = sweep_spec_from_json(read_json_file(f.spec));
  const FrequencyParse rules = frequency_rules(f.common, cfg);
  json merged = cfg;
  if (!f.spec.empty()) merged["params"] = to_json(spec.base);
  spec.base = resolve_params(f.params, merged, rules);
  overlay(cfg, "budget", f.o_budget, f.budget);
  overlay(cfg, "mode", f.o_mode, f.mode);
  overlay(cfg, "basis", f.o_basis, f.basis);
  if (f.spec.empty() || given(f.o_budget)) spec.budget = f.budget;
  if (f.spec.empty() || given(f.o_mode)) spec.mode = parse_mode(f.mode);
  if (f.spec.empty() || given(f.o_basis)) spec.basis = parse_basis_kind(f.basis);
  spec.threads = f.common.threads;
  overlay(cfg, "threads", f.common.o_threads, spec.threads);
  if (f.deterministic) spec.record_wall_time = false;
  return spec;
}

std::vector<double> grid_value(const std::vector<PointResult>& points, const std::string& axis) {
  std::vector<double> x;
  for (const auto& p : points) x.push_back(get_parameter(p.params, axis));
  return x;
}

io::CurveSeries series(const std::string& label, const std::vector<PointResult>& points, const std::string& axis) {
  io::CurveSeries s{label, grid_value(points, axis), {}, {}};
  for (const auto& p : points) {
    s.y.push_back(static_cast<double>(p.n_c));
    s.censored.push_back(p.censored);
  }
  return s;
}

int cmd_scan(SweepFlags& f, std::ostream& out) {
  const json cfg = load_config(f.common);
  SweepSpec spec = sweep_base(f, cfg);
  overlay(cfg, "axis", f.o_axis, f.axis);
  overlay(cfg, "grid", f.o_grid, f.grid);
  if (!f.grid.empty() || f.spec.empty()) {
    if (f.grid.empty()) fail(ErrorKind::InvalidArgument, "scan needs --grid or --spec");
    spec.axis1 = Axis{f.axis, parse_grid(f.grid)};
  }
  if (f.symmetry) spec.symmetry_audit = true;
  spec.validate();

  json summary = {{"axis", spec.axis1.name}, {"budget", spec.budget}};
  std::vector<PointResult> points;
  std::vector<io::CurveSeries> curves;
  bool log_y = false;
  if (spec.axis1.name == "delta") {
    const DetuningScan scan = scan_detuning(spec);
    points = scan.points;
    curves.push_back(series("n_c", scan.points, "delta"));
    if (spec.symmetry_audit) {
      summary["symmetry_violations"] = scan.violations.size();
      out << "symmetry audit: " << scan.violations.size() << " violations\n";
    }
  } else if (spec.axis1.name == "L") {
    const ScalingResult scaling = scaling_nc_vs_L(spec);
    points = scaling.points;
    curves.push_back(series("n_c", scaling.points, "L"));
    log_y = true;
    if (scaling.fit) {
      summary["fit"] = {{"slope", scaling.fit->slope}, {"intercept", scaling.fit->intercept},
                        {"points", scaling.fit->points}};
      out << "log n_c slope = " << scaling.fit->slope << " over " << scaling.fit->points << " points\n";
    } else {
      summary["fit"] = nullptr;
      out << "fewer than " << kMinScalingPoints << " uncensored points; no fit\n";
    }
  } else {
    points = run_points([&] {
      std::vector<ModelParams> grid;
      for (double v : spec.axis1.grid) {
        ModelParams p = spec.base;
        set_parameter(p, spec.axis1.name, v);
        grid.push_back(p);
      }
      return grid;
    }(), run_options(spec));
    curves.push_back(series("n_c", points, spec.axis1.name));
  }

  std::size_t errors = 0;
  std::size_t censored = 0;
  for (const auto& p : points) {
    errors += !p.ok();
    censored += p.censored;
  }
  summary["errors"] = errors;
  summary["censored"] = censored;

  Run run("scan", f.common, cfg, out);
  run.manifest().params = to_json(spec);
  run.emit(run.prefix() + ".csv", render([&](std::ostream& os) { io::write_points(os, points); }));
  if (run.svg()) {
    run.emit(run.prefix() + ".svg", io::curve_svg(curves, spec.axis1.name, "n_c", describe(spec.base), log_y));
  }
  run.emit_json(run.prefix() + ".json", summary);
  run.finish();
  out << points.size() << " points, " << censored << " censored, " << errors << " failed\n";
  return kOk;
}

int cmd_phase(SweepFlags& f, std::ostream& out) {
  const json cfg = load_config(f.common);
  SweepSpec spec = sweep_base(f, cfg);
  overlay(cfg, "eps_grid", f.o_eps_grid, f.eps_grid);
  overlay(cfg, "L", f.o_l_grid, f.l_grid);
  if (f.spec.empty() || !f.l_grid.empty()) {
    if (f.l_grid.empty()) fail(ErrorKind::InvalidArgument, "phase-diagram needs --L");
    std::vector<double> ls;
    for (int l : parse_int_grid(f.l_grid)) ls.push_back(l);
    spec.axis1 = Axis{"L", ls};
  }
  if (f.spec.empty() || !f.eps_grid.empty()) {
    if (f.eps_grid.empty()) fail(ErrorKind::InvalidArgument, "phase-diagram needs --eps-grid");
    spec.axis2 = Axis{"epsilon", parse_grid(f.eps_grid)};
  }
  spec.validate();
  const PhaseDiagram d = phase_diagram(spec);

  json critical = json::array();
  for (std::size_t i = 0; i < d.epsilon.size(); ++i) {
    critical.push_back({{"epsilon", d.epsilon[i]},
                        {"L_c", d.critical_size[i] ? json(*d.critical_size[i]) : json(nullptr)}});
  }
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& c : d.cells) ++counts[static_cast<int>(c.phase)];

  Run run("phase-diagram", f.common, cfg, out);
  run.manifest().params = to_json(spec);
  run.emit(run.prefix() + ".csv", render([&](std::ostream& os) { io::write_phase(os, d.cells); }));
  run.emit(run.prefix() + "-points.csv", render([&](std::ostream& os) { io::write_points(os, d.points); }));
  if (run.svg()) run.emit(run.prefix() + ".svg", io::phase_svg(d, describe(spec.base)));
  run.emit_json(run.prefix() + ".json", {{"critical_size", critical},
                                        {"growing", counts[0]},
                                        {"flat", counts[1]},
                                        {"shrinking", counts[2]}});
  run.finish();
  out << d.cells.size() << " cells: " << counts[0] << " growing, " << counts[1] << " flat, " << counts[2]
      << " shrinking\n";
  return kOk;
}

// --- dissipative --------------------------------------------------------------------------

struct DissipativeFlags {
  ParamFlags params;
  Common common;
  long long n_f = 100;
  long long fit_start = 10;
  long long fit_end = -1;
  std::string rho0;
  std::string method = "auto";
  CLI::Option* o_nf = nullptr;
  CLI::Option* o_fit_start = nullptr;
  CLI::Option* o_fit_end = nullptr;
  CLI::Option* o_rho0 = nullptr;
  CLI::Option* o_method = nullptr;
};

SuperMethod parse_method(const std::string& s) {
  if (s == "auto") return SuperMethod::Auto;
  if (s == "eigen") return SuperMethod::Eigen;
  if (s == "pade") return SuperMethod::Pade;
  fail(ErrorKind::InvalidArgument, "unknown method '" + s + "' (auto | eigen | pade)");
}

int cmd_dissipative(DissipativeFlags& f, std::ostream& out) {
  const json cfg = load_config(f.common);
  const FrequencyParse rules = frequency_rules(f.common, cfg);
  ModelParams params = resolve_params(f.params, cfg, rules);
  if (!params.gamma) fail(ErrorKind::InvalidArgument, "dissipative runs need --gamma with a unit suffix");
  overlay(cfg, "nf", f.o_nf, f.n_f);
  overlay(cfg, "fit_start", f.o_fit_start, f.fit_start);
  overlay(cfg, "fit_end", f.o_fit_end, f.fit_end);
  overlay(cfg, "rho0", f.o_rho0, f.rho0);
  overlay(cfg, "method", f.o_method, f.method);

  DissipativeOptions options;
  options.method = parse_method(f.method);
  const DensityState rho0 =
      f.rho0.empty() ? DensityState::ground(params.atoms)
                     : DensityState::from_pure(StateVector::from_bitstring(Basis::full(params.atoms), f.rho0),
                                               params.atoms);
  const DissipativeResult result = evolve_density(params, rho0, f.n_f, options);
  const Trajectory& t = result.trajectory;

  Run run("dissipative", f.common, cfg, out);
  run.manifest().params = to_json(params);
  run.manifest().params["nf"] = f.n_f;
  run.emit(run.prefix() + ".csv", render([&](std::ostream& os) { io::write_trajectory(os, t); }));
  FitWindow window{f.fit_start, f.fit_end < 0 ? std::nullopt : std::optional<long long>(f.fit_end)};
  json report = {{"max_trace_drift", result.max_trace_drift},
                 {"max_hermiticity_error", result.max_hermiticity_error},
                 {"min_eigenvalue", result.min_eigenvalue},
                 {"stage_methods", {to_string(result.stage_one_method), to_string(result.stage_two_method)}},
                 {"warnings", t.warnings}};
  int code = kOk;
  try {
    const FitReport fit = fit_decay(t.p, window);
    report["alpha"] = fit.alpha;
    report["window"] = {fit.start, fit.end};
    report["residual"] = fit.residual;
    report["points"] = fit.points;
    if (run.svg()) run.emit(run.prefix() + ".svg", io::decay_svg(t, fit, describe(params)));
    out << "alpha = " << fit.alpha << " over [" << fit.start << ", " << fit.end << "]\n";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoSignal) throw;
    report["alpha"] = nullptr;
    report["error"] = e.what();
    if (run.svg()) run.emit(run.prefix() + ".svg", io::trajectory_svg(t, describe(params)));
    out << e.what() << '\n';
    code = kNumericError;
  }
  run.emit_json(run.prefix() + "-fit.json", report);
  run.finish();
  return code;
}

// --- oracle-check / verify ----------------------------------------------------------------

struct OracleFlags {
  Common common;
  int draws = 100;
  std::uint64_t seed = 7;
  double tolerance = 1e-8;
};

int cmd_oracle(OracleFlags& f, std::ostream& out) {
  const json cfg = load_config(f.common);
  oracle::CheckOptions options{f.draws, f.seed, f.tolerance};
  const oracle::CheckReport report = oracle::run_check(options);

  io::CsvTable table;
  table.header = {"epsilon", "delta", "v", "t2", "ed_l2_n2", "cf_l2_n2", "ed_l2_n3", "cf_l2_n3", "ed_l3_n2",
                  "cf_l3_n2", "max_error"};
  for (const auto& d : report.draws) {
    table.rows.push_back({io::format_double(d.epsilon), io::format_double(d.delta), io::format_double(d.interaction),
                          io::format_double(d.t2), io::format_double(d.ed_l2_n2), io::format_double(d.cf_l2_n2),
                          io::format_double(d.ed_l2_n3), io::format_double(d.cf_l2_n3), io::format_double(d.ed_l3_n2),
                          io::format_double(d.cf_l3_n2), io::format_double(d.max_error())});
  }
  Run run("oracle-check", f.common, cfg, out);
  run.manifest().params = {{"draws", f.draws}, {"tolerance", f.tolerance}};
  run.manifest().seed = f.seed;
  run.emit(run.prefix() + ".csv", render([&](std::ostream& os) { io::write_csv(os, table); }));
  run.emit_json(run.prefix() + ".json", {{"matched", report.matched},
                                        {"draws", report.draws.size()},
                                        {"tolerance", f.tolerance},
                                        {"l2_n2", {{"matched", report.matched_l2_n2}, {"worst", report.worst_l2_n2}}},
                                        {"l2_n3", {{"matched", report.matched_l2_n3}, {"worst", report.worst_l2_n3}}},
                                        {"l3_n2", {{"matched", report.matched_l3_n2}, {"worst", report.worst_l3_n2}}}});
  run.finish();
  out << report.summary() << '\n';
  return report.all_matched() ? kOk : kCheckFailed;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Numeric:
    case ErrorKind::NoSignal:
      return kNumericError;
    case ErrorKind::InvalidArgument:
    case ErrorKind::CapacityExceeded:
    case ErrorKind::Io:
      return kConfigError;
  }
  return kConfigError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Driven Rydberg-ring time-crystal simulator", "dtc"};
  app.set_version_flag("--version", DTC_VERSION);
  app.require_subcommand(1);

  SimulateFlags simulate;
  auto* c_sim = app.add_subcommand("simulate", "stroboscopic P(n), Q(n) trajectory");
  add_simulate_flags(c_sim, simulate);

  SimulateFlags spectrum;
  auto* c_spec = app.add_subcommand("spectrum", "Fourier spectrum of P(n)");
  add_simulate_flags(c_spec, spectrum);
  c_spec->add_option("--grid", spectrum.grid, "frequency bins (default n_f)");
  c_spec->add_option("--peaks", spectrum.peaks, "peaks to annotate");
  c_spec->add_option("--input", spectrum.input, "existing trajectory CSV instead of a new run");

  SweepFlags scan;
  auto* c_scan = app.add_subcommand("scan", "n_c along one parameter axis (delta, L, epsilon, v, t2)");
  add_params(c_scan, scan.params);
  add_sweep_flags(c_scan, scan);
  c_scan->add_option("--spec", scan.spec, "sweep spec JSON");
  scan.o_axis = c_scan->add_option("--axis", scan.axis, "parameter to sweep");
  scan.o_grid = c_scan->add_option("--grid", scan.grid, "a:b:step, a:b or comma list");
  c_scan->add_flag("--symmetry-audit", scan.symmetry, "replay the grid at (-delta, -V)");

  SweepFlags phase;
  auto* c_phase = app.add_subcommand("phase-diagram", "sign of n_c(L) - n_c(L-1) over (L, epsilon)");
  add_params(c_phase, phase.params, false);
  add_sweep_flags(c_phase, phase);
  c_phase->add_option("--spec", phase.spec, "sweep spec JSON");
  phase.o_eps_grid = c_phase->add_option("--eps-grid", phase.eps_grid, "epsilon grid");
  phase.o_l_grid = c_phase->add_option("-L,--L", phase.l_grid, "chain sizes, e.g. 2:10");

  DissipativeFlags diss;
  auto* c_diss = app.add_subcommand("dissipative", "Lindblad run with Rydberg decay and envelope fit");
  add_params(c_diss, diss.params, true, true);
  add_common(c_diss, diss.common);
  diss.o_nf = c_diss->add_option("--nf", diss.n_f, "Floquet cycles");
  diss.o_fit_start = c_diss->add_option("--fit-start", diss.fit_start, "first cycle of the fit window");
  diss.o_fit_end = c_diss->add_option("--fit-end", diss.fit_end, "last cycle of the fit window (default n_f)");
  diss.o_rho0 = c_diss->add_option("--rho0", diss.rho0, "initial product state (g/r string)");
  diss.o_method = c_diss->add_option("--method", diss.method, "auto | eigen | pade");

  OracleFlags orc;
  auto* c_orc = app.add_subcommand("oracle-check", "few-atom closed forms against exact diagonalization");
  add_common(c_orc, orc.common);
  c_orc->add_option("--draws", orc.draws, "random parameter draws");
  c_orc->add_option("--seed", orc.seed, "random seed");
  c_orc->add_option("--tolerance", orc.tolerance, "agreement threshold");

  std::string manifest_path;
  auto* c_verify = app.add_subcommand("verify", "check output digests against a manifest");
  c_verify->add_option("manifest", manifest_path, "manifest JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*c_sim) return cmd_simulate(simulate, out);
    if (*c_spec) return cmd_spectrum(spectrum, out);
    if (*c_scan) return cmd_scan(scan, out);
    if (*c_phase) return cmd_phase(phase, out);
    if (*c_diss) return cmd_dissipative(diss, out);
    if (*c_orc) return cmd_oracle(orc, out);
    if (*c_verify) {
      const io::Verification v = io::verify_manifest(manifest_path);
      for (const auto& p : v.problems) out << p << '\n';
      out << (v.ok ? "manifest ok" : "manifest verification failed") << '\n';
      return v.ok ? kOk : kCheckFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  }
  return kConfigError;
}

}  // namespace dtc::cli
