#pragma once

// Parameter sweeps over independent grid points.
//
// Every point compiles its own propagator and runs single-threaded; results are written
// into a slot keyed by the point's grid index, so output never depends on scheduling.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtc/basis.hpp"
#include "dtc/floquet.hpp"
#include "dtc/model.hpp"

namespace dtc {

struct Axis {
  std::string name;  // delta, epsilon, v, t2, L
  std::vector<double> grid;
};

/// Sets a named parameter; L must be integral.
void set_parameter(ModelParams& params, const std::string& name, double value);
double get_parameter(const ModelParams& params, const std::string& name);

inline constexpr long long kDefaultBudget = 20'000;

struct SweepSpec {
  ModelParams base;
  Axis axis1;
  std::optional<Axis> axis2;
  long long budget = kDefaultBudget;
  int threads = 0;  // 0: all hardware threads
  EvolveMode mode = EvolveMode::Iterate;
  BasisKind basis = BasisKind::Full;
  bool symmetry_audit = false;
  bool record_wall_time = true;

  void validate() const;
};

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepSpec& spec);

struct PointResult {
  ModelParams params;
  long long n_c = 0;
  bool censored = false;
  double wall_time = 0.0;  // seconds; 0 when timing is disabled
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

struct RunOptions {
  long long budget = kDefaultBudget;
  int threads = 0;
  EvolveMode mode = EvolveMode::Iterate;
  BasisKind basis = BasisKind::Full;
  bool record_wall_time = true;
};

RunOptions run_options(const SweepSpec& spec);

/// Worker count actually used for `requested` (0 = hardware concurrency).
int resolve_threads(int requested);

/// Runs fn(i) for i in [0, count) on `threads` workers. Exceptions propagate after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// n_c of each parameter set, measured from |g...g> up to the budget.
std::vector<PointResult> run_points(const std::vector<ModelParams>& points, const RunOptions& options);

struct DetuningScan {
  std::vector<PointResult> points;
  std::vector<PointResult> mirrored;  // (-Delta, -V), filled when the audit is on
  std::vector<std::size_t> violations;  // indices with n_c != mirrored n_c
};

DetuningScan scan_detuning(const SweepSpec& spec);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

struct ScalingResult {
  std::vector<PointResult> points;
  std::optional<LinearFit> fit;  // log n_c against L, non-censored points only
};

inline constexpr std::size_t kMinScalingPoints = 3;

ScalingResult scaling_nc_vs_L(const SweepSpec& spec);

/// Ordinary least squares y = intercept + slope x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

enum class PhaseClass { Growing, Flat, Shrinking };

std::string to_string(PhaseClass c);
char symbol(PhaseClass c);

struct PhaseCell {
  int atoms = 0;
  double epsilon = 0.0;
  long long delta_n_c = 0;
  PhaseClass phase = PhaseClass::Flat;
  bool censored = false;  // either n_c(L) or n_c(L - 1) hit the budget
};

struct PhaseDiagram {
  std::vector<int> atoms;  // L grid
  std::vector<double> epsilon;
  std::vector<PointResult> points;  // n_c, row-major over (L, epsilon)
  std::vector<PhaseCell> cells;  // L > min(L), row-major over (L, epsilon)
  /// Per epsilon: first L with delta n_c <= 0, if any.
  std::vector<std::optional<int>> critical_size;
};

PhaseClass classify(long long delta_n_c);

/// Axes: L (axis1) and epsilon (axis2).
PhaseDiagram phase_diagram(const SweepSpec& spec);

struct SymmetryEntry {
  ModelParams params;
  double max_p_difference = 0.0;
  long long n_c = 0;
  long long mirrored_n_c = 0;
  bool violation = false;
};

struct SymmetryReport {
  std::vector<SymmetryEntry> entries;
  std::size_t violations = 0;
  long long cycles = 0;
};

inline constexpr double kSymmetryTolerance = 1e-10;

/// Compares full P series of (Delta, V) and (-Delta, -V) over n_f cycles.
SymmetryReport symmetry_audit(const std::vector<ModelParams>& points, long long n_f, int threads = 0,
                              BasisKind basis = BasisKind::Full);

}  // namespace dtc
