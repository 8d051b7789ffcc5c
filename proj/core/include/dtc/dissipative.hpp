#pragma once

// Lindblad dynamics with Rydberg decay (jump operators sqrt(Gamma) sigma^-_j).
//
// Density matrices are vectorized row-major: rho_ij -> index i * dim + j, i.e.
// |i> x |j>. Under this map vec(A rho B) = (A x B^T) vec(rho), so
//   L = -i (H x 1 - 1 x H^T)
//       + Gamma sum_j [ s_j x s_j - (n_j x 1 + 1 x n_j) / 2 ],
// with s_j = |g><r| on atom j and n_j = N^r_j (both real).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dtc/floquet.hpp"
#include "dtc/model.hpp"
#include "dtc/observables.hpp"

namespace dtc {

struct DensityState {
  int atoms = 1;
  Eigen::VectorXcd rho_vec;

  static DensityState ground(int atoms);
  static DensityState from_pure(const StateVector& psi, int atoms);

  Eigen::Index dim() const { return Eigen::Index{1} << atoms; }
  Eigen::MatrixXcd matrix() const;
  std::complex<double> trace() const;
  /// max |rho - rho^dagger|
  double hermiticity_error() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
};

Eigen::MatrixXcd build_liouvillian(const ModelParams& params, Stage stage, const Limits& limits = {});

enum class SuperMethod {
  Auto,  // eigendecomposition, falling back to Pade when it is not trustworthy
  Eigen,
  Pade,
};

/// exp(L t_stage) for one stage of the drive.
struct StagePropagatorSuper {
  Stage stage = Stage::One;
  Eigen::MatrixXcd propagator;
  SuperMethod method = SuperMethod::Pade;  // the method actually used
  /// Present when the eigendecomposition route was attempted.
  std::optional<Eigen::VectorXcd> eigenvalues;
  double residual = 0.0;  // max |L - S diag S^-1|
  double condition = 0.0;  // estimate of cond(S)
  std::string note;
};

/// Eigendecomposition is accepted only below these.
inline constexpr double kSuperResidualLimit = 1e-8;
inline constexpr double kSuperConditionLimit = 1e8;

StagePropagatorSuper compile_stage(const ModelParams& params, Stage stage,
                                   SuperMethod method = SuperMethod::Auto, const Limits& limits = {});

struct DissipativeOptions {
  SuperMethod method = SuperMethod::Auto;
  bool check_positivity = true;
  Limits limits;
};

struct DissipativeResult {
  Trajectory trajectory;
  double max_trace_drift = 0.0;  // max_n |Tr rho(n) - 1|
  double max_cycle_trace_change = 0.0;  // max_n |Tr rho(n) - Tr rho(n-1)|
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  SuperMethod stage_one_method = SuperMethod::Pade;
  SuperMethod stage_two_method = SuperMethod::Pade;
};

inline constexpr double kTraceDriftAbort = 1e-6;
inline constexpr double kNegativityWarn = 1e-6;

DissipativeResult evolve_density(const ModelParams& params, const DensityState& rho0, long long n_f,
                                 const DissipativeOptions& options = {});

struct FitWindow {
  long long start = 10;
  std::optional<long long> end;  // inclusive; defaults to the last cycle
};

struct FitReport {
  double alpha = 0.0;
  double intercept = 0.0;  // log |P| at n = 0 on the fitted line
  long long start = 0;
  long long end = 0;
  double residual = 0.0;  // rms of the log residuals
  std::size_t points = 0;
};

inline constexpr std::size_t kMinFitPoints = 5;
inline constexpr double kEnvelopeFloor = 1e-12;

/// Least-squares fit of log|P| ~ c - alpha n on the upper envelope of |P| inside the window.
///
/// The envelope keeps the larger |P| of each consecutive cycle pair (start, start + 1), ...,
/// which removes the even/odd modulation of the staggered response.
FitReport fit_decay(std::span<const double> p, const FitWindow& window = {});

std::string to_string(SuperMethod method);

}  // namespace dtc
