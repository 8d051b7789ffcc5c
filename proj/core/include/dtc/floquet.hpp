#pragma once

// Stroboscopic evolution under U_F(n) = (U2 U1)^n with U1 = exp(-i H1 t1) dense
// and U2 = exp(-i H2 t2) diagonal.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dtc/basis.hpp"
#include "dtc/model.hpp"
#include "dtc/observables.hpp"

namespace dtc {

struct StateVector {
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }

  /// |g...g>.
  static StateVector ground(const Basis& basis);
  /// Product state from a string of 'g'/'r' (or '0'/'1'), atom 0 first.
  static StateVector from_bitstring(const Basis& basis, std::string_view bits);
};

/// U_F = W diag(exp(i phi)) W^dagger.
struct SpectralForm {
  Eigen::VectorXd eigenphases;
  Eigen::MatrixXcd eigenbasis;
  double reconstruction_error = 0.0;
};

struct FloquetPropagator {
  ModelParams params;
  Basis basis = Basis::full(1);
  Eigen::MatrixXcd u1;
  Eigen::VectorXcd u2_phases;
  Eigen::VectorXd population_diagonal;
  std::optional<SpectralForm> spectral;
  /// Set when the spectral form was requested but failed its checks.
  std::optional<std::string> spectral_warning;

  Eigen::Index dim() const { return u2_phases.size(); }
  /// Dense U2 U1 (for checks; evolution never forms it).
  Eigen::MatrixXcd cycle_matrix() const;
};

struct CompileOptions {
  BasisKind basis = BasisKind::Full;
  bool spectral = false;
  /// Full basis on a ring: diagonalize each lattice-momentum sector separately
  /// (about L^2 times cheaper) and assemble the same dense U1 and spectral form.
  bool momentum_sectors = true;
  Limits limits;
};

FloquetPropagator compile_cycle(const ModelParams& params, const CompileOptions& options = {});

enum class EvolveMode { Iterate, Spectral };

std::string to_string(EvolveMode mode);
EvolveMode parse_mode(std::string_view text);

struct EvolveOptions {
  EvolveMode mode = EvolveMode::Iterate;
  /// Stop at the first Q(n) = +1; the trajectory then ends at that n.
  bool stop_at_first_flip = false;
  bool record_norm = false;
  long long max_cycles = Limits{}.max_cycles;
};

/// Iterate aborts with ErrorKind::Numeric when |norm - 1| exceeds this.
inline constexpr double kNormDriftAbort = 1e-6;

Trajectory evolve(const FloquetPropagator& propagator, const StateVector& psi0, long long n_f,
                  const EvolveOptions& options = {});

/// U_F(n) psi0; uses the spectral form when present, otherwise iterates.
StateVector stroboscopic_state(const FloquetPropagator& propagator, const StateVector& psi0,
                               long long n);

}  // namespace dtc
