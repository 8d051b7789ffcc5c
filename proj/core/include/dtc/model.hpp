#pragma once

// Parameters, basis and stage Hamiltonians of the driven Rydberg ring.
//
// Units: hbar = 1, every frequency is angular in rad/us and every time in us.
// The drive amplitude is never stored; it is derived as
//   Omega = pi / (2 t1) + epsilon,
// so that Omega * t1 = pi/2 + epsilon * t1 (a perfect flip per cycle at epsilon = 0).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "dtc/basis.hpp"

namespace dtc {

enum class Variant { Original, Improved, Simplified };
enum class Boundary { Ring, Open };
enum class Stage { One, Two };

std::string to_string(Variant v);
std::string to_string(Boundary b);
Variant parse_variant(std::string_view text);
Boundary parse_boundary(std::string_view text);

/// Size caps. Dense work beyond these is refused rather than attempted.
struct Limits {
  int max_pure_atoms = 16;
  int max_dissipative_atoms = 7;
  long long max_cycles = 10'000'000;
};

struct ModelParams {
  Variant variant = Variant::Original;
  int atoms = 8;
  double epsilon = 0.0;  // Rabi perturbation
  double delta = 0.0;  // detuning
  double interaction = 0.0;  // nearest-neighbour van der Waals coupling V
  double t1 = 1.0;
  double t2 = 10.0;
  Boundary boundary = Boundary::Ring;
  std::optional<double> gamma;  // Rydberg decay rate, dissipative runs only

  double rabi() const;
  /// sqrt(Omega^2 + Delta^2)
  double effective_rabi() const;
  double period() const { return t1 + t2; }

  /// Throws Error(InvalidArgument) on the first violated invariant.
  void validate() const;
};

/// Number of interacting bonds; an L = 2 ring has a single bond.
int bond_count(int atoms, Boundary boundary);

struct StageHamiltonian {
  Stage stage = Stage::One;
  Eigen::MatrixXd dense;  // stage One
  Eigen::VectorXd diagonal;  // stage Two

  Eigen::Index dim() const;
  Eigen::MatrixXd matrix() const;
};

StageHamiltonian build_hamiltonian(const ModelParams& params, Stage stage, const Basis& basis,
                                   const Limits& limits = {});
StageHamiltonian build_hamiltonian(const ModelParams& params, Stage stage,
                                   const Limits& limits = {});

/// Diagonal of (1/L) sum_j (N^r_j - N^g_j): entry i is (2 popcount(i) - L) / L.
Eigen::VectorXd population_difference_diagonal(const Basis& basis);

/// V = C6 / R^6.
double vdw_coupling(double c6, double distance);

}  // namespace dtc
