#pragma once

// Few-atom closed forms for the simplified model (no V during the first stage),
// transcribed from their printed factored form. They are deliberately not re-derived:
// disagreement with exact diagonalization is reported, never patched over.
//
// Notation: X^2 stands for X+ X- (real), so X = sqrt(X+ X-).

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dtc/model.hpp"

namespace dtc::oracle {

struct Factors {
  std::complex<double> x_plus;
  std::complex<double> x_minus;
  double x = 0.0;
  double y = 0.0;
  double omega_e = 0.0;  // sqrt(Omega^2 + Delta^2)
  double theta1 = 0.0;  // Delta T1 / 2
  double theta2 = 0.0;  // Delta T2
  double theta3 = 0.0;  // V T2
  double phi1 = 0.0;  // 2 theta1 + theta2
};

Factors factors(const ModelParams& params);

/// Basis order (gg, gr, rg, rr).
Eigen::Matrix4cd two_atom_u1(const Factors& f);
Eigen::Vector4cd two_atom_u2(const Factors& f);

/// P(n) from iterating the printed 4x4 matrices on |gg>.
double two_atom_matrix_p(const Factors& f, int n);

double two_atom_p2(const Factors& f);
double two_atom_p3(const Factors& f);
double three_atom_p2(const Factors& f);

/// 2^(L-1) 4^(n-2) distinct interference phases.
std::uint64_t phase_combination_count(int atoms, int cycles);

struct Draw {
  double epsilon = 0.0;
  double delta = 0.0;
  double interaction = 0.0;
  double t2 = 0.0;
  // exact diagonalization
  double ed_l2_n2 = 0.0;
  double ed_l2_n3 = 0.0;
  double ed_l3_n2 = 0.0;
  // closed forms
  double cf_l2_n2 = 0.0;
  double cf_l2_n3 = 0.0;
  double cf_l3_n2 = 0.0;

  double error_l2_n2() const;
  double error_l2_n3() const;
  double error_l3_n2() const;
  double max_error() const;
};

struct CheckOptions {
  int draws = 100;
  std::uint64_t seed = 7;
  double tolerance = 1e-8;
};

struct CheckReport {
  CheckOptions options;
  std::vector<Draw> draws;
  int matched = 0;  // draws where all three forms agree within tolerance
  int matched_l2_n2 = 0;
  int matched_l2_n3 = 0;
  int matched_l3_n2 = 0;
  double worst_l2_n2 = 0.0;
  double worst_l2_n3 = 0.0;
  double worst_l3_n2 = 0.0;

  bool all_matched() const { return matched == static_cast<int>(draws.size()); }
  std::string summary() const;
};

/// Random draws with eps, Delta in [-1, 1], V in [-0.3, 0.3], T2 in [1, 20], T1 = 1.
CheckReport run_check(const CheckOptions& options = {});

/// Closed-form value next to ED for a single parameter set (simplified variant, ring).
Draw evaluate_draw(double epsilon, double delta, double interaction, double t2);

}  // namespace dtc::oracle
