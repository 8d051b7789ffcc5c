#pragma once

// Brute-force reference physics for tests: Hamiltonians from Kronecker products of
// Pauli matrices and propagators from a generic matrix exponential. Deliberately
// shares nothing with the bit-twiddling builders in the library.

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "dtc/model.hpp"

namespace ref {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline Mat sigma_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

// |r><r| with basis order (g, r).
inline Mat n_r() {
  Mat m(2, 2);
  m << 0, 0, 0, 1;
  return m;
}

// |g><r|
inline Mat lower() {
  Mat m(2, 2);
  m << 0, 1, 0, 0;
  return m;
}

/// 1 x ... x op (atom j) x ... x 1, atom 0 leftmost.
inline Mat site(const Mat& op, int j, int atoms) {
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < atoms; ++k) {
    const Mat factor = k == j ? op : Mat::Identity(2, 2);
    Mat next = Eigen::kroneckerProduct(out, factor).eval();
    out = next;
  }
  return out;
}

inline std::vector<std::pair<int, int>> bonds(int atoms, dtc::Boundary boundary) {
  std::vector<std::pair<int, int>> out;
  if (atoms < 2) return out;
  for (int j = 0; j + 1 < atoms; ++j) out.emplace_back(j, j + 1);
  if (boundary == dtc::Boundary::Ring && atoms > 2) out.emplace_back(atoms - 1, 0);
  return out;
}

inline Mat hamiltonian(const dtc::ModelParams& p, dtc::Stage stage) {
  const int L = p.atoms;
  const auto dim = Eigen::Index{1} << L;
  Mat h = Mat::Zero(dim, dim);
  const bool one = stage == dtc::Stage::One;
  const bool rabi = one;
  const bool detuning = one || p.variant != dtc::Variant::Improved;
  const bool interaction = !(one && p.variant == dtc::Variant::Simplified);
  for (int j = 0; j < L; ++j) {
    if (rabi) h += p.rabi() * site(sigma_x(), j, L);
    if (detuning) h += p.delta * site(n_r(), j, L);
  }
  if (interaction) {
    for (auto [a, b] : bonds(L, p.boundary)) h += p.interaction * site(n_r(), a, L) * site(n_r(), b, L);
  }
  return h;
}

inline Mat propagator(const dtc::ModelParams& p, dtc::Stage stage) {
  const double t = stage == dtc::Stage::One ? p.t1 : p.t2;
  const Mat a = (cplx(0, -t) * hamiltonian(p, stage)).eval();
  return a.exp();
}

inline Mat imbalance_operator(int atoms) {
  const auto dim = Eigen::Index{1} << atoms;
  Mat op = Mat::Zero(dim, dim);
  for (int j = 0; j < atoms; ++j) op += 2.0 * site(n_r(), j, atoms) - Mat::Identity(dim, dim);
  return op / static_cast<double>(atoms);
}

/// P(0..n_f) from |g...g>.
inline std::vector<double> trajectory(const dtc::ModelParams& p, int n_f) {
  const Mat uf = propagator(p, dtc::Stage::Two) * propagator(p, dtc::Stage::One);
  const Mat op = imbalance_operator(p.atoms);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(uf.rows());
  psi[0] = 1.0;
  std::vector<double> out;
  for (int n = 0; n <= n_f; ++n) {
    out.push_back(psi.dot(op * psi).real());
    psi = uf * psi;
  }
  return out;
}

/// Lindblad generator acting on rho directly (no vectorization).
inline Mat lindblad_rhs(const Mat& h, double gamma, int atoms, const Mat& rho) {
  const cplx i(0, 1);
  Mat out = -i * (h * rho - rho * h);
  for (int j = 0; j < atoms; ++j) {
    const Mat l = site(lower(), j, atoms);
    const Mat ldl = l.adjoint() * l;
    out += gamma * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

}  // namespace ref
