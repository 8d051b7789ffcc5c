#include "dtc/model.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "dtc/error.hpp"

namespace dtc {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Original: return "original";
    case Variant::Improved: return "improved";
    case Variant::Simplified: return "simplified";
  }
  return "?";
}

std::string to_string(Boundary b) { return b == Boundary::Ring ? "ring" : "open"; }

Variant parse_variant(std::string_view text) {
  if (text == "original") return Variant::Original;
  if (text == "improved") return Variant::Improved;
  if (text == "simplified") return Variant::Simplified;
  fail(ErrorKind::InvalidArgument, "unknown variant '" + std::string(text) + "'");
}

Boundary parse_boundary(std::string_view text) {
  if (text == "ring") return Boundary::Ring;
  if (text == "open") return Boundary::Open;
  fail(ErrorKind::InvalidArgument, "unknown boundary '" + std::string(text) + "'");
}

double ModelParams::rabi() const { return std::numbers::pi / (2.0 * t1) + epsilon; }

double ModelParams::effective_rabi() const { return std::hypot(rabi(), delta); }

void ModelParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorKind::InvalidArgument, what);
  };
  require(atoms >= 1, "L must be >= 1");
  require(std::isfinite(epsilon) && std::isfinite(delta) && std::isfinite(interaction),
          "epsilon, delta and V must be finite");
  require(std::isfinite(t1) && t1 > 0.0, "t1 must be > 0");
  require(std::isfinite(t2) && t2 >= 0.0, "t2 must be >= 0");
  if (gamma) require(std::isfinite(*gamma) && *gamma >= 0.0, "gamma must be >= 0");
}

namespace {

std::vector<std::pair<int, int>> bonds(int atoms, Boundary boundary) {
  std::vector<std::pair<int, int>> out;
  if (atoms < 2) return out;
  if (atoms == 2) {
    out.emplace_back(0, 1);
    return out;
  }
  const int count = boundary == Boundary::Ring ? atoms : atoms - 1;
  for (int j = 0; j < count; ++j) out.emplace_back(j, (j + 1) % atoms);
  return out;
}

int excited_bonds(std::uint64_t config, int atoms, const std::vector<std::pair<int, int>>& links) {
  int n = 0;
  for (const auto& [a, b] : links) {
    n += static_cast<int>(Basis::excited(config, a, atoms) && Basis::excited(config, b, atoms));
  }
  return n;
}

}  // namespace

int bond_count(int atoms, Boundary boundary) {
  return static_cast<int>(bonds(atoms, boundary).size());
}

Eigen::Index StageHamiltonian::dim() const {
  return stage == Stage::One ? dense.rows() : diagonal.size();
}

Eigen::MatrixXd StageHamiltonian::matrix() const {
  if (stage == Stage::One) return dense;
  return diagonal.asDiagonal();
}

StageHamiltonian build_hamiltonian(const ModelParams& params, Stage stage, const Basis& basis,
                                   const Limits& limits) {
  params.validate();
  if (params.atoms > limits.max_pure_atoms) {
    fail(ErrorKind::CapacityExceeded, "L = " + std::to_string(params.atoms) +
                                          " exceeds the pure-state cap of " +
                                          std::to_string(limits.max_pure_atoms));
  }
  if (basis.atoms() != params.atoms) {
    fail(ErrorKind::InvalidArgument, "basis size does not match L");
  }
  if (basis.kind() == BasisKind::Translation && params.boundary != Boundary::Ring) {
    fail(ErrorKind::InvalidArgument, "the translation sector requires a ring");
  }

  const int L = params.atoms;
  const auto links = bonds(L, params.boundary);
  const Eigen::Index dim = basis.dim();

  double detuning = params.delta;
  double coupling = params.interaction;
  if (stage == Stage::One && params.variant == Variant::Simplified) coupling = 0.0;
  if (stage == Stage::Two && params.variant == Variant::Improved) detuning = 0.0;

  Eigen::VectorXd diag(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::uint64_t c = basis.representative(i);
    diag[i] = detuning * std::popcount(c) + coupling * excited_bonds(c, L, links);
  }

  StageHamiltonian h;
  h.stage = stage;
  if (stage == Stage::Two) {
    h.diagonal = std::move(diag);
    return h;
  }

  const double omega = params.rabi();
  h.dense = Eigen::MatrixXd::Zero(dim, dim);
  h.dense.diagonal() = diag;
  for (Eigen::Index a = 0; a < dim; ++a) {
    const std::uint64_t rep = basis.representative(a);
    const double size_a = basis.orbit_size(a);
    for (int j = 0; j < L; ++j) {
      const std::uint64_t flipped = rep ^ (std::uint64_t{1} << (L - 1 - j));
      const Eigen::Index b = basis.index_of(flipped);
      h.dense(b, a) += omega * std::sqrt(size_a / basis.orbit_size(b));
    }
  }
  return h;
}

StageHamiltonian build_hamiltonian(const ModelParams& params, Stage stage, const Limits& limits) {
  if (params.atoms > limits.max_pure_atoms) {
    fail(ErrorKind::CapacityExceeded, "L = " + std::to_string(params.atoms) +
                                          " exceeds the pure-state cap of " +
                                          std::to_string(limits.max_pure_atoms));
  }
  return build_hamiltonian(params, stage, Basis::full(params.atoms), limits);
}

Eigen::VectorXd population_difference_diagonal(const Basis& basis) {
  const int L = basis.atoms();
  Eigen::VectorXd d(basis.dim());
  for (Eigen::Index i = 0; i < basis.dim(); ++i) {
    d[i] = static_cast<double>(2 * basis.excitations(i) - L) / L;
  }
  return d;
}

double vdw_coupling(double c6, double distance) {
  if (!(distance > 0.0)) fail(ErrorKind::InvalidArgument, "interatomic distance must be > 0");
  return c6 / std::pow(distance, 6);
}

}  // namespace dtc
