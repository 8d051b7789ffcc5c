#include "dtc/basis.hpp"

#include <bit>
#include <string>

#include "dtc/error.hpp"

namespace dtc {

std::string to_string(BasisKind kind) { return kind == BasisKind::Full ? "full" : "translation"; }

BasisKind parse_basis_kind(std::string_view text) {
  if (text == "full") return BasisKind::Full;
  if (text == "translation") return BasisKind::Translation;
  fail(ErrorKind::InvalidArgument, "unknown basis '" + std::string(text) + "' (full | translation)");
}

namespace {

void check_atoms(int atoms) {
  if (atoms < 1 || atoms > 30) {
    fail(ErrorKind::InvalidArgument, "basis needs 1 <= L <= 30, got " + std::to_string(atoms));
  }
}

}  // namespace

std::uint64_t Basis::rotate(std::uint64_t config, int atoms) {
  return (config >> 1) | ((config & 1U) << (atoms - 1));
}

Basis Basis::full(int atoms) {
  check_atoms(atoms);
  Basis basis(atoms, BasisKind::Full);
  const std::uint64_t dim = std::uint64_t{1} << atoms;
  basis.reps_.resize(dim);
  basis.orbit_.assign(dim, 1);
  for (std::uint64_t c = 0; c < dim; ++c) basis.reps_[c] = c;
  return basis;
}

Basis Basis::translation(int atoms) {
  check_atoms(atoms);
  Basis basis(atoms, BasisKind::Translation);
  const std::uint64_t dim = std::uint64_t{1} << atoms;
  basis.lookup_.assign(dim, -1);
  for (std::uint64_t c = 0; c < dim; ++c) {
    if (basis.lookup_[c] >= 0) continue;
    const auto index = static_cast<std::int32_t>(basis.reps_.size());
    // c is the smallest member of its orbit since all smaller words are already labelled.
    int size = 0;
    std::uint64_t member = c;
    do {
      if (basis.lookup_[member] < 0) {
        basis.lookup_[member] = index;
        ++size;
      }
      member = rotate(member, atoms);
    } while (member != c);
    basis.reps_.push_back(c);
    basis.orbit_.push_back(size);
  }
  return basis;
}

Basis Basis::make(BasisKind kind, int atoms) {
  return kind == BasisKind::Full ? full(atoms) : translation(atoms);
}

Eigen::Index Basis::index_of(std::uint64_t config) const {
  if (config >> atoms_ != 0U) {
    fail(ErrorKind::InvalidArgument, "configuration outside the " + std::to_string(atoms_) + "-atom basis");
  }
  if (kind_ == BasisKind::Full) return static_cast<Eigen::Index>(config);
  return lookup_[config];
}

int Basis::excitations(Eigen::Index i) const { return std::popcount(representative(i)); }

}  // namespace dtc
