#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace dtc {

enum class BasisKind {
  Full,  // all 2^L product states
  Translation,  // zero-momentum sector of the ring, one state per necklace orbit
};

std::string to_string(BasisKind kind);
BasisKind parse_basis_kind(std::string_view text);

/// Computational basis of L two-level atoms.
///
/// A configuration is an L-bit word; atom j (0-based) is excited iff bit
/// (L - 1 - j) is set, so index order matches the Kronecker product
/// |s_0> x |s_1> x ... and index 0 is |g...g>. For L = 2 the order is
/// (gg, gr, rg, rr).
///
/// The Translation kind keeps only translation-invariant superpositions
/// (1/sqrt(|orbit|)) sum_{c in orbit} |c>. Ring dynamics started from |g...g>
/// never leave that sector.
class Basis {
 public:
  static Basis full(int atoms);
  static Basis translation(int atoms);
  static Basis make(BasisKind kind, int atoms);

  int atoms() const { return atoms_; }
  BasisKind kind() const { return kind_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(reps_.size()); }

  /// Smallest configuration of the orbit (the configuration itself for Full).
  std::uint64_t representative(Eigen::Index i) const { return reps_[static_cast<std::size_t>(i)]; }
  int orbit_size(Eigen::Index i) const { return orbit_[static_cast<std::size_t>(i)]; }
  /// Basis index of the state containing `config`.
  Eigen::Index index_of(std::uint64_t config) const;
  int excitations(Eigen::Index i) const;

  static bool excited(std::uint64_t config, int atom, int atoms) {
    return ((config >> (atoms - 1 - atom)) & 1U) != 0U;
  }
  /// Cyclic relabelling atom j -> j + 1 (mod L).
  static std::uint64_t rotate(std::uint64_t config, int atoms);

 private:
  Basis(int atoms, BasisKind kind) : atoms_(atoms), kind_(kind) {}

  int atoms_ = 0;
  BasisKind kind_ = BasisKind::Full;
  std::vector<std::uint64_t> reps_;
  std::vector<int> orbit_;
  std::vector<std::int32_t> lookup_;  // config -> index, Translation only
};

}  // namespace dtc
