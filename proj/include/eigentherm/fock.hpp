// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Fixed-particle-number Fock space of spinless fermions.
 *
 * A basis state is a 64-bit occupation mask, bit a <-> orbital a. States are
 * kept in ascending integer order, which for fixed population count is the
 * colexicographic order of the occupied sets; the position of a mask is
 * therefore its combinatorial rank and lookup is O(n).
 *
 * Sign convention: a mask denotes c+_{a1} c+_{a2} ... c+_{ak} |0> with
 * a1 < a2 < ... < ak. The two-body operator attached to the orbital pairs
 * (a<b) <- (g<d) is c+_a c+_b c_d c_g, i.e. annihilators act in ascending
 * orbital order and creators in descending order.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace eigentherm {

using Mask = std::uint64_t;

inline constexpr int kMaxOrbitals = 64;

/// One disorder realization of the few-fermion system.
struct SystemParams {
  int m = 16;           ///< orbitals
  int n = 8;            ///< particles
  double delta = 1.0;   ///< mean single-particle level spacing
  double u = 0.0;       ///< interaction bound, elements uniform in [-u, u]
  std::uint64_t seed = 1;

  /// Throws ParameterError unless 0 < n <= m <= 64, delta > 0, u >= 0.
  void validate() const;
  /// Many-body bandwidth estimate n(m-n) delta.
  [[nodiscard]] double bandwidth() const { return double(n) * double(m - n) * delta; }
};

/// Ordered orbital pair, first < second (or first == second for the
/// degenerate pair reported by one-particle moves).
struct OrbitalPair {
  int first = 0;
  int second = 0;
  friend bool operator==(const OrbitalPair&, const OrbitalPair&) = default;
};

/// Binomial coefficient; throws CapacityError if the result overflows 64 bits.
std::uint64_t binomial(int n, int k);

class FockBasis {
 public:
  FockBasis(int m, int n);

  [[nodiscard]] int orbitals() const noexcept { return m_; }
  [[nodiscard]] int particles() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
  [[nodiscard]] const std::vector<Mask>& states() const noexcept { return states_; }
  [[nodiscard]] Mask operator[](std::size_t k) const { return states_[k]; }

  /// Position of a mask in the basis; nullopt if it is not a member.
  [[nodiscard]] std::optional<std::size_t> index(Mask state) const noexcept;

 private:
  int m_;
  int n_;
  std::vector<Mask> states_;
  // rank_table_[a][i] = C(a, i + 1)
  std::vector<std::vector<std::uint64_t>> rank_table_;
};

/// Largest basis enumerate_basis will materialize.
inline constexpr std::uint64_t kMaxBasisSize = std::uint64_t{1} << 28;

/// All C(m, n) masks in ascending order.
FockBasis enumerate_basis(int m, int n);

/// Occupation (0 or 1) of orbital alpha in `state`.
int orbital_occupied(Mask state, int alpha, int m = kMaxOrbitals);

/// Result of a pair-move query between two basis states.
struct PairConnection {
  enum class Kind { diagonal, single, pair };
  Kind kind = Kind::diagonal;
  /// Orbitals emptied in the ket. Diagonal: unused. Single: (j, j).
  OrbitalPair removed;
  /// Orbitals filled in the bra. Diagonal: unused. Single: (i, i).
  OrbitalPair added;
  /// Pair: sign of <bra| c+_a c+_b c_d c_g |ket>. Single: sign of
  /// <bra| c+_i c_j |ket>. Diagonal: +1.
  int sign = 1;
};

/// Connectivity of bra and ket under a two-body operator. Absent when the
/// masks differ by more than two particles. Throws ParameterError when the
/// particle numbers differ.
std::optional<PairConnection> two_body_connection(Mask bra, Mask ket);

/// Apply c+_{added.first} c+_{added.second} c_{removed.second} c_{removed.first}
/// to the basis state `ket`. Returns the resulting mask and sign, or nullopt
/// when the operator annihilates the state.
std::optional<std::pair<Mask, int>> apply_pair_operator(Mask ket, OrbitalPair added,
                                                        OrbitalPair removed) noexcept;

/// Apply c+_to c_from to `ket`.
std::optional<std::pair<Mask, int>> apply_hop(Mask ket, int to, int from) noexcept;

}  // namespace eigentherm
