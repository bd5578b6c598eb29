// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hamiltonian.hpp
 * @brief Two-body random ensemble: GOE single-particle levels, uniform random
 * two-body elements, dense many-body matrix and its full eigendecomposition.
 *
 *   H = sum_a eps_a n_a + sum_{P,Q} U_{PQ} c+_a c+_b c_d c_g
 *
 * where P = (a<b) and Q = (g<d) run over all ordered orbital pairs and
 * U_{PQ} = U_{QP}. Summing over both P,Q orders makes H Hermitian without a
 * separate conjugate term.
 */

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "eigentherm/fock.hpp"
#include "eigentherm/random.hpp"

namespace eigentherm {

struct SingleParticleSpectrum {
  std::vector<double> epsilon;  ///< ascending orbital energies
  double delta = 1.0;           ///< mean level spacing

  [[nodiscard]] int size() const noexcept { return static_cast<int>(epsilon.size()); }
};

/// Symmetric table of pair-pair matrix elements U_{(a<b),(g<d)}.
class TwoBodyTensor {
 public:
  explicit TwoBodyTensor(int m);

  [[nodiscard]] int orbitals() const noexcept { return m_; }
  [[nodiscard]] std::size_t pair_count() const noexcept { return pairs_; }
  /// P(P+1)/2 with P = C(m,2).
  [[nodiscard]] std::size_t independent_count() const noexcept { return pairs_ * (pairs_ + 1) / 2; }

  [[nodiscard]] std::size_t pair_index(int a, int b) const noexcept {
    return pair_index_[static_cast<std::size_t>(a) * m_ + b];
  }
  [[nodiscard]] double operator()(std::size_t p, std::size_t q) const noexcept {
    return elements_[p * pairs_ + q];
  }
  [[nodiscard]] double element(OrbitalPair added, OrbitalPair removed) const noexcept {
    return (*this)(pair_index(added.first, added.second), pair_index(removed.first, removed.second));
  }
  /// Sets both (p,q) and (q,p).
  void set(std::size_t p, std::size_t q, double value) noexcept {
    elements_[p * pairs_ + q] = value;
    elements_[q * pairs_ + p] = value;
  }
  [[nodiscard]] double max_abs() const noexcept;

 private:
  int m_;
  std::size_t pairs_;
  std::vector<std::size_t> pair_index_;  // m*m, valid for a<b and b<a
  std::vector<double> elements_;         // pairs_*pairs_
};

struct ManyBodyHamiltonian {
  Eigen::MatrixXd matrix;
};

struct EigenSystem {
  Eigen::VectorXd energies;  ///< ascending
  Eigen::MatrixXd vectors;   ///< column A is the eigenvector of energies[A]

  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(energies.size()); }
};

/// GOE eigenvalues mapped linearly onto spacing delta and centered at zero:
/// (max - min) = (m - 1) delta and (max + min) = 0.
SingleParticleSpectrum sample_goe_levels(int m, double delta, Rng& rng);

/// One uniform draw in [-u, u] per unordered pair of pairs (diagonal
/// included), consumed in row-major upper-triangle order.
TwoBodyTensor sample_interaction(int m, double u, Rng& rng);

ManyBodyHamiltonian build_hamiltonian(const FockBasis& basis, const SingleParticleSpectrum& sp,
                                      const TwoBodyTensor& tensor);

/// Full dense eigendecomposition (LAPACK dsyevr). Takes the matrix by value
/// so callers can move in and let the solver reuse its storage.
/// Throws NumericalError on non-finite input or solver failure.
EigenSystem diagonalize(ManyBodyHamiltonian h);

/// Levels and tensor for `params`, drawn from the realization's sub-streams.
struct Realization {
  SingleParticleSpectrum levels;
  TwoBodyTensor tensor;
};
Realization sample_realization(const SystemParams& params);

}  // namespace eigentherm
