// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "eigentherm/fock.hpp"
#include "eigentherm/hamiltonian.hpp"

namespace eigentherm {

/// Orbital occupancies f_A(eps_a) = <A| n_a |A> of one eigenstate.
struct OccupancyProfile {
  std::vector<double> f;      ///< length m, each in [0, 1]
  std::size_t state_index = 0;  ///< A, zero-based in ascending energy order
  double energy = 0.0;          ///< E_A
};

/// Occupancies of a single normalized vector. Throws ParameterError if the
/// vector length does not match the basis or its norm deviates from 1 by
/// more than 1e-8.
OccupancyProfile occupancies(const Eigen::Ref<const Eigen::VectorXd>& vector, const FockBasis& basis);

/// Occupancies of every eigenstate; profile A carries energies[A].
std::vector<OccupancyProfile> all_occupancies(const EigenSystem& es, const FockBasis& basis);

}  // namespace eigentherm
