// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigentherm/occupancy.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "eigentherm/errors.hpp"

namespace eigentherm {

namespace {

void accumulate(const double* v, const FockBasis& basis, std::vector<double>& f) {
  const auto& states = basis.states();
  for (std::size_t k = 0; k < states.size(); ++k) {
    const double w = v[k] * v[k];
    for (Mask s = states[k]; s; s &= s - 1) f[std::countr_zero(s)] += w;
  }
}

}  // namespace

OccupancyProfile occupancies(const Eigen::Ref<const Eigen::VectorXd>& vector, const FockBasis& basis) {
  if (static_cast<std::size_t>(vector.size()) != basis.size())
    throw ParameterError("occupancies: vector length " + std::to_string(vector.size()) +
                         " does not match basis size " + std::to_string(basis.size()));
  const double norm2 = vector.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-8)
    throw ParameterError("occupancies: vector is not normalized (|v|^2 = " + std::to_string(norm2) + ")");

  OccupancyProfile p;
  p.f.assign(static_cast<std::size_t>(basis.orbitals()), 0.0);
  Eigen::VectorXd dense = vector;
  accumulate(dense.data(), basis, p.f);
  return p;
}

std::vector<OccupancyProfile> all_occupancies(const EigenSystem& es, const FockBasis& basis) {
  if (es.size() != basis.size()) throw ParameterError("all_occupancies: eigensystem/basis size mismatch");
  std::vector<OccupancyProfile> out(es.size());
  for (std::size_t a = 0; a < es.size(); ++a) {
    auto& p = out[a];
    p.f.assign(static_cast<std::size_t>(basis.orbitals()), 0.0);
    accumulate(es.vectors.col(static_cast<Eigen::Index>(a)).data(), basis, p.f);
    p.state_index = a;
    p.energy = es.energies[static_cast<Eigen::Index>(a)];
  }
  return out;
}

}  // namespace eigentherm
