// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigentherm/hamiltonian.hpp"

#include <lapacke.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "eigentherm/errors.hpp"

namespace eigentherm {

TwoBodyTensor::TwoBodyTensor(int m)
    : m_(m), pairs_(m >= 2 ? static_cast<std::size_t>(m) * (m - 1) / 2 : 0) {
  if (m <= 0 || m > kMaxOrbitals) throw ParameterError("TwoBodyTensor: bad orbital count");
  pair_index_.assign(static_cast<std::size_t>(m) * m, 0);
  std::size_t p = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      pair_index_[static_cast<std::size_t>(a) * m + b] = p;
      pair_index_[static_cast<std::size_t>(b) * m + a] = p;
      ++p;
    }
  elements_.assign(pairs_ * pairs_, 0.0);
}

double TwoBodyTensor::max_abs() const noexcept {
  double r = 0.0;
  for (double v : elements_) r = std::max(r, std::abs(v));
  return r;
}

SingleParticleSpectrum sample_goe_levels(int m, double delta, Rng& rng) {
  if (m < 2) throw ParameterError("sample_goe_levels: need m >= 2");
  if (!(delta > 0.0)) throw ParameterError("sample_goe_levels: delta must be positive");

  // Off-diagonal variance 1, diagonal variance 2.
  Eigen::MatrixXd goe(m, m);
  for (int i = 0; i < m; ++i) {
    goe(i, i) = std::sqrt(2.0) * rng.normal();
    for (int j = i + 1; j < m; ++j) goe(i, j) = goe(j, i) = rng.normal();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(goe, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("GOE eigensolve failed");

  std::vector<double> e(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
  std::sort(e.begin(), e.end());
  const double lo = e.front();
  const double hi = e.back();
  const double scale = (m - 1) * delta / (hi - lo);
  const double mid = 0.5 * (hi + lo);
  SingleParticleSpectrum sp;
  sp.delta = delta;
  sp.epsilon.resize(m);
  for (int a = 0; a < m; ++a) sp.epsilon[a] = (e[a] - mid) * scale;
  // Pin the end points so the spacing identity holds exactly.
  sp.epsilon.front() = -0.5 * (m - 1) * delta;
  sp.epsilon.back() = 0.5 * (m - 1) * delta;
  return sp;
}

TwoBodyTensor sample_interaction(int m, double u, Rng& rng) {
  if (!(u >= 0.0)) throw ParameterError("sample_interaction: u must be non-negative");
  TwoBodyTensor t(m);
  const std::size_t pairs = t.pair_count();
  for (std::size_t p = 0; p < pairs; ++p)
    for (std::size_t q = p; q < pairs; ++q) {
      const double x = rng.uniform(-1.0, 1.0);
      t.set(p, q, u * x);
    }
  return t;
}

Realization sample_realization(const SystemParams& params) {
  params.validate();
  Rng level_rng(params.seed, Stream::levels);
  Rng tensor_rng(params.seed, Stream::interaction);
  return {sample_goe_levels(params.m, params.delta, level_rng),
          sample_interaction(params.m, params.u, tensor_rng)};
}

ManyBodyHamiltonian build_hamiltonian(const FockBasis& basis, const SingleParticleSpectrum& sp,
                                      const TwoBodyTensor& tensor) {
  const int m = basis.orbitals();
  if (sp.size() != m || tensor.orbitals() != m)
    throw ParameterError("build_hamiltonian: orbital count mismatch (basis " + std::to_string(m) +
                         ", levels " + std::to_string(sp.size()) + ", tensor " +
                         std::to_string(tensor.orbitals()) + ")");
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const bool interacting = tensor.max_abs() > 0.0;

  ManyBodyHamiltonian h{Eigen::MatrixXd::Zero(dim, dim)};
  auto& mat = h.matrix;
  std::vector<int> occ, emp;
  occ.reserve(m);
  emp.reserve(m);

  for (Eigen::Index col = 0; col < dim; ++col) {
    const Mask ket = basis[static_cast<std::size_t>(col)];
    occ.clear();
    emp.clear();
    for (int a = 0; a < m; ++a) ((ket >> a) & 1u ? occ : emp).push_back(a);

    double diag = 0.0;
    for (int a : occ) diag += sp.epsilon[a];
    for (std::size_t i = 0; i < occ.size(); ++i)
      for (std::size_t j = i + 1; j < occ.size(); ++j) {
        const std::size_t p = tensor.pair_index(occ[i], occ[j]);
        diag += tensor(p, p);
      }
    mat(col, col) = diag;

    // Only the strict lower triangle is computed; it is mirrored below.
    for (int from : occ) {
      if (!interacting) break;
      for (int to : emp) {
        const Mask bra = (ket & ~(Mask{1} << from)) | (Mask{1} << to);
        const auto row = static_cast<Eigen::Index>(*basis.index(bra));
        if (row <= col) continue;
        double value = 0.0;
        for (int k : occ) {
          if (k == from) continue;
          const OrbitalPair added{std::min(to, k), std::max(to, k)};
          const OrbitalPair removed{std::min(from, k), std::max(from, k)};
          const auto res = apply_pair_operator(ket, added, removed);
          value += res->second * tensor.element(added, removed);
        }
        mat(row, col) = value;
      }
    }

    if (!interacting) continue;
    for (std::size_t gi = 0; gi < occ.size(); ++gi)
      for (std::size_t di = gi + 1; di < occ.size(); ++di)
        for (std::size_t ai = 0; ai < emp.size(); ++ai)
          for (std::size_t bi = ai + 1; bi < emp.size(); ++bi) {
            const OrbitalPair removed{occ[gi], occ[di]};
            const OrbitalPair added{emp[ai], emp[bi]};
            const auto res = apply_pair_operator(ket, added, removed);
            const auto row = static_cast<Eigen::Index>(*basis.index(res->first));
            if (row <= col) continue;
            mat(row, col) = res->second * tensor.element(added, removed);
          }
  }
  mat.triangularView<Eigen::StrictlyUpper>() = mat.transpose();
  return h;
}

EigenSystem diagonalize(ManyBodyHamiltonian h) {
  auto& a = h.matrix;
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.rows() != a.cols()) throw ParameterError("diagonalize: matrix is not square");
  if (!a.allFinite()) throw NumericalError("diagonalize: matrix has non-finite entries");

  EigenSystem es;
  es.energies.resize(n);
  es.vectors.resize(n, n);
  if (n == 0) return es;
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, a.data(), n, 0.0, 0.0, 0, 0, 0.0, &found,
                     es.energies.data(), es.vectors.data(), n, support.data());
  if (info != 0 || found != n)
    throw NumericalError("dsyevr failed: info=" + std::to_string(info) + ", found " +
                         std::to_string(found) + " of " + std::to_string(n) + " eigenpairs");
  return es;
}

}  // namespace eigentherm
