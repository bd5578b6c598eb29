// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "eigentherm/errors.hpp"
#include "eigentherm/occupancy.hpp"
#include "oracles.hpp"

using namespace eigentherm;

namespace {

struct Solved {
  FockBasis basis;
  EigenSystem es;
};

Solved solve(const SystemParams& p) {
  FockBasis b(p.m, p.n);
  const auto [sp, t] = sample_realization(p);
  return {b, diagonalize(build_hamiltonian(b, sp, t))};
}

}  // namespace

TEST_CASE("basis vectors give 0/1 indicators") {
  const FockBasis b(6, 3);
  for (std::size_t k = 0; k < b.size(); ++k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(b.size()));
    v[static_cast<Eigen::Index>(k)] = 1.0;
    const auto p = occupancies(v, b);
    for (int a = 0; a < 6; ++a) CHECK(p.f[a] == static_cast<double>((b[k] >> a) & 1u));
  }
}

TEST_CASE("U=0 eigenstates are Slater determinants") {
  const auto s = solve({8, 4, 1.0, 0.0, 3});
  for (const auto& p : all_occupancies(s.es, s.basis))
    for (double f : p.f) CHECK((std::abs(f) < 1e-12 || std::abs(f - 1.0) < 1e-12));
}

TEST_CASE("sum rule, bounds and completeness") {
  for (double u : {0.0, 0.2, 1.0}) {
    const auto s = solve({10, 5, 1.0, u, 8});
    const auto profiles = all_occupancies(s.es, s.basis);
    std::vector<double> column(10, 0.0);
    for (const auto& p : profiles) {
      double total = 0.0;
      for (int a = 0; a < 10; ++a) {
        CHECK(p.f[a] >= -1e-12);
        CHECK(p.f[a] <= 1.0 + 1e-12);
        total += p.f[a];
        column[a] += p.f[a];
      }
      CHECK(std::abs(total - 5.0) < 1e-8);
      CHECK(p.energy == s.es.energies[static_cast<Eigen::Index>(p.state_index)]);
    }
    for (double c : column) CHECK(std::abs(c - oracle::binomial(9, 4)) < 1e-6);
  }
}

TEST_CASE("single-vector and batch paths agree") {
  const auto s = solve({8, 4, 1.0, 0.3, 21});
  const auto batch = all_occupancies(s.es, s.basis);
  for (Eigen::Index a : {0, 17, 69}) {
    const auto one = occupancies(s.es.vectors.col(a), s.basis);
    for (int k = 0; k < 8; ++k) CHECK(one.f[k] == doctest::Approx(batch[a].f[k]).epsilon(1e-14));
  }
}

TEST_CASE("input validation") {
  const FockBasis b(4, 2);
  Eigen::VectorXd v = Eigen::VectorXd::Constant(6, 1.0);
  CHECK_THROWS_AS(occupancies(v, b), ParameterError);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(5, 1.0 / std::sqrt(5.0));
  CHECK_THROWS_AS(occupancies(w, b), ParameterError);
  v.normalize();
  CHECK_NOTHROW(occupancies(v, b));
}
