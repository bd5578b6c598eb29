// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include <bit>
#include <doctest.h>

#include "eigentherm/errors.hpp"
#include "eigentherm/hamiltonian.hpp"
#include "oracles.hpp"

using namespace eigentherm;

namespace {

SingleParticleSpectrum levels(std::vector<double> e) {
  SingleParticleSpectrum sp;
  sp.epsilon = std::move(e);
  return sp;
}

// H = sum eps_a n_a + sum_{P,Q} U_PQ c+_a c+_b c_d c_g on the full 2^m space,
// projected onto the fixed-n basis (masks ascending).
Eigen::MatrixXd jordan_wigner_hamiltonian(const std::vector<double>& eps, const TwoBodyTensor& t, int n) {
  const int m = static_cast<int>(eps.size());
  const auto c = oracle::jordan_wigner(m);
  const Eigen::Index dim = Eigen::Index{1} << m;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < m; ++a) h += eps[a] * c[a].transpose() * c[a];
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int g = 0; g < m; ++g)
        for (int d = g + 1; d < m; ++d)
          h += t.element({a, b}, {g, d}) * c[a].transpose() * c[b].transpose() * c[d] * c[g];
  std::vector<Eigen::Index> keep;
  for (Eigen::Index s = 0; s < dim; ++s)
    if (std::popcount(static_cast<unsigned long long>(s)) == n) keep.push_back(s);
  Eigen::MatrixXd out(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) out(i, j) = h(keep[i], keep[j]);
  return out;
}

}  // namespace

TEST_CASE("GOE levels: spacing, centering, range, determinism") {
  for (int m : {2, 5, 8, 16, 30}) {
    for (double delta : {1.0, 0.37}) {
      Rng rng(42 + m);
      const auto sp = sample_goe_levels(m, delta, rng);
      REQUIRE(sp.size() == m);
      CHECK(std::is_sorted(sp.epsilon.begin(), sp.epsilon.end()));
      CHECK((sp.epsilon.back() - sp.epsilon.front()) / (m - 1) == doctest::Approx(delta).epsilon(1e-15));
      CHECK(sp.epsilon.back() + sp.epsilon.front() == doctest::Approx(0.0));
      for (double e : sp.epsilon) {
        CHECK(e >= -m * delta / 2);
        CHECK(e <= m * delta / 2);
      }
    }
  }
  Rng a(7), b(7);
  CHECK(sample_goe_levels(16, 1.0, a).epsilon == sample_goe_levels(16, 1.0, b).epsilon);
  Rng r(1);
  CHECK_THROWS_AS(sample_goe_levels(1, 1.0, r), ParameterError);
  CHECK_THROWS_AS(sample_goe_levels(4, 0.0, r), ParameterError);
}

TEST_CASE("interaction tensor sampling") {
  Rng rng(3);
  const auto zero = sample_interaction(8, 0.0, rng);
  CHECK(zero.max_abs() == 0.0);

  const auto t = sample_interaction(8, 0.3, rng);
  CHECK(t.pair_count() == 28);
  CHECK(t.independent_count() == 28 * 29 / 2);
  CHECK(t.max_abs() <= 0.3);
  CHECK(t.max_abs() > 0.2);
  for (std::size_t p = 0; p < t.pair_count(); ++p)
    for (std::size_t q = 0; q < t.pair_count(); ++q) CHECK(t(p, q) == t(q, p));
  CHECK_THROWS_AS(sample_interaction(8, -1.0, rng), ParameterError);

  // Same stream at two bounds: draws scale linearly.
  Rng r1(9), r2(9);
  const auto t1 = sample_interaction(6, 1.0, r1);
  const auto t2 = sample_interaction(6, 0.25, r2);
  for (std::size_t p = 0; p < t1.pair_count(); ++p) CHECK(t2(p, p) == 0.25 * t1(p, p));
}

TEST_CASE("free fermions give a diagonal of occupied-level sums") {
  const auto sp = levels({-1.7, -0.4, 0.2, 0.9, 1.6});
  const FockBasis b(5, 2);
  const auto h = build_hamiltonian(b, sp, TwoBodyTensor(5));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      double expected = 0.0;
      if (i == j)
        for (int a = 0; a < 5; ++a)
          if ((b[i] >> a) & 1u) expected += sp.epsilon[a];
      CHECK(h.matrix(i, j) == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("m=4, n=2 matrix matches a hand-built 6x6 block") {
  // Basis order: {0,1} {0,2} {1,2} {0,3} {1,3} {2,3}.
  const auto sp = levels({-1.5, -0.5, 0.5, 1.5});
  TwoBodyTensor t(4);
  const double u = 0.3, w = -0.2, v = 0.7;
  t.set(t.pair_index(1, 2), t.pair_index(0, 3), u);  // {0,3} <-> {1,2}
  t.set(t.pair_index(0, 1), t.pair_index(0, 1), w);  // diagonal on {0,1}
  t.set(t.pair_index(0, 2), t.pair_index(0, 1), v);  // {0,1} <-> {0,2}, spectator 0
  Eigen::MatrixXd expected(6, 6);
  // clang-format off
  expected << -2 + w, v,  0, 0, 0, 0,
               v,    -1,  0, 0, 0, 0,
               0,     0,  0, u, 0, 0,
               0,     0,  u, 0, 0, 0,
               0,     0,  0, 0, 1, 0,
               0,     0,  0, 0, 0, 2;
  // clang-format on
  const auto h = build_hamiltonian(FockBasis(4, 2), sp, t);
  CHECK((h.matrix - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("m=4, n=3 spectator reordering produces a minus sign") {
  // c+_0 c+_3 c_1 c_0 |{0,1,2}> = -|{0,2,3}>.
  TwoBodyTensor t(4);
  const double x = 0.45;
  t.set(t.pair_index(0, 3), t.pair_index(0, 1), x);
  const auto h = build_hamiltonian(FockBasis(4, 3), levels({0, 0, 0, 0}), t);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  expected(0, 2) = expected(2, 0) = -x;
  CHECK((h.matrix - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("random Hamiltonians match the Jordan-Wigner construction") {
  for (int m = 2; m <= 6; ++m)
    for (int n = 1; n <= m; ++n) {
      SystemParams p{m, n, 1.0, 0.5, static_cast<std::uint64_t>(100 * m + n)};
      const auto [sp, t] = sample_realization(p);
      const auto h = build_hamiltonian(FockBasis(m, n), sp, t);
      const Eigen::MatrixXd ref = jordan_wigner_hamiltonian(sp.epsilon, t, n);
      CHECK((h.matrix - ref).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Hamiltonian symmetry, sparsity and reproducibility") {
  for (int m = 4; m <= 8; ++m) {
    SystemParams p{m, m / 2, 1.0, 0.4, 5};
    const FockBasis b(m, m / 2);
    const auto [sp, t] = sample_realization(p);
    const auto h = build_hamiltonian(b, sp, t);
    CHECK(h.matrix == h.matrix.transpose());
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (std::popcount(b[i] ^ b[j]) > 4) CHECK(h.matrix(i, j) == 0.0);
    const auto [sp2, t2] = sample_realization(p);
    CHECK(build_hamiltonian(b, sp2, t2).matrix == h.matrix);
  }
  CHECK_THROWS_AS(build_hamiltonian(FockBasis(4, 2), levels({0, 1, 2}), TwoBodyTensor(4)), ParameterError);
  CHECK_THROWS_AS(build_hamiltonian(FockBasis(4, 2), levels({0, 1, 2, 3}), TwoBodyTensor(5)), ParameterError);
}

TEST_CASE("diagonalize: closed forms and identities") {
  ManyBodyHamiltonian two{Eigen::MatrixXd(2, 2)};
  two.matrix << 0.3, -1.2, -1.2, 0.3;
  const auto es = diagonalize(two);
  CHECK(es.energies[0] == doctest::Approx(0.3 - 1.2).epsilon(1e-14));
  CHECK(es.energies[1] == doctest::Approx(0.3 + 1.2).epsilon(1e-14));

  SystemParams p{10, 5, 1.0, 0.3, 17};
  const FockBasis b(10, 5);
  const auto [sp, t] = sample_realization(p);
  auto h = build_hamiltonian(b, sp, t);
  const double trace = h.matrix.trace();
  const auto full = diagonalize(std::move(h));
  CHECK(std::is_sorted(full.energies.begin(), full.energies.end()));
  CHECK(std::abs(full.energies.sum() - trace) <= 1e-10 * full.energies.cwiseAbs().sum());
  const Eigen::MatrixXd gram = full.vectors.transpose() * full.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-10);

  ManyBodyHamiltonian bad{Eigen::MatrixXd::Zero(2, 2)};
  bad.matrix(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(diagonalize(bad), NumericalError);
}

TEST_CASE("free-fermion spectra equal subset sums") {
  for (int m = 2; m <= 12; ++m)
    for (int n = 1; n <= m; ++n) {
      SystemParams p{m, n, 1.0, 0.0, static_cast<std::uint64_t>(m * 31 + n)};
      const auto [sp, t] = sample_realization(p);
      const auto es = diagonalize(build_hamiltonian(FockBasis(m, n), sp, t));
      const auto ref = oracle::subset_sums(sp.epsilon, n);
      REQUIRE(ref.size() == es.size());
      double worst = 0.0;
      for (std::size_t k = 0; k < ref.size(); ++k)
        worst = std::max(worst, std::abs(ref[k] - es.energies[static_cast<Eigen::Index>(k)]));
      CHECK(worst < 1e-9);
    }
}
