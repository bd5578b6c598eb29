// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include <bit>
#include <doctest.h>
#include <random>
#include <set>

#include "eigentherm/errors.hpp"
#include "eigentherm/fock.hpp"
#include "oracles.hpp"

using namespace eigentherm;

TEST_CASE("basis sizes") {
  CHECK(enumerate_basis(4, 2).size() == 6);
  CHECK(enumerate_basis(16, 8).size() == 12870);
  CHECK(enumerate_basis(12, 6).size() == 924);
  CHECK(enumerate_basis(64, 1).size() == 64);
  CHECK(enumerate_basis(64, 64).size() == 1);
  CHECK(enumerate_basis(64, 64)[0] == ~Mask{0});
}

TEST_CASE("basis parameter and capacity errors") {
  CHECK_THROWS_AS(enumerate_basis(0, 0), ParameterError);
  CHECK_THROWS_AS(enumerate_basis(4, 0), ParameterError);
  CHECK_THROWS_AS(enumerate_basis(4, 5), ParameterError);
  CHECK_THROWS_AS(enumerate_basis(65, 2), ParameterError);
  CHECK_THROWS_AS(enumerate_basis(64, 32), CapacityError);
}

TEST_CASE("basis invariants for every small (m, n)") {
  for (int m = 1; m <= 20; ++m)
    for (int n = 1; n <= m; ++n) {
      if (oracle::binomial(m, n) > 1e6) continue;
      const FockBasis b = enumerate_basis(m, n);
      REQUIRE(static_cast<double>(b.size()) == oracle::binomial(m, n));
      for (std::size_t k = 0; k < b.size(); ++k) {
        CHECK(std::popcount(b[k]) == n);
        CHECK((b[k] >> m) == 0);
        if (k > 0) CHECK(b[k] > b[k - 1]);
        REQUIRE(b.index(b[k]) == k);
      }
    }
}

TEST_CASE("index rejects non-members") {
  const FockBasis b(6, 3);
  CHECK_FALSE(b.index(0b1).has_value());
  CHECK_FALSE(b.index(0b1000111).has_value());
}

TEST_CASE("orbital_occupied") {
  CHECK(orbital_occupied(0b0011, 0) == 1);
  CHECK(orbital_occupied(0b0011, 2) == 0);
  CHECK_THROWS_AS(orbital_occupied(0b0011, 4, 4), ParameterError);
  CHECK_THROWS_AS(orbital_occupied(0b0011, -1), ParameterError);
  const FockBasis b(8, 3);
  for (Mask s : b.states()) {
    int total = 0;
    for (int a = 0; a < 8; ++a) total += orbital_occupied(s, a, 8);
    CHECK(total == 3);
  }
}

TEST_CASE("two_body_connection basic cases") {
  const auto d = two_body_connection(0b0101, 0b0101);
  REQUIRE(d.has_value());
  CHECK(d->kind == PairConnection::Kind::diagonal);
  CHECK(d->sign == 1);

  CHECK_FALSE(two_body_connection(0b000111, 0b111000).has_value());
  CHECK_THROWS_AS(two_body_connection(0b0111, 0b0011), ParameterError);

  const auto p = two_body_connection(0b1100, 0b0011);
  REQUIRE(p.has_value());
  CHECK(p->kind == PairConnection::Kind::pair);
  CHECK(p->removed == OrbitalPair{0, 1});
  CHECK(p->added == OrbitalPair{2, 3});
  // c+_2 c+_3 c_1 c_0 c+_0 c+_1 |0> = c+_2 c+_3 |0>: no reordering needed.
  CHECK(p->sign == 1);

  const auto s = two_body_connection(0b0110, 0b0011);
  REQUIRE(s.has_value());
  CHECK(s->kind == PairConnection::Kind::single);
  CHECK(s->removed == OrbitalPair{0, 0});
  CHECK(s->added == OrbitalPair{2, 2});
}

TEST_CASE("two_body_connection is symmetric") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = 10;
    const FockBasis b(m, 5);
    const Mask x = b[rng() % b.size()];
    const Mask y = b[rng() % b.size()];
    const auto xy = two_body_connection(x, y);
    const auto yx = two_body_connection(y, x);
    REQUIRE(xy.has_value() == yx.has_value());
    if (!xy) {
      CHECK(std::popcount(x ^ y) > 4);
      continue;
    }
    CHECK(xy->sign == yx->sign);
    CHECK(xy->removed == yx->added);
  }
}

TEST_CASE("pair and hop signs match Jordan-Wigner operator products") {
  for (int m = 2; m <= 5; ++m) {
    const auto c = oracle::jordan_wigner(m);
    for (int n = 1; n <= m; ++n) {
      const FockBasis b(m, n);
      for (Mask bra : b.states())
        for (Mask ket : b.states()) {
          const auto conn = two_body_connection(bra, ket);
          if (!conn || conn->kind == PairConnection::Kind::diagonal) continue;
          double expected = 0.0;
          if (conn->kind == PairConnection::Kind::pair) {
            const auto [a, bb] = conn->added;
            const auto [g, d] = conn->removed;
            const Eigen::MatrixXd op = c[a].transpose() * c[bb].transpose() * c[d] * c[g];
            expected = op(static_cast<Eigen::Index>(bra), static_cast<Eigen::Index>(ket));
          } else {
            const Eigen::MatrixXd op = c[conn->added.first].transpose() * c[conn->removed.first];
            expected = op(static_cast<Eigen::Index>(bra), static_cast<Eigen::Index>(ket));
          }
          REQUIRE(std::abs(expected) == 1.0);
          CHECK(conn->sign == static_cast<int>(expected));
        }

      // Every pair operator against every basis state, including spectator terms.
      for (int a = 0; a < m; ++a)
        for (int bb = a + 1; bb < m; ++bb)
          for (int g = 0; g < m; ++g)
            for (int d = g + 1; d < m; ++d) {
              const Eigen::MatrixXd op = c[a].transpose() * c[bb].transpose() * c[d] * c[g];
              for (Mask ket : b.states()) {
                const auto res = apply_pair_operator(ket, {a, bb}, {g, d});
                Eigen::VectorXd col = op.col(static_cast<Eigen::Index>(ket));
                if (!res) {
                  CHECK(col.norm() == 0.0);
                } else {
                  CHECK(col(static_cast<Eigen::Index>(res->first)) == res->second);
                  CHECK(col.norm() == 1.0);
                }
              }
            }
    }
  }
}
