// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigentherm/fock.hpp"

#include <bit>
#include <string>

#include "eigentherm/errors.hpp"

namespace eigentherm {

namespace {

constexpr Mask bit(int a) noexcept { return Mask{1} << a; }

constexpr Mask below(int a) noexcept { return a == 0 ? Mask{0} : (~Mask{0} >> (64 - a)); }

// Fermionic sign of moving past all occupied orbitals below `a`.
constexpr int parity_below(Mask state, int a) noexcept {
  return (std::popcount(state & below(a)) & 1) ? -1 : 1;
}

bool annihilate(Mask& state, int a, int& sign) noexcept {
  if (!(state & bit(a))) return false;
  sign *= parity_below(state, a);
  state &= ~bit(a);
  return true;
}

bool create(Mask& state, int a, int& sign) noexcept {
  if (state & bit(a)) return false;
  sign *= parity_below(state, a);
  state |= bit(a);
  return true;
}

}  // namespace

void SystemParams::validate() const {
  if (m <= 0 || m > kMaxOrbitals)
    throw ParameterError("orbital count m must lie in [1, 64], got " + std::to_string(m));
  if (n <= 0 || n > m)
    throw ParameterError("particle count n must lie in [1, m], got " + std::to_string(n));
  if (!(delta > 0.0)) throw ParameterError("level spacing delta must be positive");
  if (!(u >= 0.0)) throw ParameterError("interaction bound u must be non-negative");
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (int i = 0; i < k; ++i) {
    result = result * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
    if (result > ~std::uint64_t{0})
      throw CapacityError("binomial C(" + std::to_string(n) + "," + std::to_string(k) +
                          ") overflows 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

FockBasis::FockBasis(int m, int n) : m_(m), n_(n) {
  if (m <= 0 || m > kMaxOrbitals)
    throw ParameterError("orbital count m must lie in [1, 64], got " + std::to_string(m));
  if (n <= 0 || n > m)
    throw ParameterError("particle count n must lie in [1, m], got " + std::to_string(n));
  const std::uint64_t size = binomial(m, n);
  if (size > kMaxBasisSize)
    throw CapacityError("basis C(" + std::to_string(m) + "," + std::to_string(n) + ") = " +
                        std::to_string(size) + " exceeds the supported size");

  rank_table_.assign(static_cast<std::size_t>(m), std::vector<std::uint64_t>(n, 0));
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i) rank_table_[a][i] = binomial(a, i + 1);

  // Gosper's hack walks masks of fixed popcount in ascending order.
  states_.reserve(size);
  Mask x = below(n);
  states_.push_back(x);
  for (std::uint64_t k = 1; k < size; ++k) {
    const Mask c = x & (~x + 1);
    const Mask r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
    states_.push_back(x);
  }
}

std::optional<std::size_t> FockBasis::index(Mask state) const noexcept {
  if (std::popcount(state) != n_) return std::nullopt;
  if (m_ < 64 && (state >> m_) != 0) return std::nullopt;
  std::uint64_t rank = 0;
  int i = 0;
  for (Mask s = state; s; s &= s - 1, ++i) rank += rank_table_[std::countr_zero(s)][i];
  return static_cast<std::size_t>(rank);
}

FockBasis enumerate_basis(int m, int n) { return FockBasis(m, n); }

int orbital_occupied(Mask state, int alpha, int m) {
  if (alpha < 0 || alpha >= m || alpha >= kMaxOrbitals)
    throw ParameterError("orbital index " + std::to_string(alpha) + " out of range");
  return static_cast<int>((state >> alpha) & 1u);
}

std::optional<std::pair<Mask, int>> apply_pair_operator(Mask ket, OrbitalPair added,
                                                        OrbitalPair removed) noexcept {
  int sign = 1;
  Mask s = ket;
  if (!annihilate(s, removed.first, sign)) return std::nullopt;
  if (!annihilate(s, removed.second, sign)) return std::nullopt;
  if (!create(s, added.second, sign)) return std::nullopt;
  if (!create(s, added.first, sign)) return std::nullopt;
  return std::pair{s, sign};
}

std::optional<std::pair<Mask, int>> apply_hop(Mask ket, int to, int from) noexcept {
  int sign = 1;
  Mask s = ket;
  if (!annihilate(s, from, sign)) return std::nullopt;
  if (!create(s, to, sign)) return std::nullopt;
  return std::pair{s, sign};
}

std::optional<PairConnection> two_body_connection(Mask bra, Mask ket) {
  if (std::popcount(bra) != std::popcount(ket))
    throw ParameterError("two_body_connection: particle numbers differ");
  const Mask diff = bra ^ ket;
  const int moved = std::popcount(diff) / 2;
  if (moved == 0) return PairConnection{};
  if (moved > 2) return std::nullopt;

  Mask gone = ket & diff;
  Mask come = bra & diff;
  PairConnection c;
  if (moved == 1) {
    const int from = std::countr_zero(gone);
    const int to = std::countr_zero(come);
    c.kind = PairConnection::Kind::single;
    c.removed = {from, from};
    c.added = {to, to};
    c.sign = apply_hop(ket, to, from)->second;
    return c;
  }
  const int g = std::countr_zero(gone);
  gone &= gone - 1;
  const int d = std::countr_zero(gone);
  const int a = std::countr_zero(come);
  come &= come - 1;
  const int b = std::countr_zero(come);
  c.kind = PairConnection::Kind::pair;
  c.removed = {g, d};
  c.added = {a, b};
  c.sign = apply_pair_operator(ket, c.added, c.removed)->second;
  return c;
}

}  // namespace eigentherm
