// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigentherm/dump.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "eigentherm/errors.hpp"

namespace eigentherm {

namespace {

constexpr std::array<char, 8> kMagic = {'E', 'T', 'D', 'U', 'M', 'P', '\0', '\0'};

template <class T>
void put(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  std::array<char, sizeof(T)> b;
  std::memcpy(b.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  out.write(b.data(), b.size());
}

template <class T>
T get(std::istream& in) {
  std::array<char, sizeof(T)> b;
  if (!in.read(b.data(), b.size())) throw ParameterError("dump: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  T v;
  std::memcpy(&v, b.data(), sizeof(T));
  return v;
}

}  // namespace

void write_dump(const std::filesystem::path& path, const SpectrumDump& d) {
  if (d.occupancies.size() != d.energies.size() * d.m)
    throw ParameterError("dump: occupancy table does not match N*m");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kDumpVersion);
  put<std::uint32_t>(out, d.m);
  put<std::uint32_t>(out, d.n);
  put<std::uint32_t>(out, 0);
  put<std::uint64_t>(out, d.energies.size());
  for (double e : d.energies) put<double>(out, e);
  for (double f : d.occupancies) put<double>(out, f);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

SpectrumDump read_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw ParameterError("dump: bad magic");
  const auto version = get<std::uint32_t>(in);
  if (version != kDumpVersion) throw ParameterError("dump: unsupported version " + std::to_string(version));
  SpectrumDump d;
  d.m = get<std::uint32_t>(in);
  d.n = get<std::uint32_t>(in);
  (void)get<std::uint32_t>(in);
  const auto count = get<std::uint64_t>(in);
  d.energies.resize(count);
  for (auto& e : d.energies) e = get<double>(in);
  d.occupancies.resize(count * d.m);
  for (auto& f : d.occupancies) f = get<double>(in);
  return d;
}

}  // namespace eigentherm
