// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dump.hpp
 * @brief Binary dump of one realization's energies and occupancies.
 *
 * Layout (all little-endian):
 *   bytes  0..7   magic "ETDUMP\0\0"
 *   u32           format version (1)
 *   u32           m
 *   u32           n
 *   u32           reserved (0)
 *   u64           N, number of eigenstates
 *   f64 x N       energies E_A, ascending
 *   f64 x N*m     occupancies f_A(a), state-major
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace eigentherm {

inline constexpr std::uint32_t kDumpVersion = 1;

struct SpectrumDump {
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::vector<double> energies;
  std::vector<double> occupancies;  ///< N*m, state-major
};

void write_dump(const std::filesystem::path& path, const SpectrumDump& d);
/// Throws ParameterError on bad magic, unknown version or truncated data.
SpectrumDump read_dump(const std::filesystem::path& path);

}  // namespace eigentherm
