// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eigentherm/config.hpp"

namespace eigentherm::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kUsage = 2, kNumerical = 3 };

struct RunContext {
  std::vector<std::string> argv;
  std::filesystem::path out_dir = ".";
  std::ostream* log = nullptr;
};

/// Settings keys: m, n, delta, u, seed, window_lo, window_hi, tol,
/// resonant_orbitals, threads, dump.
void cmd_diag(const Settings& settings, const RunContext& ctx);

/// Settings keys as sweep_config_from().
void cmd_sweep(const Settings& settings, const RunContext& ctx);

/// Settings keys: in (diag output directory) or inline diag keys; states
/// (comma list of 1-based A) or all_lower = true; dmu, dt (energy units);
/// single_orbital = true with epsilon, mu, temperature for the synthetic
/// one-level probe.
void cmd_engine(const Settings& settings, const RunContext& ctx);

}  // namespace eigentherm::cli
