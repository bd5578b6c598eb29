// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "eigentherm/sweep.hpp"

namespace eigentherm {

/// Flat `key = value` settings; `#` starts a comment. Keys use the long CLI
/// flag names with '-' or '_' interchangeable (normalized to '_').
using Settings = std::map<std::string, std::string>;

Settings parse_settings(const std::string& text);
Settings read_settings(const std::filesystem::path& path);
std::string normalize_key(std::string key);

/// Comma- or whitespace-separated list of numbers; ParameterError on junk.
std::vector<double> parse_number_list(const std::string& text);

/// Recognized keys:
///   m, n, delta, seed, realizations, threads
///   u_grid = 0.01,0.02,...   or   u_min, u_max, u_points (log-spaced)
///   bins = 2,4,...           excitation energies in units of delta
///   bins_eps_b = 0.3,...     excitation energies as fractions of B = n(m-n) delta
///   bin_half_width           in units of delta (default 0.5)
///   threshold_i, threshold_j
///   resonant_orbitals
/// Unknown keys raise ParameterError. Missing keys take sweep defaults:
/// R = 50, 15 log-spaced U in [0.01, 1], bins 2,4,...,14.
SweepConfig sweep_config_from(const Settings& s);

}  // namespace eigentherm
