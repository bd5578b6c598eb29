// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

namespace eigentherm {

/// Lowercase hex SHA-256 of a file's contents.
std::string sha256_file(const std::filesystem::path& path);

struct OutputEntry {
  std::string file;  ///< relative to the output directory
  std::uint64_t bytes = 0;
  std::string sha256;
};

/// Record of one CLI run, written as manifest.json next to its outputs.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::json config;  ///< fully resolved settings
  std::uint64_t seed = 0;
  std::string version;
  std::string started;   ///< ISO-8601 UTC
  std::string finished;  ///< ISO-8601 UTC
  std::vector<OutputEntry> outputs;

  /// Hash and register `file` inside `dir`.
  void add_output(const std::filesystem::path& dir, const std::string& file);
  [[nodiscard]] nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;
};

std::string utc_timestamp();

}  // namespace eigentherm
