// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file csv.hpp
 * @brief CSV files with one schema line:
 *
 *   # eigentherm <schema>/v<version> | col1,col2,...
 *
 * followed by plain comma-separated rows. Floats are written with 17
 * significant digits.
 */

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace eigentherm {

std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& schema, int version,
            std::vector<std::string> columns);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(long long v);
  CsvWriter& operator<<(std::size_t v) { return *this << static_cast<long long>(v); }
  CsvWriter& operator<<(int v) { return *this << static_cast<long long>(v); }
  CsvWriter& operator<<(const std::string& v);
  /// Terminates the current row; throws ParameterError on a column count mismatch.
  void end_row();
  void close();

 private:
  void separator();
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t field_ = 0;
};

struct CsvTable {
  std::string schema;
  int version = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Column by name; throws ParameterError naming the missing column.
  [[nodiscard]] std::size_t column(const std::string& name) const;
  [[nodiscard]] std::vector<double> numbers(const std::string& name) const;
  [[nodiscard]] double number(std::size_t row, const std::string& name) const;
};

/// Parses a file written by CsvWriter. Throws ParameterError on a missing or
/// malformed schema line or ragged rows, std::runtime_error on I/O failure.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace eigentherm
