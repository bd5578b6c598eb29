// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigentherm/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "eigentherm/errors.hpp"

namespace eigentherm {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& schema, int version,
                     std::vector<std::string> columns)
    : path_(path), out_(path), columns_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out_ << "# eigentherm " << schema << "/v" << version << " | ";
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::separator() {
  if (field_++ > 0) out_ << ',';
}

CsvWriter& CsvWriter::operator<<(double v) {
  separator();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(long long v) {
  separator();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
  separator();
  out_ << v;
  return *this;
}

void CsvWriter::end_row() {
  if (field_ != columns_)
    throw ParameterError(path_.string() + ": row has " + std::to_string(field_) + " fields, expected " +
                         std::to_string(columns_));
  out_ << '\n';
  field_ = 0;
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw std::runtime_error("error writing " + path_.string());
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw ParameterError("csv schema " + schema + ": no column named '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const std::string& cell = rows.at(row)[column(name)];
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0')
    throw ParameterError("csv column '" + name + "': cannot parse '" + cell + "' as a number");
  return v;
}

std::vector<double> CsvTable::numbers(const std::string& name) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) out.push_back(number(r, name));
  return out;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# eigentherm ", 0) != 0)
    throw ParameterError(path.string() + ": missing '# eigentherm' schema line");
  const auto bar = line.find(" | ");
  if (bar == std::string::npos) throw ParameterError(path.string() + ": malformed schema line");
  const std::string id = line.substr(13, bar - 13);
  const auto slash = id.rfind("/v");
  if (slash == std::string::npos) throw ParameterError(path.string() + ": schema lacks a version");

  CsvTable t;
  t.schema = id.substr(0, slash);
  const std::string ver = id.substr(slash + 2);
  const auto [end, ec] = std::from_chars(ver.data(), ver.data() + ver.size(), t.version);
  if (ec != std::errc{} || end != ver.data() + ver.size() || ver.empty())
    throw ParameterError("read_csv: bad schema version in " + path.string());
  for (auto& c : split(line.substr(bar + 3), ',')) t.columns.push_back(trim(c));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != t.columns.size())
      throw ParameterError(path.string() + ": row " + std::to_string(t.rows.size() + 1) + " has " +
                           std::to_string(cells.size()) + " fields, expected " +
                           std::to_string(t.columns.size()));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

}  // namespace eigentherm
