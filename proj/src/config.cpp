// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigentherm/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eigentherm/errors.hpp"

namespace eigentherm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || trim(v.substr(used)) != "")
    throw ParameterError("setting '" + key + "': expected a number, got '" + v + "'");
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || trim(v.substr(used)) != "")
    throw ParameterError("setting '" + key + "': expected an integer, got '" + v + "'");
  return out;
}

}  // namespace

std::string normalize_key(std::string key) {
  key = trim(key);
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

Settings parse_settings(const std::string& text) {
  Settings s;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = normalize_key(line.substr(0, eq));
    if (key.empty()) throw ParameterError("config line " + std::to_string(lineno) + ": empty key");
    s[key] = trim(line.substr(eq + 1));
  }
  return s;
}

Settings read_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_settings(ss.str());
}

std::vector<double> parse_number_list(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_double("list", tok));
  return out;
}

SweepConfig sweep_config_from(const Settings& s) {
  static const std::set<std::string> known = {
      "m", "n", "delta", "seed", "realizations", "threads", "u_grid", "u_min", "u_max", "u_points",
      "bins", "bins_eps_b", "bin_half_width", "threshold_i", "threshold_j", "resonant_orbitals"};
  for (const auto& [k, v] : s)
    if (!known.count(k)) throw ParameterError("unknown sweep setting '" + k + "'");

  auto get = [&](const std::string& k) -> const std::string* {
    auto it = s.find(k);
    return it == s.end() ? nullptr : &it->second;
  };

  SweepConfig c;
  c.params.m = 12;
  c.params.n = 6;
  if (auto v = get("m")) c.params.m = static_cast<int>(to_integer("m", *v));
  if (auto v = get("n")) c.params.n = static_cast<int>(to_integer("n", *v));
  if (auto v = get("delta")) c.params.delta = to_double("delta", *v);
  if (auto v = get("seed")) c.params.seed = static_cast<std::uint64_t>(to_integer("seed", *v));
  if (auto v = get("realizations")) {
    const long long r = to_integer("realizations", *v);
    if (r <= 0) throw ParameterError("realizations must be positive");
    c.realizations = static_cast<std::size_t>(r);
  }
  if (auto v = get("threads")) c.threads = static_cast<unsigned>(std::max(0LL, to_integer("threads", *v)));
  if (auto v = get("threshold_i")) c.thresholds.particle = to_double("threshold_i", *v);
  if (auto v = get("threshold_j")) c.thresholds.heat = to_double("threshold_j", *v);
  if (auto v = get("resonant_orbitals"))
    c.probe.resonant_orbitals = static_cast<int>(to_integer("resonant_orbitals", *v));

  if (auto v = get("u_grid")) {
    c.u_grid = parse_number_list(*v);
  } else {
    double lo = 0.01, hi = 1.0;
    long long pts = 15;
    if (auto w = get("u_min")) lo = to_double("u_min", *w);
    if (auto w = get("u_max")) hi = to_double("u_max", *w);
    if (auto w = get("u_points")) pts = to_integer("u_points", *w);
    if (pts <= 0) throw ParameterError("u_points must be positive");
    c.u_grid = log_grid(lo, hi, static_cast<std::size_t>(pts));
  }
  for (double& u : c.u_grid) u *= c.params.delta;

  double half = 0.5;
  if (auto v = get("bin_half_width")) half = to_double("bin_half_width", *v);
  std::vector<double> centers;
  if (auto v = get("bins")) {
    centers = parse_number_list(*v);
  } else if (!get("bins_eps_b")) {
    centers = {2, 4, 6, 8, 10, 12, 14};
  }
  for (double& x : centers) x *= c.params.delta;
  if (auto v = get("bins_eps_b")) {
    const double b = c.params.bandwidth();
    for (double x : parse_number_list(*v)) centers.push_back(x * b);
  }
  c.bins = bins_at(centers, half * c.params.delta);
  return c;
}

}  // namespace eigentherm
