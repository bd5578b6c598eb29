// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigentherm/thermo.hpp"

#include <cmath>
#include <numbers>

#include "eigentherm/errors.hpp"

namespace eigentherm {

DosFit fit_dos_gaussian(std::span<const double> energies) {
  if (energies.size() < 10) throw ParameterError("fit_dos_gaussian: need at least 10 energies");
  const double n = static_cast<double>(energies.size());
  double mean = 0.0;
  for (double e : energies) mean += e;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double e : energies) {
    const double d = e - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw ParameterError("fit_dos_gaussian: spectrum has zero variance");

  DosFit fit;
  fit.center = mean;
  fit.sigma2 = m2;
  fit.rho0 = n / std::sqrt(2.0 * std::numbers::pi * m2);
  fit.skewness = m3 / std::pow(m2, 1.5);
  fit.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  fit.count = energies.size();
  return fit;
}

double entropy(double e, const DosFit& fit) noexcept {
  const double x = e - fit.center;
  return std::log(fit.rho0) - x * x / (2.0 * fit.sigma2);
}

double entropy_slope(double e, const DosFit& fit) noexcept { return -(e - fit.center) / fit.sigma2; }

std::optional<double> theoretical_temperature(double e, const DosFit& fit) noexcept {
  const double x = e - fit.center;
  if (x == 0.0) return std::nullopt;
  return -fit.sigma2 / x;
}

TemperatureComparison compare_temperatures(std::span<const double> energies,
                                           std::span<const ProbeState> probes, const DosFit& fit,
                                           TemperatureWindow window, double tol) {
  if (energies.size() != probes.size())
    throw ParameterError("compare_temperatures: energies and probes differ in length");
  if (!(window.lo < window.hi)) throw ParameterError("compare_temperatures: empty window");

  TemperatureComparison out;
  const std::size_t half = energies.size() / 2;
  for (std::size_t a = 0; a < half; ++a) {
    const auto t_th = theoretical_temperature(energies[a], fit);
    if (!t_th || *t_th <= 0.0) continue;
    TemperatureRow row;
    row.state = a;
    row.energy = energies[a];
    row.t_th = *t_th;
    row.t_probe = probes[a].temperature;
    row.rel_dev = std::abs(row.t_probe - row.t_th) / row.t_th;
    row.in_window = row.t_th >= window.lo && row.t_th <= window.hi;
    row.within = probes[a].converged && row.rel_dev < tol;
    if (row.in_window) {
      ++out.in_window;
      if (row.within) ++out.within;
    }
    out.rows.push_back(row);
  }
  if (out.in_window == 0) throw ParameterError("compare_temperatures: no state inside the window");
  out.fraction = static_cast<double>(out.within) / static_cast<double>(out.in_window);
  return out;
}

}  // namespace eigentherm
