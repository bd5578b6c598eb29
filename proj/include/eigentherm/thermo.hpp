// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file thermo.hpp
 * @brief Gaussian density of states, Boltzmann entropy and the resulting
 * microcanonical temperature T_th(E) = -sigma^2 / (E - center), k_B = 1.
 */

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eigentherm/hamiltonian.hpp"
#include "eigentherm/probe.hpp"

namespace eigentherm {

struct DosFit {
  double center = 0.0;
  double sigma2 = 0.0;
  double rho0 = 0.0;  ///< N / (sigma sqrt(2 pi))
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  std::size_t count = 0;
};

/// Moment fit: population mean and variance of the spectrum. Needs at least
/// 10 energies and a nonzero variance (ParameterError otherwise).
DosFit fit_dos_gaussian(std::span<const double> energies);

/// S(E) = ln rho0 - (E - center)^2 / (2 sigma^2).
double entropy(double e, const DosFit& fit) noexcept;

/// dS/dE of the fitted entropy.
double entropy_slope(double e, const DosFit& fit) noexcept;

/// T_th(E) = -sigma^2 / (E - center); nullopt at E == center (infinite
/// temperature).
std::optional<double> theoretical_temperature(double e, const DosFit& fit) noexcept;

struct TemperatureWindow {
  double lo = 5.5;
  double hi = 50.0;
};

struct TemperatureRow {
  std::size_t state = 0;  ///< zero-based A
  double energy = 0.0;
  double t_th = 0.0;
  double t_probe = 0.0;
  double rel_dev = 0.0;  ///< |T_A - T_th| / T_th
  bool in_window = false;
  bool within = false;
};

struct TemperatureComparison {
  std::vector<TemperatureRow> rows;  ///< every lower-half state with finite positive T_th
  std::size_t in_window = 0;
  std::size_t within = 0;
  double fraction = 0.0;  ///< within / in_window
};

/// Probe versus theoretical temperature over the lower half of the spectrum
/// (A < N/2). Unconverged probes count as outside tolerance. Throws
/// ParameterError if no state falls inside the window.
TemperatureComparison compare_temperatures(std::span<const double> energies,
                                           std::span<const ProbeState> probes, const DosFit& fit,
                                           TemperatureWindow window = {}, double tol = 0.1);

}  // namespace eigentherm
