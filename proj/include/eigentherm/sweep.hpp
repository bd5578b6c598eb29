// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sweep.hpp
 * @brief Per-realization pipeline and disorder-ensemble sweeps over the
 * interaction strength.
 *
 * Realization r of a sweep uses seed mix_seed(master, r) for every U, so the
 * same levels and the same (rescaled) interaction draws are reused along the
 * U grid. Aggregation: states of one realization are averaged inside a bin,
 * then realizations are averaged with equal weights.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eigentherm/fock.hpp"
#include "eigentherm/hamiltonian.hpp"
#include "eigentherm/probe.hpp"
#include "eigentherm/thermo.hpp"

namespace eigentherm {

struct StateRecord {
  double energy = 0.0;
  std::vector<double> f;
  ProbeState probe;
  VariancePair variance;  ///< zero when the probe did not converge
};

struct RealizationResult {
  SystemParams params;
  SingleParticleSpectrum levels;
  std::optional<DosFit> dos;  ///< absent for N < 10
  std::vector<StateRecord> states;  ///< ascending energy
  std::size_t unconverged = 0;
  bool failed = false;
  std::string error;

  [[nodiscard]] double ground_energy() const { return states.empty() ? 0.0 : states.front().energy; }
};

struct RealizationOptions {
  ProbeOptions probe;
};

/// Full pipeline for one realization. Eigensolver failures are caught and
/// reported through `failed` / `error`; invalid parameters throw.
RealizationResult run_realization(const SystemParams& params, const RealizationOptions& opts = {});

struct EnergyBin {
  double center = 0.0;  ///< target excitation energy above the ground state
  double half_width = 0.5;
};

struct Thresholds {
  double particle = 8e-3;  ///< on mean dI^2, units t^4
  double heat = 8e-2;      ///< on mean dJ^2, units t^4
};

struct SweepConfig {
  SystemParams params;  ///< template; params.u and the per-realization seed are overridden
  std::vector<double> u_grid;
  std::size_t realizations = 50;
  std::vector<EnergyBin> bins;
  Thresholds thresholds;
  unsigned threads = 0;  ///< 0: worker_count()
  ProbeOptions probe;

  /// Throws ParameterError on an empty/unsorted grid, R == 0, or
  /// overlapping bins.
  void validate() const;
};

/// u_points log-spaced values over [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t points);

/// Bins at the given excitation energies.
std::vector<EnergyBin> bins_at(std::span<const double> centers, double half_width);

struct CurvePoint {
  double mean_dI2 = 0.0;
  double se_dI2 = 0.0;  ///< NaN with fewer than two realizations
  double mean_dJ2 = 0.0;
  double se_dJ2 = 0.0;
  std::size_t states = 0;
  std::size_t realizations = 0;

  [[nodiscard]] bool missing() const noexcept { return realizations == 0; }
};

struct CriticalCrossing {
  std::optional<double> u;
  bool multiple = false;  ///< more than one downward crossing on the grid
  std::size_t crossings = 0;
};

struct BinResult {
  EnergyBin bin;
  std::vector<CurvePoint> points;  ///< one per u_grid entry
  CriticalCrossing uc1;
  CriticalCrossing uc2;
};

struct SweepResult {
  std::vector<double> u_grid;
  std::vector<BinResult> bins;
  std::size_t failed_realizations = 0;
  std::size_t unconverged_states = 0;
  std::vector<std::string> failures;
};

/// Per-realization bin means for one realization; used by ensemble_sweep.
struct BinSample {
  bool present = false;
  double dI2 = 0.0;
  double dJ2 = 0.0;
  std::size_t states = 0;
};
std::vector<BinSample> bin_realization(const RealizationResult& r, std::span<const EnergyBin> bins);

/// Equal-weight mean and standard error over realizations.
CurvePoint aggregate(std::span<const BinSample> samples);

SweepResult ensemble_sweep(const SweepConfig& config);

/// First downward crossing of `threshold`, interpolated linearly in
/// (log U, log value) (linear in U when U <= 0). NaN entries are skipped.
CriticalCrossing extract_critical_u(std::span<const double> u, std::span<const double> values,
                                    double threshold);

/// Least-squares slope of log(values) against log(u) for u in [lo, hi].
/// NaN with fewer than two usable points.
double loglog_slope(std::span<const double> u, std::span<const double> values, double lo, double hi);

}  // namespace eigentherm
