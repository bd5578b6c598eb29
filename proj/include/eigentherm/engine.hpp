// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file engine.hpp
 * @brief Linear-response thermoelectrics of a probe biased by (dMu, dT)
 * away from its current-free point.
 *
 *   L0 = sum_a dF/dmu,  L1 = T sum_a dF/dT,  L2 = T sum_a (eps_a - mu) dF/dT
 *   ZT^-1 = L0 L2 / L1^2 - 1
 *   eta_max = (sqrt(1+ZT) - 1) / (sqrt(1+ZT) + 1) * |dT| / T
 */

#pragma once

#include "eigentherm/hamiltonian.hpp"
#include "eigentherm/probe.hpp"

namespace eigentherm {

struct OnsagerCoefficients {
  double l0 = 0.0;  ///< 1/energy
  double l1 = 0.0;  ///< dimensionless
  double l2 = 0.0;  ///< energy
  double mu = 0.0;
  double temperature = 0.0;
};

struct EngineResponse {
  double zt = 0.0;
  double eta_max = 0.0;
  double carnot = 0.0;  ///< |dT| / T
  double dT = 0.0;
  double dMu = 0.0;
};

/// Requires a converged probe with T > 0 (DomainError otherwise).
OnsagerCoefficients onsager(const SingleParticleSpectrum& sp, const ProbeState& probe,
                            const ProbeOptions& opts = {});

/// Linearized currents I = -(L0 dMu + L1 dT / T), J = -(L1 dMu + L2 dT / T).
CurrentPair biased_currents(const OnsagerCoefficients& c, double dMu, double dT) noexcept;

/// 0 when L1 == 0, +inf at Cauchy-Schwarz equality.
double figure_of_merit(const OnsagerCoefficients& c) noexcept;

double max_efficiency(double zt, double dT, double temperature) noexcept;

/// eta = I dMu / (-sgn(dT) J) from the linearized currents: power over the
/// heat drawn from the hotter side.
double efficiency(const OnsagerCoefficients& c, double dMu, double dT) noexcept;

struct EfficiencyOptimum {
  double eta = 0.0;
  double dMu = 0.0;
};

/// Numerical maximum of efficiency() over dMu at fixed dT: a grid scan of
/// the power-producing interval followed by golden-section refinement.
EfficiencyOptimum maximize_efficiency(const OnsagerCoefficients& c, double dT, int grid_points = 2001);

EngineResponse engine_response(const OnsagerCoefficients& c, double dMu, double dT) noexcept;

}  // namespace eigentherm
