// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file probe.hpp
 * @brief Fermi-Dirac probe thermometry.
 *
 * A noninteracting probe with one level resonant with each orbital exchanges
 * particles with the system in eigenstate A. To leading order in the
 * tunneling amplitude t (units t = 1 throughout):
 *
 *   I(mu, T) = sum_a [f_A(a) - F(eps_a)]
 *   J(mu, T) = sum_a (eps_a - mu) [f_A(a) - F(eps_a)],   F = 1/(1 + e^{(eps-mu)/T})
 *
 * The probe state (mu_A, T_A) is the root I = J = 0. Roots are found by a
 * damped Newton iteration in (mu, beta = 1/T); when the Jacobian degenerates
 * (occupancies frozen at 0/1 relative to the probe) a nested bracketing
 * solve takes over.
 */

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eigentherm/hamiltonian.hpp"
#include "eigentherm/occupancy.hpp"

namespace eigentherm {

struct ProbeOptions {
  /// Couple the probe only to the lowest k orbitals. Unset: all m orbitals.
  std::optional<int> resonant_orbitals;
  double tolerance = 1e-10;  ///< on max(|I|, |J| / delta)
  int max_iterations = 200;
  int max_halvings = 40;
};

struct ProbeInit {
  double mu = 0.0;
  double temperature = 1.0;
};

enum class ProbeStatus { converged, max_iterations, degenerate };
enum class ProbeMethod { newton, bracket };

std::string_view to_string(ProbeStatus s) noexcept;
std::string_view to_string(ProbeMethod m) noexcept;

struct ProbeState {
  double mu = 0.0;
  double temperature = 0.0;  ///< signed; +/-inf when beta == 0
  double beta = 0.0;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  ///< max(|I|, |J| / delta) at exit
  ProbeStatus status = ProbeStatus::max_iterations;
  ProbeMethod method = ProbeMethod::newton;
};

struct CurrentPair {
  double particle = 0.0;  ///< I, units t^2
  double heat = 0.0;      ///< J, units t^2 * energy
};

struct VariancePair {
  double dI2 = 0.0;  ///< units t^4
  double dJ2 = 0.0;  ///< units t^4 * energy^2
};

/// d(I, J)/d(mu, beta).
struct CurrentJacobian {
  double dI_dmu = 0.0;
  double dI_dbeta = 0.0;
  double dJ_dmu = 0.0;
  double dJ_dbeta = 0.0;
};

/// Fermi-Dirac occupancy. temperature == 0 is the step function (0.5 at e == mu).
double fermi(double e, double mu, double temperature) noexcept;
/// Same in terms of inverse temperature; finite for any beta.
double fermi_beta(double e, double mu, double beta) noexcept;

CurrentPair currents(const OccupancyProfile& f, const SingleParticleSpectrum& sp, double mu,
                     double temperature, const ProbeOptions& opts = {});
CurrentPair currents_beta(const OccupancyProfile& f, const SingleParticleSpectrum& sp, double mu,
                          double beta, const ProbeOptions& opts = {});
CurrentJacobian current_jacobian(const OccupancyProfile& f, const SingleParticleSpectrum& sp,
                                 double mu, double beta, const ProbeOptions& opts = {});

/// Solve I = J = 0 for (mu_A, T_A). Without `init`, starts at mu = 0 and
/// T = delta. Never throws for numerical trouble: the returned state carries
/// the status.
ProbeState solve_probe(const OccupancyProfile& f, const SingleParticleSpectrum& sp,
                       std::optional<ProbeInit> init = std::nullopt, const ProbeOptions& opts = {});

/// Sums of squared partial currents at the probe point. Throws ParameterError
/// if the probe did not converge.
VariancePair current_variances(const OccupancyProfile& f, const SingleParticleSpectrum& sp,
                               const ProbeState& probe, const ProbeOptions& opts = {});

/// r_a = f_A(a) - F(eps_a; mu_A, T_A) for every coupled orbital.
std::vector<double> detailed_balance_residuals(const OccupancyProfile& f, const SingleParticleSpectrum& sp,
                                               const ProbeState& probe, const ProbeOptions& opts = {});

/// Currents between two eigenstates evaluated with reference (mu, T); only
/// the heat current depends on mu.
CurrentPair pairwise_currents(const OccupancyProfile& fa, const OccupancyProfile& fb,
                              const SingleParticleSpectrum& sp, double mu, double temperature,
                              const ProbeOptions& opts = {});

}  // namespace eigentherm
