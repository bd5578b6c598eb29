// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigentherm/engine.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "eigentherm/errors.hpp"

namespace eigentherm {

OnsagerCoefficients onsager(const SingleParticleSpectrum& sp, const ProbeState& probe,
                            const ProbeOptions& opts) {
  if (!probe.converged) throw DomainError("onsager: probe state did not converge");
  if (!(probe.temperature > 0.0) || !std::isfinite(probe.temperature))
    throw DomainError("onsager: engine analysis needs a finite positive temperature, got T = " +
                      std::to_string(probe.temperature));
  std::size_t k = sp.epsilon.size();
  if (opts.resonant_orbitals) k = static_cast<std::size_t>(*opts.resonant_orbitals);

  const double t = probe.temperature;
  OnsagerCoefficients c;
  c.mu = probe.mu;
  c.temperature = t;
  for (std::size_t a = 0; a < k; ++a) {
    const double x = sp.epsilon[a] - probe.mu;
    const double f = fermi(sp.epsilon[a], probe.mu, t);
    const double w = f * (1.0 - f) / t;  // dF/dmu; T dF/dT = x dF/dmu
    c.l0 += w;
    c.l1 += x * w;
    c.l2 += x * x * w;
  }
  return c;
}

CurrentPair biased_currents(const OnsagerCoefficients& c, double dMu, double dT) noexcept {
  return {-(c.l0 * dMu + c.l1 * dT / c.temperature), -(c.l1 * dMu + c.l2 * dT / c.temperature)};
}

double figure_of_merit(const OnsagerCoefficients& c) noexcept {
  if (c.l1 == 0.0) return 0.0;
  const double inv = c.l0 * c.l2 / (c.l1 * c.l1) - 1.0;
  if (inv <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / inv;
}

double max_efficiency(double zt, double dT, double temperature) noexcept {
  const double carnot = std::abs(dT) / temperature;
  if (std::isinf(zt)) return carnot;
  const double s = std::sqrt(1.0 + zt);
  return (s - 1.0) / (s + 1.0) * carnot;
}

double efficiency(const OnsagerCoefficients& c, double dMu, double dT) noexcept {
  const CurrentPair r = biased_currents(c, dMu, dT);
  if (r.heat == 0.0 || dT == 0.0) return 0.0;
  // Heat drawn from the hotter side: -J when the probe is hotter, J otherwise.
  return -std::copysign(1.0, dT) * r.particle * dMu / r.heat;
}

EfficiencyOptimum maximize_efficiency(const OnsagerCoefficients& c, double dT, int grid_points) {
  if (dT == 0.0 || c.l0 <= 0.0 || c.l1 == 0.0) return {};
  // Power output -I dMu is positive strictly between dMu = 0 and the
  // stopping bias dMu = -L1 dT / (L0 T).
  const double stop = -c.l1 * dT / (c.l0 * c.temperature);
  const double lo = std::min(0.0, stop);
  const double hi = std::max(0.0, stop);
  auto neg_eta = [&](double x) { return -efficiency(c, x, dT); };

  double best_x = 0.0, best = 0.0;
  for (int i = 1; i < grid_points; ++i) {
    const double x = lo + (hi - lo) * i / grid_points;
    const double eta = -neg_eta(x);
    if (eta > best) {
      best = eta;
      best_x = x;
    }
  }
  const double step = (hi - lo) / grid_points;
  const auto [x, fx] = boost::math::tools::brent_find_minima(
      neg_eta, std::max(lo, best_x - step), std::min(hi, best_x + step), 52);
  if (-fx > best) return {-fx, x};
  return {best, best_x};
}

EngineResponse engine_response(const OnsagerCoefficients& c, double dMu, double dT) noexcept {
  EngineResponse r;
  r.zt = figure_of_merit(c);
  r.eta_max = max_efficiency(r.zt, dT, c.temperature);
  r.carnot = std::abs(dT) / c.temperature;
  r.dT = dT;
  r.dMu = dMu;
  return r;
}

}  // namespace eigentherm
