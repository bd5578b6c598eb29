// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigentherm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eigentherm/errors.hpp"
#include "eigentherm/occupancy.hpp"
#include "eigentherm/parallel.hpp"
#include "eigentherm/random.hpp"

namespace eigentherm {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

RealizationResult run_realization(const SystemParams& params, const RealizationOptions& opts) {
  params.validate();
  RealizationResult out;
  out.params = params;
  const FockBasis basis(params.m, params.n);
  auto [levels, tensor] = sample_realization(params);
  out.levels = levels;

  EigenSystem es;
  try {
    es = diagonalize(build_hamiltonian(basis, levels, tensor));
  } catch (const NumericalError& e) {
    out.failed = true;
    out.error = e.what();
    return out;
  }
  auto profiles = all_occupancies(es, basis);
  if (es.size() >= 10) out.dos = fit_dos_gaussian(std::span(es.energies.data(), es.size()));

  out.states.resize(es.size());
  for (std::size_t a = 0; a < es.size(); ++a) {
    auto& rec = out.states[a];
    rec.energy = profiles[a].energy;
    ProbeInit init{0.0, params.delta};
    if (out.dos) {
      const auto t_th = theoretical_temperature(rec.energy, *out.dos);
      if (t_th && *t_th > 0.0) init.temperature = *t_th;
    }
    rec.probe = solve_probe(profiles[a], levels, init, opts.probe);
    if (rec.probe.converged)
      rec.variance = current_variances(profiles[a], levels, rec.probe, opts.probe);
    else
      ++out.unconverged;
    rec.f = std::move(profiles[a].f);
  }
  return out;
}

void SweepConfig::validate() const {
  params.validate();
  if (u_grid.empty()) throw ParameterError("sweep: U grid is empty");
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    if (!(u_grid[i] >= 0.0)) throw ParameterError("sweep: U values must be non-negative");
    if (i > 0 && !(u_grid[i] > u_grid[i - 1])) throw ParameterError("sweep: U grid must be strictly ascending");
  }
  if (realizations == 0) throw ParameterError("sweep: need at least one realization");
  if (bins.empty()) throw ParameterError("sweep: no energy bins");
  std::vector<EnergyBin> sorted = bins;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.center < b.center; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].half_width > 0.0)) throw ParameterError("sweep: bin half-width must be positive");
    if (i > 0 && sorted[i - 1].center + sorted[i - 1].half_width > sorted[i].center - sorted[i].half_width)
      throw ParameterError("sweep: energy bins overlap");
  }
  if (!(thresholds.particle > 0.0) || !(thresholds.heat > 0.0))
    throw ParameterError("sweep: thresholds must be positive");
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (points == 0 || !(lo > 0.0) || !(hi >= lo)) throw ParameterError("log_grid: need 0 < lo <= hi, points > 0");
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<EnergyBin> bins_at(std::span<const double> centers, double half_width) {
  std::vector<EnergyBin> bins;
  for (double c : centers) bins.push_back({c, half_width});
  return bins;
}

std::vector<BinSample> bin_realization(const RealizationResult& r, std::span<const EnergyBin> bins) {
  std::vector<BinSample> out(bins.size());
  if (r.failed || r.states.empty()) return out;
  const double ground = r.ground_energy();
  for (const auto& s : r.states) {
    if (!s.probe.converged) continue;
    const double excitation = s.energy - ground;
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (excitation >= bins[b].center - bins[b].half_width && excitation < bins[b].center + bins[b].half_width) {
        out[b].dI2 += s.variance.dI2;
        out[b].dJ2 += s.variance.dJ2;
        ++out[b].states;
      }
    }
  }
  for (auto& b : out) {
    if (b.states == 0) continue;
    b.present = true;
    b.dI2 /= static_cast<double>(b.states);
    b.dJ2 /= static_cast<double>(b.states);
  }
  return out;
}

CurvePoint aggregate(std::span<const BinSample> samples) {
  CurvePoint p;
  double sI = 0.0, sJ = 0.0;
  for (const auto& s : samples) {
    if (!s.present) continue;
    ++p.realizations;
    p.states += s.states;
    sI += s.dI2;
    sJ += s.dJ2;
  }
  if (p.realizations == 0) {
    p.mean_dI2 = p.mean_dJ2 = p.se_dI2 = p.se_dJ2 = kNaN;
    return p;
  }
  const double r = static_cast<double>(p.realizations);
  p.mean_dI2 = sI / r;
  p.mean_dJ2 = sJ / r;
  if (p.realizations < 2) {
    p.se_dI2 = p.se_dJ2 = kNaN;
    return p;
  }
  double vI = 0.0, vJ = 0.0;
  for (const auto& s : samples) {
    if (!s.present) continue;
    vI += (s.dI2 - p.mean_dI2) * (s.dI2 - p.mean_dI2);
    vJ += (s.dJ2 - p.mean_dJ2) * (s.dJ2 - p.mean_dJ2);
  }
  p.se_dI2 = std::sqrt(vI / (r - 1.0) / r);
  p.se_dJ2 = std::sqrt(vJ / (r - 1.0) / r);
  return p;
}

SweepResult ensemble_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t nu = config.u_grid.size();
  const std::size_t nr = config.realizations;
  const unsigned workers = worker_count(config.threads);
  if (workers > 1) set_solver_threads(1);

  struct TaskOut {
    std::vector<BinSample> bins;
    std::size_t unconverged = 0;
    bool failed = false;
    std::string error;
  };
  std::vector<TaskOut> tasks(nu * nr);
  RealizationOptions ropts{config.probe};
  parallel_for(tasks.size(), workers, [&](std::size_t id) {
    const std::size_t iu = id / nr;
    const std::size_t r = id % nr;
    SystemParams p = config.params;
    p.u = config.u_grid[iu];
    p.seed = mix_seed(config.params.seed, r);
    const RealizationResult res = run_realization(p, ropts);
    auto& t = tasks[id];
    t.bins = bin_realization(res, config.bins);
    t.unconverged = res.unconverged;
    t.failed = res.failed;
    if (res.failed) t.error = "U=" + std::to_string(p.u) + " realization " + std::to_string(r) + ": " + res.error;
  });

  SweepResult out;
  out.u_grid = config.u_grid;
  for (const auto& t : tasks) {
    out.unconverged_states += t.unconverged;
    if (t.failed) {
      ++out.failed_realizations;
      out.failures.push_back(t.error);
    }
  }
  out.bins.resize(config.bins.size());
  std::vector<BinSample> column(nr);
  for (std::size_t b = 0; b < config.bins.size(); ++b) {
    auto& br = out.bins[b];
    br.bin = config.bins[b];
    std::vector<double> dI2(nu), dJ2(nu);
    for (std::size_t iu = 0; iu < nu; ++iu) {
      for (std::size_t r = 0; r < nr; ++r) column[r] = tasks[iu * nr + r].bins[b];
      br.points.push_back(aggregate(column));
      dI2[iu] = br.points.back().mean_dI2;
      dJ2[iu] = br.points.back().mean_dJ2;
    }
    br.uc1 = extract_critical_u(config.u_grid, dI2, config.thresholds.particle);
    br.uc2 = extract_critical_u(config.u_grid, dJ2, config.thresholds.heat);
  }
  return out;
}

CriticalCrossing extract_critical_u(std::span<const double> u, std::span<const double> values,
                                    double threshold) {
  if (u.size() != values.size()) throw ParameterError("extract_critical_u: length mismatch");
  if (!(threshold > 0.0)) throw ParameterError("extract_critical_u: threshold must be positive");
  CriticalCrossing out;
  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::isnan(values[i])) continue;
    if (!prev) {
      if (values[i] == threshold) {
        ++out.crossings;
        out.u = u[i];
      }
      prev = i;
      continue;
    }
    const double v0 = values[*prev], v1 = values[i];
    const double u0 = u[*prev], u1 = u[i];
    if (v0 > threshold && v1 <= threshold) {
      ++out.crossings;
      if (!out.u) {
        if (v1 == threshold) {
          out.u = u1;
        } else if (u0 > 0.0 && v1 > 0.0) {
          const double t = (std::log(threshold) - std::log(v0)) / (std::log(v1) - std::log(v0));
          out.u = std::exp(std::log(u0) + t * (std::log(u1) - std::log(u0)));
        } else {
          out.u = u0 + (threshold - v0) / (v1 - v0) * (u1 - u0);
        }
      }
    }
    prev = i;
  }
  out.multiple = out.crossings > 1;
  return out;
}

double loglog_slope(std::span<const double> u, std::span<const double> values, double lo, double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < u.size() && i < values.size(); ++i) {
    if (u[i] < lo || u[i] > hi || !(u[i] > 0.0) || !(values[i] > 0.0)) continue;
    const double x = std::log(u[i]), y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 2) return kNaN;
  const double kk = static_cast<double>(k);
  return (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
}

}  // namespace eigentherm
