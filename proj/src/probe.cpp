// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigentherm/probe.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "eigentherm/errors.hpp"

namespace eigentherm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Coupled {
  std::span<const double> f;
  std::span<const double> eps;
  double delta;
};

Coupled coupled(const OccupancyProfile& p, const SingleParticleSpectrum& sp, const ProbeOptions& opts) {
  if (p.f.size() != sp.epsilon.size())
    throw ParameterError("probe: occupancy profile has " + std::to_string(p.f.size()) +
                         " orbitals, spectrum has " + std::to_string(sp.epsilon.size()));
  std::size_t k = p.f.size();
  if (opts.resonant_orbitals) {
    if (*opts.resonant_orbitals <= 0 || static_cast<std::size_t>(*opts.resonant_orbitals) > k)
      throw ParameterError("probe: resonant_orbitals out of range");
    k = static_cast<std::size_t>(*opts.resonant_orbitals);
  }
  return {std::span(p.f).first(k), std::span(sp.epsilon).first(k), sp.delta};
}

CurrentPair eval_currents(const Coupled& c, double mu, double beta) noexcept {
  CurrentPair out;
  for (std::size_t a = 0; a < c.f.size(); ++a) {
    const double d = c.f[a] - fermi_beta(c.eps[a], mu, beta);
    out.particle += d;
    out.heat += (c.eps[a] - mu) * d;
  }
  return out;
}

CurrentJacobian eval_jacobian(const Coupled& c, double mu, double beta) noexcept {
  CurrentJacobian jac;
  double imbalance = 0.0;
  for (std::size_t a = 0; a < c.f.size(); ++a) {
    const double x = c.eps[a] - mu;
    const double F = fermi_beta(c.eps[a], mu, beta);
    const double w = F * (1.0 - F);  // -dF/d(beta x)
    imbalance += c.f[a] - F;
    jac.dI_dmu -= beta * w;
    jac.dI_dbeta += x * w;
    jac.dJ_dmu -= beta * x * w;
    jac.dJ_dbeta += x * x * w;
  }
  jac.dJ_dmu -= imbalance;
  return jac;
}

double residual_of(const CurrentPair& c, double delta) noexcept {
  return std::max(std::abs(c.particle), std::abs(c.heat) / delta);
}

double norm_of(const CurrentPair& c, double delta) noexcept {
  return std::hypot(c.particle, c.heat / delta);
}

ProbeState make_state(double mu, double beta, int iterations, double residual, ProbeStatus status,
                      ProbeMethod method, double tol) {
  ProbeState s;
  s.mu = mu;
  s.beta = beta;
  s.temperature = beta == 0.0 ? kInf : 1.0 / beta;
  s.iterations = iterations;
  s.residual = residual;
  s.converged = status == ProbeStatus::converged && residual <= tol;
  s.status = s.converged ? ProbeStatus::converged : status;
  s.method = method;
  return s;
}

ProbeState newton(const Coupled& c, double mu, double beta, const ProbeOptions& opts) {
  CurrentPair r = eval_currents(c, mu, beta);
  for (int it = 0; it < opts.max_iterations; ++it) {
    const bool done = residual_of(r, c.delta) <= opts.tolerance;
    const CurrentJacobian j = eval_jacobian(c, mu, beta);
    const double det = j.dI_dmu * j.dJ_dbeta - j.dI_dbeta * j.dJ_dmu;
    const double scale = std::abs(j.dI_dmu * j.dJ_dbeta) + std::abs(j.dI_dbeta * j.dJ_dmu);
    const bool singular = !std::isfinite(det) || scale == 0.0 || std::abs(det) <= 1e-14 * scale;
    if (done) {
      // One extra full step drives the root to round-off when it helps.
      if (!singular) {
        const double mu_p = mu - (j.dJ_dbeta * r.particle - j.dI_dbeta * r.heat) / det;
        const double beta_p = beta - (-j.dJ_dmu * r.particle + j.dI_dmu * r.heat) / det;
        const CurrentPair r_p = eval_currents(c, mu_p, beta_p);
        if (norm_of(r_p, c.delta) < norm_of(r, c.delta)) {
          mu = mu_p;
          beta = beta_p;
          r = r_p;
        }
      }
      return make_state(mu, beta, it, residual_of(r, c.delta), ProbeStatus::converged,
                        ProbeMethod::newton, opts.tolerance);
    }
    if (singular)
      return make_state(mu, beta, it, residual_of(r, c.delta), ProbeStatus::degenerate,
                        ProbeMethod::newton, opts.tolerance);
    const double dmu = -(j.dJ_dbeta * r.particle - j.dI_dbeta * r.heat) / det;
    const double dbeta = -(-j.dJ_dmu * r.particle + j.dI_dmu * r.heat) / det;

    const double current = norm_of(r, c.delta);
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opts.max_halvings; ++h, lambda *= 0.5) {
      const double mu_try = mu + lambda * dmu;
      const double beta_try = beta + lambda * dbeta;
      const CurrentPair r_try = eval_currents(c, mu_try, beta_try);
      if (norm_of(r_try, c.delta) < current) {
        mu = mu_try;
        beta = beta_try;
        r = r_try;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      return make_state(mu, beta, it + 1, residual_of(r, c.delta), ProbeStatus::degenerate,
                        ProbeMethod::newton, opts.tolerance);
  }
  return make_state(mu, beta, opts.max_iterations, residual_of(r, c.delta),
                    ProbeStatus::max_iterations, ProbeMethod::newton, opts.tolerance);
}

// Chemical potential nulling the particle current at fixed beta.
std::optional<double> mu_at(const Coupled& c, double beta, double particles, int& evals) {
  const auto [lo_it, hi_it] = std::minmax_element(c.eps.begin(), c.eps.end());
  const double m = static_cast<double>(c.f.size());
  if (beta == 0.0) {
    if (std::abs(particles - 0.5 * m) > 1e-12) return std::nullopt;
    return std::accumulate(c.eps.begin(), c.eps.end(), 0.0) / m;
  }
  auto excess = [&](double mu) {
    ++evals;
    double s = 0.0;
    for (double e : c.eps) s += fermi_beta(e, mu, beta);
    return s - particles;
  };
  const double pad = 50.0 / std::abs(beta) + c.delta;
  double lo = *lo_it - pad;
  double hi = *hi_it + pad;
  double flo = excess(lo);
  double fhi = excess(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) return std::nullopt;
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(excess, lo, hi, flo, fhi,
                                                        boost::math::tools::eps_tolerance<double>(52),
                                                        max_iter);
  return 0.5 * (a + b);
}

ProbeState bracket(const Coupled& c, const ProbeOptions& opts) {
  const double particles = std::accumulate(c.f.begin(), c.f.end(), 0.0);
  int evals = 0;
  auto heat_at = [&](double beta) -> std::optional<CurrentPair> {
    const auto mu = mu_at(c, beta, particles, evals);
    if (!mu) return std::nullopt;
    return eval_currents(c, *mu, beta);
  };

  // Scan inverse temperatures over many decades on both sides of beta = 0.
  std::vector<double> grid;
  for (int k = 40; k >= -30; --k) grid.push_back(-std::ldexp(1.0, k) / c.delta);
  for (int k = -30; k <= 40; ++k) grid.push_back(std::ldexp(1.0, k) / c.delta);

  double best_beta = 0.0, best_res = kInf;
  std::optional<double> prev_beta;
  double prev_heat = 0.0;
  for (double beta : grid) {
    const auto cur = heat_at(beta);
    if (!cur) {
      prev_beta.reset();
      continue;
    }
    const double res = residual_of(*cur, c.delta);
    if (res < best_res) {
      best_res = res;
      best_beta = beta;
    }
    if (prev_beta && (prev_heat > 0) != (cur->heat > 0) && cur->heat != 0.0 && prev_heat != 0.0) {
      double lo = *prev_beta, hi = beta;
      auto g = [&](double b) {
        const auto p = heat_at(b);
        return p ? p->heat : std::numeric_limits<double>::quiet_NaN();
      };
      std::uintmax_t max_iter = static_cast<std::uintmax_t>(opts.max_iterations);
      try {
        const auto [a, b] = boost::math::tools::toms748_solve(
            g, lo, hi, prev_heat, cur->heat, boost::math::tools::eps_tolerance<double>(52), max_iter);
        const double root = 0.5 * (a + b);
        const auto mu = mu_at(c, root, particles, evals);
        if (mu) {
          const CurrentPair r = eval_currents(c, *mu, root);
          const double res_root = residual_of(r, c.delta);
          if (res_root < best_res) {
            best_res = res_root;
            best_beta = root;
          }
        }
      } catch (const std::exception&) {
      }
    }
    prev_beta = beta;
    prev_heat = cur->heat;
    if (cur->heat == 0.0 && res <= opts.tolerance) break;
  }
  if (!std::isfinite(best_res))
    return make_state(0.0, 0.0, evals, kInf, ProbeStatus::degenerate, ProbeMethod::bracket,
                      opts.tolerance);
  const double mu = *mu_at(c, best_beta, particles, evals);
  // Polish with Newton from the bracketed point; keep whichever is better.
  ProbeOptions polish = opts;
  polish.max_iterations = 20;
  ProbeState refined = newton(c, mu, best_beta, polish);
  if (refined.converged) {
    refined.method = ProbeMethod::bracket;
    refined.iterations += evals;
    return refined;
  }
  return make_state(mu, best_beta, evals, best_res,
                    best_res <= opts.tolerance ? ProbeStatus::converged : ProbeStatus::max_iterations,
                    ProbeMethod::bracket, opts.tolerance);
}

}  // namespace

std::string_view to_string(ProbeStatus s) noexcept {
  switch (s) {
    case ProbeStatus::converged: return "converged";
    case ProbeStatus::max_iterations: return "max_iterations";
    case ProbeStatus::degenerate: return "degenerate";
  }
  return "unknown";
}

std::string_view to_string(ProbeMethod m) noexcept {
  return m == ProbeMethod::newton ? "newton" : "bracket";
}

double fermi_beta(double e, double mu, double beta) noexcept {
  const double x = beta * (e - mu);
  if (x > 0.0) {
    const double t = std::exp(-x);
    return t / (1.0 + t);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double fermi(double e, double mu, double temperature) noexcept {
  if (temperature == 0.0) return e < mu ? 1.0 : (e > mu ? 0.0 : 0.5);
  const double x = (e - mu) / temperature;
  if (x > 0.0) {
    const double t = std::exp(-x);
    return t / (1.0 + t);
  }
  return 1.0 / (1.0 + std::exp(x));
}

CurrentPair currents(const OccupancyProfile& f, const SingleParticleSpectrum& sp, double mu,
                     double temperature, const ProbeOptions& opts) {
  const Coupled c = coupled(f, sp, opts);
  CurrentPair out;
  for (std::size_t a = 0; a < c.f.size(); ++a) {
    const double d = c.f[a] - fermi(c.eps[a], mu, temperature);
    out.particle += d;
    out.heat += (c.eps[a] - mu) * d;
  }
  return out;
}

CurrentPair currents_beta(const OccupancyProfile& f, const SingleParticleSpectrum& sp, double mu,
                          double beta, const ProbeOptions& opts) {
  return eval_currents(coupled(f, sp, opts), mu, beta);
}

CurrentJacobian current_jacobian(const OccupancyProfile& f, const SingleParticleSpectrum& sp,
                                 double mu, double beta, const ProbeOptions& opts) {
  return eval_jacobian(coupled(f, sp, opts), mu, beta);
}

ProbeState solve_probe(const OccupancyProfile& f, const SingleParticleSpectrum& sp,
                       std::optional<ProbeInit> init, const ProbeOptions& opts) {
  const Coupled c = coupled(f, sp, opts);
  const ProbeInit start = init.value_or(ProbeInit{0.0, sp.delta});
  const double beta0 = start.temperature == 0.0 ? 1.0 / sp.delta : 1.0 / start.temperature;
  ProbeState s = newton(c, start.mu, beta0, opts);
  if (s.converged) return s;
  ProbeState b = bracket(c, opts);
  b.iterations += s.iterations;
  if (b.converged || b.residual < s.residual) return b;
  return s;
}

VariancePair current_variances(const OccupancyProfile& f, const SingleParticleSpectrum& sp,
                               const ProbeState& probe, const ProbeOptions& opts) {
  if (!probe.converged) throw ParameterError("current_variances: probe state did not converge");
  const Coupled c = coupled(f, sp, opts);
  VariancePair v;
  for (std::size_t a = 0; a < c.f.size(); ++a) {
    const double d = c.f[a] - fermi_beta(c.eps[a], probe.mu, probe.beta);
    const double x = c.eps[a] - probe.mu;
    v.dI2 += d * d;
    v.dJ2 += x * x * d * d;
  }
  return v;
}

std::vector<double> detailed_balance_residuals(const OccupancyProfile& f, const SingleParticleSpectrum& sp,
                                               const ProbeState& probe, const ProbeOptions& opts) {
  const Coupled c = coupled(f, sp, opts);
  std::vector<double> r(c.f.size());
  for (std::size_t a = 0; a < c.f.size(); ++a) r[a] = c.f[a] - fermi_beta(c.eps[a], probe.mu, probe.beta);
  return r;
}

CurrentPair pairwise_currents(const OccupancyProfile& fa, const OccupancyProfile& fb,
                              const SingleParticleSpectrum& sp, double mu,
                              [[maybe_unused]] double temperature, const ProbeOptions& opts) {
  const Coupled a = coupled(fa, sp, opts);
  const Coupled b = coupled(fb, sp, opts);
  CurrentPair out;
  for (std::size_t k = 0; k < a.f.size(); ++k) {
    const double d = a.f[k] - b.f[k];
    out.particle += d;
    out.heat += (a.eps[k] - mu) * d;
  }
  return out;
}

}  // namespace eigentherm
