// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <set>
#include <string>

#include "eigentherm/csv.hpp"
#include "eigentherm/dump.hpp"
#include "eigentherm/engine.hpp"
#include "eigentherm/errors.hpp"
#include "eigentherm/manifest.hpp"
#include "eigentherm/parallel.hpp"
#include "eigentherm/sweep.hpp"
#include "eigentherm/thermo.hpp"

namespace eigentherm::cli {

namespace {

namespace fs = std::filesystem;

class Reader {
 public:
  Reader(const Settings& s, std::set<std::string> known) : s_(s) {
    for (const auto& [k, v] : s)
      if (!known.count(k)) throw ParameterError("unknown setting '" + k + "'");
  }
  [[nodiscard]] bool has(const std::string& k) const { return s_.count(k) > 0; }
  [[nodiscard]] std::string text(const std::string& k, const std::string& fallback = "") const {
    auto it = s_.find(k);
    return it == s_.end() ? fallback : it->second;
  }
  [[nodiscard]] double number(const std::string& k, double fallback) const {
    if (!has(k)) return fallback;
    const auto v = parse_number_list(text(k));
    if (v.size() != 1) throw ParameterError("setting '" + k + "': expected one number");
    return v.front();
  }
  [[nodiscard]] long long integer(const std::string& k, long long fallback) const {
    const double v = number(k, static_cast<double>(fallback));
    if (v != std::floor(v)) throw ParameterError("setting '" + k + "': expected an integer");
    return static_cast<long long>(v);
  }
  [[nodiscard]] bool flag(const std::string& k) const {
    const auto v = text(k, "false");
    return v == "true" || v == "1" || v == "yes";
  }

 private:
  const Settings& s_;
};

SystemParams params_from(const Reader& r) {
  SystemParams p;
  p.m = static_cast<int>(r.integer("m", 16));
  p.n = static_cast<int>(r.integer("n", p.m / 2));
  p.delta = r.number("delta", 1.0);
  p.u = r.number("u", 0.0) * p.delta;
  p.seed = static_cast<std::uint64_t>(r.integer("seed", 1));
  p.validate();
  return p;
}

nlohmann::json params_json(const SystemParams& p) {
  return {{"m", p.m}, {"n", p.n}, {"delta", p.delta}, {"u", p.u}, {"seed", p.seed}};
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

RunManifest start_manifest(const std::string& command, const RunContext& ctx) {
  RunManifest m;
  m.command = command;
  m.argv = ctx.argv;
  m.version = EIGENTHERM_VERSION;
  m.started = utc_timestamp();
  return m;
}

std::vector<std::string> occupancy_columns(int m) {
  std::vector<std::string> cols{"A", "energy"};
  for (int a = 0; a < m; ++a) cols.push_back("f" + std::to_string(a));
  return cols;
}

}  // namespace

void cmd_diag(const Settings& settings, const RunContext& ctx) {
  const Reader r(settings, {"m", "n", "delta", "u", "seed", "window_lo", "window_hi", "tol",
                            "resonant_orbitals", "threads", "dump"});
  const SystemParams params = params_from(r);
  RealizationOptions ropts;
  if (r.has("resonant_orbitals")) ropts.probe.resonant_orbitals = static_cast<int>(r.integer("resonant_orbitals", 0));
  const TemperatureWindow window{r.number("window_lo", 5.5) * params.delta, r.number("window_hi", 50.0) * params.delta};
  const double tol = r.number("tol", 0.1);
  set_solver_threads(static_cast<int>(worker_count(static_cast<unsigned>(r.integer("threads", 0)))));

  prepare_dir(ctx.out_dir);
  RunManifest manifest = start_manifest("diag", ctx);
  manifest.seed = params.seed;
  manifest.config = params_json(params);
  manifest.config["window"] = {window.lo, window.hi};
  manifest.config["tol"] = tol;
  if (ropts.probe.resonant_orbitals) manifest.config["resonant_orbitals"] = *ropts.probe.resonant_orbitals;

  const RealizationResult res = run_realization(params, ropts);
  if (res.failed) throw NumericalError(res.error);
  const fs::path& dir = ctx.out_dir;
  const std::size_t count = res.states.size();

  {
    CsvWriter w(dir / "levels.csv", "levels", 1, {"alpha", "epsilon"});
    for (int a = 0; a < params.m; ++a) {
      w << a << res.levels.epsilon[a];
      w.end_row();
    }
    w.close();
  }
  {
    CsvWriter w(dir / "eigenvalues.csv", "eigenvalues", 1, {"A", "energy"});
    for (std::size_t a = 0; a < count; ++a) {
      w << a + 1 << res.states[a].energy;
      w.end_row();
    }
    w.close();
  }
  {
    CsvWriter w(dir / "occupancies.csv", "occupancies", 1, occupancy_columns(params.m));
    for (std::size_t a = 0; a < count; ++a) {
      w << a + 1 << res.states[a].energy;
      for (double f : res.states[a].f) w << f;
      w.end_row();
    }
    w.close();
  }
  std::vector<ProbeState> probes;
  std::vector<double> energies;
  {
    CsvWriter w(dir / "probe.csv", "probe", 1,
                {"A", "energy", "mu", "temperature", "beta", "converged", "status", "method",
                 "iterations", "residual", "dI2", "dJ2"});
    for (std::size_t a = 0; a < count; ++a) {
      const auto& s = res.states[a];
      w << a + 1 << s.energy << s.probe.mu << s.probe.temperature << s.probe.beta
        << (s.probe.converged ? 1 : 0) << std::string(to_string(s.probe.status))
        << std::string(to_string(s.probe.method)) << s.probe.iterations << s.probe.residual;
      if (s.probe.converged)
        w << s.variance.dI2 << s.variance.dJ2;
      else
        w << std::nan("") << std::nan("");
      w.end_row();
      probes.push_back(s.probe);
      energies.push_back(s.energy);
    }
    w.close();
  }
  std::vector<std::string> files{"levels.csv", "eigenvalues.csv", "occupancies.csv", "probe.csv"};
  double fraction = std::nan("");
  if (res.dos) {
    const DosFit& fit = *res.dos;
    CsvWriter w(dir / "dos_fit.csv", "dos_fit", 1,
                {"N", "center", "sigma2", "rho0", "skewness", "excess_kurtosis", "bandwidth"});
    w << fit.count << fit.center << fit.sigma2 << fit.rho0 << fit.skewness << fit.excess_kurtosis
      << params.bandwidth();
    w.end_row();
    w.close();
    files.push_back("dos_fit.csv");

    CsvWriter t(dir / "temperature_compare.csv", "temperature_compare", 1,
                {"A", "energy", "t_th", "t_probe", "rel_dev", "in_window", "within_tol"});
    try {
      const auto cmp = compare_temperatures(energies, probes, fit, window, tol);
      fraction = cmp.fraction;
      for (const auto& row : cmp.rows) {
        t << row.state + 1 << row.energy << row.t_th << row.t_probe << row.rel_dev << (row.in_window ? 1 : 0)
          << (row.within ? 1 : 0);
        t.end_row();
      }
    } catch (const ParameterError& e) {
      if (ctx.log) *ctx.log << "warning: temperature comparison skipped: " << e.what() << '\n';
    }
    t.close();
    files.push_back("temperature_compare.csv");
  }
  if (r.has("dump")) {
    SpectrumDump d;
    d.m = static_cast<std::uint32_t>(params.m);
    d.n = static_cast<std::uint32_t>(params.n);
    d.energies = energies;
    for (const auto& s : res.states) d.occupancies.insert(d.occupancies.end(), s.f.begin(), s.f.end());
    write_dump(r.text("dump"), d);
    manifest.config["dump"] = r.text("dump");
  }

  for (const auto& f : files) manifest.add_output(dir, f);
  manifest.config["temperature_fraction"] = fraction;
  manifest.config["unconverged"] = res.unconverged;
  manifest.finished = utc_timestamp();
  manifest.write(dir / "manifest.json");

  if (ctx.log) {
    *ctx.log << "diag: N=" << count << " states, " << res.unconverged << " unconverged probe solves";
    if (!std::isnan(fraction)) *ctx.log << ", T_A within " << tol * 100 << "% of T_th for " << fraction * 100 << "% of windowed states";
    *ctx.log << '\n';
    if (res.unconverged > 0) *ctx.log << "warning: " << res.unconverged << " probe solves did not converge\n";
  }
}

void cmd_sweep(const Settings& settings, const RunContext& ctx) {
  const SweepConfig config = sweep_config_from(settings);
  config.validate();
  prepare_dir(ctx.out_dir);
  RunManifest manifest = start_manifest("sweep", ctx);
  manifest.seed = config.params.seed;
  manifest.config = params_json(config.params);
  manifest.config.erase("u");
  manifest.config["u_grid"] = config.u_grid;
  manifest.config["realizations"] = config.realizations;
  std::vector<double> centers;
  for (const auto& b : config.bins) centers.push_back(b.center);
  manifest.config["bins"] = centers;
  manifest.config["bin_half_width"] = config.bins.front().half_width;
  manifest.config["thresholds"] = {config.thresholds.particle, config.thresholds.heat};
  manifest.config["threads"] = worker_count(config.threads);

  const SweepResult res = ensemble_sweep(config);
  const double delta = config.params.delta;
  const double bandwidth = config.params.bandwidth();
  const fs::path& dir = ctx.out_dir;
  {
    CsvWriter w(dir / "variance_curves.csv", "variance_curves", 1,
                {"dE_over_delta", "eps_over_b", "u_over_delta", "mean_dI2", "se_dI2", "mean_dJ2", "se_dJ2",
                 "states", "realizations"});
    for (const auto& b : res.bins)
      for (std::size_t i = 0; i < res.u_grid.size(); ++i) {
        const auto& p = b.points[i];
        w << b.bin.center / delta << b.bin.center / bandwidth << res.u_grid[i] / delta << p.mean_dI2 << p.se_dI2
          << p.mean_dJ2 << p.se_dJ2 << p.states << p.realizations;
        w.end_row();
      }
    w.close();
  }
  {
    auto opt = [&](const std::optional<double>& u) { return u ? *u / delta : std::nan(""); };
    CsvWriter w(dir / "critical_u.csv", "critical_u", 1,
                {"m", "n", "dE_over_delta", "eps_over_b", "uc1_over_delta", "uc2_over_delta", "uc1_crossings",
                 "uc2_crossings"});
    for (const auto& b : res.bins) {
      w << config.params.m << config.params.n << b.bin.center / delta << b.bin.center / bandwidth << opt(b.uc1.u)
        << opt(b.uc2.u) << b.uc1.crossings << b.uc2.crossings;
      w.end_row();
    }
    w.close();
  }
  manifest.add_output(dir, "variance_curves.csv");
  manifest.add_output(dir, "critical_u.csv");
  manifest.config["failed_realizations"] = res.failed_realizations;
  manifest.config["unconverged_states"] = res.unconverged_states;
  manifest.finished = utc_timestamp();
  manifest.write(dir / "manifest.json");
  if (ctx.log) {
    *ctx.log << "sweep: " << config.u_grid.size() << " U values x " << config.realizations << " realizations, "
             << res.bins.size() << " bins; " << res.unconverged_states << " unconverged states, "
             << res.failed_realizations << " failed realizations\n";
    for (const auto& f : res.failures) *ctx.log << "warning: " << f << '\n';
  }
}

void cmd_engine(const Settings& settings, const RunContext& ctx) {
  const Reader r(settings, {"in", "states", "all_lower", "dmu", "dt", "m", "n", "delta", "u", "seed",
                            "single_orbital", "epsilon", "mu", "temperature"});
  const double dmu = r.number("dmu", 0.0);
  const double dT = r.number("dt", 0.01);

  struct Selected {
    std::size_t state;  // 1-based, 0 for synthetic
    ProbeState probe;
  };
  SingleParticleSpectrum levels;
  std::vector<Selected> selected;
  nlohmann::json config;

  if (r.flag("single_orbital")) {
    levels.epsilon = {r.number("epsilon", 1.0)};
    ProbeState p;
    p.mu = r.number("mu", 0.0);
    p.temperature = r.number("temperature", 1.0);
    p.beta = 1.0 / p.temperature;
    p.converged = true;
    p.status = ProbeStatus::converged;
    selected.push_back({0, p});
    config = {{"mode", "single_orbital"}, {"epsilon", levels.epsilon.front()}, {"mu", p.mu}, {"temperature", p.temperature}};
  } else {
    std::vector<ProbeState> probes;
    if (r.has("in")) {
      const fs::path in = r.text("in");
      const CsvTable lv = read_csv(in / "levels.csv");
      levels.epsilon = lv.numbers("epsilon");
      const CsvTable pt = read_csv(in / "probe.csv");
      const auto mu = pt.numbers("mu");
      const auto t = pt.numbers("temperature");
      const auto conv = pt.numbers("converged");
      for (std::size_t i = 0; i < pt.rows.size(); ++i) {
        ProbeState p;
        p.mu = mu[i];
        p.temperature = t[i];
        p.beta = 1.0 / t[i];
        p.converged = conv[i] != 0.0;
        p.status = p.converged ? ProbeStatus::converged : ProbeStatus::max_iterations;
        probes.push_back(p);
      }
      config = {{"mode", "from_diag"}, {"in", in.string()}};
    } else {
      const SystemParams params = params_from(r);
      const RealizationResult res = run_realization(params);
      if (res.failed) throw NumericalError(res.error);
      levels = res.levels;
      for (const auto& s : res.states) probes.push_back(s.probe);
      config = {{"mode", "inline"}, {"params", params_json(params)}};
    }
    if (r.flag("all_lower")) {
      for (std::size_t a = 0; a < probes.size() / 2; ++a)
        if (probes[a].converged && probes[a].temperature > 0.0 && std::isfinite(probes[a].temperature))
          selected.push_back({a + 1, probes[a]});
    } else {
      if (!r.has("states")) throw ParameterError("engine: give --states, --all-lower or --single-orbital");
      for (double v : parse_number_list(r.text("states"))) {
        if (v < 1 || v > static_cast<double>(probes.size()) || v != std::floor(v))
          throw ParameterError("engine: state " + format_double(v) + " out of range [1, " +
                               std::to_string(probes.size()) + "]");
        const auto a = static_cast<std::size_t>(v);
        if (!(probes[a - 1].temperature > 0.0))
          throw DomainError("engine: state " + std::to_string(a) + " has non-positive temperature " +
                            format_double(probes[a - 1].temperature) + "; engine analysis needs T_A > 0");
        selected.push_back({a, probes[a - 1]});
      }
    }
  }

  prepare_dir(ctx.out_dir);
  RunManifest manifest = start_manifest("engine", ctx);
  manifest.config = config;
  manifest.config["dmu"] = dmu;
  manifest.config["dt"] = dT;
  CsvWriter w(ctx.out_dir / "engine.csv", "engine", 1,
              {"A", "mu", "temperature", "L0", "L1", "L2", "ZT", "eta_max", "carnot", "eta_numeric", "dmu", "dT",
               "eta_at_bias"});
  for (const auto& s : selected) {
    const OnsagerCoefficients c = onsager(levels, s.probe);
    const EngineResponse e = engine_response(c, dmu, dT);
    const EfficiencyOptimum opt = maximize_efficiency(c, dT);
    w << s.state << c.mu << c.temperature << c.l0 << c.l1 << c.l2 << e.zt << e.eta_max << e.carnot << opt.eta << dmu
      << dT << efficiency(c, dmu, dT);
    w.end_row();
  }
  w.close();
  manifest.add_output(ctx.out_dir, "engine.csv");
  manifest.finished = utc_timestamp();
  manifest.write(ctx.out_dir / "manifest.json");
  if (ctx.log) *ctx.log << "engine: " << selected.size() << " state(s) written\n";
}

}  // namespace eigentherm::cli
