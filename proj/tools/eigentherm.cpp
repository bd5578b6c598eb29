// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>

#include "commands.hpp"
#include "eigentherm/errors.hpp"

namespace {

using eigentherm::Settings;
using namespace eigentherm::cli;

// Every flag is captured as a string; typed parsing happens in the command
// so that config-file values and flags go through the same path.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App* app, const std::string& name, const std::string& help) {
    options[name] = app->add_option("--" + name, values[name], help);
  }
  void add_flag(CLI::App* app, const std::string& name, const std::string& help) {
    options[name] = app->add_flag("--" + name, help);
  }
  Settings merged(const std::string& config_path) const {
    Settings s = config_path.empty() ? Settings{} : eigentherm::read_settings(config_path);
    for (const auto& [name, opt] : options) {
      if (opt->count() == 0) continue;
      const auto it = values.find(name);
      s[eigentherm::normalize_key(name)] = opt->get_expected() == 0 ? "true" : it->second;
    }
    return s;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigentherm: eigenstate thermometry of few-fermion random-interaction systems"};
  app.require_subcommand(1);
  std::string out_dir = ".";
  std::string config;

  FlagSet diag_flags, sweep_flags, engine_flags;

  auto* diag = app.add_subcommand("diag", "diagonalize one realization and attribute (mu_A, T_A) to every eigenstate");
  diag->add_option("--out", out_dir, "output directory")->capture_default_str();
  diag->add_option("--config", config, "key = value settings file (flags override)");
  for (auto [k, h] : {std::pair{"m", "orbitals"}, {"n", "particles"}, {"delta", "mean level spacing"},
                      {"u", "interaction bound U"}, {"seed", "realization seed"},
                      {"window-lo", "T_th/delta window floor (5.5)"}, {"window-hi", "T_th/delta window ceiling (50)"},
                      {"tol", "relative temperature tolerance (0.1)"},
                      {"resonant-orbitals", "couple the probe to the lowest k orbitals only"},
                      {"threads", "worker threads"}, {"dump", "also write a binary dump to this path"}})
    diag_flags.add(diag, k, h);

  auto* sweep = app.add_subcommand("sweep", "ensemble sweep of current variances over U; critical interactions");
  sweep->add_option("--out", out_dir, "output directory")->capture_default_str();
  sweep->add_option("--config", config, "key = value settings file (flags override)");
  for (auto [k, h] : {std::pair{"m", "orbitals"}, {"n", "particles"}, {"delta", "mean level spacing"},
                      {"seed", "master seed"}, {"realizations", "disorder realizations per U"},
                      {"threads", "worker threads"}, {"u-grid", "comma list of U/delta"},
                      {"u-min", "log grid lower U/delta"}, {"u-max", "log grid upper U/delta"},
                      {"u-points", "log grid size"}, {"bins", "comma list of dE/delta bin centers"},
                      {"bins-eps-b", "comma list of dE/B bin centers"},
                      {"bin-half-width", "bin half-width in delta"},
                      {"threshold-i", "dI^2 threshold (8e-3)"}, {"threshold-j", "dJ^2 threshold (8e-2)"},
                      {"resonant-orbitals", "couple the probe to the lowest k orbitals only"}})
    sweep_flags.add(sweep, k, h);

  auto* engine = app.add_subcommand("engine", "Onsager coefficients, ZT and maximal efficiency of the biased probe");
  engine->add_option("--out", out_dir, "output directory")->capture_default_str();
  engine->add_option("--config", config, "key = value settings file (flags override)");
  for (auto [k, h] : {std::pair{"in", "diag output directory"}, {"states", "comma list of 1-based states"},
                      {"dmu", "chemical-potential bias"}, {"dt", "temperature bias"},
                      {"m", "inline: orbitals"}, {"n", "inline: particles"}, {"delta", "inline: spacing"},
                      {"u", "inline: interaction bound"}, {"seed", "inline: seed"},
                      {"epsilon", "synthetic: level energy"}, {"mu", "synthetic: probe mu"},
                      {"temperature", "synthetic: probe T"}})
    engine_flags.add(engine, k, h);
  engine_flags.add_flag(engine, "all-lower", "every converged positive-temperature state");
  engine_flags.add_flag(engine, "single-orbital", "synthetic single-level probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  RunContext ctx;
  ctx.argv.assign(argv, argv + argc);
  ctx.out_dir = out_dir;
  ctx.log = &std::cerr;
  try {
    if (diag->parsed()) cmd_diag(diag_flags.merged(config), ctx);
    if (sweep->parsed()) cmd_sweep(sweep_flags.merged(config), ctx);
    if (engine->parsed()) cmd_engine(engine_flags.merged(config), ctx);
  } catch (const eigentherm::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const eigentherm::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const eigentherm::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const eigentherm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kOk;
}
