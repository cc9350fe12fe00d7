#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "magloc/cli.hpp"

namespace {

void add_common_flags(CLI::App& cmd, magloc::cli::CommonOptions& common,
                      std::uint64_t& seed_value, bool& seed_given) {
  cmd.add_option("--config", common.config_path,
                 "JSON config file (omit for defaults)");
  cmd.add_option("--seed", seed_value, "master seed (overrides sim.seed)")
      ->each([&seed_given](const std::string&) { seed_given = true; });
  cmd.add_option("--out", common.out_path, "output CSV path")->required();
  cmd.add_option("--threads", common.threads, "worker threads")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Magnetic 6-DOF localization toolkit: EKF trials, Monte Carlo "
      "studies and observability conditioning maps"};
  app.require_subcommand(1);

  magloc::cli::TrialOptions trial;
  std::uint64_t trial_seed = 0;
  bool trial_seed_given = false;
  CLI::App* trial_cmd = app.add_subcommand(
      "trial", "run one localization trial and write its trace");
  add_common_flags(*trial_cmd, trial.common, trial_seed, trial_seed_given);

  magloc::cli::MonteCarloOptions montecarlo;
  std::uint64_t mc_seed = 0;
  bool mc_seed_given = false;
  CLI::App* mc_cmd = app.add_subcommand(
      "montecarlo", "run repeated trials and write per-trial summaries");
  add_common_flags(*mc_cmd, montecarlo.common, mc_seed, mc_seed_given);
  mc_cmd->add_option("--sweep-m", montecarlo.sweep_m,
                     "EPM counts to sweep (one output file each)")
      ->delimiter(',');
  mc_cmd->add_option("--sweep-n", montecarlo.sweep_n,
                     "configuration counts to sweep")
      ->delimiter(',');

  magloc::cli::ObsmapOptions obsmap;
  std::uint64_t map_seed = 0;
  bool map_seed_given = false;
  CLI::App* map_cmd = app.add_subcommand(
      "obsmap", "sweep the conditioning map over a workspace plane");
  add_common_flags(*map_cmd, obsmap.common, map_seed, map_seed_given);
  map_cmd->add_option("--plane", obsmap.plane, "xy, xz or yz")
      ->check(CLI::IsMember({"xy", "xz", "yz"}));
  int grid_value = 0;
  bool grid_given = false;
  map_cmd->add_option("--grid", grid_value, "cells per axis")
      ->each([&grid_given](const std::string&) { grid_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    // CLI11 uses 0 for --help; any real parse problem is a usage error.
    return code == 0 ? 0 : 1;
  }

  if (trial_cmd->parsed()) {
    if (trial_seed_given) trial.common.seed = trial_seed;
    return magloc::cli::cmd_trial(trial, std::cout);
  }
  if (mc_cmd->parsed()) {
    if (mc_seed_given) montecarlo.common.seed = mc_seed;
    return magloc::cli::cmd_montecarlo(montecarlo, std::cout);
  }
  if (map_seed_given) obsmap.common.seed = map_seed;
  if (grid_given) obsmap.grid = grid_value;
  return magloc::cli::cmd_obsmap(obsmap, std::cout);
}
