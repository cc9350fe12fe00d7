#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace magloc::cli {

/// Flags shared by every command. An empty config path means defaults; the
/// seed flag overrides the config's sim.seed.
struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  int threads = 1;
};

struct TrialOptions {
  CommonOptions common;
};

struct MonteCarloOptions {
  CommonOptions common;
  /// When non-empty, run one Monte Carlo per listed value (Cartesian with
  /// sweep_n) and suffix the output names with _m<k>_n<k>.
  std::vector<int> sweep_m;
  std::vector<int> sweep_n;
};

struct ObsmapOptions {
  CommonOptions common;
  std::string plane = "xz";  // xy, xz or yz
  std::optional<int> grid;
};

/// Exit codes shared by all commands: 0 success, 1 validation or domain
/// error, 2 I/O error. Diagnostics and summaries go to `status`.

/// Samples a truth pose from the seed, runs one localization trial and
/// writes its per-iteration trace CSV.
int cmd_trial(const TrialOptions& options, std::ostream& status);

/// Runs config.sim.trials independent trials (per sweep combination) and
/// writes one per-trial summary CSV each, plus aggregate text to status.
int cmd_montecarlo(const MonteCarloOptions& options, std::ostream& status);

/// Sweeps the conditioning map over a workspace plane and writes it as
/// (coord1, coord2, N_c) rows in row-major grid order.
int cmd_obsmap(const ObsmapOptions& options, std::ostream& status);

}  // namespace magloc::cli
