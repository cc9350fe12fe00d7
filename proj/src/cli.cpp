#include "magloc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "magloc/config.hpp"
#include "magloc/csv.hpp"
#include "magloc/observability.hpp"
#include "magloc/random.hpp"
#include "magloc/scenario.hpp"

namespace magloc::cli {

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kIoError = 2;

ExperimentConfig load(const CommonOptions& common) {
  return common.config_path.empty() ? ExperimentConfig{}
                                    : load_config(common.config_path);
}

std::uint64_t resolve_seed(const CommonOptions& common,
                           const ExperimentConfig& config) {
  return common.seed.value_or(config.seed);
}

/// "dir/name.csv" + "_m2_n20" -> "dir/name_m2_n20.csv".
std::string suffixed_path(const std::string& path, const std::string& suffix) {
  const std::size_t slash = path.find_last_of("/\\");
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

int write_failure(const std::string& path, std::ostream& status) {
  status << "error: cannot write output file: " << path << "\n";
  return kIoError;
}

double median_ignoring_nan(const Eigen::MatrixXd& values) {
  std::vector<double> finite;
  finite.reserve(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::isfinite(values.data()[i])) finite.push_back(values.data()[i]);
  }
  if (finite.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(finite.begin(), finite.end());
  const std::size_t mid = finite.size() / 2;
  if (finite.size() % 2 == 1) return finite[mid];
  return 0.5 * (finite[mid - 1] + finite[mid]);
}

/// Runs `body` with the common error-to-exit-code mapping.
template <typename Fn>
int guarded(std::ostream& status, Fn&& body) {
  try {
    return body();
  } catch (const ConfigError& error) {
    status << "error: " << error.what() << "\n";
    return error.kind() == ConfigError::Kind::kIo ? kIoError : kDomainError;
  } catch (const std::invalid_argument& error) {
    status << "error: " << error.what() << "\n";
    return kDomainError;
  } catch (const std::ios_base::failure& error) {
    status << "error: " << error.what() << "\n";
    return kIoError;
  }
}

int run_one_montecarlo(const ExperimentConfig& config, int m, int n,
                       std::uint64_t master_seed, int threads,
                       const std::string& out_path, std::ostream& status) {
  TrialSetup setup = config.trial_setup();
  setup.m = m;
  setup.n = n;

  const MonteCarloSummary summary =
      monte_carlo(config.trials, setup, master_seed, threads);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) return write_failure(out_path, status);
  csv::Writer writer(out);
  writer.row({"trial", "seed", "converged", "configs_to_convergence",
              "final_e_p", "final_e_R", "pos_convergence_iter",
              "orient_convergence_iter"});
  for (int index = 0; index < summary.trials; ++index) {
    const TrialResult& r = summary.results[index];
    writer.row({csv::format(index), csv::format(mix_seed(master_seed, index)),
                csv::format(r.converged ? 1 : 0),
                csv::format(r.configs_to_convergence),
                csv::format(r.final_e_p), csv::format(r.final_e_R),
                csv::format(r.pos_first_iteration),
                csv::format(r.orient_first_iteration)});
  }
  out.flush();
  if (!out) return write_failure(out_path, status);

  status << "montecarlo m=" << m << " n=" << n
         << " trials=" << summary.trials << " seed=" << master_seed << "\n"
         << "  converged_fraction: " << summary.convergence_fraction << "\n"
         << "  fraction_below_1mm: " << summary.fraction_below_1mm << "\n"
         << "  median_configs_to_convergence: "
         << summary.median_configs_to_convergence << "\n"
         << "  median_final_e_p: " << summary.median_final_e_p << "\n"
         << "  median_final_e_R: " << summary.median_final_e_R << "\n"
         << "  median_pos_first_iteration: "
         << summary.median_pos_first_iteration << "\n"
         << "  median_orient_first_iteration: "
         << summary.median_orient_first_iteration << "\n"
         << "  wrote: " << out_path << "\n";
  return kOk;
}

}  // namespace

int cmd_trial(const TrialOptions& options, std::ostream& status) {
  return guarded(status, [&]() {
    const ExperimentConfig config = load(options.common);
    TrialSetup setup = config.trial_setup();
    setup.record_trace = true;

    const std::uint64_t seed = resolve_seed(options.common, config);
    Rng rng(seed);
    const Pose truth = sample_pose(config.workspace, rng);
    const TrialResult result = run_trial(truth, setup, rng);

    std::ofstream out(options.common.out_path, std::ios::binary);
    if (!out) return write_failure(options.common.out_path, status);
    csv::Writer writer(out);
    writer.row({"k", "configs_used", "e_p", "e_R", "p_x", "p_y", "p_z", "q_w",
                "q_x", "q_y", "q_z"});
    for (const IterationRecord& record : result.trace) {
      writer.row({csv::format(record.k), csv::format(record.configs_used),
                  csv::format(record.e_p), csv::format(record.e_R),
                  csv::format(record.position.x()),
                  csv::format(record.position.y()),
                  csv::format(record.position.z()),
                  csv::format(record.quaternion[0]),
                  csv::format(record.quaternion[1]),
                  csv::format(record.quaternion[2]),
                  csv::format(record.quaternion[3])});
    }
    out.flush();
    if (!out) return write_failure(options.common.out_path, status);

    status << "trial m=" << setup.m << " n=" << setup.n << " seed=" << seed
           << "\n"
           << "  converged: " << (result.converged ? "yes" : "no") << "\n"
           << "  configs_to_convergence: " << result.configs_to_convergence
           << "\n"
           << "  final_e_p: " << result.final_e_p << "\n"
           << "  final_e_R: " << result.final_e_R << "\n"
           << "  rejected_updates: " << result.rejected_updates << "\n"
           << "  wrote: " << options.common.out_path << " ("
           << result.trace.size() << " rows)\n";
    return kOk;
  });
}

int cmd_montecarlo(const MonteCarloOptions& options, std::ostream& status) {
  return guarded(status, [&]() {
    const ExperimentConfig config = load(options.common);
    const std::uint64_t master_seed = resolve_seed(options.common, config);

    std::vector<int> ms =
        options.sweep_m.empty() ? std::vector<int>{config.epm_count}
                                : options.sweep_m;
    std::vector<int> ns = options.sweep_n.empty()
                              ? std::vector<int>{config.n}
                              : options.sweep_n;
    for (const int m : ms) {
      if (m < 1 || m > 6) {
        throw std::invalid_argument(
            "sweep-m values must be between 1 and 6, got " +
            std::to_string(m));
      }
    }
    for (const int n : ns) {
      if (n < 2) {
        throw std::invalid_argument(
            "sweep-n values must be at least 2 (observability minimum), "
            "got " +
            std::to_string(n));
      }
    }

    const bool sweeping = !options.sweep_m.empty() || !options.sweep_n.empty();
    for (const int m : ms) {
      for (const int n : ns) {
        const std::string path =
            sweeping ? suffixed_path(options.common.out_path,
                                     "_m" + std::to_string(m) + "_n" +
                                         std::to_string(n))
                     : options.common.out_path;
        const int code = run_one_montecarlo(config, m, n, master_seed,
                                            options.common.threads, path,
                                            status);
        if (code != kOk) return code;
      }
    }
    return kOk;
  });
}

int cmd_obsmap(const ObsmapOptions& options, std::ostream& status) {
  return guarded(status, [&]() {
    const ExperimentConfig config = load(options.common);

    ConditionMapRequest request = config.map_request();
    if (options.plane == "xy") {
      request.plane = MapPlane::kXY;
    } else if (options.plane == "xz") {
      request.plane = MapPlane::kXZ;
    } else if (options.plane == "yz") {
      request.plane = MapPlane::kYZ;
    } else {
      throw std::invalid_argument("plane must be xy, xz or yz, got '" +
                                  options.plane + "'");
    }
    if (options.grid) {
      if (*options.grid < 1) {
        throw std::invalid_argument("grid must be at least 1");
      }
      request.grid = *options.grid;
    }
    request.seed = resolve_seed(options.common, config);
    request.threads = options.common.threads;

    const ConditionMap map = workspace_condition_map(request);

    std::ofstream out(options.common.out_path, std::ios::binary);
    if (!out) return write_failure(options.common.out_path, status);
    csv::Writer writer(out);
    writer.row({"coord1", "coord2", "N_c"});
    for (std::size_t i = 0; i < map.coord_a.size(); ++i) {
      for (std::size_t j = 0; j < map.coord_b.size(); ++j) {
        writer.row({csv::format(map.coord_a[i]), csv::format(map.coord_b[j]),
                    csv::format(map.values(static_cast<Eigen::Index>(i),
                                           static_cast<Eigen::Index>(j)))});
      }
    }
    out.flush();
    if (!out) return write_failure(options.common.out_path, status);

    status << "obsmap plane=" << options.plane << " grid=" << request.grid
           << " m=" << request.m << " n=" << request.n
           << " seed=" << request.seed << "\n"
           << "  median_N_c: " << median_ignoring_nan(map.values) << "\n"
           << "  wrote: " << options.common.out_path << " ("
           << map.values.size() << " cells)\n";
    return kOk;
  });
}

}  // namespace magloc::cli
