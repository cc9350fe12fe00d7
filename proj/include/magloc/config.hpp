#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "magloc/ekf.hpp"
#include "magloc/observability.hpp"
#include "magloc/sampling.hpp"
#include "magloc/scenario.hpp"

namespace magloc {

/// Raised by config loading. kIo covers unreadable files, kParse malformed
/// text, kValidation well-formed text with out-of-domain or unknown fields.
class ConfigError : public std::runtime_error {
 public:
  enum class Kind { kIo, kParse, kValidation };

  ConfigError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Every tunable of the toolkit, grouped the way the JSON config file is.
/// The defaults are the reference operating point: two EPMs, twenty
/// configurations per iteration, the 0.2 m cube, noiseless sensors.
struct ExperimentConfig {
  Workspace workspace;

  // [epm]
  int epm_count = 2;
  double moment_magnitude = 70.0;  // A*m^2
  double plane_offset = 0.15;      // meters beyond each face
  std::optional<double> patch_half_extent;

  // [sensing]
  int n = 20;  // configurations per EKF iteration
  NoiseSpec noise;
  NormSynthesis norm_mode = NormSynthesis::kFromNoisyField;

  // [ekf]
  FilterParams filter;

  // [sim]
  int trials = 100;
  ConvergenceCriteria criteria;
  std::uint64_t seed = 0;

  // [whitening]
  Whitening whitening;

  ScenarioGeometry geometry() const {
    ScenarioGeometry g;
    g.workspace = workspace;
    g.plane_offset = plane_offset;
    g.patch_half_extent = patch_half_extent;
    g.moment_magnitude = moment_magnitude;
    return g;
  }

  /// Trial/Monte Carlo inputs assembled from the config (trace off).
  TrialSetup trial_setup() const {
    TrialSetup setup;
    setup.m = epm_count;
    setup.n = n;
    setup.geometry = geometry();
    setup.params = filter;
    setup.params.noise = noise;
    setup.noise = noise;
    setup.criteria = criteria;
    setup.norm_mode = norm_mode;
    return setup;
  }

  /// Condition-map request assembled from the config; plane, grid, seed and
  /// threads stay at their request defaults unless the caller overrides them.
  ConditionMapRequest map_request() const {
    ConditionMapRequest request;
    request.workspace = workspace;
    request.m = epm_count;
    request.n = n;
    request.plane_offset = plane_offset;
    request.patch_half_extent = patch_half_extent;
    request.moment_magnitude = moment_magnitude;
    request.whitening = whitening;
    request.seed = seed;
    return request;
  }
};

/// Parses and validates a JSON config document. Unknown keys are rejected;
/// every message names the offending field path. An empty document ("{}")
/// yields the defaults.
ExperimentConfig parse_config(const std::string& text);

/// parse_config on the contents of the file at path.
ExperimentConfig load_config(const std::string& path);

}  // namespace magloc
