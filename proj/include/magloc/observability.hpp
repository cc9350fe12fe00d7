#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "magloc/magnetics.hpp"
#include "magloc/sampling.hpp"
#include "magloc/sensing.hpp"
#include "magloc/types.hpp"

namespace magloc {

/// Per-row scaling applied before rank/conditioning analysis. Rows measured
/// in Tesla (norms and fields) are divided by mag_std, accelerometer rows by
/// accel_std; without this the mixed units dominate the singular values.
/// The defaults are nominal sensor noise figures chosen so that neither
/// measurement family drowns out the other: conditioning then responds both
/// to field strength (more or closer magnets help) and to the geometric
/// diversity of the sampled configurations.
struct Whitening {
  double mag_std = 1e-6;     // Tesla
  double accel_std = 1.3e-4; // m/s^2

  static Whitening none() { return {1.0, 1.0}; }
};

/// Gradients of the stacked measurement map with respect to the pose, rows
/// ordered [norm | field | gravity], columns [position | orientation] in the
/// right-perturbation basis.
struct Codistribution {
  Eigen::MatrixXd matrix;
  int num_configs = 0;
};

/// First-order observability codistribution for n >= 1 configurations,
/// assembled from the per-block closed forms (field gradients for the
/// position columns, skew forms for the orientation columns) rather than by
/// differentiating the measurement model.
Codistribution codistribution(const Pose& pose,
                              const std::vector<EpmConfiguration>& configs,
                              const PhysicalConstants& constants = {},
                              const Whitening& whitening = {});

/// Rank and conditioning of a codistribution.
struct ConditioningReport {
  int rank = 0;
  /// max/min singular value; +infinity when rank < 6.
  double condition_number = 0.0;
  Vec6 singular_values = Vec6::Zero();  // descending
};

/// SVD analysis: rank counts singular values above rank_tol * sigma_max.
ConditioningReport analyze(const Codistribution& c, double rank_tol = 1e-8);

enum class MapPlane { kXY, kXZ, kYZ };

/// Condition-number sweep over an axis-aligned plane through the workspace
/// center. Each cell averages the condition number over `draws` freshly
/// sampled EPM configuration sets at that position.
struct ConditionMapRequest {
  Workspace workspace;
  MapPlane plane = MapPlane::kXZ;
  int grid = 21;  // samples per axis, spanning the workspace face
  int m = 2;
  int n = 100;
  int draws = 10;
  double plane_offset = 0.15;
  std::optional<double> patch_half_extent;
  double moment_magnitude = 70.0;
  Mat3 orientation = Mat3::Identity();
  Whitening whitening;
  PhysicalConstants constants;
  double rank_tol = 1e-8;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ConditionMap {
  MapPlane plane = MapPlane::kXZ;
  /// values(i, j) is the mean condition number at (coord_a[i], coord_b[j]);
  /// NaN marks cells where the analysis failed.
  Eigen::MatrixXd values;
  std::vector<double> coord_a;
  std::vector<double> coord_b;
};

/// Sweeps the plane cell by cell. Every cell derives its generator from
/// (request.seed, cell index), so results are reproducible under any thread
/// count.
ConditionMap workspace_condition_map(const ConditionMapRequest& request);

}  // namespace magloc
