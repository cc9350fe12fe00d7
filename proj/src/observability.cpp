#include "magloc/observability.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "magloc/parallel.hpp"
#include "magloc/random.hpp"

namespace magloc {

Codistribution codistribution(const Pose& pose,
                              const std::vector<EpmConfiguration>& configs,
                              const PhysicalConstants& constants,
                              const Whitening& whitening) {
  if (configs.empty()) {
    throw std::invalid_argument("codistribution needs at least one "
                                "EPM configuration");
  }
  const int n = static_cast<int>(configs.size());
  const double mu0_scale = constants.mu0 / constants::kMu0;
  const Mat3& rot = pose.rotation;
  const double w_mag = 1.0 / whitening.mag_std;
  const double w_accel = 1.0 / whitening.accel_std;

  Codistribution out;
  out.num_configs = n;
  out.matrix = Eigen::MatrixXd::Zero(4 * n + 3, 6);
  for (int i = 0; i < n; ++i) {
    FieldSample sample = total_field(configs[i].epms, pose.position);
    sample.field *= mu0_scale;
    sample.gradient *= mu0_scale;
    const Vec3 body_field = rot.transpose() * sample.field;

    // Norm block: gradient of ||B|| along the world position, re-expressed
    // in the body basis (a right perturbation rho moves the robot by R rho).
    const double norm = sample.field.norm();
    if (norm > 0.0) {
      out.matrix.block<1, 3>(i, 0) =
          w_mag * (sample.field.transpose() / norm) * sample.gradient * rot;
    }

    // Field blocks: position columns from the field gradient, orientation
    // columns the skew form of the body-frame field.
    out.matrix.block<3, 3>(n + 3 * i, 0) =
        w_mag * rot.transpose() * sample.gradient * rot;
    out.matrix.block<3, 3>(n + 3 * i, 3) = w_mag * skew(body_field);
  }

  // Gravity block: no position sensitivity; orientation columns the skew
  // form of the body-frame gravity vector.
  out.matrix.block<3, 3>(4 * n, 3) =
      w_accel * skew(Vec3(rot.transpose() * constants.gravity));
  return out;
}

ConditioningReport analyze(const Codistribution& c, double rank_tol) {
  ConditioningReport report;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(c.matrix);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const int count = static_cast<int>(sigma.size());
  for (int i = 0; i < count && i < 6; ++i) {
    report.singular_values[i] = sigma[i];
  }
  const double sigma_max = count > 0 ? sigma[0] : 0.0;
  if (sigma_max > 0.0) {
    for (int i = 0; i < count; ++i) {
      if (sigma[i] > rank_tol * sigma_max) ++report.rank;
    }
  }
  report.condition_number =
      (report.rank == 6 && report.singular_values[5] > 0.0)
          ? report.singular_values[0] / report.singular_values[5]
          : std::numeric_limits<double>::infinity();
  return report;
}

namespace {

void plane_axes(MapPlane plane, int& a_axis, int& b_axis) {
  switch (plane) {
    case MapPlane::kXY: a_axis = 0; b_axis = 1; break;
    case MapPlane::kXZ: a_axis = 0; b_axis = 2; break;
    case MapPlane::kYZ: a_axis = 1; b_axis = 2; break;
  }
}

std::vector<double> grid_coords(double center, double half, int grid) {
  std::vector<double> coords(grid);
  if (grid == 1) {
    coords[0] = center;
    return coords;
  }
  for (int i = 0; i < grid; ++i) {
    coords[i] = center - half + (2.0 * half * i) / (grid - 1);
  }
  return coords;
}

}  // namespace

ConditionMap workspace_condition_map(const ConditionMapRequest& request) {
  if (request.grid < 1 || request.n < 1 || request.draws < 1) {
    throw std::invalid_argument(
        "condition map needs grid >= 1, n >= 1 and draws >= 1");
  }
  int a_axis = 0, b_axis = 0;
  plane_axes(request.plane, a_axis, b_axis);

  ConditionMap map;
  map.plane = request.plane;
  const double half = request.workspace.half_side();
  map.coord_a = grid_coords(request.workspace.center[a_axis], half,
                            request.grid);
  map.coord_b = grid_coords(request.workspace.center[b_axis], half,
                            request.grid);
  map.values.resize(request.grid, request.grid);

  const std::vector<EpmPlane> planes =
      epm_planes(request.workspace, request.m, request.plane_offset,
                 request.patch_half_extent.value_or(
                     request.workspace.half_side() + 0.05));

  const int cells = request.grid * request.grid;
  detail::parallel_for(cells, request.threads, [&](int cell) {
    const int ia = cell / request.grid;
    const int ib = cell % request.grid;
    Vec3 position = request.workspace.center;
    position[a_axis] = map.coord_a[ia];
    position[b_axis] = map.coord_b[ib];
    const Pose pose{request.orientation, position};

    Rng rng(mix_seed(request.seed, static_cast<std::uint64_t>(cell)));
    double sum = 0.0;
    bool failed = false;
    for (int d = 0; d < request.draws && !failed; ++d) {
      std::vector<EpmConfiguration> configs;
      configs.reserve(request.n);
      for (int i = 0; i < request.n; ++i) {
        configs.push_back(sample_epm_configuration(
            planes, request.moment_magnitude, rng));
      }
      try {
        sum += analyze(codistribution(pose, configs, request.constants,
                                      request.whitening),
                       request.rank_tol)
                   .condition_number;
      } catch (const CoincidentSourceError&) {
        failed = true;
      }
    }
    map.values(ia, ib) =
        failed ? std::numeric_limits<double>::quiet_NaN()
               : sum / request.draws;
  });
  return map;
}

}  // namespace magloc
