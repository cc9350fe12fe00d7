#include "magloc/sampling.hpp"

#include <algorithm>

#include <stdexcept>
#include <string>

namespace magloc {

std::vector<EpmPlane> epm_planes(const Workspace& workspace, int m,
                                 double offset, double half_extent) {
  if (m < 1 || m > 6) {
    throw std::invalid_argument("EPM count must be in [1, 6], got " +
                                std::to_string(m));
  }
  if (offset <= 0.0 || half_extent <= 0.0) {
    throw std::invalid_argument("EPM plane offset and patch half-extent "
                                "must be positive");
  }
  std::vector<EpmPlane> planes;
  planes.reserve(m);
  for (int i = 0; i < m; ++i) {
    EpmPlane plane;
    plane.axis = i / 2;
    plane.direction = (i % 2 == 0) ? 1.0 : -1.0;
    plane.half_extent = half_extent;
    plane.patch_center = workspace.center;
    plane.patch_center[plane.axis] +=
        plane.direction * (workspace.half_side() + offset);
    planes.push_back(plane);
  }
  return planes;
}

EpmConfiguration sample_epm_configuration(const std::vector<EpmPlane>& planes,
                                          double moment_magnitude, Rng& rng) {
  EpmConfiguration config;
  config.epms.reserve(planes.size());
  for (const EpmPlane& plane : planes) {
    const int u_axis = (plane.axis + 1) % 3;
    const int v_axis = (plane.axis + 2) % 3;
    Epm epm;
    epm.position = plane.patch_center;
    epm.position[u_axis] += rng.uniform(-plane.half_extent, plane.half_extent);
    epm.position[v_axis] += rng.uniform(-plane.half_extent, plane.half_extent);
    Vec3 dir = rng.unit_vector();
    if (dir.dot(plane.inward_normal()) < 0.0) dir = -dir;
    epm.moment = moment_magnitude * dir;
    config.epms.push_back(epm);
  }
  return config;
}

Pose sample_pose(const Workspace& workspace, Rng& rng) {
  Pose pose;
  const double h = workspace.half_side();
  for (int axis = 0; axis < 3; ++axis) {
    pose.position[axis] = workspace.center[axis] + rng.uniform(-h, h);
  }
  pose.rotation = rng.rotation();
  return pose;
}

PoseErrors pose_errors(const Pose& truth, const Pose& estimate) {
  PoseErrors errors;
  errors.position = (truth.position - estimate.position).norm();
  // Clamp away rounding spill so the trace bound [0, 4] holds exactly.
  errors.orientation = std::clamp(
      3.0 - (estimate.rotation.transpose() * truth.rotation).trace(), 0.0, 4.0);
  return errors;
}

}  // namespace magloc
