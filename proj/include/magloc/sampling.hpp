#pragma once

#include <optional>
#include <vector>

#include "magloc/lie.hpp"
#include "magloc/random.hpp"
#include "magloc/sensing.hpp"
#include "magloc/types.hpp"

namespace magloc {

/// Cubic region the robot moves in.
struct Workspace {
  Vec3 center = Vec3::Zero();
  double side = 0.2;  // meters

  double half_side() const { return 0.5 * side; }
  bool contains(const Vec3& p) const {
    return ((p - center).cwiseAbs().array() <= half_side() + 1e-12).all();
  }
};

/// Square patch outside one workspace face on which an EPM travels. The
/// patch lies in the plane parallel to that face, offset meters beyond it,
/// and extends half_extent on both in-plane axes around the face center.
struct EpmPlane {
  int axis = 0;           // 0 = x, 1 = y, 2 = z
  double direction = 1;   // +1: beyond the +axis face; -1: beyond the -axis face
  double half_extent = 0.15;
  Vec3 patch_center = Vec3::Zero();

  Vec3 outward_normal() const {
    Vec3 n = Vec3::Zero();
    n[axis] = direction;
    return n;
  }
  Vec3 inward_normal() const { return -outward_normal(); }
};

/// Planes for m EPMs on the cube faces, assigned in the fixed order
/// (+x, -x, +y, -y, +z, -z). Each plane sits offset meters beyond its face.
/// Throws std::invalid_argument unless 1 <= m <= 6.
std::vector<EpmPlane> epm_planes(const Workspace& workspace, int m,
                                 double offset, double half_extent);

/// Geometry bundle for the standard simulated scenario. The patch half
/// extent defaults to half the workspace side plus 5 cm.
struct ScenarioGeometry {
  Workspace workspace;
  double plane_offset = 0.15;  // meters beyond each face
  std::optional<double> patch_half_extent;
  double moment_magnitude = 70.0;  // A*m^2

  double resolved_patch_half_extent() const {
    return patch_half_extent.value_or(workspace.half_side() + 0.05);
  }
  std::vector<EpmPlane> planes(int m) const {
    return epm_planes(workspace, m, plane_offset,
                      resolved_patch_half_extent());
  }
};

/// One random placement of all EPMs: position uniform on each plane's patch,
/// moment direction uniform on the hemisphere facing the workspace interior,
/// fixed magnitude. Draws, in order per plane: two in-plane coordinates,
/// then the moment direction.
EpmConfiguration sample_epm_configuration(const std::vector<EpmPlane>& planes,
                                          double moment_magnitude, Rng& rng);

/// Pose with position uniform in the workspace cube (x, y, z draws) and
/// orientation uniform on SO(3).
Pose sample_pose(const Workspace& workspace, Rng& rng);

/// The two error metrics: Euclidean position error and the rotation trace
/// error tr(I - Rhat^T R), which lies in [0, 4].
struct PoseErrors {
  double position = 0.0;     // meters
  double orientation = 0.0;  // dimensionless
};
PoseErrors pose_errors(const Pose& truth, const Pose& estimate);

}  // namespace magloc
