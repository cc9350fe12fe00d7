#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "magloc/types.hpp"

namespace magloc {

namespace constants {
/// Vacuum permeability, T*m/A.
inline constexpr double kMu0 = 4.0e-7 * 3.14159265358979323846;
/// Gravitational acceleration, m/s^2. World gravity points along -z.
inline constexpr double kGravity = 9.81;
/// Evaluation points closer than this to a source are rejected, meters.
inline constexpr double kMinSourceDistance = 1e-6;
}  // namespace constants

/// Physical constants threaded through the measurement model. mu0 scales the
/// dipole fields linearly; gravity is the world-frame vector read back by the
/// accelerometer rows.
struct PhysicalConstants {
  double mu0 = constants::kMu0;
  Vec3 gravity = Vec3(0.0, 0.0, -constants::kGravity);
};

/// External permanent magnet, modeled as a point dipole.
struct Epm {
  Vec3 position = Vec3::Zero();  // world frame, meters
  Vec3 moment = Vec3::Zero();    // world frame, A*m^2
};

/// Raised when a field is requested at (or numerically on top of) a source
/// position, where the dipole model blows up. config_index is -1 when the
/// query did not come through a measurement batch.
class CoincidentSourceError : public std::runtime_error {
 public:
  CoincidentSourceError(std::size_t epm_index, double distance,
                        int config_index = -1)
      : std::runtime_error(
            "field requested " + std::to_string(distance) + " m from EPM " +
            std::to_string(epm_index) +
            (config_index >= 0
                 ? " of configuration " + std::to_string(config_index)
                 : std::string()) +
            ", inside the " + std::to_string(constants::kMinSourceDistance) +
            " m exclusion radius"),
        epm_index(epm_index),
        config_index(config_index),
        distance(distance) {}

  std::size_t epm_index;
  int config_index;
  double distance;
};

/// Field of a single point dipole at world point p:
///   B = mu0 / (4 pi d^3) * (3 n (n . m) - m),   n = (p - source)/d.
Vec3 dipole_field(const Epm& epm, const Vec3& p);

/// Spatial gradient dB/dp of dipole_field, a symmetric trace-free 3x3.
Mat3 dipole_field_gradient(const Epm& epm, const Vec3& p);

/// World-frame field and its spatial gradient at one point.
struct FieldSample {
  Vec3 field = Vec3::Zero();
  Mat3 gradient = Mat3::Zero();
};

/// Superposition of dipole fields and gradients; an empty list gives zeros.
/// The epm_index in any thrown CoincidentSourceError refers to a position in
/// this list.
FieldSample total_field(const std::vector<Epm>& epms, const Vec3& p);

}  // namespace magloc
