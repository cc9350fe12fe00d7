#pragma once

#include <vector>

#include "magloc/lie.hpp"
#include "magloc/magnetics.hpp"
#include "magloc/random.hpp"
#include "magloc/types.hpp"

namespace magloc {

/// One placement of the m EPMs. The robot collects one magnetometer reading
/// per configuration while the EPMs are repositioned around the workspace.
struct EpmConfiguration {
  std::vector<Epm> epms;
};

/// The n EPM configurations whose readings are stacked into one measurement,
/// plus the constants the model needs.
struct MeasurementBatch {
  std::vector<EpmConfiguration> configs;
  PhysicalConstants constants;

  int size() const { return static_cast<int>(configs.size()); }
};

/// Throws std::invalid_argument unless the batch has at least two
/// configurations (the observability minimum), each with at least one EPM of
/// nonzero finite moment.
void validate(const MeasurementBatch& batch);

/// Stacked sensor readings for one batch, in the order
///   [ n field norms (T) | n body-frame field 3-vectors (T) |
///     body-frame gravity 3-vector (m/s^2) ]
/// for a total of 4n+3 entries.
struct MeasurementVector {
  Eigen::VectorXd values;
  int num_configs = 0;

  int size() const { return static_cast<int>(values.size()); }

  double norm_entry(int i) const { return values[i]; }
  Eigen::Ref<const Vec3> field_entry(int i) const {
    return values.segment<3>(num_configs + 3 * i);
  }
  Eigen::Ref<const Vec3> gravity_entry() const { return values.tail<3>(); }

  double& norm_entry(int i) { return values[i]; }
  Eigen::Ref<Vec3> field_entry(int i) {
    return values.segment<3>(num_configs + 3 * i);
  }
  Eigen::Ref<Vec3> gravity_entry() { return values.tail<3>(); }
};

/// Sensor noise magnitudes and gyroscope error terms. The gyro entries feed
/// the filter's prediction step, never the measurement itself.
struct NoiseSpec {
  double mag_std = 0.0;            // Tesla, per field component
  double accel_std = 0.0;          // m/s^2, per gravity component
  Vec3 gyro_bias = Vec3::Zero();   // rad/s
  double gyro_std = 0.0;           // rad/s, per component
};

/// How synthesize_measurement fills the norm entries.
enum class NormSynthesis {
  kFromNoisyField,    // norm of the noisy field block (default; one sensor)
  kIndependentNoise,  // true norm plus its own Gaussian draw
};

/// Noiseless measurement h(T) for the batch.
MeasurementVector predict_measurement(const Pose& pose,
                                      const MeasurementBatch& batch);

/// Jacobian of predict_measurement with respect to the right perturbation
/// xi = [rho; phi] of the pose (T -> T exp(xi)). Size (4n+3) x 6.
Eigen::MatrixXd measurement_jacobian(const Pose& pose,
                                     const MeasurementBatch& batch);

/// Simulated sensor output: predict_measurement at the true pose plus
/// zero-mean Gaussian noise. Field components receive mag_std, gravity
/// components accel_std. Draw order is fixed (fields config by config, then
/// gravity, then any independent norm draws) so a given seed reproduces the
/// same measurement.
MeasurementVector synthesize_measurement(
    const Pose& true_pose, const MeasurementBatch& batch,
    const NoiseSpec& noise, Rng& rng,
    NormSynthesis norm_mode = NormSynthesis::kFromNoisyField);

}  // namespace magloc
