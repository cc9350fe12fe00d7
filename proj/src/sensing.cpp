#include "magloc/sensing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace magloc {
namespace {

// Re-tag a coincident-source error with the batch-level config index.
FieldSample config_field(const EpmConfiguration& config, const Vec3& p,
                         int config_index, double mu0_scale) {
  try {
    FieldSample sample = total_field(config.epms, p);
    sample.field *= mu0_scale;
    sample.gradient *= mu0_scale;
    return sample;
  } catch (const CoincidentSourceError& err) {
    throw CoincidentSourceError(err.epm_index, err.distance, config_index);
  }
}

}  // namespace

void validate(const MeasurementBatch& batch) {
  if (batch.size() < 2) {
    throw std::invalid_argument(
        "measurement batch needs at least 2 EPM configurations, got " +
        std::to_string(batch.size()));
  }
  for (int i = 0; i < batch.size(); ++i) {
    const auto& epms = batch.configs[i].epms;
    if (epms.empty()) {
      throw std::invalid_argument("EPM configuration " + std::to_string(i) +
                                  " is empty");
    }
    for (std::size_t j = 0; j < epms.size(); ++j) {
      if (!epms[j].position.allFinite() || !epms[j].moment.allFinite() ||
          epms[j].moment.norm() == 0.0) {
        throw std::invalid_argument("EPM " + std::to_string(j) +
                                    " of configuration " + std::to_string(i) +
                                    " has a degenerate position or moment");
      }
    }
  }
}

MeasurementVector predict_measurement(const Pose& pose,
                                      const MeasurementBatch& batch) {
  validate(batch);
  const int n = batch.size();
  const double mu0_scale = batch.constants.mu0 / constants::kMu0;

  MeasurementVector out;
  out.num_configs = n;
  out.values.resize(4 * n + 3);
  for (int i = 0; i < n; ++i) {
    const Vec3 world_field =
        config_field(batch.configs[i], pose.position, i, mu0_scale).field;
    const Vec3 body_field = pose.rotation.transpose() * world_field;
    out.norm_entry(i) = body_field.norm();
    out.field_entry(i) = body_field;
  }
  out.gravity_entry() = pose.rotation.transpose() * batch.constants.gravity;
  return out;
}

Eigen::MatrixXd measurement_jacobian(const Pose& pose,
                                     const MeasurementBatch& batch) {
  validate(batch);
  const int n = batch.size();
  const double mu0_scale = batch.constants.mu0 / constants::kMu0;
  const Mat3& rot = pose.rotation;

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(4 * n + 3, 6);
  for (int i = 0; i < n; ++i) {
    const FieldSample sample =
        config_field(batch.configs[i], pose.position, i, mu0_scale);
    const Vec3 body_field = rot.transpose() * sample.field;

    // Norm rows: position sensitivity only; a right translation rho moves
    // the robot by R rho in the world.
    const double norm = sample.field.norm();
    if (norm > 0.0) {
      jac.block<1, 3>(i, 0) =
          sample.field.transpose() * sample.gradient * rot / norm;
    }

    // Field rows: d(R^T B(p + R rho)) and d((R exp(phi_x))^T B).
    jac.block<3, 3>(n + 3 * i, 0) = rot.transpose() * sample.gradient * rot;
    jac.block<3, 3>(n + 3 * i, 3) = skew(body_field);
  }
  jac.block<3, 3>(4 * n, 3) =
      skew(Vec3(rot.transpose() * batch.constants.gravity));
  return jac;
}

MeasurementVector synthesize_measurement(const Pose& true_pose,
                                         const MeasurementBatch& batch,
                                         const NoiseSpec& noise, Rng& rng,
                                         NormSynthesis norm_mode) {
  MeasurementVector out = predict_measurement(true_pose, batch);
  const int n = out.num_configs;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      out.field_entry(i)[c] += noise.mag_std * rng.gaussian();
    }
  }
  for (int c = 0; c < 3; ++c) {
    out.gravity_entry()[c] += noise.accel_std * rng.gaussian();
  }
  for (int i = 0; i < n; ++i) {
    if (norm_mode == NormSynthesis::kFromNoisyField) {
      out.norm_entry(i) = out.field_entry(i).norm();
    } else {
      out.norm_entry(i) += noise.mag_std * rng.gaussian();
    }
  }
  return out;
}

}  // namespace magloc
