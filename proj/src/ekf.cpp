#include "magloc/ekf.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <limits>
#include <string>

namespace magloc {
namespace {

Mat6 symmetrized(const Mat6& m) { return 0.5 * (m + m.transpose()); }

void enforce_block_structure(Mat6& p) {
  p.topRightCorner<3, 3>().setZero();
  p.bottomLeftCorner<3, 3>().setZero();
}

void check_finite(const FilterState& state, const char* where) {
  if (!state.covariance.allFinite() ||
      !state.estimate.rotation.allFinite() ||
      !state.estimate.position.allFinite()) {
    throw FilterDivergenceError(std::string("filter diverged during ") +
                                where + ": non-finite state");
  }
}

}  // namespace

Eigen::VectorXd MeasurementNoiseModel::diagonal(const NoiseSpec& noise,
                                                int n) const {
  const double mag = std::max(noise.mag_std, mag_floor);
  const double accel = std::max(noise.accel_std, accel_floor);
  Eigen::VectorXd diag(4 * n + 3);
  diag.head(n).setConstant(norm_scale * mag * mag);
  diag.segment(n, 3 * n).setConstant(mag * mag);
  diag.tail(3).setConstant(accel * accel);
  return diag;
}

FilterState make_initial_state(const FilterParams& params,
                               const Pose& initial_estimate) {
  return {initial_estimate, symmetrized(params.initial_covariance)};
}

FilterState predict(const FilterState& state, const DynamicsInput& input,
                    const FilterParams& params) {
  Vec6 xi;
  xi.head<3>() = input.twist.linear;
  xi.tail<3>() = input.twist.angular - input.gyro_bias;
  xi *= params.timestep;

  FilterState next;
  if (xi.isZero()) {
    next.estimate = state.estimate;
    next.covariance =
        symmetrized(state.covariance + params.process_noise);
  } else {
    const Pose step = exp_se3(xi);
    next.estimate = state.estimate * step;
    const Mat6 f = se3_adjoint(step.inverse());
    const Mat6 g = exp_derivative(xi);
    next.covariance =
        symmetrized(f * state.covariance * f.transpose() +
                    g * params.process_noise * g.transpose());
  }
  if (params.block_diagonal_covariance) {
    enforce_block_structure(next.covariance);
  }
  check_finite(next, "predict");
  return next;
}

UpdateResult update(const FilterState& state, const MeasurementBatch& batch,
                    const MeasurementVector& y, const FilterParams& params) {
  const int n = batch.size();
  if (y.size() != 4 * n + 3) {
    throw std::invalid_argument(
        "measurement has " + std::to_string(y.size()) + " entries, batch of " +
        std::to_string(n) + " configurations needs " +
        std::to_string(4 * n + 3));
  }

  const MeasurementVector h = predict_measurement(state.estimate, batch);
  const Eigen::VectorXd innovation = y.values - h.values;
  const Eigen::MatrixXd jac = measurement_jacobian(state.estimate, batch);

  Eigen::MatrixXd s = jac * state.covariance * jac.transpose();
  s.diagonal() += params.noise_model.diagonal(params.noise, n);
  s = 0.5 * (s + s.transpose());

  // The rows of S mix Tesla^2 with (m/s^2)^2, which differ by many orders of
  // magnitude. Factor the Jacobi-preconditioned St = D^-1 S D^-1 instead;
  // the gain is algebraically unchanged but the conditioning (and the guard
  // below) now reflects genuine degeneracy rather than units.
  const Eigen::VectorXd d = s.diagonal().cwiseMax(1e-300).cwiseSqrt();
  const Eigen::VectorXd d_inv = d.cwiseInverse();
  const Eigen::MatrixXd st = d_inv.asDiagonal() * s * d_inv.asDiagonal();

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(st);
  const double rcond = ldlt.rcond();
  const double condition = rcond > 0.0 ? 1.0 / rcond
                                       : std::numeric_limits<double>::infinity();

  UpdateResult result;
  result.innovation = innovation;
  result.condition = condition;
  if (ldlt.info() != Eigen::Success ||
      condition > params.max_innovation_condition) {
    result.state = state;
    result.accepted = false;
    return result;
  }

  // K = P H^T S^-1 = P H^T D^-1 St^-1 D^-1, via the factorization of St.
  const Eigen::MatrixXd gain =
      (d_inv.asDiagonal() *
       ldlt.solve(d_inv.asDiagonal() * (jac * state.covariance)))
          .transpose();

  const Vec6 correction = params.timestep * (gain * innovation);
  result.state.estimate = state.estimate * exp_se3(correction);
  result.state.covariance = symmetrized(
      state.covariance - gain * s * gain.transpose());
  if (params.block_diagonal_covariance) {
    enforce_block_structure(result.state.covariance);
  }
  check_finite(result.state, "update");
  return result;
}

}  // namespace magloc
