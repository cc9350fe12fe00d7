#pragma once

#include <Eigen/Core>

#include "magloc/types.hpp"

namespace magloc {

// Conventions used throughout the library:
//   * se(3) tangent vectors are ordered [rho; phi] -- translational part
//     first (meters, or m*s depending on context), rotational part second
//     (radians).
//   * Perturbations are applied on the right (body frame), T * exp(xi).
//     Every Jacobian in the sensing and filter code follows this convention.

/// Rigid transform: rotation + translation of the MAMR frame in the world.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 position = Vec3::Zero();

  static Pose identity() { return {}; }

  Pose operator*(const Pose& rhs) const {
    return {rotation * rhs.rotation, position + rotation * rhs.position};
  }

  Pose inverse() const {
    return {rotation.transpose(), -(rotation.transpose() * position)};
  }

  Eigen::Matrix4d matrix() const;

  /// Max-norm deviation of R^T R from identity; ~0 for a valid rotation.
  double orthonormality_error() const;
};

/// Body twist: linear velocity V (m/s) and angular velocity Omega (rad/s).
struct Twist {
  Vec3 linear = Vec3::Zero();
  Vec3 angular = Vec3::Zero();
};

/// Skew-symmetric matrix S with S*w == v x w.
Mat3 skew(const Vec3& v);

/// Inverse of skew; averages the off-diagonal pairs of m.
Vec3 unskew(const Mat3& m);

/// Rodrigues formula.
Mat3 exp_so3(const Vec3& phi);

/// Rotation log; returns phi with norm in [0, pi]. Angles at pi use the
/// axis-from-diagonal branch.
Vec3 log_so3(const Mat3& rotation);

/// Left Jacobian of the SO(3) exponential.
Mat3 so3_left_jacobian(const Vec3& phi);

/// Inverse of so3_left_jacobian (closed form).
Mat3 so3_left_jacobian_inverse(const Vec3& phi);

/// Closed-form SE(3) exponential of xi = [rho; phi].
Pose exp_se3(const Vec6& xi);

/// Inverse of exp_se3; rotational part has norm <= pi. Throws
/// std::domain_error if the rotation block is degenerate (R^T R deviates from
/// identity by more than 1e-6).
Vec6 log_se3(const Pose& pose);

/// Left Jacobian of the SE(3) exponential:
/// exp(xi + d) ~= exp(se3_left_jacobian(xi) * d) * exp(xi) to first order.
Mat6 se3_left_jacobian(const Vec6& xi);

/// Derivative of the SE(3) exponential under the right-perturbation
/// convention: exp(xi + d) ~= exp(xi) * exp(exp_derivative(xi) * d) to first
/// order. Equals se3_left_jacobian(-xi); identity at xi = 0.
Mat6 exp_derivative(const Vec6& xi);

/// Adjoint of a pose: Ad_T * xi = (T * hat(xi) * T^-1)^vee.
Mat6 se3_adjoint(const Pose& pose);

/// se(3) adjoint (Lie bracket matrix) of a tangent vector.
Mat6 se3_ad(const Vec6& xi);

}  // namespace magloc
