#include "magloc/lie.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magloc {
namespace {

// Taylor series below this angle; avoids cancellation in the sinc-like terms.
constexpr double kSmallAngle = 1e-5;
// Distance from pi at which log switches to the axis-from-diagonal branch.
constexpr double kPiBranchWindow = 1e-4;

struct SincCoeffs {
  double a;  // sin(t)/t
  double b;  // (1-cos(t))/t^2
  double c;  // (t-sin(t))/t^3
};

SincCoeffs sinc_coeffs(double theta) {
  const double t2 = theta * theta;
  if (theta < kSmallAngle) {
    return {1.0 - t2 / 6.0 + t2 * t2 / 120.0,
            0.5 - t2 / 24.0 + t2 * t2 / 720.0,
            1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0};
  }
  const double s = std::sin(theta);
  const double half = std::sin(0.5 * theta);
  // 1 - cos = 2 sin^2(t/2), avoiding cancellation for moderate angles.
  return {s / theta, 2.0 * half * half / t2, (theta - s) / (t2 * theta)};
}

// J_l(xi) = sum_n ad^n/(n+1)! for small xi; terms vanish exactly at xi = 0
// so the result there is the exact identity.
Mat6 left_jacobian_series(const Vec6& xi) {
  Mat6 sum = Mat6::Identity();
  Mat6 term = Mat6::Identity();
  const Mat6 ad = se3_ad(xi);
  double factorial = 1.0;
  for (int n = 1; n <= 30; ++n) {
    term = term * ad;
    factorial *= n + 1;
    const Mat6 contribution = term / factorial;
    sum += contribution;
    if (contribution.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return sum;
}

}  // namespace

Eigen::Matrix4d Pose::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation;
  m.topRightCorner<3, 1>() = position;
  return m;
}

double Pose::orthonormality_error() const {
  return (rotation.transpose() * rotation - Mat3::Identity())
      .cwiseAbs()
      .maxCoeff();
}

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),  //
      v.z(), 0.0, -v.x(),   //
      -v.y(), v.x(), 0.0;
  return m;
}

Vec3 unskew(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

Mat3 exp_so3(const Vec3& phi) {
  const auto k = sinc_coeffs(phi.norm());
  const Mat3 px = skew(phi);
  return Mat3::Identity() + k.a * px + k.b * px * px;
}

Vec3 log_so3(const Mat3& rotation) {
  // R - R^T = 2 sin(theta) skew(axis), so halve after unskew.
  const Vec3 sv = 0.5 * unskew(rotation - rotation.transpose());
  const double s = sv.norm();
  const double c = std::clamp(0.5 * (rotation.trace() - 1.0), -1.0, 1.0);
  const double theta = std::atan2(s, c);

  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    return (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0) * sv;
  }
  if (theta < M_PI - kPiBranchWindow) {
    return (theta / s) * sv;
  }

  // Near pi the antisymmetric part vanishes; recover the axis from the
  // symmetric part, using the largest diagonal entry of axis*axis^T.
  const Mat3 outer =
      (0.5 * (rotation + rotation.transpose()) - c * Mat3::Identity()) /
      (1.0 - c);
  int k = 0;
  outer.diagonal().maxCoeff(&k);
  Vec3 axis = outer.col(k) / std::sqrt(std::max(outer(k, k), 1e-12));
  axis.normalize();

  if (s > 1e-12) {
    if (sv.dot(axis) < 0.0) axis = -axis;
  } else {
    // Exactly pi: both signs are valid; pick a deterministic one.
    for (int i = 0; i < 3; ++i) {
      if (std::abs(axis[i]) > 1e-8) {
        if (axis[i] < 0.0) axis = -axis;
        break;
      }
    }
  }
  return theta * axis;
}

Mat3 so3_left_jacobian(const Vec3& phi) {
  const auto k = sinc_coeffs(phi.norm());
  const Mat3 px = skew(phi);
  return Mat3::Identity() + k.b * px + k.c * px * px;
}

Mat3 so3_left_jacobian_inverse(const Vec3& phi) {
  const double theta = phi.norm();
  const double t2 = theta * theta;
  double d;
  if (theta < 0.1) {
    d = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0 + t2 * t2 * t2 / 1209600.0;
  } else {
    // (1 - (t/2)cot(t/2))/t^2, written with tan to avoid 1-cos cancellation.
    d = (1.0 - 0.5 * theta / std::tan(0.5 * theta)) / t2;
  }
  const Mat3 px = skew(phi);
  return Mat3::Identity() - 0.5 * px + d * px * px;
}

Pose exp_se3(const Vec6& xi) {
  const Vec3 rho = xi.head<3>();
  const Vec3 phi = xi.tail<3>();
  return {exp_so3(phi), so3_left_jacobian(phi) * rho};
}

Vec6 log_se3(const Pose& pose) {
  if (pose.orthonormality_error() > 1e-6) {
    throw std::domain_error("log_se3: rotation block is not orthonormal");
  }
  Vec6 xi;
  const Vec3 phi = log_so3(pose.rotation);
  xi.head<3>() = so3_left_jacobian_inverse(phi) * pose.position;
  xi.tail<3>() = phi;
  return xi;
}

// Evaluated by argument halving: J_l(2x) = (I + Ad(exp(x)))/2 * J_l(x), with
// the convergent series at the reduced argument. Stable for any magnitude.
Mat6 se3_left_jacobian(const Vec6& xi) {
  int doublings = 0;
  Vec6 reduced = xi;
  while (reduced.norm() > 0.5) {
    reduced *= 0.5;
    ++doublings;
  }
  Mat6 jac = left_jacobian_series(reduced);
  for (int i = 0; i < doublings; ++i) {
    jac = 0.5 * (Mat6::Identity() + se3_adjoint(exp_se3(reduced))) * jac;
    reduced *= 2.0;
  }
  return jac;
}

Mat6 exp_derivative(const Vec6& xi) { return se3_left_jacobian(-xi); }

Mat6 se3_adjoint(const Pose& pose) {
  Mat6 out = Mat6::Zero();
  out.topLeftCorner<3, 3>() = pose.rotation;
  out.bottomRightCorner<3, 3>() = pose.rotation;
  out.topRightCorner<3, 3>() = skew(pose.position) * pose.rotation;
  return out;
}

Mat6 se3_ad(const Vec6& xi) {
  Mat6 out = Mat6::Zero();
  const Mat3 px = skew(Vec3(xi.tail<3>()));
  out.topLeftCorner<3, 3>() = px;
  out.bottomRightCorner<3, 3>() = px;
  out.topRightCorner<3, 3>() = skew(Vec3(xi.head<3>()));
  return out;
}

}  // namespace magloc
