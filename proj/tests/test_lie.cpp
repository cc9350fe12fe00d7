#include <doctest.h>

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "magloc/lie.hpp"
#include "magloc/random.hpp"
#include "support/oracles.hpp"

using namespace magloc;

namespace {

Vec6 random_tangent(Rng& rng, double rho_scale, double max_angle) {
  Vec6 xi;
  xi.head<3>() = rho_scale * Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                  rng.uniform(-1, 1));
  xi.tail<3>() = rng.uniform(0, max_angle) * rng.unit_vector();
  return xi;
}

}  // namespace

TEST_SUITE("lie") {
  TEST_CASE("skew and unskew invert each other and encode cross products") {
    Rng rng(101);
    for (int i = 0; i < 50; ++i) {
      const Vec3 v = rng.unit_vector() * rng.uniform(0, 5);
      const Vec3 w = rng.unit_vector() * rng.uniform(0, 5);
      CHECK((skew(v) * w - v.cross(w)).norm() == doctest::Approx(0.0));
      CHECK((unskew(skew(v)) - v).norm() == doctest::Approx(0.0));
      CHECK((skew(v) + skew(v).transpose()).norm() == doctest::Approx(0.0));
    }
  }

  TEST_CASE("exp_so3 matches axis-angle rotations") {
    const Mat3 rz = exp_so3(Vec3(0, 0, std::numbers::pi / 2));
    CHECK((rz * Vec3(1, 0, 0) - Vec3(0, 1, 0)).norm() < 1e-15);
    CHECK((exp_so3(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);

    Rng rng(102);
    for (int i = 0; i < 100; ++i) {
      const Vec3 phi = rng.uniform(0, 3.1) * rng.unit_vector();
      const Mat3 r = exp_so3(phi);
      CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK((r.transpose() * r - Mat3::Identity()).norm() < 1e-13);
      // The axis is fixed by the rotation.
      CHECK((r * phi - phi).norm() < 1e-12 * (1.0 + phi.norm()));
    }
  }

  TEST_CASE("log_so3 round-trips across angle regimes including pi") {
    Rng rng(103);
    const double angles[] = {0.0,  1e-12, 1e-8, 1e-5, 1e-3, 0.5,
                             1.57, 2.9,   3.1,  3.141, 3.14159,
                             std::numbers::pi};
    for (const double angle : angles) {
      for (int i = 0; i < 40; ++i) {
        const Vec3 axis = rng.unit_vector();
        const Mat3 r = exp_so3(Vec3(angle * axis));
        const Vec3 back = log_so3(r);
        CHECK(back.norm() <= std::numbers::pi + 1e-12);
        CHECK((exp_so3(back) - r).norm() < 2e-12);
        if (angle < 3.0) {
          CHECK((back - angle * axis).norm() < 1e-10);
        }
      }
    }
  }

  TEST_CASE("log_so3 at exactly pi picks a deterministic axis sign") {
    const Vec3 axis = Vec3(1, -2, 0.5).normalized();
    const Mat3 r = exp_so3(Vec3(std::numbers::pi * axis));
    const Vec3 a = log_so3(r);
    const Vec3 b = log_so3(r);
    CHECK((a - b).norm() == 0.0);
    CHECK(std::abs(a.norm() - std::numbers::pi) < 1e-12);
  }

  TEST_CASE("so3 left Jacobian matches its finite-difference definition") {
    // exp(phi + d) ~= exp(J_l(phi) d) exp(phi)
    Rng rng(104);
    for (int i = 0; i < 60; ++i) {
      const Vec3 phi = rng.uniform(0, 3.0) * rng.unit_vector();
      const Mat3 jl = so3_left_jacobian(phi);
      const auto f = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return log_so3(exp_so3(Vec3(x)) * exp_so3(phi).transpose());
      };
      const Eigen::MatrixXd fd = test::numeric_jacobian(f, phi);
      CHECK((jl - fd).norm() < 1e-6 * (1.0 + jl.norm()));
      CHECK((so3_left_jacobian_inverse(phi) * jl - Mat3::Identity()).norm() <
            1e-12);
    }
  }

  TEST_CASE("so3 Jacobian inverse is stable through the series switchover") {
    for (const double angle : {1e-7, 1e-5, 1e-4, 1e-2, 0.09, 0.11, 1.0}) {
      const Vec3 phi(0.6 * angle, -0.8 * angle, 0.0);
      const Mat3 prod = so3_left_jacobian_inverse(phi) * so3_left_jacobian(phi);
      CHECK((prod - Mat3::Identity()).norm() < 1e-13);
    }
  }

  TEST_CASE("exp_se3 and log_se3 round-trip") {
    Rng rng(105);
    for (int i = 0; i < 200; ++i) {
      const Vec6 xi = random_tangent(rng, 2.0, 3.1);
      const Pose t = exp_se3(xi);
      CHECK((log_se3(t) - xi).norm() < 1e-10 * (1.0 + xi.norm()));
    }
    CHECK((exp_se3(Vec6::Zero()).matrix() - Eigen::Matrix4d::Identity())
              .norm() == 0.0);
  }

  TEST_CASE("log_se3 rejects a degenerate rotation block") {
    Pose bad;
    bad.rotation(0, 0) = 2.0;
    CHECK_THROWS_AS(log_se3(bad), std::domain_error);
  }

  TEST_CASE("pose algebra: compose, inverse, 4x4 embedding") {
    Rng rng(106);
    for (int i = 0; i < 50; ++i) {
      const Pose a = exp_se3(random_tangent(rng, 1.0, 3.0));
      const Pose b = exp_se3(random_tangent(rng, 1.0, 3.0));
      CHECK(((a * b).matrix() - a.matrix() * b.matrix()).norm() < 1e-13);
      CHECK(((a * a.inverse()).matrix() - Eigen::Matrix4d::Identity()).norm() <
            1e-13);
      CHECK(a.orthonormality_error() < 1e-13);
    }
  }

  TEST_CASE("se3 left Jacobian matches the defining power series") {
    Rng rng(107);
    for (int i = 0; i < 100; ++i) {
      const Vec6 xi = random_tangent(rng, 2.5, 3.1);
      const Mat6 ref = test::series_se3_left_jacobian(xi);
      CHECK((se3_left_jacobian(xi) - ref).norm() < 1e-12 * ref.norm());
    }
  }

  TEST_CASE("exp_derivative linearizes the exponential on the right") {
    Rng rng(108);
    for (int i = 0; i < 40; ++i) {
      const Vec6 xi = random_tangent(rng, 1.5, 2.8);
      const auto f = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return log_se3(exp_se3(xi).inverse() * exp_se3(Vec6(x)));
      };
      const Eigen::MatrixXd fd = test::numeric_jacobian(f, xi);
      CHECK((exp_derivative(xi) - fd).norm() < 1e-6);
    }
  }

  TEST_CASE("exp_derivative at zero is exactly the identity") {
    CHECK((exp_derivative(Vec6::Zero()) - Mat6::Identity()).norm() == 0.0);
  }

  TEST_CASE("adjoint identities") {
    Rng rng(109);
    for (int i = 0; i < 50; ++i) {
      const Vec6 xi = random_tangent(rng, 1.0, 3.0);
      const Vec6 eta = random_tangent(rng, 1.0, 3.0);
      const Pose t = exp_se3(xi);

      // Ad_T via the 4x4 conjugation.
      const Eigen::Matrix4d conj =
          t.matrix() * exp_se3(eta).matrix() * t.inverse().matrix();
      const Pose conj_pose{conj.topLeftCorner<3, 3>(),
                           conj.topRightCorner<3, 1>()};
      CHECK((se3_adjoint(t) * eta - log_se3(conj_pose)).norm() < 1e-9);

      // Ad(exp(xi)) == expm(ad_xi), checked against the matrix series.
      Mat6 expm = Mat6::Identity();
      Mat6 term = Mat6::Identity();
      double factorial = 1.0;
      for (int n = 1; n <= 60; ++n) {
        factorial *= n;
        term = term * se3_ad(xi);
        expm += term / factorial;
      }
      CHECK((se3_adjoint(t) - expm).norm() < 1e-11 * expm.norm());
    }
  }
}
