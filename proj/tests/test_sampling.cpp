#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "magloc/sampling.hpp"

using namespace magloc;

TEST_SUITE("sampling") {
  TEST_CASE("plane assignment order and geometry") {
    const Workspace ws{Vec3::Zero(), 0.2};
    const auto planes = epm_planes(ws, 6, 0.15, 0.15);
    REQUIRE(planes.size() == 6);
    // Order (+x, -x, +y, -y, +z, -z), each 0.25 m from the center.
    const Vec3 expected[] = {{0.25, 0, 0},  {-0.25, 0, 0}, {0, 0.25, 0},
                             {0, -0.25, 0}, {0, 0, 0.25},  {0, 0, -0.25}};
    for (int i = 0; i < 6; ++i) {
      CHECK((planes[i].patch_center - expected[i]).norm() < 1e-15);
      CHECK(planes[i].outward_normal()[i / 2] == (i % 2 == 0 ? 1.0 : -1.0));
    }

    const auto one = epm_planes(ws, 1, 0.15, 0.15);
    CHECK(one.size() == 1);
    CHECK(one[0].axis == 0);
    CHECK(one[0].direction == 1.0);

    const auto two = epm_planes(ws, 2, 0.15, 0.15);
    CHECK(two[1].axis == 0);
    CHECK(two[1].direction == -1.0);

    CHECK_THROWS_AS((void)epm_planes(ws, 0, 0.15, 0.15),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)epm_planes(ws, 7, 0.15, 0.15),
                    std::invalid_argument);
  }

  TEST_CASE("offcenter workspace shifts the planes") {
    const Workspace ws{Vec3(1, 2, 3), 0.4};
    const auto planes = epm_planes(ws, 3, 0.1, 0.2);
    CHECK((planes[0].patch_center - Vec3(1.3, 2, 3)).norm() < 1e-15);
    CHECK((planes[2].patch_center - Vec3(1, 2.3, 3)).norm() < 1e-15);
  }

  TEST_CASE("configuration sampling stays on the patch, moments point inward") {
    const Workspace ws{Vec3::Zero(), 0.2};
    const auto planes = epm_planes(ws, 2, 0.15, 0.15);
    Rng rng(501);
    Vec3 mean_pos = Vec3::Zero();
    const int draws = 10000;
    for (int d = 0; d < draws; ++d) {
      const EpmConfiguration config =
          sample_epm_configuration(planes, 70.0, rng);
      REQUIRE(config.epms.size() == 2);
      for (int j = 0; j < 2; ++j) {
        const Epm& epm = config.epms[j];
        const EpmPlane& plane = planes[j];
        CHECK(epm.position[plane.axis] ==
              doctest::Approx(plane.patch_center[plane.axis]));
        CHECK((epm.position - plane.patch_center).cwiseAbs().maxCoeff() <=
              plane.half_extent);
        CHECK(epm.moment.dot(plane.inward_normal()) >= 0.0);
        CHECK(epm.moment.norm() == doctest::Approx(70.0).epsilon(1e-12));
      }
      mean_pos += config.epms[0].position;
    }
    // Uniform on the patch: empirical mean within 3 standard errors of the
    // patch center (se = half_extent/sqrt(3 draws)).
    const double se = 0.15 / std::sqrt(3.0 * draws);
    CHECK((mean_pos / draws - planes[0].patch_center).norm() < 3.0 * se * 2);
  }

  TEST_CASE("configuration sampling is deterministic") {
    const Workspace ws{Vec3::Zero(), 0.2};
    const auto planes = epm_planes(ws, 3, 0.15, 0.15);
    Rng a(502), b(502);
    for (int d = 0; d < 10; ++d) {
      const auto ca = sample_epm_configuration(planes, 70.0, a);
      const auto cb = sample_epm_configuration(planes, 70.0, b);
      for (int j = 0; j < 3; ++j) {
        CHECK((ca.epms[j].position - cb.epms[j].position).norm() == 0.0);
        CHECK((ca.epms[j].moment - cb.epms[j].moment).norm() == 0.0);
      }
    }
  }

  TEST_CASE("pose sampling covers the cube uniformly") {
    const Workspace ws{Vec3(0.5, 0, 0), 0.2};
    Rng rng(503);
    Mat3 rot_mean = Mat3::Zero();
    Vec3 pos_mean = Vec3::Zero();
    const int draws = 10000;
    for (int d = 0; d < draws; ++d) {
      const Pose pose = sample_pose(ws, rng);
      CHECK(ws.contains(pose.position));
      CHECK(pose.orthonormality_error() < 1e-12);
      rot_mean += pose.rotation;
      pos_mean += pose.position;
    }
    rot_mean /= draws;
    pos_mean /= draws;
    CHECK(rot_mean.cwiseAbs().maxCoeff() < 0.05);
    CHECK((pos_mean - ws.center).cwiseAbs().maxCoeff() < 0.005);
  }

  TEST_CASE("pose error metrics") {
    Rng rng(504);
    const Pose pose{rng.rotation(), Vec3(0.1, -0.2, 0.3)};
    const PoseErrors zero = pose_errors(pose, pose);
    CHECK(zero.position == 0.0);
    CHECK(std::abs(zero.orientation) < 1e-14);

    // 180 degrees about any axis: e_R = 4.
    Pose flipped = pose;
    flipped.rotation =
        pose.rotation * exp_so3(Vec3(std::numbers::pi * rng.unit_vector()));
    CHECK(pose_errors(pose, flipped).orientation ==
          doctest::Approx(4.0).epsilon(1e-10));

    // Small angle theta: e_R = 2(1 - cos(theta)).
    for (const double theta : {1e-3, 0.05, 0.4}) {
      Pose nudged = pose;
      nudged.rotation = pose.rotation * exp_so3(Vec3(theta * rng.unit_vector()));
      CHECK(pose_errors(pose, nudged).orientation ==
            doctest::Approx(2.0 * (1.0 - std::cos(theta))).epsilon(1e-10));
    }

    Pose shifted = pose;
    shifted.position += Vec3(0.003, -0.004, 0.0);
    CHECK(pose_errors(pose, shifted).position == doctest::Approx(0.005));

    // e_R range bound on random rotation pairs.
    for (int i = 0; i < 200; ++i) {
      const PoseErrors e =
          pose_errors({rng.rotation(), Vec3::Zero()},
                      {rng.rotation(), Vec3::Zero()});
      CHECK(e.orientation >= 0.0);
      CHECK(e.orientation <= 4.0 + 1e-12);
    }
  }

  TEST_CASE("scenario geometry defaults") {
    ScenarioGeometry geometry;
    CHECK(geometry.workspace.side == 0.2);
    CHECK(geometry.resolved_patch_half_extent() == doctest::Approx(0.15));
    geometry.patch_half_extent = 0.07;
    CHECK(geometry.resolved_patch_half_extent() == 0.07);
    const auto planes = geometry.planes(2);
    CHECK(planes.size() == 2);
    CHECK(planes[0].half_extent == 0.07);
  }
}
