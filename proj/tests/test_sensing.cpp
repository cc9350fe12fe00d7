#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "magloc/sensing.hpp"
#include "support/oracles.hpp"

using namespace magloc;

namespace {

MeasurementBatch random_batch(Rng& rng, int n, int m) {
  MeasurementBatch batch;
  for (int i = 0; i < n; ++i) {
    EpmConfiguration config;
    for (int j = 0; j < m; ++j) {
      // Sources on a shell well outside the sampling region for the pose.
      config.epms.push_back(
          {rng.uniform(0.25, 0.45) * rng.unit_vector(),
           70.0 * rng.unit_vector()});
    }
    batch.configs.push_back(config);
  }
  return batch;
}

Pose random_pose(Rng& rng, double radius) {
  return {rng.rotation(), radius * rng.unit_vector() * rng.uniform(0, 1)};
}

}  // namespace

TEST_SUITE("sensing") {
  TEST_CASE("layout: n=2, m=1 gives an 11-vector in the documented order") {
    Rng rng(301);
    const MeasurementBatch batch = random_batch(rng, 2, 1);
    const Pose pose = random_pose(rng, 0.08);
    const MeasurementVector h = predict_measurement(pose, batch);
    CHECK(h.size() == 11);
    CHECK(h.num_configs == 2);
    CHECK(h.norm_entry(0) == h.values[0]);
    CHECK((h.field_entry(1) - Vec3(h.values.segment<3>(5))).norm() == 0.0);
    CHECK((h.gravity_entry() - Vec3(h.values.tail<3>())).norm() == 0.0);
  }

  TEST_CASE("identity pose reads gravity as (0,0,-9.81)") {
    Rng rng(302);
    const MeasurementBatch batch = random_batch(rng, 3, 2);
    const MeasurementVector h =
        predict_measurement(Pose::identity(), batch);
    CHECK((h.gravity_entry() - Vec3(0, 0, -9.81)).norm() == 0.0);
  }

  TEST_CASE("norm entries depend on position only") {
    Rng rng(303);
    const MeasurementBatch batch = random_batch(rng, 4, 2);
    const Vec3 p = 0.05 * rng.unit_vector();
    const MeasurementVector a =
        predict_measurement({rng.rotation(), p}, batch);
    const MeasurementVector b =
        predict_measurement({rng.rotation(), p}, batch);
    for (int i = 0; i < 4; ++i) {
      CHECK(a.norm_entry(i) == doctest::Approx(b.norm_entry(i)).epsilon(1e-13));
    }
  }

  TEST_CASE("noiseless norms match their field blocks") {
    Rng rng(304);
    for (int trial = 0; trial < 20; ++trial) {
      const MeasurementBatch batch = random_batch(rng, 5, 2);
      const Pose pose = random_pose(rng, 0.08);
      const MeasurementVector h = predict_measurement(pose, batch);
      for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(h.norm_entry(i) - h.field_entry(i).norm()) < 1e-12);
      }
    }
  }

  TEST_CASE("gravity block rotated back gives the world vector") {
    Rng rng(305);
    const MeasurementBatch batch = random_batch(rng, 2, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const Pose pose = random_pose(rng, 0.08);
      const MeasurementVector h = predict_measurement(pose, batch);
      CHECK((pose.rotation * h.gravity_entry() - batch.constants.gravity)
                .norm() < 1e-12);
    }
  }

  TEST_CASE("batch validation") {
    MeasurementBatch batch;
    batch.configs.push_back({{Epm{Vec3(0.3, 0, 0), Vec3(0, 0, 70)}}});
    CHECK_THROWS_AS((void)predict_measurement(Pose::identity(), batch),
                    std::invalid_argument);
    batch.configs.push_back({{}});
    CHECK_THROWS_AS((void)predict_measurement(Pose::identity(), batch),
                    std::invalid_argument);
    batch.configs[1] = {{Epm{Vec3(-0.3, 0, 0), Vec3::Zero()}}};
    CHECK_THROWS_AS((void)predict_measurement(Pose::identity(), batch),
                    std::invalid_argument);
    batch.configs[1] = {{Epm{Vec3(-0.3, 0, 0), Vec3(0, 0, 70)}}};
    CHECK_NOTHROW((void)predict_measurement(Pose::identity(), batch));
  }

  TEST_CASE("coincident pose reports the configuration index") {
    MeasurementBatch batch;
    batch.configs.push_back({{Epm{Vec3(0.3, 0, 0), Vec3(0, 0, 70)}}});
    batch.configs.push_back({{Epm{Vec3(-0.3, 0, 0), Vec3(0, 0, 70)}}});
    try {
      (void)predict_measurement({Mat3::Identity(), Vec3(-0.3, 0, 0)}, batch);
      FAIL("expected CoincidentSourceError");
    } catch (const CoincidentSourceError& err) {
      CHECK(err.config_index == 1);
      CHECK(err.epm_index == 0);
    }
  }

  TEST_CASE("jacobian sparsity: norm/orientation and gravity/position zero") {
    Rng rng(306);
    for (int trial = 0; trial < 20; ++trial) {
      const MeasurementBatch batch = random_batch(rng, 3, 2);
      const Pose pose = random_pose(rng, 0.08);
      const Eigen::MatrixXd jac = measurement_jacobian(pose, batch);
      const int n = batch.size();
      CHECK(jac.block(0, 3, n, 3).norm() == 0.0);
      CHECK(jac.block(4 * n, 0, 3, 3).norm() == 0.0);
    }
  }

  TEST_CASE("jacobian matches finite differences of predict_measurement") {
    Rng rng(307);
    for (int trial = 0; trial < 200; ++trial) {
      const MeasurementBatch batch = random_batch(rng, 3, 2);
      const Pose pose = random_pose(rng, 0.08);
      const Eigen::MatrixXd jac = measurement_jacobian(pose, batch);

      const double h = 1e-6;
      Eigen::MatrixXd fd(jac.rows(), 6);
      for (int dir = 0; dir < 6; ++dir) {
        Vec6 xi = Vec6::Zero();
        xi[dir] = h;
        const Eigen::VectorXd plus =
            predict_measurement(pose * exp_se3(xi), batch).values;
        const Eigen::VectorXd minus =
            predict_measurement(pose * exp_se3(Vec6(-xi)), batch).values;
        fd.col(dir) = (plus - minus) / (2.0 * h);
      }
      CHECK((jac - fd).norm() < 1e-5 * (1.0 + fd.norm()));
    }
  }

  TEST_CASE("synthesis with zero noise reproduces the prediction") {
    Rng rng(308);
    const MeasurementBatch batch = random_batch(rng, 4, 2);
    const Pose pose = random_pose(rng, 0.08);
    Rng noise_rng(1);
    const MeasurementVector clean = predict_measurement(pose, batch);
    const MeasurementVector synth =
        synthesize_measurement(pose, batch, NoiseSpec{}, noise_rng);
    CHECK((clean.values - synth.values).norm() == 0.0);
  }

  TEST_CASE("synthesis is deterministic for a fixed seed") {
    Rng rng(309);
    const MeasurementBatch batch = random_batch(rng, 3, 2);
    const Pose pose = random_pose(rng, 0.08);
    NoiseSpec noise;
    noise.mag_std = 1e-6;
    noise.accel_std = 1e-3;
    Rng a(77), b(77);
    const MeasurementVector ya = synthesize_measurement(pose, batch, noise, a);
    const MeasurementVector yb = synthesize_measurement(pose, batch, noise, b);
    CHECK((ya.values - yb.values).norm() == 0.0);
  }

  TEST_CASE("synthesis noise has the requested scale") {
    Rng rng(310);
    const MeasurementBatch batch = random_batch(rng, 2, 1);
    const Pose pose = random_pose(rng, 0.08);
    NoiseSpec noise;
    noise.mag_std = 1e-6;
    const MeasurementVector clean = predict_measurement(pose, batch);

    Rng noise_rng(4242);
    const int samples = 10000;
    double sum = 0, sum2 = 0;
    for (int s = 0; s < samples; ++s) {
      const MeasurementVector y =
          synthesize_measurement(pose, batch, noise, noise_rng);
      const double delta = y.field_entry(0).x() - clean.field_entry(0).x();
      sum += delta;
      sum2 += delta * delta;
    }
    const double std = std::sqrt(sum2 / samples - (sum / samples) * (sum / samples));
    CHECK(std == doctest::Approx(1e-6).epsilon(0.05));
  }

  TEST_CASE("norm synthesis modes") {
    Rng rng(311);
    const MeasurementBatch batch = random_batch(rng, 3, 2);
    const Pose pose = random_pose(rng, 0.08);
    NoiseSpec noise;
    noise.mag_std = 1e-6;

    Rng a(5);
    const MeasurementVector derived = synthesize_measurement(
        pose, batch, noise, a, NormSynthesis::kFromNoisyField);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(derived.norm_entry(i) - derived.field_entry(i).norm()) <
            1e-15);
    }

    Rng b(5);
    const MeasurementVector independent = synthesize_measurement(
        pose, batch, noise, b, NormSynthesis::kIndependentNoise);
    // Field blocks see the same draws in both modes.
    for (int i = 0; i < 3; ++i) {
      CHECK((independent.field_entry(i) - derived.field_entry(i)).norm() ==
            0.0);
      CHECK(independent.norm_entry(i) != derived.norm_entry(i));
    }
  }
}
