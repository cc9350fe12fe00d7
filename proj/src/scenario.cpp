#include "magloc/scenario.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "magloc/parallel.hpp"
#include "magloc/random.hpp"

namespace magloc {

namespace {

Eigen::Vector4d canonical_quaternion(const Mat3& rotation) {
  Eigen::Quaterniond q(rotation);
  if (q.w() < 0.0) q.coeffs() *= -1.0;
  return {q.w(), q.x(), q.y(), q.z()};
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

TrialResult run_trial(const Pose& truth, const TrialSetup& setup, Rng& rng) {
  if (setup.n < 2) {
    throw std::invalid_argument(
        "run_trial needs n >= 2 configurations per iteration; a single "
        "configuration leaves the pose unobservable");
  }
  const std::vector<EpmPlane> planes = setup.geometry.planes(setup.m);

  TrialResult result;
  FilterState state = make_initial_state(setup.params, setup.initial_estimate);
  const DynamicsInput static_input{};  // the robot does not move

  // Report the initial errors if the filter diverges before the first
  // completed update.
  const PoseErrors initial = pose_errors(truth, state.estimate);
  result.final_e_p = initial.position;
  result.final_e_R = initial.orientation;

  ConvergenceDetector detector(setup.criteria);
  for (int k = 1; k <= setup.criteria.max_iterations; ++k) {
    MeasurementBatch batch;
    batch.configs.reserve(setup.n);
    for (int i = 0; i < setup.n; ++i) {
      batch.configs.push_back(sample_epm_configuration(
          planes, setup.geometry.moment_magnitude, rng));
    }
    const MeasurementVector y =
        synthesize_measurement(truth, batch, setup.noise, rng, setup.norm_mode);

    state = predict(state, static_input, setup.params);
    try {
      UpdateResult step = update(state, batch, y, setup.params);
      if (!step.accepted) ++result.rejected_updates;
      state = std::move(step.state);
    } catch (const FilterDivergenceError&) {
      result.diverged = true;
      result.iterations_run = k;
      break;
    }

    const PoseErrors errors = pose_errors(truth, state.estimate);
    const bool pos_ok =
        ((truth.position - state.estimate.position).cwiseAbs().array() <
         setup.criteria.pos_tol_per_axis)
            .all();
    const bool orient_ok = errors.orientation < setup.criteria.orient_tol_trace;
    if (pos_ok && result.pos_first_iteration == 0) {
      result.pos_first_iteration = k;
    }
    if (orient_ok && result.orient_first_iteration == 0) {
      result.orient_first_iteration = k;
    }

    if (detector.step(pos_ok && orient_ok)) {
      result.converged = true;
      result.configs_to_convergence = setup.n * detector.trigger_iteration();
    }

    if (setup.record_trace) {
      IterationRecord record;
      record.k = k;
      record.configs_used = setup.n * k;
      record.e_p = errors.position;
      record.e_R = errors.orientation;
      record.position = state.estimate.position;
      record.quaternion = canonical_quaternion(state.estimate.rotation);
      result.trace.push_back(record);
    }

    result.iterations_run = k;
    result.final_e_p = errors.position;
    result.final_e_R = errors.orientation;
    if (result.converged && !setup.run_to_horizon) break;
  }
  result.final_estimate = state.estimate;
  return result;
}

MonteCarloSummary monte_carlo(int trials, const TrialSetup& setup,
                              std::uint64_t master_seed, int threads) {
  if (trials < 1) {
    throw std::invalid_argument("monte_carlo needs trials >= 1");
  }

  MonteCarloSummary summary;
  summary.trials = trials;
  summary.results.resize(trials);
  detail::parallel_for(trials, threads, [&](int index) {
    Rng rng(mix_seed(master_seed, static_cast<std::uint64_t>(index)));
    const Pose truth = sample_pose(setup.geometry.workspace, rng);
    summary.results[index] = run_trial(truth, setup, rng);
  });

  int converged = 0;
  int below_1mm = 0;
  std::vector<double> configs, e_p, e_R, pos_first, orient_first;
  for (const TrialResult& r : summary.results) {
    converged += r.converged;
    below_1mm += r.final_e_p < 1e-3;
    if (r.converged) configs.push_back(r.configs_to_convergence);
    e_p.push_back(r.final_e_p);
    e_R.push_back(r.final_e_R);
    if (r.pos_first_iteration > 0) pos_first.push_back(r.pos_first_iteration);
    if (r.orient_first_iteration > 0) {
      orient_first.push_back(r.orient_first_iteration);
    }
  }
  summary.convergence_fraction = static_cast<double>(converged) / trials;
  summary.fraction_below_1mm = static_cast<double>(below_1mm) / trials;
  summary.median_configs_to_convergence = median(std::move(configs));
  summary.median_final_e_p = median(std::move(e_p));
  summary.median_final_e_R = median(std::move(e_R));
  summary.median_pos_first_iteration = median(std::move(pos_first));
  summary.median_orient_first_iteration = median(std::move(orient_first));
  return summary;
}

}  // namespace magloc
