#pragma once

#include <cstdint>
#include <vector>

#include "magloc/ekf.hpp"
#include "magloc/sampling.hpp"
#include "magloc/sensing.hpp"
#include "magloc/types.hpp"

namespace magloc {

/// When a trial counts as converged: every position axis within
/// pos_tol_per_axis of the truth and the orientation trace error below
/// orient_tol_trace, held for hold_steps consecutive iterations.
struct ConvergenceCriteria {
  double pos_tol_per_axis = 0.005;  // meters
  double orient_tol_trace = 0.1;
  int hold_steps = 150;
  /// Horizon matching the convergence deadline the summary statistics are
  /// quoted against: a pose that has not locked in by here counts as a miss.
  int max_iterations = 1000;
};

/// Streak counter behind the convergence criteria: counts consecutive
/// in-tolerance iterations, resets on any miss, and triggers once the streak
/// reaches hold_steps.
class ConvergenceDetector {
 public:
  explicit ConvergenceDetector(const ConvergenceCriteria& criteria)
      : hold_steps_(criteria.hold_steps) {}

  /// Feeds one iteration's outcome; returns true exactly once, on the
  /// iteration completing the required streak.
  bool step(bool in_tolerance) {
    ++iteration_;
    streak_ = in_tolerance ? streak_ + 1 : 0;
    if (!triggered_ && streak_ >= hold_steps_) {
      triggered_ = true;
      trigger_iteration_ = iteration_ - hold_steps_ + 1;
      return true;
    }
    return false;
  }

  int streak() const { return streak_; }
  bool triggered() const { return triggered_; }
  /// 1-based index of the first iteration of the qualifying streak
  /// (0 before triggering).
  int trigger_iteration() const { return trigger_iteration_; }

 private:
  int hold_steps_;
  int iteration_ = 0;
  int streak_ = 0;
  bool triggered_ = false;
  int trigger_iteration_ = 0;
};

/// One EKF iteration of a trial, for trace output.
struct IterationRecord {
  int k = 0;             // 1-based iteration index
  int configs_used = 0;  // n * k
  double e_p = 0.0;
  double e_R = 0.0;
  Vec3 position = Vec3::Zero();
  /// Estimate orientation as (w, x, y, z) with w >= 0.
  Eigen::Vector4d quaternion = Eigen::Vector4d::Zero();
};

/// Everything a trial needs besides the truth pose and the generator.
struct TrialSetup {
  int m = 2;   // EPMs in the workspace
  int n = 20;  // configurations per EKF iteration
  ScenarioGeometry geometry;
  FilterParams params;
  NoiseSpec noise;
  ConvergenceCriteria criteria;
  NormSynthesis norm_mode = NormSynthesis::kFromNoisyField;
  Pose initial_estimate = Pose::identity();  // uninformative default
  bool record_trace = false;
  /// Keep iterating after the convergence streak completes so the final
  /// errors reflect the full horizon.
  bool run_to_horizon = true;
};

struct TrialResult {
  bool converged = false;
  /// n * k at the first iteration of the qualifying streak; 0 if never.
  int configs_to_convergence = 0;
  double final_e_p = 0.0;
  double final_e_R = 0.0;
  /// First iteration with every position axis within tolerance (0 = never).
  int pos_first_iteration = 0;
  /// First iteration with e_R below tolerance (0 = never).
  int orient_first_iteration = 0;
  int iterations_run = 0;
  int rejected_updates = 0;
  bool diverged = false;
  Pose final_estimate;
  std::vector<IterationRecord> trace;  // filled when record_trace
};

/// Runs the static-robot localization loop: each iteration draws n fresh EPM
/// configurations, synthesizes the stacked measurement at the truth pose,
/// and applies a zero-twist predict plus one EKF update. Rejected updates
/// are counted and passed through; filter divergence ends the trial early.
/// Throws std::invalid_argument when n < 2 (the observability minimum).
TrialResult run_trial(const Pose& truth, const TrialSetup& setup, Rng& rng);

struct MonteCarloSummary {
  int trials = 0;
  double convergence_fraction = 0.0;
  /// Fraction of all trials ending with position error below 1 mm.
  double fraction_below_1mm = 0.0;
  /// Median n*k over converged trials; 0 when none converged.
  double median_configs_to_convergence = 0.0;
  double median_final_e_p = 0.0;
  double median_final_e_R = 0.0;
  /// Median first-iteration-in-tolerance over trials that got there.
  double median_pos_first_iteration = 0.0;
  double median_orient_first_iteration = 0.0;
  std::vector<TrialResult> results;  // trial-index order
};

/// Independent trials with truth poses and noise drawn from per-trial
/// generators seeded by (master_seed, trial index); results are merged in
/// index order, so the summary never depends on thread scheduling.
MonteCarloSummary monte_carlo(int trials, const TrialSetup& setup,
                              std::uint64_t master_seed, int threads = 1);

}  // namespace magloc
