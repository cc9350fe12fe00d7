// Python bindings for the localization toolkit. Exposes the Lie-group
// primitives, the dipole field model, the measurement stack, the SE(3) EKF,
// the observability analysis, and the Monte Carlo harness. Eigen types map
// to numpy arrays; config structs are plain attribute bags.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "magloc/config.hpp"
#include "magloc/ekf.hpp"
#include "magloc/lie.hpp"
#include "magloc/magnetics.hpp"
#include "magloc/observability.hpp"
#include "magloc/random.hpp"
#include "magloc/sampling.hpp"
#include "magloc/scenario.hpp"
#include "magloc/sensing.hpp"

namespace py = pybind11;
using namespace magloc;

namespace {

std::string pose_repr(const Pose& pose) {
  std::ostringstream out;
  out << "Pose(position=[" << pose.position.x() << ", " << pose.position.y()
      << ", " << pose.position.z() << "])";
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "6-DOF magnetic localization: dipole field model, SE(3) EKF, "
      "observability analysis, and simulation harness.";

  m.attr("MU0") = constants::kMu0;
  m.attr("GRAVITY") = constants::kGravity;

  py::register_exception<CoincidentSourceError>(m, "CoincidentSourceError");
  py::register_exception<FilterDivergenceError>(m, "FilterDivergenceError");
  py::register_exception<ConfigError>(m, "ConfigError");

  // --- lie ---

  py::class_<Pose>(m, "Pose")
      .def(py::init<>())
      .def(py::init([](const Mat3& rotation, const Vec3& position) {
             return Pose{rotation, position};
           }),
           py::arg("rotation"), py::arg("position"))
      .def_readwrite("rotation", &Pose::rotation)
      .def_readwrite("position", &Pose::position)
      .def_static("identity", &Pose::identity)
      .def("matrix", &Pose::matrix)
      .def("inverse", &Pose::inverse)
      .def("orthonormality_error", &Pose::orthonormality_error)
      .def("__mul__", &Pose::operator*, py::arg("rhs"))
      .def("__repr__", &pose_repr);

  py::class_<Twist>(m, "Twist")
      .def(py::init<>())
      .def(py::init([](const Vec3& linear, const Vec3& angular) {
             return Twist{linear, angular};
           }),
           py::arg("linear"), py::arg("angular"))
      .def_readwrite("linear", &Twist::linear)
      .def_readwrite("angular", &Twist::angular);

  m.def("skew", &skew, py::arg("v"));
  m.def("unskew", &unskew, py::arg("m"));
  m.def("exp_so3", &exp_so3, py::arg("phi"));
  m.def("log_so3", &log_so3, py::arg("rotation"));
  m.def("so3_left_jacobian", &so3_left_jacobian, py::arg("phi"));
  m.def("exp_se3", &exp_se3, py::arg("xi"));
  m.def("log_se3", &log_se3, py::arg("pose"));
  m.def("se3_left_jacobian", &se3_left_jacobian, py::arg("xi"));
  m.def("exp_derivative", &exp_derivative, py::arg("xi"));
  m.def("se3_adjoint", &se3_adjoint, py::arg("pose"));

  // --- random ---

  m.def("mix_seed", &mix_seed, py::arg("seed"), py::arg("stream"));

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", py::overload_cast<>(&Rng::uniform))
      .def("uniform", py::overload_cast<double, double>(&Rng::uniform),
           py::arg("lo"), py::arg("hi"))
      .def("gaussian", &Rng::gaussian)
      .def("unit_vector", &Rng::unit_vector)
      .def("rotation", &Rng::rotation)
      .def("spawn", &Rng::spawn, py::arg("stream"))
      .def_property_readonly("base_seed", &Rng::base_seed);

  // --- magnetics ---

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_readwrite("mu0", &PhysicalConstants::mu0)
      .def_readwrite("gravity", &PhysicalConstants::gravity);

  py::class_<Epm>(m, "Epm")
      .def(py::init<>())
      .def(py::init([](const Vec3& position, const Vec3& moment) {
             return Epm{position, moment};
           }),
           py::arg("position"), py::arg("moment"))
      .def_readwrite("position", &Epm::position)
      .def_readwrite("moment", &Epm::moment);

  py::class_<FieldSample>(m, "FieldSample")
      .def_readonly("field", &FieldSample::field)
      .def_readonly("gradient", &FieldSample::gradient);

  m.def("dipole_field", &dipole_field, py::arg("epm"), py::arg("p"));
  m.def("dipole_field_gradient", &dipole_field_gradient, py::arg("epm"),
        py::arg("p"));
  m.def("total_field", &total_field, py::arg("epms"), py::arg("p"));

  // --- sensing ---

  py::class_<EpmConfiguration>(m, "EpmConfiguration")
      .def(py::init<>())
      .def(py::init([](std::vector<Epm> epms) {
             return EpmConfiguration{std::move(epms)};
           }),
           py::arg("epms"))
      .def_readwrite("epms", &EpmConfiguration::epms);

  py::class_<MeasurementBatch>(m, "MeasurementBatch")
      .def(py::init<>())
      .def(py::init([](std::vector<EpmConfiguration> configs,
                       const PhysicalConstants& constants) {
             return MeasurementBatch{std::move(configs), constants};
           }),
           py::arg("configs"), py::arg("constants") = PhysicalConstants{})
      .def_readwrite("configs", &MeasurementBatch::configs)
      .def_readwrite("constants", &MeasurementBatch::constants)
      .def("size", &MeasurementBatch::size);

  py::class_<MeasurementVector>(m, "MeasurementVector")
      .def_readwrite("values", &MeasurementVector::values)
      .def_readonly("num_configs", &MeasurementVector::num_configs)
      .def("size", &MeasurementVector::size)
      .def("norm_entry",
           [](const MeasurementVector& y, int i) { return y.norm_entry(i); },
           py::arg("i"))
      .def("field_entry",
           [](const MeasurementVector& y, int i) -> Vec3 {
             return y.field_entry(i);
           },
           py::arg("i"))
      .def("gravity_entry",
           [](const MeasurementVector& y) -> Vec3 { return y.gravity_entry(); });

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def(py::init<>())
      .def_readwrite("mag_std", &NoiseSpec::mag_std)
      .def_readwrite("accel_std", &NoiseSpec::accel_std)
      .def_readwrite("gyro_bias", &NoiseSpec::gyro_bias)
      .def_readwrite("gyro_std", &NoiseSpec::gyro_std);

  py::enum_<NormSynthesis>(m, "NormSynthesis")
      .value("FROM_NOISY_FIELD", NormSynthesis::kFromNoisyField)
      .value("INDEPENDENT_NOISE", NormSynthesis::kIndependentNoise);

  m.def("validate_batch",
        [](const MeasurementBatch& batch) { validate(batch); },
        py::arg("batch"));
  m.def("predict_measurement", &predict_measurement, py::arg("pose"),
        py::arg("batch"));
  m.def("measurement_jacobian", &measurement_jacobian, py::arg("pose"),
        py::arg("batch"));
  m.def("synthesize_measurement", &synthesize_measurement,
        py::arg("true_pose"), py::arg("batch"), py::arg("noise"),
        py::arg("rng"), py::arg("norm_mode") = NormSynthesis::kFromNoisyField);

  // --- ekf ---

  py::class_<FilterState>(m, "FilterState")
      .def(py::init<>())
      .def_readwrite("estimate", &FilterState::estimate)
      .def_readwrite("covariance", &FilterState::covariance);

  py::class_<MeasurementNoiseModel>(m, "MeasurementNoiseModel")
      .def(py::init<>())
      .def_readwrite("norm_scale", &MeasurementNoiseModel::norm_scale)
      .def_readwrite("mag_floor", &MeasurementNoiseModel::mag_floor)
      .def_readwrite("accel_floor", &MeasurementNoiseModel::accel_floor)
      .def("diagonal", &MeasurementNoiseModel::diagonal, py::arg("noise"),
           py::arg("n"));

  py::class_<FilterParams>(m, "FilterParams")
      .def(py::init<>())
      .def_readwrite("process_noise", &FilterParams::process_noise)
      .def_readwrite("initial_covariance", &FilterParams::initial_covariance)
      .def_readwrite("timestep", &FilterParams::timestep)
      .def_readwrite("noise", &FilterParams::noise)
      .def_readwrite("noise_model", &FilterParams::noise_model)
      .def_readwrite("max_innovation_condition",
                     &FilterParams::max_innovation_condition)
      .def_readwrite("block_diagonal_covariance",
                     &FilterParams::block_diagonal_covariance);

  py::class_<DynamicsInput>(m, "DynamicsInput")
      .def(py::init<>())
      .def_readwrite("twist", &DynamicsInput::twist)
      .def_readwrite("gyro_bias", &DynamicsInput::gyro_bias);

  py::class_<UpdateResult>(m, "UpdateResult")
      .def_readonly("state", &UpdateResult::state)
      .def_readonly("innovation", &UpdateResult::innovation)
      .def_readonly("accepted", &UpdateResult::accepted)
      .def_readonly("condition", &UpdateResult::condition);

  m.def("make_initial_state", &make_initial_state, py::arg("params"),
        py::arg("initial_estimate") = Pose::identity());
  m.def("predict", &predict, py::arg("state"), py::arg("input"),
        py::arg("params"));
  m.def("update", &update, py::arg("state"), py::arg("batch"), py::arg("y"),
        py::arg("params"));

  // --- sampling ---

  py::class_<Workspace>(m, "Workspace")
      .def(py::init<>())
      .def(py::init([](const Vec3& center, double side) {
             return Workspace{center, side};
           }),
           py::arg("center"), py::arg("side"))
      .def_readwrite("center", &Workspace::center)
      .def_readwrite("side", &Workspace::side)
      .def_property_readonly("half_side", &Workspace::half_side)
      .def("contains", &Workspace::contains, py::arg("p"));

  py::class_<EpmPlane>(m, "EpmPlane")
      .def_readwrite("axis", &EpmPlane::axis)
      .def_readwrite("direction", &EpmPlane::direction)
      .def_readwrite("half_extent", &EpmPlane::half_extent)
      .def_readwrite("patch_center", &EpmPlane::patch_center)
      .def("outward_normal", &EpmPlane::outward_normal)
      .def("inward_normal", &EpmPlane::inward_normal);

  py::class_<ScenarioGeometry>(m, "ScenarioGeometry")
      .def(py::init<>())
      .def_readwrite("workspace", &ScenarioGeometry::workspace)
      .def_readwrite("plane_offset", &ScenarioGeometry::plane_offset)
      .def_readwrite("patch_half_extent", &ScenarioGeometry::patch_half_extent)
      .def_readwrite("moment_magnitude", &ScenarioGeometry::moment_magnitude)
      .def("resolved_patch_half_extent",
           &ScenarioGeometry::resolved_patch_half_extent)
      .def("planes", &ScenarioGeometry::planes, py::arg("m"));

  py::class_<PoseErrors>(m, "PoseErrors")
      .def_readonly("position", &PoseErrors::position)
      .def_readonly("orientation", &PoseErrors::orientation);

  m.def("epm_planes", &epm_planes, py::arg("workspace"), py::arg("m"),
        py::arg("offset"), py::arg("half_extent"));
  m.def("sample_epm_configuration", &sample_epm_configuration,
        py::arg("planes"), py::arg("moment_magnitude"), py::arg("rng"));
  m.def("sample_pose", &sample_pose, py::arg("workspace"), py::arg("rng"));
  m.def("pose_errors", &pose_errors, py::arg("truth"), py::arg("estimate"));

  // --- observability ---

  py::class_<Whitening>(m, "Whitening")
      .def(py::init<>())
      .def(py::init([](double mag_std, double accel_std) {
             return Whitening{mag_std, accel_std};
           }),
           py::arg("mag_std"), py::arg("accel_std"))
      .def_readwrite("mag_std", &Whitening::mag_std)
      .def_readwrite("accel_std", &Whitening::accel_std)
      .def_static("none", &Whitening::none);

  py::class_<Codistribution>(m, "Codistribution")
      .def_readonly("matrix", &Codistribution::matrix)
      .def_readonly("num_configs", &Codistribution::num_configs);

  py::class_<ConditioningReport>(m, "ConditioningReport")
      .def_readonly("rank", &ConditioningReport::rank)
      .def_readonly("condition_number", &ConditioningReport::condition_number)
      .def_readonly("singular_values", &ConditioningReport::singular_values);

  m.def("codistribution", &codistribution, py::arg("pose"), py::arg("configs"),
        py::arg("constants") = PhysicalConstants{},
        py::arg("whitening") = Whitening{});
  m.def("analyze", &analyze, py::arg("codistribution"),
        py::arg("rank_tol") = 1e-8);

  py::enum_<MapPlane>(m, "MapPlane")
      .value("XY", MapPlane::kXY)
      .value("XZ", MapPlane::kXZ)
      .value("YZ", MapPlane::kYZ);

  py::class_<ConditionMapRequest>(m, "ConditionMapRequest")
      .def(py::init<>())
      .def_readwrite("workspace", &ConditionMapRequest::workspace)
      .def_readwrite("plane", &ConditionMapRequest::plane)
      .def_readwrite("grid", &ConditionMapRequest::grid)
      .def_readwrite("m", &ConditionMapRequest::m)
      .def_readwrite("n", &ConditionMapRequest::n)
      .def_readwrite("draws", &ConditionMapRequest::draws)
      .def_readwrite("plane_offset", &ConditionMapRequest::plane_offset)
      .def_readwrite("patch_half_extent",
                     &ConditionMapRequest::patch_half_extent)
      .def_readwrite("moment_magnitude",
                     &ConditionMapRequest::moment_magnitude)
      .def_readwrite("orientation", &ConditionMapRequest::orientation)
      .def_readwrite("whitening", &ConditionMapRequest::whitening)
      .def_readwrite("constants", &ConditionMapRequest::constants)
      .def_readwrite("rank_tol", &ConditionMapRequest::rank_tol)
      .def_readwrite("seed", &ConditionMapRequest::seed)
      .def_readwrite("threads", &ConditionMapRequest::threads);

  py::class_<ConditionMap>(m, "ConditionMap")
      .def_readonly("plane", &ConditionMap::plane)
      .def_readonly("values", &ConditionMap::values)
      .def_readonly("coord_a", &ConditionMap::coord_a)
      .def_readonly("coord_b", &ConditionMap::coord_b);

  m.def("workspace_condition_map", &workspace_condition_map,
        py::arg("request"), py::call_guard<py::gil_scoped_release>());

  // --- scenario ---

  py::class_<ConvergenceCriteria>(m, "ConvergenceCriteria")
      .def(py::init<>())
      .def_readwrite("pos_tol_per_axis", &ConvergenceCriteria::pos_tol_per_axis)
      .def_readwrite("orient_tol_trace",
                     &ConvergenceCriteria::orient_tol_trace)
      .def_readwrite("hold_steps", &ConvergenceCriteria::hold_steps)
      .def_readwrite("max_iterations", &ConvergenceCriteria::max_iterations);

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("configs_used", &IterationRecord::configs_used)
      .def_readonly("e_p", &IterationRecord::e_p)
      .def_readonly("e_R", &IterationRecord::e_R)
      .def_readonly("position", &IterationRecord::position)
      .def_readonly("quaternion", &IterationRecord::quaternion);

  py::class_<TrialSetup>(m, "TrialSetup")
      .def(py::init<>())
      .def_readwrite("m", &TrialSetup::m)
      .def_readwrite("n", &TrialSetup::n)
      .def_readwrite("geometry", &TrialSetup::geometry)
      .def_readwrite("params", &TrialSetup::params)
      .def_readwrite("noise", &TrialSetup::noise)
      .def_readwrite("criteria", &TrialSetup::criteria)
      .def_readwrite("norm_mode", &TrialSetup::norm_mode)
      .def_readwrite("initial_estimate", &TrialSetup::initial_estimate)
      .def_readwrite("record_trace", &TrialSetup::record_trace)
      .def_readwrite("run_to_horizon", &TrialSetup::run_to_horizon);

  py::class_<TrialResult>(m, "TrialResult")
      .def_readonly("converged", &TrialResult::converged)
      .def_readonly("configs_to_convergence",
                    &TrialResult::configs_to_convergence)
      .def_readonly("final_e_p", &TrialResult::final_e_p)
      .def_readonly("final_e_R", &TrialResult::final_e_R)
      .def_readonly("pos_first_iteration", &TrialResult::pos_first_iteration)
      .def_readonly("orient_first_iteration",
                    &TrialResult::orient_first_iteration)
      .def_readonly("iterations_run", &TrialResult::iterations_run)
      .def_readonly("rejected_updates", &TrialResult::rejected_updates)
      .def_readonly("diverged", &TrialResult::diverged)
      .def_readonly("final_estimate", &TrialResult::final_estimate)
      .def_readonly("trace", &TrialResult::trace);

  py::class_<MonteCarloSummary>(m, "MonteCarloSummary")
      .def_readonly("trials", &MonteCarloSummary::trials)
      .def_readonly("convergence_fraction",
                    &MonteCarloSummary::convergence_fraction)
      .def_readonly("fraction_below_1mm", &MonteCarloSummary::fraction_below_1mm)
      .def_readonly("median_configs_to_convergence",
                    &MonteCarloSummary::median_configs_to_convergence)
      .def_readonly("median_final_e_p", &MonteCarloSummary::median_final_e_p)
      .def_readonly("median_final_e_R", &MonteCarloSummary::median_final_e_R)
      .def_readonly("median_pos_first_iteration",
                    &MonteCarloSummary::median_pos_first_iteration)
      .def_readonly("median_orient_first_iteration",
                    &MonteCarloSummary::median_orient_first_iteration)
      .def_readonly("results", &MonteCarloSummary::results);

  m.def("run_trial", &run_trial, py::arg("truth"), py::arg("setup"),
        py::arg("rng"));
  m.def("monte_carlo", &monte_carlo, py::arg("trials"), py::arg("setup"),
        py::arg("master_seed"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  // --- config ---

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("workspace", &ExperimentConfig::workspace)
      .def_readwrite("epm_count", &ExperimentConfig::epm_count)
      .def_readwrite("moment_magnitude", &ExperimentConfig::moment_magnitude)
      .def_readwrite("plane_offset", &ExperimentConfig::plane_offset)
      .def_readwrite("patch_half_extent", &ExperimentConfig::patch_half_extent)
      .def_readwrite("n", &ExperimentConfig::n)
      .def_readwrite("noise", &ExperimentConfig::noise)
      .def_readwrite("norm_mode", &ExperimentConfig::norm_mode)
      .def_readwrite("filter", &ExperimentConfig::filter)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("criteria", &ExperimentConfig::criteria)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("whitening", &ExperimentConfig::whitening)
      .def("geometry", &ExperimentConfig::geometry)
      .def("trial_setup", &ExperimentConfig::trial_setup)
      .def("map_request", &ExperimentConfig::map_request);

  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("load_config", &load_config, py::arg("path"));
}
