"""6-DOF magnetic localization toolkit.

Thin re-export of the compiled extension. The heavy lifting (SE(3) EKF,
dipole field model, observability analysis, Monte Carlo harness) lives in
the C++ core; this package adds nothing on top.
"""

from ._core import (
    GRAVITY,
    MU0,
    Codistribution,
    CoincidentSourceError,
    ConditionMap,
    ConditionMapRequest,
    ConditioningReport,
    ConfigError,
    ConvergenceCriteria,
    DynamicsInput,
    Epm,
    EpmConfiguration,
    EpmPlane,
    ExperimentConfig,
    FieldSample,
    FilterDivergenceError,
    FilterParams,
    FilterState,
    IterationRecord,
    MapPlane,
    MeasurementBatch,
    MeasurementNoiseModel,
    MeasurementVector,
    MonteCarloSummary,
    NoiseSpec,
    NormSynthesis,
    PhysicalConstants,
    Pose,
    PoseErrors,
    Rng,
    ScenarioGeometry,
    TrialResult,
    TrialSetup,
    Twist,
    UpdateResult,
    Whitening,
    Workspace,
    analyze,
    codistribution,
    dipole_field,
    dipole_field_gradient,
    epm_planes,
    exp_derivative,
    exp_se3,
    exp_so3,
    load_config,
    log_se3,
    log_so3,
    make_initial_state,
    measurement_jacobian,
    mix_seed,
    monte_carlo,
    parse_config,
    pose_errors,
    predict,
    predict_measurement,
    run_trial,
    sample_epm_configuration,
    sample_pose,
    se3_adjoint,
    se3_left_jacobian,
    skew,
    so3_left_jacobian,
    synthesize_measurement,
    total_field,
    unskew,
    update,
    validate_batch,
    workspace_condition_map,
)

__all__ = [
    "GRAVITY",
    "MU0",
    "Codistribution",
    "CoincidentSourceError",
    "ConditionMap",
    "ConditionMapRequest",
    "ConditioningReport",
    "ConfigError",
    "ConvergenceCriteria",
    "DynamicsInput",
    "Epm",
    "EpmConfiguration",
    "EpmPlane",
    "ExperimentConfig",
    "FieldSample",
    "FilterDivergenceError",
    "FilterParams",
    "FilterState",
    "IterationRecord",
    "MapPlane",
    "MeasurementBatch",
    "MeasurementNoiseModel",
    "MeasurementVector",
    "MonteCarloSummary",
    "NoiseSpec",
    "NormSynthesis",
    "PhysicalConstants",
    "Pose",
    "PoseErrors",
    "Rng",
    "ScenarioGeometry",
    "TrialResult",
    "TrialSetup",
    "Twist",
    "UpdateResult",
    "Whitening",
    "Workspace",
    "analyze",
    "codistribution",
    "dipole_field",
    "dipole_field_gradient",
    "epm_planes",
    "exp_derivative",
    "exp_se3",
    "exp_so3",
    "load_config",
    "log_se3",
    "log_so3",
    "make_initial_state",
    "measurement_jacobian",
    "mix_seed",
    "monte_carlo",
    "parse_config",
    "pose_errors",
    "predict",
    "predict_measurement",
    "run_trial",
    "sample_epm_configuration",
    "sample_pose",
    "se3_adjoint",
    "se3_left_jacobian",
    "skew",
    "so3_left_jacobian",
    "synthesize_measurement",
    "total_field",
    "unskew",
    "update",
    "validate_batch",
    "workspace_condition_map",
]
