"""Penalty-metric circuit geometry on SU(2^n).

Tangent directions are coordinates over the generalized Pauli basis; a
weight-penalty Minkowski norm prices many-body directions; distances are
bracketed between a chart lower bound and the length of an explicit
schedule; and schedules compile into weight-two gate products whose
count and length obey the verified sandwich inequalities.
"""

from .bounds import (
    BoundReport,
    ScalingReport,
    check_segment_distortion,
    check_sim_sandwich,
    estimate_distortion,
    gate_count_bounds_chart,
    gate_count_bounds_metric,
    gate_count_scaling,
)
from .charts import (
    ChartPoint,
    Unitary,
    chart_segment_rho,
    exp_coords,
    identity,
    log_coords,
    phase_aligned_frobenius,
    unitary_exp,
)
from .errors import (
    BranchCutError,
    CoefficientBoundError,
    DomainError,
    EvaluationError,
    IdentityComponentError,
    InfeasibleError,
    ValidationError,
)
from .io import (
    gates_from_dict,
    gates_to_dict,
    load_gates,
    load_json,
    load_matrix,
    load_path,
    load_schedule,
    load_unitary,
    path_from_dict,
    path_to_dict,
    save_gates,
    save_matrix,
    schedule_from_path,
    write_bounds_csv,
    write_report,
)
from .metric import (
    MetricConfig,
    NormPropertyReport,
    PenaltyNorm,
    check_finsler_properties,
    default_penalty,
    distortion_constants,
    half_square_hessian,
    minkowski_norm,
    penalty_weights,
)
from .pauli import (
    CoeffVector,
    PauliString,
    basis_matrices,
    decompose,
    enumerate_basis,
    partition_k,
    reconstruct,
    weight_vector,
)
from .paths import (
    DistanceEstimate,
    OptimizerSettings,
    OptimizerStats,
    Path,
    PathSegment,
    distance_lower,
    distance_upper,
    path_endpoint,
    path_length,
)
from .simulation import (
    Gate,
    GateSequence,
    Schedule,
    SimulationResult,
    gate_product,
    project_hamiltonian,
    project_schedule,
    schedule_endpoint,
    simulate,
    slice_mean,
    synthesize_gates,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BranchCutError",
    "ChartPoint",
    "CoeffVector",
    "CoefficientBoundError",
    "DistanceEstimate",
    "DomainError",
    "EvaluationError",
    "Gate",
    "GateSequence",
    "IdentityComponentError",
    "InfeasibleError",
    "MetricConfig",
    "NormPropertyReport",
    "OptimizerSettings",
    "OptimizerStats",
    "Path",
    "PathSegment",
    "PauliString",
    "PenaltyNorm",
    "ScalingReport",
    "Schedule",
    "SimulationResult",
    "Unitary",
    "ValidationError",
    "basis_matrices",
    "chart_segment_rho",
    "check_finsler_properties",
    "check_segment_distortion",
    "check_sim_sandwich",
    "decompose",
    "default_penalty",
    "distance_lower",
    "distance_upper",
    "distortion_constants",
    "enumerate_basis",
    "estimate_distortion",
    "exp_coords",
    "gate_count_bounds_chart",
    "gate_count_bounds_metric",
    "gate_count_scaling",
    "gate_product",
    "gates_from_dict",
    "gates_to_dict",
    "half_square_hessian",
    "identity",
    "load_gates",
    "load_json",
    "load_matrix",
    "load_path",
    "load_schedule",
    "load_unitary",
    "log_coords",
    "minkowski_norm",
    "partition_k",
    "path_endpoint",
    "path_from_dict",
    "path_length",
    "path_to_dict",
    "penalty_weights",
    "phase_aligned_frobenius",
    "project_hamiltonian",
    "project_schedule",
    "reconstruct",
    "save_gates",
    "save_matrix",
    "schedule_endpoint",
    "schedule_from_path",
    "simulate",
    "slice_mean",
    "synthesize_gates",
    "unitary_exp",
    "weight_vector",
    "write_bounds_csv",
    "write_report",
]
