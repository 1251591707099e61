"""Piecewise-constant paths on SU(2^n) and two-sided distance estimates.

A path is a schedule of (coefficient vector, duration) segments; its
length is the sum of penalty-norm segment lengths, and the distance from
the identity to a target is bracketed by a chart lower bound and the
length of an explicitly feasible schedule found by derivative-free
search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charts import Unitary, identity, log_coords, phase_aligned_frobenius, unitary_exp
from .errors import BranchCutError, DomainError, InfeasibleError, ValidationError
from .metric import MetricConfig, distortion_constants, minkowski_norm, penalty_weights
from .pauli import CoeffVector, basis_matrices, reconstruct
from .seeding import substream

#: Slack allowed between the lower and upper estimate before the pair is
#: rejected as inconsistent (matches the default endpoint tolerance).
ESTIMATE_SLACK = 1e-6

#: An endpoint already this close to the target is treated as reached.
IDENTITY_SHORTCUT = 1e-12

_ACCEPT_MARGIN = 1e-12


@dataclass(frozen=True)
class PathSegment:
    """One constant-Hamiltonian leg: coefficients ``y`` held for ``tau``."""

    y: CoeffVector
    tau: float

    def __post_init__(self):
        if not (np.isfinite(self.tau) and self.tau > 0):
            raise ValidationError(f"segment duration must be positive and finite, got {self.tau}")
        object.__setattr__(self, "tau", float(self.tau))


@dataclass(frozen=True, eq=False)
class Path:
    """Ordered segments on a fixed qubit count; may be empty."""

    n: int
    segments: tuple[PathSegment, ...]

    def __post_init__(self):
        segments = tuple(self.segments)
        for segment in segments:
            if segment.y.n != self.n:
                raise ValidationError(
                    f"segment qubit count {segment.y.n} does not match path {self.n}"
                )
        object.__setattr__(self, "segments", segments)

    def concat(self, other: "Path") -> "Path":
        """This path followed by ``other``."""
        if other.n != self.n:
            raise DomainError(f"cannot concatenate paths on {self.n} and {other.n} qubits")
        return Path(self.n, self.segments + other.segments)

    @property
    def duration(self) -> float:
        return float(sum(segment.tau for segment in self.segments))


def path_endpoint(path: Path) -> Unitary:
    """Time-ordered product of the segment evolutions (later segments on the left)."""
    state = np.eye(2**path.n, dtype=complex)
    for segment in path.segments:
        state = unitary_exp(reconstruct(segment.y), segment.tau) @ state
    return Unitary(path.n, state)


def path_length(path: Path, config: MetricConfig) -> float:
    """Penalty-norm length: ``sum_j F_p(y_j) * tau_j``.

    Summed with :func:`math.fsum` so the value depends only on the multiset
    of segment terms, not on how the path was assembled.
    """
    if path.n != config.n:
        raise DomainError(f"path qubit count {path.n} does not match config {config.n}")
    return math.fsum(minkowski_norm(segment.y, config) * segment.tau for segment in path.segments)


def distance_lower(target: Unitary, config: MetricConfig) -> float:
    """Chart lower bound on the distance from the identity to ``target``.

    Equal to ``m * |log_coords(target, I)|`` where ``m`` is the lower
    distortion constant (1 for the penalty norm).  Propagates
    ``BranchCutError`` when the target sits on the chart boundary.
    """
    if target.n != config.n:
        raise DomainError(f"target qubit count {target.n} does not match config {config.n}")
    m_lower, _ = distortion_constants(config)
    return m_lower * log_coords(target, identity(target.n)).norm


@dataclass(frozen=True)
class OptimizerSettings:
    """Budget and tolerances for the upper-bound schedule search."""

    segments: int = 8
    restarts: int = 16
    endpoint_tol: float = 1e-6
    seed: int = 0
    max_sweeps: int = 40
    initial_step: float = 0.25
    min_step: float = 1e-4
    tau_min: float = 1e-4
    tau_max: float = 10.0
    penalty_init: float = 10.0
    penalty_growth: float = 10.0
    penalty_cap: float = 1e12

    def __post_init__(self):
        if self.segments < 1:
            raise ValidationError("at least one segment is required")
        if self.restarts < 0:
            raise ValidationError("restart count must be nonnegative")
        if not 0 < self.endpoint_tol < 1:
            raise ValidationError("endpoint tolerance must lie in (0, 1)")
        if not 0 < self.tau_min <= 1.0 <= self.tau_max:
            raise ValidationError("duration bounds must satisfy 0 < tau_min <= 1 <= tau_max")


@dataclass(frozen=True)
class OptimizerStats:
    """Search accounting: runs executed, trial evaluations, winning endpoint error."""

    runs: int
    evaluations: int
    endpoint_error: float


@dataclass(frozen=True, eq=False)
class DistanceEstimate:
    """Two-sided distance bracket with the feasible witness schedule."""

    lower: float
    upper: float
    witness: Path
    stats: OptimizerStats

    def __post_init__(self):
        if not (np.isfinite(self.lower) and np.isfinite(self.upper)):
            raise ValidationError("distance estimates must be finite")
        if self.lower < 0 or self.upper < 0:
            raise ValidationError("distance estimates must be nonnegative")
        if self.lower > self.upper + ESTIMATE_SLACK:
            raise ValidationError(
                f"lower estimate {self.lower:.9f} exceeds upper estimate "
                f"{self.upper:.9f} beyond the allowed slack"
            )


class _Candidate:
    __slots__ = ("length", "ys", "taus", "error")

    def __init__(self, length, ys, taus, error):
        self.length = length
        self.ys = ys.copy()
        self.taus = taus.copy()
        self.error = error


def _segment_unitary(evals, vecs, tau):
    return (vecs * np.exp(-1j * tau * evals)) @ vecs.conj().T


def _search(target: np.ndarray, config: MetricConfig, settings: OptimizerSettings, ys, taus):
    """Greedy coordinate descent over one start point.

    Minimizes ``length + w * err^2`` where ``err`` is the phase-aligned
    Frobenius endpoint mismatch; ``w`` grows by ``penalty_growth`` after
    any sweep that ends infeasible, so the endpoint constraint hardens
    over time.  Returns (best feasible candidate or None, best endpoint
    error seen, trial evaluations).
    """
    n_segments, dim_coords = ys.shape
    basis = basis_matrices(config.n)
    weights = penalty_weights(config)
    dim = target.shape[0]

    def seg_norm(row):
        return float(np.sqrt(np.sum(np.square(weights * row))))

    eigs = []
    for j in range(n_segments):
        h = np.tensordot(ys[j], basis, axes=(0, 0))
        eigs.append(np.linalg.eigh(h))
    units = [_segment_unitary(ev, vc, taus[j]) for j, (ev, vc) in enumerate(eigs)]

    def prefix_suffix():
        prefix = [np.eye(dim, dtype=complex)]
        for u in units:
            prefix.append(u @ prefix[-1])
        suffix = [np.eye(dim, dtype=complex)] * (n_segments + 1)
        acc = np.eye(dim, dtype=complex)
        for j in range(n_segments - 1, -1, -1):
            suffix[j] = acc
            acc = acc @ units[j]
        return prefix, suffix

    prefix, suffix = prefix_suffix()
    lengths = np.array([seg_norm(ys[j]) * taus[j] for j in range(n_segments)])
    error = phase_aligned_frobenius(prefix[-1], target)
    total_length = float(np.sum(lengths))

    best = None
    best_error = error

    def record():
        nonlocal best
        if error <= settings.endpoint_tol:
            if best is None or total_length < best.length:
                best = _Candidate(total_length, ys, taus, error)

    record()

    weight = settings.penalty_init
    step = settings.initial_step
    evaluations = 0
    objective = total_length + weight * error * error

    for _ in range(settings.max_sweeps):
        improved = False
        for j in range(n_segments):
            for coord in range(dim_coords + 1):
                for direction in (1.0, -1.0):
                    if coord < dim_coords:
                        trial_row = ys[j].copy()
                        trial_row[coord] += direction * step
                        h = np.tensordot(trial_row, basis, axes=(0, 0))
                        trial_eig = np.linalg.eigh(h)
                        trial_tau = taus[j]
                    else:
                        trial_tau = float(np.clip(taus[j] + direction * step, settings.tau_min, settings.tau_max))
                        if trial_tau == taus[j]:
                            continue
                        trial_row = ys[j]
                        trial_eig = eigs[j]
                    trial_unit = _segment_unitary(trial_eig[0], trial_eig[1], trial_tau)
                    endpoint = suffix[j] @ (trial_unit @ prefix[j])
                    trial_error = phase_aligned_frobenius(endpoint, target)
                    trial_seg_length = seg_norm(trial_row) * trial_tau
                    trial_length = total_length - lengths[j] + trial_seg_length
                    trial_objective = trial_length + weight * trial_error * trial_error
                    evaluations += 1
                    if trial_objective < objective - _ACCEPT_MARGIN:
                        if coord < dim_coords:
                            ys[j] = trial_row
                        taus[j] = trial_tau
                        eigs[j] = trial_eig
                        units[j] = trial_unit
                        lengths[j] = trial_seg_length
                        total_length = trial_length
                        error = trial_error
                        objective = trial_objective
                        prefix, suffix = prefix_suffix()
                        best_error = min(best_error, error)
                        record()
                        improved = True
                        break
        if error > settings.endpoint_tol:
            if weight < settings.penalty_cap:
                weight *= settings.penalty_growth
            elif not improved:
                break
            objective = total_length + weight * error * error
        elif not improved:
            step *= 0.5
            if step < settings.min_step:
                break
    return best, best_error, evaluations


def distance_upper(
    target: Unitary, config: MetricConfig, settings: OptimizerSettings | None = None
) -> DistanceEstimate:
    """Length of a feasible schedule reaching ``target``, plus the chart lower bound.

    Runs the coordinate search from a one-parameter-subgroup start (when
    the target lies in the principal chart) and from seeded random starts;
    the returned upper value is the exact length of the best witness
    schedule, so it bounds the true distance from above by construction.
    Endpoints compare modulo global phase.

    Raises ``InfeasibleError`` when no run reaches the endpoint tolerance.
    """
    if settings is None:
        settings = OptimizerSettings()
    if target.n != config.n:
        raise DomainError(f"target qubit count {target.n} does not match config {config.n}")
    n_segments = settings.segments
    dim_coords = 4**config.n - 1

    try:
        lower = distance_lower(target, config)
    except (BranchCutError, ValidationError):
        lower = 0.0

    empty_error = phase_aligned_frobenius(np.eye(2**config.n, dtype=complex), target.matrix)
    if empty_error <= IDENTITY_SHORTCUT:
        stats = OptimizerStats(runs=0, evaluations=0, endpoint_error=empty_error)
        return DistanceEstimate(lower, 0.0, Path(config.n, ()), stats)

    subgroup = None
    try:
        subgroup = log_coords(target, identity(config.n))
    except (BranchCutError, ValidationError):
        pass

    starts = []
    if subgroup is not None:
        ys = np.repeat((subgroup.values / n_segments)[None, :], n_segments, axis=0)
        starts.append((ys, np.ones(n_segments)))
    start_scale = max(subgroup.norm if subgroup is not None else 1.0, 0.1) / n_segments
    for restart in range(settings.restarts):
        rng = substream(settings.seed, "distance-upper", restart)
        starts.append((rng.normal(0.0, start_scale, (n_segments, dim_coords)), np.ones(n_segments)))

    if not starts:
        raise InfeasibleError(empty_error, settings.endpoint_tol)

    best = None
    best_error = empty_error
    evaluations = 0
    for ys, taus in starts:
        candidate, run_error, run_evals = _search(target.matrix, config, settings, ys, taus)
        evaluations += run_evals
        best_error = min(best_error, run_error)
        if candidate is not None and (best is None or candidate.length < best.length):
            best = candidate

    if best is None:
        raise InfeasibleError(best_error, settings.endpoint_tol)

    witness = Path(
        config.n,
        tuple(
            PathSegment(CoeffVector(config.n, best.ys[j]), float(best.taus[j]))
            for j in range(n_segments)
        ),
    )
    upper = path_length(witness, config)
    stats = OptimizerStats(runs=len(starts), evaluations=evaluations, endpoint_error=best.error)
    return DistanceEstimate(lower, upper, witness, stats)
