"""Paths, lengths, and the two-sided distance estimates."""

import math

import numpy as np
import pytest

from circuit_geometry import (
    BranchCutError,
    CoeffVector,
    DistanceEstimate,
    DomainError,
    InfeasibleError,
    MetricConfig,
    OptimizerSettings,
    OptimizerStats,
    Path,
    PathSegment,
    PauliString,
    Unitary,
    ValidationError,
    distance_lower,
    distance_upper,
    enumerate_basis,
    exp_coords,
    identity,
    path_endpoint,
    path_length,
    phase_aligned_frobenius,
    reconstruct,
    unitary_exp,
)
from util import random_coeffs


def _axis(n, word, value):
    values = np.zeros(4**n - 1)
    index = [str(s) for s in enumerate_basis(n)].index(word)
    values[index] = value
    return CoeffVector(n, values)


def test_segment_validation():
    y = CoeffVector.zeros(1)
    with pytest.raises(ValidationError):
        PathSegment(y, 0.0)
    with pytest.raises(ValidationError):
        PathSegment(y, -1.0)
    with pytest.raises(ValidationError):
        PathSegment(y, np.inf)


def test_path_qubit_consistency():
    seg = PathSegment(CoeffVector.zeros(1), 1.0)
    with pytest.raises(ValidationError):
        Path(2, (seg,))


def test_concat_and_duration():
    a = Path(1, (PathSegment(_axis(1, "X", 0.5), 1.0),))
    b = Path(1, (PathSegment(_axis(1, "Z", 0.25), 2.0),))
    joined = a.concat(b)
    assert len(joined.segments) == 2
    assert joined.duration == 3.0
    with pytest.raises(DomainError):
        a.concat(Path(2, ()))


def test_endpoint_single_segment():
    y = _axis(1, "X", 0.7)
    path = Path(1, (PathSegment(y, 1.5),))
    want = unitary_exp(reconstruct(y), 1.5)
    assert np.max(np.abs(path_endpoint(path).matrix - want)) < 1e-12


def test_endpoint_time_ordering():
    # later segments multiply on the left; X then Z differs from Z then X
    x = _axis(1, "X", 0.9)
    z = _axis(1, "Z", 0.8)
    path = Path(1, (PathSegment(x, 1.0), PathSegment(z, 1.0)))
    want = unitary_exp(reconstruct(z)) @ unitary_exp(reconstruct(x))
    assert np.max(np.abs(path_endpoint(path).matrix - want)) < 1e-12
    other = path_endpoint(Path(1, (PathSegment(z, 1.0), PathSegment(x, 1.0))))
    assert np.max(np.abs(other.matrix - want)) > 0.1


def test_empty_path_endpoint():
    assert np.array_equal(path_endpoint(Path(2, ())).matrix, np.eye(4))


def test_length_formula():
    cfg = MetricConfig(1, 2.0)
    y = _axis(1, "X", 0.3)
    path = Path(1, (PathSegment(y, 2.0),))
    assert path_length(path, cfg) == pytest.approx(0.6, abs=1e-15)
    assert path_length(Path(1, ()), cfg) == 0.0
    with pytest.raises(DomainError):
        path_length(path, MetricConfig(2, 2.0))


def test_length_split_segment_exact():
    # halving a segment's duration and repeating it leaves the length
    # bit-identical: tau/2 is exact and the sum of two equal halves is exact
    cfg = MetricConfig(2, 3.0)
    rng = np.random.default_rng(0)
    y = random_coeffs(rng, 2, scale=1.3)
    tau = 0.37
    whole = Path(2, (PathSegment(y, tau),))
    halves = Path(2, (PathSegment(y, tau / 2.0), PathSegment(y, tau / 2.0)))
    assert path_length(whole, cfg) == path_length(halves, cfg)


def test_length_concat_additive():
    cfg = MetricConfig(1, 2.0)
    rng = np.random.default_rng(1)
    for _ in range(25):
        a = Path(1, tuple(PathSegment(random_coeffs(rng, 1), rng.uniform(0.1, 2.0))
                          for _ in range(3)))
        b = Path(1, tuple(PathSegment(random_coeffs(rng, 1), rng.uniform(0.1, 2.0))
                          for _ in range(2)))
        total = path_length(a.concat(b), cfg)
        split = path_length(a, cfg) + path_length(b, cfg)
        assert math.isclose(total, split, rel_tol=1e-15, abs_tol=0.0)


def test_length_dyadic_concat_exact():
    # dyadic durations and single-word directions make every term exact
    cfg = MetricConfig(1, 1.0)
    a = Path(1, (PathSegment(_axis(1, "X", 0.25), 0.5),))
    b = Path(1, (PathSegment(_axis(1, "Z", 0.5), 0.25),))
    assert path_length(a.concat(b), cfg) == path_length(a, cfg) + path_length(b, cfg)


def test_distance_lower_oracle():
    cfg = MetricConfig(1, 2.0)
    for theta in (0.3, 0.7, 1.2):
        u = exp_coords(_axis(1, "X", theta), identity(1))
        assert abs(distance_lower(u, cfg) - theta) < 1e-12


def test_distance_lower_branch_cut():
    phases = np.array([np.pi - 1e-9, -(np.pi - 1e-9), 0.3, -0.3])
    u = Unitary(2, np.diag(np.exp(-1j * phases)))
    with pytest.raises(BranchCutError):
        distance_lower(u, MetricConfig(2, 2.0))


def test_optimizer_settings_validation():
    with pytest.raises(ValidationError):
        OptimizerSettings(segments=0)
    with pytest.raises(ValidationError):
        OptimizerSettings(restarts=-1)
    with pytest.raises(ValidationError):
        OptimizerSettings(endpoint_tol=0.0)
    with pytest.raises(ValidationError):
        OptimizerSettings(tau_min=0.0)


def test_estimate_validation():
    stats = OptimizerStats(1, 1, 0.0)
    with pytest.raises(ValidationError):
        DistanceEstimate(1.0, 0.5, Path(1, ()), stats)
    with pytest.raises(ValidationError):
        DistanceEstimate(-0.1, 0.5, Path(1, ()), stats)
    DistanceEstimate(0.5, 0.5, Path(1, ()), stats)  # equality is fine


def test_distance_upper_identity():
    cfg = MetricConfig(2, 4.0)
    estimate = distance_upper(identity(2), cfg)
    assert estimate.upper == 0.0
    assert estimate.lower == 0.0
    assert estimate.witness.segments == ()


SMALL = OptimizerSettings(segments=2, restarts=2, max_sweeps=15)


def test_distance_upper_pinches_subgroup():
    cfg = MetricConfig(1, 2.0)
    theta = 0.5
    u = exp_coords(_axis(1, "X", theta), identity(1))
    estimate = distance_upper(u, cfg, SMALL)
    assert estimate.upper <= theta + 1e-3
    assert abs(estimate.lower - theta) < 1e-9
    assert estimate.lower <= estimate.upper + 1e-6


def test_distance_upper_witness_is_feasible():
    cfg = MetricConfig(2, 4.0)
    rng = np.random.default_rng(2)
    u = exp_coords(random_coeffs(rng, 2, scale=0.8), identity(2))
    estimate = distance_upper(u, cfg, SMALL)
    reached = path_endpoint(estimate.witness)
    assert phase_aligned_frobenius(reached.matrix, u.matrix) <= SMALL.endpoint_tol
    assert estimate.upper == path_length(estimate.witness, cfg)
    assert estimate.lower <= estimate.upper + 1e-6


def test_distance_upper_deterministic():
    cfg = MetricConfig(2, 2.0)
    rng = np.random.default_rng(3)
    u = exp_coords(random_coeffs(rng, 2, scale=0.6), identity(2))
    first = distance_upper(u, cfg, SMALL)
    second = distance_upper(u, cfg, SMALL)
    assert first.upper == second.upper
    assert first.stats.evaluations == second.stats.evaluations


def test_distance_upper_infeasible():
    phases = np.array([np.pi - 1e-9, -(np.pi - 1e-9), 0.3, -0.3])
    u = Unitary(2, np.diag(np.exp(-1j * phases)))
    with pytest.raises(InfeasibleError):
        distance_upper(u, MetricConfig(2, 2.0), OptimizerSettings(restarts=0))


def test_distance_upper_penalty_prices_hard_directions():
    # a pure weight-3 target costs at least its chart angle; the witness
    # length must also respect the p-scaled upper envelope of the chart bound
    cfg = MetricConfig(3, 4.0)
    y = _axis(3, "XXX", 0.4)
    u = exp_coords(y, identity(3))
    estimate = distance_upper(u, cfg, OptimizerSettings(segments=1, restarts=0, max_sweeps=6))
    assert estimate.lower == pytest.approx(0.4, abs=1e-9)
    assert estimate.upper <= 4.0 * 0.4 + 1e-6
    assert estimate.upper >= estimate.lower - 1e-9
