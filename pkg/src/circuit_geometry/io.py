"""File formats and deterministic report writing.

Three JSON formats cross the package boundary:

* matrix: ``{"n": int, "re": [[...]], "im": [[...]]}`` -- a dense complex
  matrix split into real and imaginary parts, row major;
* schedule: ``{"n": int, "segments": [{"tau": float, "y": {word: coeff}}]}``
  -- a piecewise-constant control schedule, omitted words read as zero;
* gates: ``{"n": int, "delta": float, "gates": [{"pauli": word,
  "angle": float}]}`` -- a synthesized gate sequence in order.

Reports are serialized with sorted keys, two-space indentation, and a
trailing newline, and written atomically, so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .charts import Unitary
from .errors import ValidationError
from .pauli import CoeffVector, PauliString
from .paths import Path, PathSegment
from .simulation import Gate, GateSequence, Schedule


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def _as_complex(payload: dict, path: str) -> tuple[int, np.ndarray]:
    _require(isinstance(payload, dict), f"{path}: expected a JSON object")
    for key in ("n", "re", "im"):
        _require(key in payload, f"{path}: missing key {key!r}")
    n = payload["n"]
    _require(isinstance(n, int) and n >= 1, f"{path}: 'n' must be a positive integer")
    try:
        re = np.asarray(payload["re"], dtype=float)
        im = np.asarray(payload["im"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: matrix entries must be numbers ({exc})")
    dim = 2**n
    _require(re.shape == (dim, dim), f"{path}: 're' must be a {dim}x{dim} array, got {re.shape}")
    _require(im.shape == (dim, dim), f"{path}: 'im' must be a {dim}x{dim} array, got {im.shape}")
    return n, re + 1j * im


def load_json(path: str) -> dict:
    """Read a JSON file, converting parse failures to ``ValidationError``."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})")


def load_matrix(path: str) -> tuple[int, np.ndarray]:
    """Read a matrix file; returns ``(n, complex matrix)`` without unitarity checks."""
    return _as_complex(load_json(path), path)


def load_unitary(path: str) -> Unitary:
    """Read a matrix file and validate it as an element of SU(2^n)."""
    n, matrix = load_matrix(path)
    return Unitary(n, matrix)


def save_matrix(path: str, n: int, matrix: np.ndarray) -> None:
    matrix = np.asarray(matrix, dtype=complex)
    payload = {"n": int(n), "re": matrix.real.tolist(), "im": matrix.imag.tolist()}
    write_report(path, payload)


def path_from_dict(payload: dict, source: str = "<schedule>") -> Path:
    _require(isinstance(payload, dict), f"{source}: expected a JSON object")
    for key in ("n", "segments"):
        _require(key in payload, f"{source}: missing key {key!r}")
    n = payload["n"]
    _require(isinstance(n, int) and n >= 1, f"{source}: 'n' must be a positive integer")
    segments = payload["segments"]
    _require(isinstance(segments, list) and segments, f"{source}: 'segments' must be a nonempty list")
    parsed = []
    for index, entry in enumerate(segments):
        where = f"{source}: segment {index}"
        _require(isinstance(entry, dict), f"{where}: expected an object")
        _require("tau" in entry and "y" in entry, f"{where}: needs 'tau' and 'y'")
        tau = entry["tau"]
        _require(isinstance(tau, (int, float)) and not isinstance(tau, bool), f"{where}: 'tau' must be a number")
        mapping = entry["y"]
        _require(isinstance(mapping, dict), f"{where}: 'y' must be an object of word: coefficient")
        for word, value in mapping.items():
            _require(
                isinstance(value, (int, float)) and not isinstance(value, bool),
                f"{where}: coefficient for {word!r} must be a number",
            )
        parsed.append(PathSegment(CoeffVector.from_words(n, mapping), float(tau)))
    return Path(n, tuple(parsed))


def load_path(path: str) -> Path:
    """Read a schedule file as a piecewise-constant path."""
    return path_from_dict(load_json(path), path)


def path_to_dict(path_obj: Path) -> dict:
    return {
        "n": path_obj.n,
        "segments": [
            {"tau": segment.tau, "y": segment.y.to_words()} for segment in path_obj.segments
        ],
    }


def schedule_from_path(path_obj: Path) -> Schedule:
    """View a segment path as a sampled schedule (constant interpolation)."""
    times = [0.0]
    for segment in path_obj.segments[:-1]:
        times.append(times[-1] + segment.tau)
    duration = times[-1] + path_obj.segments[-1].tau
    values = np.stack([segment.y.values for segment in path_obj.segments])
    return Schedule(path_obj.n, np.array(times), values, duration)


def load_schedule(path: str) -> Schedule:
    """Read a schedule file directly into a sampled schedule."""
    return schedule_from_path(load_path(path))


def gates_to_dict(sequence: GateSequence) -> dict:
    return {
        "n": sequence.n,
        "delta": sequence.delta,
        "gates": [{"pauli": str(g.string), "angle": g.angle} for g in sequence.gates],
    }


def gates_from_dict(payload: dict, source: str = "<gates>") -> GateSequence:
    _require(isinstance(payload, dict), f"{source}: expected a JSON object")
    for key in ("n", "delta", "gates"):
        _require(key in payload, f"{source}: missing key {key!r}")
    n = payload["n"]
    _require(isinstance(n, int) and n >= 1, f"{source}: 'n' must be a positive integer")
    delta = payload["delta"]
    _require(
        isinstance(delta, (int, float)) and not isinstance(delta, bool),
        f"{source}: 'delta' must be a number",
    )
    entries = payload["gates"]
    _require(isinstance(entries, list), f"{source}: 'gates' must be a list")
    gates = []
    for index, entry in enumerate(entries):
        where = f"{source}: gate {index}"
        _require(isinstance(entry, dict), f"{where}: expected an object")
        _require("pauli" in entry and "angle" in entry, f"{where}: needs 'pauli' and 'angle'")
        angle = entry["angle"]
        _require(
            isinstance(angle, (int, float)) and not isinstance(angle, bool),
            f"{where}: 'angle' must be a number",
        )
        gates.append(Gate(PauliString(str(entry["pauli"])), float(angle)))
    return GateSequence(n, tuple(gates), float(delta))


def load_gates(path: str) -> GateSequence:
    return gates_from_dict(load_json(path), path)


def save_gates(path: str, sequence: GateSequence) -> None:
    write_report(path, gates_to_dict(sequence))


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    handle, temp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="\n") as stream:
            stream.write(text)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise


def write_report(path: str, payload: dict) -> None:
    """Serialize ``payload`` deterministically and write it atomically.

    Sorted keys, two-space indentation, trailing newline; NaNs are
    rejected rather than emitted as nonstandard JSON.
    """
    text = json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"
    _write_atomic(path, text)


def write_bounds_csv(path: str, reports) -> None:
    """Write bound reports as CSV with a fixed header and row order."""
    lines = ["context,lower,observed,upper,passed"]
    for report in reports:
        lines.append(
            f"{report.context},{report.lower!r},{report.observed!r},"
            f"{report.upper!r},{str(report.passed).lower()}"
        )
    _write_atomic(path, "\n".join(lines) + "\n")
