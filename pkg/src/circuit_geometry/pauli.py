"""Generalized Pauli basis on n qubits.

The non-identity tensor words over {I, X, Y, Z} form an orthogonal basis
(under the trace inner product) of the traceless Hermitian matrices on
2^n dimensions.  Everything downstream -- tangent coordinates, penalty
norms, gate synthesis -- is expressed in this basis, so a single canonical
ordering is fixed here: words sort by weight (number of non-identity
factors) ascending, ties broken by base-4 index with qubit 0 as the most
significant digit and I, X, Y, Z mapping to digits 0..3.  Under this
ordering the weight-at-most-2 words occupy a contiguous leading block of
size ``partition_k(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DomainError, IdentityComponentError, ValidationError

LETTERS = "IXYZ"

#: Largest supported qubit count.  Dense matrices scale as 16^n per basis
#: element; beyond six qubits the cached basis stack alone would exceed a
#: gigabyte.
MAX_QUBITS = 6

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


@dataclass(frozen=True)
class PauliString:
    """One word of the n-qubit Pauli basis, written like ``"XZI"``.

    Parameters
    ----------
    letters : str
        One character per qubit from ``IXYZ``; qubit 0 is the leftmost.
    """

    letters: str

    def __post_init__(self):
        if not self.letters or any(c not in LETTERS for c in self.letters):
            raise ValidationError(f"invalid Pauli word {self.letters!r}: use characters from 'IXYZ'")

    @property
    def n(self) -> int:
        """Number of qubits the word acts on."""
        return len(self.letters)

    @property
    def weight(self) -> int:
        """Number of non-identity tensor factors."""
        return sum(1 for c in self.letters if c != "I")

    @property
    def index(self) -> int:
        """Base-4 value of the word with qubit 0 most significant."""
        value = 0
        for c in self.letters:
            value = 4 * value + LETTERS.index(c)
        return value

    def matrix(self) -> np.ndarray:
        """Dense (2^n, 2^n) matrix of the tensor word."""
        out = _SINGLE[self.letters[0]]
        for c in self.letters[1:]:
            out = np.kron(out, _SINGLE[c])
        return out

    def __str__(self) -> str:
        return self.letters


def _check_qubit_count(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DomainError(f"qubit count must be an integer, got {n!r}")
    if not 1 <= n <= MAX_QUBITS:
        raise DomainError(f"qubit count must be between 1 and {MAX_QUBITS}, got {n}")


@lru_cache(maxsize=None)
def enumerate_basis(n: int) -> tuple[PauliString, ...]:
    """All 4^n - 1 non-identity Pauli words in canonical order.

    Sorted by (weight, base-4 index); the first ``partition_k(n)`` entries
    are exactly the words of weight at most two.
    """
    _check_qubit_count(n)
    words = ("".join(t) for t in product(LETTERS, repeat=n))
    strings = [PauliString(w) for w in words if w.count("I") < n]
    strings.sort(key=lambda s: (s.weight, s.index))
    return tuple(strings)


def partition_k(n: int) -> int:
    """Number of weight-at-most-2 basis words: 9 n (n - 1) / 2 + 3 n.

    There are 3n single-qubit words and 9 n(n-1)/2 two-qubit words (nine
    letter pairs per unordered qubit pair).
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise DomainError(f"qubit count must be a positive integer, got {n!r}")
    return 9 * (n * n - n) // 2 + 3 * n


@lru_cache(maxsize=None)
def basis_matrices(n: int) -> np.ndarray:
    """Read-only stack of the basis matrices, shape (4^n - 1, 2^n, 2^n)."""
    stack = np.stack([s.matrix() for s in enumerate_basis(n)])
    stack.flags.writeable = False
    return stack


@lru_cache(maxsize=None)
def weight_vector(n: int) -> np.ndarray:
    """Read-only vector of word weights in canonical order, shape (4^n - 1,)."""
    weights = np.array([s.weight for s in enumerate_basis(n)])
    weights.flags.writeable = False
    return weights


@dataclass(frozen=True, eq=False)
class CoeffVector:
    """Real coefficients over the non-identity basis words, canonical order.

    Immutable; the stored array is a read-only copy of the input.
    """

    n: int
    values: np.ndarray

    def __post_init__(self):
        _check_qubit_count(self.n)
        values = np.asarray(self.values, dtype=float)
        expected = 4**self.n - 1
        if values.shape != (expected,):
            raise ValidationError(
                f"coefficient vector for n={self.n} must have shape ({expected},), got {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValidationError("coefficient vector has non-finite entries")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, n: int) -> "CoeffVector":
        return cls(n, np.zeros(4**n - 1))

    @classmethod
    def from_words(cls, n: int, coefficients: dict) -> "CoeffVector":
        """Build a vector from a ``{word: coefficient}`` mapping; absent words are zero."""
        _check_qubit_count(n)
        index = {str(s): i for i, s in enumerate(enumerate_basis(n))}
        values = np.zeros(4**n - 1)
        for word, value in coefficients.items():
            if word not in index:
                raise ValidationError(
                    f"unknown Pauli word {word!r} for n={n} (identity word excluded)"
                )
            values[index[word]] = float(value)
        return cls(n, values)

    def to_words(self, include_zeros: bool = False) -> dict:
        """Mapping ``{word: coefficient}``; zero entries omitted by default."""
        basis = enumerate_basis(self.n)
        return {
            str(s): float(v)
            for s, v in zip(basis, self.values)
            if include_zeros or v != 0.0
        }

    @property
    def norm(self) -> float:
        """Euclidean norm of the coefficients."""
        return float(np.sqrt(np.sum(np.square(self.values))))


def decompose(matrix: np.ndarray, n: int) -> CoeffVector:
    """Coefficients of a traceless Hermitian matrix over the Pauli basis.

    Uses the trace inner product: ``y_i = Re(tr(sigma_i @ H)) / 2^n``.

    Raises
    ------
    DomainError
        If the matrix shape does not match ``n``.
    ValidationError
        If the matrix is not Hermitian to within ``HERMITIAN_TOL``.
    IdentityComponentError
        If the trace exceeds ``TRACE_TOL`` in magnitude.
    """
    _check_qubit_count(n)
    matrix = np.asarray(matrix, dtype=complex)
    dim = 2**n
    if matrix.shape != (dim, dim):
        raise DomainError(f"expected a ({dim}, {dim}) matrix for n={n}, got shape {matrix.shape}")
    hermitian_defect = float(np.max(np.abs(matrix - matrix.conj().T)))
    if hermitian_defect > HERMITIAN_TOL:
        raise ValidationError(f"matrix is not Hermitian: max |H - H^dagger| = {hermitian_defect:.3e}")
    trace = complex(np.trace(matrix))
    if abs(trace) > TRACE_TOL:
        raise IdentityComponentError(trace)
    # tr(sigma @ H) = sum_ij sigma[i, j] H[j, i]
    coefficients = np.einsum("kij,ji->k", basis_matrices(n), matrix).real / dim
    return CoeffVector(n, coefficients)


def reconstruct(y: CoeffVector) -> np.ndarray:
    """Dense matrix ``sum_i y_i sigma_i``; traceless Hermitian by construction."""
    return np.tensordot(y.values, basis_matrices(y.n), axes=(0, 0))
