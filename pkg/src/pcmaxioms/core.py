"""Pairwise comparison matrices, weight vectors and consistency testing.

Indices are 0-based everywhere in the Python API. File formats, the CLI and
error messages report 1-based indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
import numpy.typing as npt

NORMALIZATION_TOL = 1e-9


class PcmError(ValueError):
    """Base class for invalid inputs to any pcmaxioms operation."""


class NotSquare(PcmError):
    pass


class NonPositiveEntry(PcmError):
    def __init__(self, row: int, col: int, value: float):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"entry ({row + 1},{col + 1}) = {value!r} is not a positive finite number")


class ReciprocityViolation(PcmError):
    def __init__(self, row: int, col: int, product: float):
        self.row, self.col, self.product = row, col, product
        super().__init__(
            f"reciprocity violated at ({row + 1},{col + 1}): "
            f"a[{row + 1},{col + 1}] * a[{col + 1},{row + 1}] = {product!r}"
        )


class WrongLength(PcmError):
    pass


class InvalidTriad(PcmError):
    pass


class InvalidWeights(PcmError):
    pass


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances shared by validation, consistency tests and axiom checks.

    reciprocity_tol bounds ``|a_ij * a_ji - 1|`` for externally supplied matrices,
    consistency_tol bounds the log-space triad residual, and weight_tol bounds
    the deviation between two weight vectors (or weight ratios).
    """

    reciprocity_tol: float = 1e-9
    consistency_tol: float = 1e-9
    weight_tol: float = 1e-9

    def __post_init__(self):
        for name in ("reciprocity_tol", "consistency_tol", "weight_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {value!r}")


DEFAULT_TOL = ToleranceConfig()


def _frozen(a: npt.ArrayLike) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PairwiseComparisonMatrix:
    """Positive reciprocal ``n x n`` judgment matrix.

    ``entries[i, j]`` is the judged importance of alternative ``i`` over ``j``.
    Use :func:`build_matrix` or :func:`build_from_upper_triangle` to get a
    validated instance; the constructor itself trusts its input.
    """

    entries: np.ndarray
    log_entries: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))
        object.__setattr__(self, "log_entries", _frozen(np.log(self.entries)))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other):
        if not isinstance(other, PairwiseComparisonMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    __hash__ = None

    def tolist(self) -> list[list[float]]:
        return self.entries.tolist()


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Positive priority vector summing to one."""

    weights: np.ndarray

    def __post_init__(self):
        w = _frozen(self.weights)
        if w.ndim != 1 or w.size == 0:
            raise InvalidWeights("weights must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise InvalidWeights(f"weights must be positive and finite, got {w.tolist()}")
        if abs(w.sum() - 1.0) > NORMALIZATION_TOL:
            raise InvalidWeights(f"weights must sum to 1, got sum {w.sum()!r}")
        object.__setattr__(self, "weights", w)

    @classmethod
    def normalized(cls, values: npt.ArrayLike) -> "WeightVector":
        """Scale an arbitrary positive vector to sum one."""
        v = np.asarray(values, dtype=float)
        if not np.all(np.isfinite(v)) or np.any(v <= 0):
            raise InvalidWeights(f"weights must be positive and finite, got {v.tolist()}")
        return cls(v / v.sum())

    def __len__(self) -> int:
        return self.weights.size

    def __iter__(self):
        return iter(self.weights.tolist())

    def __getitem__(self, idx):
        return self.weights[idx]

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    __hash__ = None

    def tolist(self) -> list[float]:
        return self.weights.tolist()


class Triad(NamedTuple):
    """Three distinct 0-based alternative indices ``(i, j, k)``."""

    i: int
    j: int
    k: int

    def validate(self, n: int) -> "Triad":
        if len({self.i, self.j, self.k}) != 3:
            raise InvalidTriad(f"triad indices must be distinct, got {self.one_based()}")
        if not all(0 <= x < n for x in self):
            raise InvalidTriad(f"triad {self.one_based()} out of range for n={n}")
        return self

    def one_based(self) -> tuple[int, int, int]:
        return (self.i + 1, self.j + 1, self.k + 1)

    @classmethod
    def from_one_based(cls, i: int, j: int, k: int) -> "Triad":
        return cls(i - 1, j - 1, k - 1)


def _check_positive(arr: np.ndarray) -> None:
    bad = ~np.isfinite(arr) | (arr <= 0)
    if bad.any():
        r, c = np.argwhere(bad)[0]
        raise NonPositiveEntry(int(r), int(c), float(arr[r, c]))


def build_matrix(raw: Sequence[Sequence[float]] | np.ndarray,
                 tol: ToleranceConfig = DEFAULT_TOL) -> PairwiseComparisonMatrix:
    """Validate a full grid as a pairwise comparison matrix.

    Entries are kept as given. Raises :class:`NotSquare`,
    :class:`NonPositiveEntry` or :class:`ReciprocityViolation` (reporting the
    worst offending pair).
    """
    try:
        arr = np.array(raw, dtype=float)
    except ValueError as exc:
        raise NotSquare(f"matrix rows have unequal lengths: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotSquare(f"matrix must be square, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise NotSquare(f"matrix must have n >= 2, got n={arr.shape[0]}")
    _check_positive(arr)
    dev = np.abs(arr * arr.T - 1.0)
    r, c = np.unravel_index(np.argmax(dev), dev.shape)
    if dev[r, c] > tol.reciprocity_tol:
        r, c = min(r, c), max(r, c)
        raise ReciprocityViolation(int(r), int(c), float(arr[r, c] * arr[c, r]))
    return PairwiseComparisonMatrix(arr)


def _complete(upper: np.ndarray) -> PairwiseComparisonMatrix:
    """Fill diagonal and lower triangle from the strict upper triangle of ``upper``."""
    n = upper.shape[0]
    out = np.ones((n, n))
    iu = np.triu_indices(n, 1)
    out[iu] = upper[iu]
    out[iu[1], iu[0]] = 1.0 / upper[iu]
    return PairwiseComparisonMatrix(out)


def build_from_upper_triangle(raw: Sequence[float], n: int,
                              tol: ToleranceConfig = DEFAULT_TOL) -> PairwiseComparisonMatrix:
    """Build a matrix from its row-major strict upper triangle.

    >>> build_from_upper_triangle([2, 4, 2], 3).tolist()
    [[1.0, 2.0, 4.0], [0.5, 1.0, 2.0], [0.25, 0.5, 1.0]]
    """
    if n < 2:
        raise WrongLength(f"n must be >= 2, got {n}")
    vals = np.asarray(raw, dtype=float).ravel()
    expected = n * (n - 1) // 2
    if vals.size != expected:
        raise WrongLength(f"upper triangle for n={n} needs {expected} entries, got {vals.size}")
    grid = np.ones((n, n))
    iu = np.triu_indices(n, 1)
    grid[iu] = vals
    _check_positive(grid)
    return _complete(grid)


class ConsistencyResult(NamedTuple):
    consistent: bool
    residual: float
    triad: Triad | None

    def __bool__(self):
        return self.consistent


def triad_residuals(A: PairwiseComparisonMatrix) -> np.ndarray:
    """``R[i, j, k] = log a_ij + log a_jk - log a_ik`` over all index triples."""
    L = A.log_entries
    return L[:, :, None] + L[None, :, :] - L[:, None, :]


def is_consistent(A: PairwiseComparisonMatrix,
                  tol: ToleranceConfig = DEFAULT_TOL) -> ConsistencyResult:
    """Test ``a_ik = a_ij a_jk`` in log space over all ordered triads of distinct indices.

    Returns the verdict together with the worst triad and its absolute
    residual. A 2x2 matrix has no triads and is always consistent.
    """
    n = A.n
    if n < 3:
        return ConsistencyResult(True, 0.0, None)
    R = np.abs(triad_residuals(A))
    idx = np.arange(n)
    R[idx, idx, :] = -1.0
    R[:, idx, idx] = -1.0
    R[idx, :, idx] = -1.0
    i, j, k = np.unravel_index(np.argmax(R), R.shape)
    worst = float(R[i, j, k])
    return ConsistencyResult(worst <= tol.consistency_tol, worst, Triad(int(i), int(j), int(k)))


def consistent_from_weights(w: WeightVector | Sequence[float]) -> PairwiseComparisonMatrix:
    """The consistent matrix ``a_ij = w_i / w_j`` induced by a weight vector.

    A plain sequence may be unnormalized; ratios are taken from it directly.
    """
    if isinstance(w, WeightVector):
        v = w.weights
    else:
        v = np.asarray(w, dtype=float)
        if v.ndim != 1 or v.size < 2 or not np.all(np.isfinite(v)) or np.any(v <= 0):
            raise InvalidWeights(f"need at least two positive finite weights, got {v.tolist()}")
    return _complete(v[:, None] / v[None, :])


def random_weights(n: int, rng: np.random.Generator, spread: float = 2.0) -> WeightVector:
    """Log-uniform positive components on ``[e^-spread, e^spread]``, normalized."""
    return WeightVector.normalized(np.exp(rng.uniform(-spread, spread, size=n)))


def random_matrix(n: int, perturbation: float, seed: int | np.random.Generator) -> PairwiseComparisonMatrix:
    """Seeded random reciprocal matrix near a random consistent one.

    Each upper-triangle entry of a consistent matrix is multiplied by
    ``exp(u)``, ``u ~ U[-perturbation, perturbation]``; reciprocals are then
    restored exactly.
    """
    if n < 2:
        raise WrongLength(f"n must be >= 2, got {n}")
    if perturbation < 0:
        raise ValueError(f"perturbation must be >= 0, got {perturbation!r}")
    rng = np.random.default_rng(seed)
    base = consistent_from_weights(random_weights(n, rng)).entries.copy()
    if perturbation > 0:
        iu = np.triu_indices(n, 1)
        base[iu] *= np.exp(rng.uniform(-perturbation, perturbation, size=iu[0].size))
    return _complete(base)


def all_triads(n: int):
    """Unordered triads ``i < j < k``."""
    return (Triad(*t) for t in itertools.combinations(range(n), 3))
