"""Weighting methods: row geometric mean (LLSM), Perron eigenvector (EM), flat."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import PairwiseComparisonMatrix, PcmError, WeightVector


class NoConvergence(PcmError):
    def __init__(self, iterations: int, change: float):
        self.iterations, self.change = iterations, change
        super().__init__(
            f"power iteration did not converge in {iterations} iterations "
            f"(last max-norm change {change:.3e})"
        )


@dataclass(frozen=True)
class EmConfig:
    convergence_tol: float = 1e-12
    max_iterations: int = 10_000

    def __post_init__(self):
        if not self.convergence_tol > 0:
            raise ValueError(f"convergence_tol must be > 0, got {self.convergence_tol!r}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations!r}")


@dataclass(frozen=True)
class EmResult:
    weights: WeightVector
    lambda_max: float
    iterations: int


def row_geometric_means(A: PairwiseComparisonMatrix) -> np.ndarray:
    """Geometric mean of each row, ``exp(mean_j log a_ij)``."""
    return np.exp(A.log_entries.mean(axis=1))


def log_row_geometric_means(A: PairwiseComparisonMatrix) -> np.ndarray:
    return A.log_entries.mean(axis=1)


def llsm_weights(A: PairwiseComparisonMatrix) -> WeightVector:
    """Logarithmic least squares weights, i.e. the normalized row geometric means.

    Evaluated in log space and shifted by the largest log-mean before
    exponentiating, so extreme ratios neither overflow nor underflow.
    """
    logp = log_row_geometric_means(A)
    p = np.exp(logp - logp.max())
    return WeightVector(p / p.sum())


def llsm_objective(A: PairwiseComparisonMatrix, w) -> float:
    """``sum_ij (log a_ij - log(w_i / w_j))^2``."""
    lw = np.log(np.asarray(w, dtype=float))
    return float(np.sum((A.log_entries - (lw[:, None] - lw[None, :])) ** 2))


def em_weights(A: PairwiseComparisonMatrix, cfg: EmConfig = EmConfig()) -> EmResult:
    """Principal eigenvector by power iteration from the uniform vector.

    Each iterate is renormalized to sum one; iteration stops once the
    max-norm change between iterates is at most ``cfg.convergence_tol``.
    ``lambda_max`` is estimated as ``sum(A @ w)``, exact at the fixed point.

    Raises:
        NoConvergence: if ``cfg.max_iterations`` is exhausted.
    """
    M = A.entries
    n = A.n
    w = np.full(n, 1.0 / n)
    change = np.inf
    for it in range(1, cfg.max_iterations + 1):
        v = M @ w
        v /= v.sum()
        change = float(np.max(np.abs(v - w)))
        w = v
        if change <= cfg.convergence_tol:
            lam = float(np.sum(M @ w))
            return EmResult(WeightVector(w / w.sum()), lam, it)
    raise NoConvergence(cfg.max_iterations, change)


def flat_weights(A: PairwiseComparisonMatrix) -> WeightVector:
    return WeightVector(np.full(A.n, 1.0 / A.n))


class WeightingMethod:
    """A named map from pairwise comparison matrices to weight vectors.

    Subclass and override :meth:`weights`, or wrap a plain function with
    :meth:`from_function`. Instances are callable.
    """

    name = "method"

    def weights(self, A: PairwiseComparisonMatrix) -> WeightVector:
        raise NotImplementedError

    def __call__(self, A: PairwiseComparisonMatrix) -> WeightVector:
        out = self.weights(A)
        if not isinstance(out, WeightVector):
            out = WeightVector.normalized(out)
        return out

    def __repr__(self):
        return f"<WeightingMethod {self.name}>"

    @staticmethod
    def from_function(name: str, fn: Callable[[PairwiseComparisonMatrix], object]) -> "WeightingMethod":
        return _FunctionMethod(name, fn)


class _FunctionMethod(WeightingMethod):
    def __init__(self, name, fn):
        self.name = name
        self._fn = fn

    def weights(self, A):
        return self._fn(A)


class LLSM(WeightingMethod):
    name = "llsm"

    def weights(self, A):
        return llsm_weights(A)


class EM(WeightingMethod):
    name = "em"

    def __init__(self, cfg: EmConfig = EmConfig()):
        self.cfg = cfg

    def weights(self, A):
        return em_weights(A, self.cfg).weights


class Flat(WeightingMethod):
    name = "flat"

    def weights(self, A):
        return flat_weights(A)


METHODS: dict[str, Callable[[], WeightingMethod]] = {"llsm": LLSM, "em": EM, "flat": Flat}


def get_method(name: str) -> WeightingMethod:
    try:
        return METHODS[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown weighting method {name!r}; choose from {sorted(METHODS)}") from None


def max_deviation(u: WeightVector, v: WeightVector) -> float:
    return float(np.max(np.abs(u.weights - v.weights)))
