"""Alpha-transformations on triads and the constructive consistification procedure.

A transformation on triad ``(i, j, k)`` with factor ``alpha`` multiplies the
three entries along the 3-cycle ``a_ij, a_jk, a_ki`` by ``alpha`` (and divides
their reciprocals). Row products are unchanged, so row geometric means, and
hence LLSM weights, are invariant.

:func:`consistify` repeatedly transforms triads ``(1, k, l)`` so that each
``a_kl`` with ``2 <= k < l`` becomes ``P_k / P_l`` (``P`` the row geometric
means). After the last target the first row also equals ``P_1 / P_j``, so the
result is the consistent matrix induced by the LLSM weights. Target pairs are
visited as ``(n-1,n), (n-2,n), (n-2,n-1), ..., (2,n), ..., (2,3)``.

Note: in the published worked example the second factor is written with
``w_3 / w_4`` where the general rule gives ``w_2 / w_4``; both are equal there
since ``w_2 = w_3``. This module always uses ``P_k`` of the target pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, PairwiseComparisonMatrix, PcmError, ToleranceConfig, Triad, is_consistent
from .weighting import log_row_geometric_means

IDENTITY_TOL = 1e-12


class NonPositiveAlpha(PcmError):
    pass


class TooSmall(PcmError):
    pass


@dataclass(frozen=True)
class TriadTransform:
    triad: Triad
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "triad", Triad(*self.triad))
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise NonPositiveAlpha(f"alpha must be positive and finite, got {self.alpha!r}")

    @property
    def is_identity(self) -> bool:
        return abs(self.alpha - 1.0) <= IDENTITY_TOL

    def inverse(self) -> "TriadTransform":
        return TriadTransform(self.triad, 1.0 / self.alpha)


def apply_triad_transform(A: PairwiseComparisonMatrix, t: TriadTransform) -> PairwiseComparisonMatrix:
    """Return a new matrix with ``a_ij, a_jk, a_ki`` scaled by ``t.alpha``.

    The upper-triangle cell of each pair is updated (multiplied by alpha, or
    divided when the cycle runs below the diagonal) and its mirror is set to
    its exact inverse. Every other entry is copied unchanged.
    """
    i, j, k = t.triad.validate(A.n)
    a = t.alpha
    E = A.entries.copy()
    for r, c in ((i, j), (j, k), (k, i)):
        if r < c:
            E[r, c] *= a
        else:
            r, c = c, r
            E[r, c] /= a
        E[c, r] = 1.0 / E[r, c]
    return PairwiseComparisonMatrix(E)


def local_consistency_alpha(A: PairwiseComparisonMatrix, triad: Triad) -> float:
    """Factor that makes the triad locally consistent: ``(a_ik / (a_ij a_jk))^(1/3)``."""
    i, j, k = Triad(*triad).validate(A.n)
    L = A.log_entries
    return math.exp((L[i, k] - L[i, j] - L[j, k]) / 3.0)


def target_order(n: int) -> list[tuple[int, int]]:
    """0-based target pairs ``(k, l)``, ``1 <= k < l <= n-1``, in procedure order."""
    return [(k, l) for k in range(n - 2, 0, -1) for l in range(n - 1, k, -1)]


@dataclass(frozen=True)
class TraceStep:
    transform: TriadTransform
    matrix: PairwiseComparisonMatrix


@dataclass(frozen=True)
class ConsistificationTrace:
    initial: PairwiseComparisonMatrix
    steps: tuple[TraceStep, ...]
    target_order: tuple[tuple[int, int], ...]

    @property
    def final(self) -> PairwiseComparisonMatrix:
        return self.steps[-1].matrix if self.steps else self.initial

    @property
    def alphas(self) -> list[float]:
        return [s.transform.alpha for s in self.steps]

    @property
    def nontrivial_steps(self) -> list[TraceStep]:
        return [s for s in self.steps if not s.transform.is_identity]

    def matrices(self) -> list[PairwiseComparisonMatrix]:
        return [self.initial] + [s.matrix for s in self.steps]

    def replay(self) -> PairwiseComparisonMatrix:
        """Re-apply the recorded transforms to ``initial`` with the same identity rule."""
        cur = self.initial
        for s in self.steps:
            if not s.transform.is_identity:
                cur = apply_triad_transform(cur, s.transform)
        return cur


def consistify(A: PairwiseComparisonMatrix) -> ConsistificationTrace:
    """Transform ``A`` into the consistent matrix of its row geometric means.

    Every step uses a triad containing the first alternative, so at most
    ``(n-1)(n-2)/2`` transforms are needed. Factors come from the row
    geometric means of ``A`` and the current matrix entry; steps whose factor
    is within ``1e-12`` of one are recorded but leave the matrix untouched.

    Raises:
        TooSmall: if ``n < 3``.
    """
    n = A.n
    if n < 3:
        raise TooSmall(f"consistify needs n >= 3 (a {n}x{n} matrix is already consistent)")
    logp = log_row_geometric_means(A)
    order = target_order(n)
    cur = A
    steps = []
    for k, l in order:
        alpha = math.exp(logp[k] - logp[l] - cur.log_entries[k, l])
        t = TriadTransform(Triad(0, k, l), alpha)
        if not t.is_identity:
            cur = apply_triad_transform(cur, t)
        steps.append(TraceStep(t, cur))
    return ConsistificationTrace(A, tuple(steps), tuple(order))


def verify_trace(trace: ConsistificationTrace, tol: ToleranceConfig = DEFAULT_TOL) -> list[str]:
    """List of problems with a trace; empty when it is valid."""
    problems = []
    n = trace.initial.n
    if len(trace.steps) > (n - 1) * (n - 2) // 2:
        problems.append(f"{len(trace.steps)} steps exceed (n-1)(n-2)/2")
    prev = trace.initial
    for idx, s in enumerate(trace.steps):
        expected = prev if s.transform.is_identity else apply_triad_transform(prev, s.transform)
        if not np.array_equal(expected.entries, s.matrix.entries):
            problems.append(f"step {idx + 1} matrix does not match its recorded transform")
        prev = s.matrix
    check = is_consistent(trace.final, tol)
    if not check:
        problems.append(f"final matrix inconsistent (residual {check.residual:.3e})")
    return problems
