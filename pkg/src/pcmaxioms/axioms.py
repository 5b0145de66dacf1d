"""Randomized property checks of weighting methods against the two axioms.

* Correctness (CO): on a consistent matrix the method reproduces every ratio
  ``f_i / f_j = a_ij``.
* Triad invariance (IT): the output does not change under any
  alpha-transformation on a triad.

Random trials can only refute an axiom, so a passing report means "no
violation found in N trials". Every failing report carries a witness that can
be replayed on its own with :func:`replay_witness`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    PairwiseComparisonMatrix,
    ToleranceConfig,
    Triad,
    WeightVector,
    build_matrix,
    consistent_from_weights,
    random_matrix,
    random_weights,
)
from .triads import TriadTransform, apply_triad_transform, consistify
from .weighting import EM, LLSM, Flat, llsm_weights, max_deviation

DIMENSIONS = (3, 4, 5, 6)
ALPHA_RANGE = (0.1, 10.0)
IT_PERTURBATION = 1.0
EM_WEIGHT_TOL = 1e-6

Method = Callable[[PairwiseComparisonMatrix], WeightVector]


def em_counterexample() -> tuple[PairwiseComparisonMatrix, TriadTransform]:
    """4x4 matrix and triad transform ((1,2,4), alpha=2) on which EM weights change."""
    A = build_matrix([
        [1, 1, 1, 8],
        [1, 1, 1, 1],
        [1, 1, 1, 1],
        [1 / 8, 1, 1, 1],
    ])
    return A, TriadTransform(Triad.from_one_based(1, 2, 4), 2.0)


@dataclass(frozen=True)
class Witness:
    """A concrete input on which a method violated an axiom.

    For CO, ``reference`` holds the inducing weights and ``observed`` the
    method output. For IT, they hold the outputs before and after
    ``transform``. For the combined characterization check, ``transformed`` is
    the consistified matrix and ``note`` names the broken link.
    """

    axiom: str
    trial: int
    matrix: PairwiseComparisonMatrix
    deviation: float
    reference: WeightVector | None = None
    observed: WeightVector | None = None
    transform: TriadTransform | None = None
    transformed: PairwiseComparisonMatrix | None = None
    error: str | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        out = {
            "trial": self.trial,
            "matrix": self.matrix.tolist(),
            "deviation": self.deviation if math.isfinite(self.deviation) else None,
            "reference": None if self.reference is None else self.reference.tolist(),
            "observed": None if self.observed is None else self.observed.tolist(),
        }
        if self.transform is not None:
            out["transform"] = {"triad": list(self.transform.triad.one_based()),
                                "alpha": self.transform.alpha}
        if self.transformed is not None:
            out["transformed"] = self.transformed.tolist()
        if self.error is not None:
            out["error"] = self.error
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    method_name: str
    passed: bool
    trials: int
    witness: Witness | None = None
    failures: int = 0
    weight_tol: float = DEFAULT_TOL.weight_tol

    def __post_init__(self):
        if self.passed != (self.witness is None):
            raise ValueError("a failing report needs a witness and a passing one must not carry one")

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "method": self.method_name,
            "verdict": self.verdict,
            "trials": self.trials,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }

    def describe(self) -> str:
        if self.passed:
            return f"{self.axiom} {self.method_name}: pass (no violation found in {self.trials} trials)"
        w = self.witness
        return (f"{self.axiom} {self.method_name}: fail ({self.failures}/{self.trials} trials violate, "
                f"first at trial {w.trial}, deviation {w.deviation:.3e})")


def method_name(method: Method) -> str:
    return getattr(method, "name", None) or getattr(method, "__name__", repr(method))


def _evaluate(method: Method, A: PairwiseComparisonMatrix) -> WeightVector:
    out = method(A)
    return out if isinstance(out, WeightVector) else WeightVector.normalized(out)


def ratio_error(w: WeightVector, A: PairwiseComparisonMatrix) -> float:
    """Max relative error ``|(w_i / w_j) / a_ij - 1|`` over all pairs."""
    lw = np.log(w.weights)
    return float(np.max(np.abs(np.expm1(lw[:, None] - lw[None, :] - A.log_entries))))


def _co_case(method, trial, w, tol) -> Witness | None:
    A = consistent_from_weights(w)
    try:
        got = _evaluate(method, A)
    except Exception as exc:  # noqa: BLE001 - any method failure is a violation
        return Witness("CO", trial, A, math.inf, reference=w, error=f"{type(exc).__name__}: {exc}")
    dev = ratio_error(got, A)
    if dev > tol.weight_tol:
        return Witness("CO", trial, A, dev, reference=w, observed=got)
    return None


def _it_case(method, trial, A, t, tol) -> Witness | None:
    B = apply_triad_transform(A, t)
    try:
        before, after = _evaluate(method, A), _evaluate(method, B)
    except Exception as exc:  # noqa: BLE001
        return Witness("IT", trial, A, math.inf, transform=t, transformed=B,
                       error=f"{type(exc).__name__}: {exc}")
    dev = max_deviation(before, after)
    if dev > tol.weight_tol:
        return Witness("IT", trial, A, dev, reference=before, observed=after, transform=t, transformed=B)
    return None


def _report(axiom, method, witnesses: Iterable[Witness | None], tol) -> AxiomReport:
    results = list(witnesses)
    failed = sorted((w for w in results if w is not None), key=lambda w: w.trial)
    return AxiomReport(axiom, method_name(method), not failed, len(results),
                       failed[0] if failed else None, len(failed), tol.weight_tol)


def correctness_inputs(trials: int, seed: int) -> list[WeightVector]:
    rng = np.random.default_rng(seed)
    return [random_weights(DIMENSIONS[t % len(DIMENSIONS)], rng) for t in range(trials)]


def check_correctness(method: Method, trials: int = 200, seed: int = 0,
                      tol: ToleranceConfig = DEFAULT_TOL) -> AxiomReport:
    """Check CO on ``trials`` random consistent matrices (n cycling over 3..6).

    Each inducing vector has log-uniform components on ``[e^-2, e^2]``.
    Ratios are compared with relative tolerance ``tol.weight_tol``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    inputs = correctness_inputs(trials, seed)
    return _report("CO", method, (_co_case(method, t, w, tol) for t, w in enumerate(inputs)), tol)


def invariance_inputs(trials: int, seed: int) -> list[tuple[PairwiseComparisonMatrix, TriadTransform]]:
    rng = np.random.default_rng(seed)
    lo, hi = np.log(ALPHA_RANGE)
    cases = []
    for t in range(trials):
        n = DIMENSIONS[t % len(DIMENSIONS)]
        A = random_matrix(n, IT_PERTURBATION, rng)
        triad = Triad(*(int(x) for x in rng.choice(n, size=3, replace=False)))
        cases.append((A, TriadTransform(triad, float(np.exp(rng.uniform(lo, hi))))))
    return cases


def check_it_invariance(method: Method, trials: int = 200, seed: int = 0,
                        tol: ToleranceConfig = DEFAULT_TOL,
                        fixed_cases: Sequence[tuple[PairwiseComparisonMatrix, TriadTransform]] | None = None,
                        ) -> AxiomReport:
    """Check IT on random matrices, triads and log-uniform alphas in ``[0.1, 10]``.

    ``fixed_cases`` are checked first, as trials ``0..len(fixed_cases)-1``;
    by default this is the single EM counterexample from
    :func:`em_counterexample`. Pass ``()`` for random trials only.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    fixed = [em_counterexample()] if fixed_cases is None else list(fixed_cases)
    cases = fixed + invariance_inputs(trials, seed)
    return _report("IT", method, (_it_case(method, t, A, tr, tol) for t, (A, tr) in enumerate(cases)), tol)


def characterization_check(method: Method, trials: int = 100, seed: int = 0,
                           tol: ToleranceConfig = DEFAULT_TOL) -> AxiomReport:
    """Test whether ``method`` behaves like LLSM along consistification traces.

    For each random matrix ``A`` with consistified endpoint ``F``, requires
    ``method(A) == method(F)`` (what IT forces along the trace) and
    ``method(F) == llsm_weights(A)`` (what CO forces at the endpoint).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    results = []
    for t in range(trials):
        A = random_matrix(DIMENSIONS[t % len(DIMENSIONS)], IT_PERTURBATION, rng)
        results.append(_characterization_case(method, t, A, tol))
    return _report("CO+IT", method, results, tol)


def _characterization_case(method, trial, A, tol) -> Witness | None:
    F = consistify(A).final
    target = llsm_weights(A)
    try:
        start, end = _evaluate(method, A), _evaluate(method, F)
    except Exception as exc:  # noqa: BLE001
        return Witness("CO+IT", trial, A, math.inf, transformed=F, error=f"{type(exc).__name__}: {exc}")
    chain = max_deviation(start, end)
    if chain > tol.weight_tol:
        return Witness("CO+IT", trial, A, chain, reference=start, observed=end, transformed=F,
                       note="output changes along the consistification trace")
    endpoint = max_deviation(end, target)
    if endpoint > tol.weight_tol:
        return Witness("CO+IT", trial, A, endpoint, reference=target, observed=end, transformed=F,
                       note="output at the consistent endpoint differs from its inducing weights")
    return None


def replay_witness(witness: Witness, method: Method, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Recompute a witness from scratch; True if it is still a violation."""
    if witness.axiom == "CO":
        return _co_case(method, witness.trial, witness.reference, tol) is not None
    if witness.axiom == "IT":
        return _it_case(method, witness.trial, witness.matrix, witness.transform, tol) is not None
    return _characterization_case(method, witness.trial, witness.matrix, tol) is not None


def method_tolerance(method: Method, tol: ToleranceConfig) -> ToleranceConfig:
    """Widen ``weight_tol`` to absorb power-iteration error for EM."""
    if isinstance(method, EM) and tol.weight_tol < EM_WEIGHT_TOL:
        return replace(tol, weight_tol=EM_WEIGHT_TOL)
    return tol


@dataclass(frozen=True)
class IndependenceTable:
    rows: dict[str, dict[str, AxiomReport]] = field(default_factory=dict)

    def verdicts(self) -> dict[str, tuple[str, str]]:
        return {m: (r["CO"].verdict, r["IT"].verdict) for m, r in self.rows.items()}

    def to_dict(self) -> dict:
        return {m: {ax: rep.to_dict() for ax, rep in r.items()} for m, r in self.rows.items()}

    def render(self) -> str:
        lines = [f"{'method':<8}{'CO':<6}{'IT':<6}"]
        for m, (co, it) in self.verdicts().items():
            lines.append(f"{m:<8}{co:<6}{it:<6}")
        return "\n".join(lines)


def independence_demo(tol: ToleranceConfig = DEFAULT_TOL, trials: int = 200, seed: int = 0) -> IndependenceTable:
    """Run both checkers on LLSM, EM and the flat method.

    Expected outcome: LLSM satisfies both axioms, EM only CO and the flat
    method only IT, so neither axiom implies the other.
    """
    rows = {}
    for method in (LLSM(), EM(), Flat()):
        mtol = method_tolerance(method, tol)
        rows[method.name] = {
            "CO": check_correctness(method, trials, seed, mtol),
            "IT": check_it_invariance(method, trials, seed, mtol),
        }
    return IndependenceTable(rows)
