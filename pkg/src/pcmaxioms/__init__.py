"""Weighting methods, triad transformations and axiom checks for pairwise comparison matrices."""

from .axioms import (
    AxiomReport,
    IndependenceTable,
    Witness,
    characterization_check,
    check_correctness,
    check_it_invariance,
    em_counterexample,
    independence_demo,
    replay_witness,
)
from .core import (
    DEFAULT_TOL,
    ConsistencyResult,
    InvalidTriad,
    InvalidWeights,
    NonPositiveEntry,
    NotSquare,
    PairwiseComparisonMatrix,
    PcmError,
    ReciprocityViolation,
    ToleranceConfig,
    Triad,
    WeightVector,
    WrongLength,
    build_from_upper_triangle,
    build_matrix,
    consistent_from_weights,
    is_consistent,
    random_matrix,
)
from .triads import (
    ConsistificationTrace,
    NonPositiveAlpha,
    TooSmall,
    TriadTransform,
    apply_triad_transform,
    consistify,
    local_consistency_alpha,
)
from .weighting import (
    EM,
    LLSM,
    EmConfig,
    EmResult,
    Flat,
    NoConvergence,
    WeightingMethod,
    em_weights,
    flat_weights,
    llsm_objective,
    llsm_weights,
    row_geometric_means,
)

__version__ = "0.1.0"
