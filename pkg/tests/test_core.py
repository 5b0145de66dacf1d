import numpy as np
import pytest

from pcmaxioms import (
    NonPositiveEntry,
    NotSquare,
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
from pcmaxioms.core import InvalidTriad, InvalidWeights

from conftest import EXAMPLE_41, EXAMPLE_41_FINAL
from oracles import max_triad_residual


def test_build_example_matrix():
    A = build_matrix(EXAMPLE_41)
    assert A.n == 4
    assert A[0, 3] == 16 and A[3, 0] == 1 / 16


def test_build_minimal_pair():
    A = build_matrix([[1, 2], [0.5, 1]])
    assert A.tolist() == [[1.0, 2.0], [0.5, 1.0]]


def test_reciprocity_violation_reports_pair_and_product():
    with pytest.raises(ReciprocityViolation) as exc:
        build_matrix([[1, 2], [2, 1]])
    assert (exc.value.row, exc.value.col) == (0, 1)
    assert exc.value.product == 4
    assert "(1,2)" in str(exc.value)


def test_reciprocity_tolerance_accepts_rounded_input():
    build_matrix([[1, 3], [0.3333333333333, 1]], ToleranceConfig(reciprocity_tol=1e-9))
    with pytest.raises(ReciprocityViolation):
        build_matrix([[1, 3], [0.333, 1]])


def test_entries_kept_as_given():
    raw = [[1, 3], [0.3333333333333, 1]]
    assert build_matrix(raw)[1, 0] == 0.3333333333333


@pytest.mark.parametrize("raw", [
    [[1, -2], [-0.5, 1]],
    [[1, 0], [np.inf, 1]],
    [[1, np.nan], [1, 1]],
])
def test_non_positive(raw):
    with pytest.raises(NonPositiveEntry):
        build_matrix(raw)


@pytest.mark.parametrize("raw", [[[1, 2, 3], [0.5, 1, 1]], [[1]], [1, 2], [[1, 2], [0.5]]])
def test_not_square(raw):
    with pytest.raises(NotSquare):
        build_matrix(raw)


def test_diagonal_must_be_one():
    with pytest.raises(ReciprocityViolation):
        build_matrix([[2, 1], [1, 1]])


def test_upper_triangle_completion():
    A = build_from_upper_triangle([2, 4, 2], 3)
    assert A.tolist() == [[1, 2, 4], [0.5, 1, 2], [0.25, 0.5, 1]]
    assert build_from_upper_triangle([5], 2).tolist() == [[1, 5], [0.2, 1]]
    assert build_from_upper_triangle([1, 1, 16, 1, 1, 1], 4) == build_matrix(EXAMPLE_41)


def test_upper_triangle_errors():
    with pytest.raises(WrongLength):
        build_from_upper_triangle([1, 2], 3)
    with pytest.raises(NonPositiveEntry):
        build_from_upper_triangle([1, 0, 2], 3)


def test_matrix_is_immutable():
    A = build_matrix(EXAMPLE_41)
    with pytest.raises(ValueError):
        A.entries[0, 0] = 5.0
    with pytest.raises(ValueError):
        A.log_entries[0, 0] = 5.0


def test_consistent_examples():
    res = is_consistent(build_from_upper_triangle([2, 4, 2], 3))
    assert res.consistent and res.residual == 0
    assert is_consistent(build_matrix(EXAMPLE_41_FINAL))


def test_inconsistent_example_points_at_outlier():
    res = is_consistent(build_matrix(EXAMPLE_41))
    assert not res.consistent
    assert res.residual == pytest.approx(np.log(16))
    assert 0 in res.triad and 3 in res.triad


def test_two_by_two_always_consistent():
    res = is_consistent(build_matrix([[1, 7], [1 / 7, 1]]))
    assert res == (True, 0.0, None)


def test_residual_matches_brute_force():
    for seed in range(10):
        A = random_matrix(5, 0.8, seed)
        assert is_consistent(A).residual == pytest.approx(max_triad_residual(A.tolist()), rel=1e-12)


def test_consistent_from_weights():
    A = consistent_from_weights(WeightVector.normalized([4, 2, 2, 1]))
    assert A == build_matrix(EXAMPLE_41_FINAL)
    assert (consistent_from_weights(WeightVector(np.full(5, 0.2))).entries == 1).all()
    B = consistent_from_weights([0.5, 0.3, 0.2])
    assert B[0, 1] == pytest.approx(5 / 3) and B[0, 2] == pytest.approx(2.5) and B[1, 2] == pytest.approx(1.5)


def test_consistent_from_weights_rejects_bad_input():
    with pytest.raises(InvalidWeights):
        consistent_from_weights([1.0, -1.0])


def test_random_matrix_properties():
    assert is_consistent(random_matrix(6, 0.0, 3))
    assert random_matrix(5, 1.0, 7) == random_matrix(5, 1.0, 7)
    A = random_matrix(5, 1.0, 7)
    build_matrix(A.tolist())
    assert not is_consistent(A)


def test_weight_vector_validation():
    with pytest.raises(InvalidWeights):
        WeightVector([0.5, 0.6])
    with pytest.raises(InvalidWeights):
        WeightVector([1.0, 0.0])
    assert WeightVector.normalized([1, 3]).tolist() == [0.25, 0.75]


def test_tolerance_config_bounds():
    with pytest.raises(ValueError):
        ToleranceConfig(weight_tol=0)
    with pytest.raises(ValueError):
        ToleranceConfig(consistency_tol=1.5)


def test_triad_validation():
    assert Triad.from_one_based(1, 2, 4) == Triad(0, 1, 3)
    with pytest.raises(InvalidTriad):
        Triad(0, 0, 1).validate(3)
    with pytest.raises(InvalidTriad):
        Triad(0, 1, 3).validate(3)
