import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import NotPositiveDefiniteError, NumericError
from src.core.numeric import (
    as_matrix,
    kernel_cross,
    kernel_eval,
    kernel_matrix,
    median_sigma,
    normalize_features,
    spd_solve,
)
from src.models.schemas import KernelSpec

RBF = KernelSpec(kind="rbf", sigma=1.0)
LINEAR = KernelSpec(kind="linear")


def test_rbf_of_identical_points():
    assert kernel_eval(RBF, [1, 2, 3], [1, 2, 3]) == 1.0


def test_rbf_unit_distance():
    assert kernel_eval(RBF, [0.0], [1.0]) == pytest.approx(math.exp(-0.5), rel=1e-15)


def test_linear_kernel():
    assert kernel_eval(LINEAR, [1, 2], [3, 4]) == 11.0


def test_rbf_requires_positive_sigma():
    with pytest.raises(ValueError):
        KernelSpec(kind="rbf", sigma=0.0)


def test_non_finite_input():
    with pytest.raises(NumericError):
        as_matrix([[1.0, float("nan")]])


@pytest.mark.parametrize("x", [[[1.0, 2.0], [3.0, 4.0]], np.ones((3, 2))])
def test_kernel_eval_rejects_several_rows(x):
    with pytest.raises(NumericError, match="single vectors"):
        kernel_eval(LINEAR, x, [1.0, 2.0])
    with pytest.raises(NumericError, match="single vectors"):
        kernel_eval(RBF, [1.0, 2.0], x)


def test_gram_of_single_point():
    assert kernel_matrix(RBF, [[3.0, 4.0]]).tolist() == [[1.0]]


@pytest.mark.parametrize("spec", [RBF, LINEAR])
def test_gram_is_exactly_symmetric(spec):
    X = np.random.default_rng(0).normal(size=(40, 9))
    gram = kernel_matrix(spec, X)
    assert np.array_equal(gram, gram.T)


def test_gram_matches_cross_kernel():
    X = np.random.default_rng(1).normal(size=(12, 9))
    np.testing.assert_allclose(kernel_matrix(RBF, X), kernel_cross(RBF, X, X), atol=1e-14)


def test_rbf_gram_has_unit_diagonal():
    X = np.random.default_rng(2).integers(1, 11, size=(30, 9))
    assert np.all(np.diag(kernel_matrix(RBF, X)) == 1.0)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 50), sigma=st.floats(0.1, 20.0))
def test_rbf_gram_is_positive_semidefinite(seed, n, sigma):
    rng = np.random.default_rng(seed)
    gram = kernel_matrix(KernelSpec(kind="rbf", sigma=sigma), rng.integers(1, 11, size=(n, 9)))
    v = rng.normal(size=n)
    assert v @ gram @ v >= -1e-9 * (v @ v)


def test_spd_solve_diagonal():
    assert spd_solve([[4.0, 0.0], [0.0, 9.0]], [8.0, 9.0]).tolist() == [2.0, 1.0]


def test_spd_solve_full():
    solution = spd_solve([[2.0, 1.0], [1.0, 2.0]], [3.0, 3.0])
    np.testing.assert_allclose(solution, [1.0, 1.0], atol=1e-12)


@pytest.mark.parametrize("matrix", [[[1.0, 2.0], [2.0, 1.0]], [[1.0, 1.0], [1.0, 1.0]]])
def test_spd_solve_rejects_indefinite(matrix):
    with pytest.raises(NotPositiveDefiniteError):
        spd_solve(matrix, [1.0, 1.0])


def test_spd_solve_shape_mismatch():
    with pytest.raises(NumericError):
        spd_solve([[1.0, 0.0], [0.0, 1.0]], [1.0, 2.0, 3.0])


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 100))
def test_spd_solve_residual(seed, n):
    rng = np.random.default_rng(seed)
    B = rng.normal(size=(n, n))
    A = B @ B.T + np.eye(n)
    b = rng.normal(size=n)
    x = spd_solve(A, b)
    assert np.max(np.abs(A @ x - b)) <= 1e-8 * (1 + np.max(np.abs(b)))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), c=st.floats(1e-3, 1e6))
def test_regularized_gram_always_factors(seed, c):
    rng = np.random.default_rng(seed)
    X = rng.integers(1, 4, size=(40, 9))
    # Повторы строк делают Ω вырожденной; (1/C)·I ее исправляет
    X[1] = X[0]
    system = kernel_matrix(RBF, X) + np.eye(40) / c
    spd_solve(system, np.ones(40))


def test_median_sigma():
    assert median_sigma([[0.0, 0.0], [3.0, 4.0]]) == 5.0


@pytest.mark.parametrize("X", [[[1.0, 1.0]], [[2.0, 2.0], [2.0, 2.0]]])
def test_median_sigma_fallback(X):
    assert median_sigma(X) == 1.0


def test_normalize_features():
    np.testing.assert_array_equal(normalize_features([[1, 10, 5.5]]), [[0.0, 1.0, 0.5]])
