"""Ядра и решение плотных SPD-систем.

Явная обратная матрица нигде не строится: система (1/C)·I + Ω решается
одной факторизацией Холецкого.
"""

import logging
from collections.abc import Sequence

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray
from scipy.spatial.distance import cdist, pdist, squareform

from ..models.schemas import FEATURE_COUNT, FEATURE_MAX, FEATURE_MIN, KernelSpec, Record
from .errors import NotPositiveDefiniteError, NumericError

logger = logging.getLogger(__name__)

PIVOT_RTOL = 1e-12
DEFAULT_SIGMA = 1.0

type Matrix = NDArray[np.float64]


def as_matrix(X: ArrayLike) -> Matrix:
    """Привести входы к 2-D float64 и проверить конечность."""
    matrix = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if matrix.ndim != 2:
        raise NumericError(f"expected a 2-D array of feature vectors, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise NumericError("non-finite value in feature vectors")
    return matrix


def feature_matrix(records: Sequence[Record], *, normalize: bool = False) -> Matrix:
    X = as_matrix([r.features for r in records]) if records else np.empty((0, FEATURE_COUNT))
    return normalize_features(X) if normalize else X


def normalize_features(X: ArrayLike) -> Matrix:
    """Min-max масштабирование по фиксированной области [1, 10] -> [0, 1]."""
    return (np.asarray(X, dtype=np.float64) - FEATURE_MIN) / (FEATURE_MAX - FEATURE_MIN)


def kernel_eval(spec: KernelSpec, x: ArrayLike, y: ArrayLike) -> float:
    xm, ym = as_matrix(x), as_matrix(y)
    if xm.shape[0] != 1 or ym.shape[0] != 1:
        raise NumericError(f"kernel_eval expects single vectors, got {xm.shape[0]} and {ym.shape[0]} rows")
    xv, yv = xm[0], ym[0]
    if xv.shape != yv.shape:
        raise NumericError(f"vector lengths differ: {xv.shape[0]} vs {yv.shape[0]}")
    if spec.kind == "linear":
        return float(np.dot(xv, yv))
    assert spec.sigma is not None
    diff = xv - yv
    return float(np.exp(-np.dot(diff, diff) / (2.0 * spec.sigma**2)))


def kernel_matrix(spec: KernelSpec, X: ArrayLike) -> Matrix:
    """Матрица Грама, симметричная побитово."""
    A = as_matrix(X)
    if A.shape[0] == 0:
        raise NumericError("kernel matrix of an empty set")
    if spec.kind == "linear":
        gram = A @ A.T
        # Верхний треугольник копируется вниз
        upper = np.triu(gram)
        return upper + np.triu(gram, 1).T
    assert spec.sigma is not None
    sq = squareform(pdist(A, "sqeuclidean"))
    return np.exp(-sq / (2.0 * spec.sigma**2))


def kernel_cross(spec: KernelSpec, X: ArrayLike, Y: ArrayLike) -> Matrix:
    """K[i, j] = k(X[i], Y[j])."""
    A, B = as_matrix(X), as_matrix(Y)
    if spec.kind == "linear":
        return A @ B.T
    assert spec.sigma is not None
    return np.exp(-cdist(A, B, "sqeuclidean") / (2.0 * spec.sigma**2))


def spd_solve(A: ArrayLike, b: ArrayLike) -> NDArray[np.float64]:
    """Решить A·x = b факторизацией Холецкого и двумя треугольными решениями."""
    M = np.asarray(A, dtype=np.float64)
    rhs = np.asarray(b, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] != rhs.shape[0]:
        raise NumericError(f"incompatible shapes {M.shape} and {rhs.shape}")
    if not (np.all(np.isfinite(M)) and np.all(np.isfinite(rhs))):
        raise NumericError("non-finite value in linear system")

    try:
        factor = scipy.linalg.cho_factor(M, lower=True, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise NotPositiveDefiniteError(f"matrix is not positive definite: {e}") from e

    pivots = np.diag(factor[0]) ** 2
    threshold = PIVOT_RTOL * float(np.max(np.diag(M)))
    if float(np.min(pivots)) <= threshold:
        raise NotPositiveDefiniteError(
            f"pivot {float(np.min(pivots)):.3e} below {threshold:.3e}"
        )
    return scipy.linalg.cho_solve(factor, rhs, check_finite=False)


def median_sigma(X: ArrayLike) -> float:
    """Медиана попарных евклидовых расстояний; 1.0, если она не положительна."""
    A = as_matrix(X)
    if A.shape[0] < 2:
        return DEFAULT_SIGMA
    sigma = float(np.median(pdist(A)))
    if not sigma > 0:
        logger.warning(f"Медиана расстояний равна {sigma}, используется sigma={DEFAULT_SIGMA}")
        return DEFAULT_SIGMA
    return sigma
