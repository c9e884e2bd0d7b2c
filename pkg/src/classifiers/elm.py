"""Ядерная машина экстремального обучения (ELM).

Скрытый слой заменен матрицей ядра Ω = HHᵀ, выходные веса находятся из
регуляризованной системы ((1/C)·I + Ω)·β = T. Решение f(x) = Σ βᵢ·k(x, xᵢ).
Линейный SVM (модуль svm) соответствует частному случаю той же формы
решения с разреженными коэффициентами αᵢtᵢ вместо β.
"""

import logging
from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import TrainingError
from ..core.numeric import as_matrix, kernel_cross, kernel_matrix, spd_solve
from ..models.schemas import BENIGN, MALIGNANT, ElmModel, KernelSpec

logger = logging.getLogger(__name__)


def encode_labels(labels: Sequence[int], label_map: dict[int, int]) -> NDArray[np.float64]:
    try:
        return np.array([label_map[label] for label in labels], dtype=np.float64)
    except KeyError as e:
        raise TrainingError(f"label {e.args[0]} is not 2 or 4") from e


def sign_label(decision: float) -> int:
    """0 относится к злокачественному классу."""
    return MALIGNANT if decision >= 0 else BENIGN


def elm_train(X: ArrayLike, labels: Sequence[int], kernel: KernelSpec, c: float) -> ElmModel:
    inputs = as_matrix(X)
    n = inputs.shape[0]
    if n == 0 or n != len(labels):
        raise TrainingError(f"need matching non-empty inputs and labels, got {n} and {len(labels)}")
    if not c > 0:
        raise TrainingError(f"c must be positive, got {c}")

    label_map = {BENIGN: -1, MALIGNANT: 1}
    targets = encode_labels(labels, label_map)
    system = kernel_matrix(kernel, inputs)
    system[np.diag_indices(n)] += 1.0 / c
    beta = spd_solve(system, targets)

    logger.debug(f"ELM обучена: n={n}, c={c}, kernel={kernel.kind}, sigma={kernel.sigma}")
    return ElmModel(
        training_inputs=inputs.tolist(),
        beta=beta.tolist(),
        kernel=kernel,
        c=c,
        label_map=label_map,
    )


def elm_decisions(m: ElmModel, X: ArrayLike) -> NDArray[np.float64]:
    return kernel_cross(m.kernel, X, m.training_inputs) @ np.asarray(m.beta)


def elm_decision(m: ElmModel, x: ArrayLike) -> float:
    return float(elm_decisions(m, x)[0])


def elm_predict(m: ElmModel, x: ArrayLike) -> int:
    return sign_label(elm_decision(m, x))


def elm_predict_many(m: ElmModel, X: ArrayLike) -> list[int]:
    return [sign_label(float(d)) for d in elm_decisions(m, X)]
