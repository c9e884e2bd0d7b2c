"""Линейный SVM, обученный упрощенным SMO на двойственной задаче.

    max  Σαᵢ − ½ Σᵢⱼ αᵢαⱼtᵢtⱼ k(xᵢ, xⱼ)
    при  Σαᵢtᵢ = 0,  0 ≤ αᵢ ≤ C

Второй индекс пары сначала выбирается случайно генератором с заданным seed;
если пара не нарушает ККТ или шаг не удался, берется крайняя точка, затем
остальные по очереди. Кэш u = K·(α∘t) обновляется после каждого шага по двум
столбцам матрицы Грама.
"""

import logging
from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ConvergenceError, TrainingError
from ..core.numeric import as_matrix, kernel_cross, kernel_matrix
from ..models.schemas import BENIGN, MALIGNANT, KernelSpec, SmoSettings, SvmModel
from .elm import encode_labels, sign_label

logger = logging.getLogger(__name__)

# Шаг αⱼ меньше STEP_EPS·(αⱼ + αⱼ' + STEP_EPS) не засчитывается
STEP_EPS = 1e-12
# Граница, ниже которой α считается нулем (или C)
BOUND_EPS = 1e-8
# Порог кривизны, ниже которого целевая функция пары считается линейной
ETA_EPS = 1e-12

LINEAR = KernelSpec(kind="linear")


def kkt_violation(
    alphas: NDArray[np.float64], targets: NDArray[np.float64], decisions: NDArray[np.float64], c: float
) -> float:
    """Максимальное нарушение условий ККТ по всем точкам."""
    margins = targets * decisions
    at_zero = alphas <= BOUND_EPS * c
    at_c = alphas >= c * (1 - BOUND_EPS)
    free = ~(at_zero | at_c)
    violation = np.zeros_like(margins)
    violation[at_zero] = np.maximum(0.0, 1.0 - margins[at_zero])
    violation[at_c] = np.maximum(0.0, margins[at_c] - 1.0)
    violation[free] = np.abs(margins[free] - 1.0)
    return float(violation.max()) if violation.size else 0.0


def _dual_value(alphas: NDArray[np.float64], targets: NDArray[np.float64], gram: NDArray[np.float64]) -> float:
    at = alphas * targets
    return float(alphas.sum() - 0.5 * at @ gram @ at)


class SmoSolver:
    """Упрощенный SMO над предвычисленной матрицей Грама.

    Через Fᵢ = tᵢ − uᵢ условия ККТ задают границы смещения: b ≥ Fᵢ − tol для
    точек, у которых tᵢαᵢ может расти, и b ≤ Fᵢ + tol для точек, у которых
    tᵢαᵢ может убывать. Точка нарушает ККТ, если ее граница несовместима с
    противоположной крайней; проход тихий, когда нарушителей нет.
    """

    def __init__(self, gram: NDArray[np.float64], targets: NDArray[np.float64], c: float, settings: SmoSettings) -> None:
        self.gram = gram
        self.targets = targets
        self.c = c
        self.settings = settings
        self.n = targets.shape[0]
        self.alphas = np.zeros(self.n)
        self.bias = 0.0
        # u = K·(α∘t), без смещения
        self.u = np.zeros(self.n)
        self.rng = np.random.default_rng(settings.seed)
        self.passes = 0

    def _scores(self) -> NDArray[np.float64]:
        return self.targets - self.u

    def _movable(self) -> tuple[NDArray[np.bool_], NDArray[np.bool_]]:
        """Маски точек, у которых tᵢαᵢ может расти и может убывать."""
        t, a, C = self.targets, self.alphas, self.c
        up = ((t > 0) & (a < C)) | ((t < 0) & (a > 0))
        down = ((t > 0) & (a > 0)) | ((t < 0) & (a < C))
        return up, down

    def _extremes(self) -> tuple[int, int]:
        """Индексы max F по растущим и min F по убывающим точкам."""
        scores = self._scores()
        up, down = self._movable()
        return int(np.where(up, scores, -np.inf).argmax()), int(np.where(down, scores, np.inf).argmin())

    def _direction(self, i: int) -> int:
        """+1, если tᵢαᵢ нужно увеличить, −1, если уменьшить, 0 без нарушения."""
        tol = self.settings.tolerance
        scores = self._scores()
        up, down = self._movable()
        i_high, i_low = self._extremes()
        if up[i] and down[i_low] and scores[i] > scores[i_low] + tol:
            return 1
        if down[i] and up[i_high] and scores[i] < scores[i_high] - tol:
            return -1
        return 0

    def _partners(self, i: int, direction: int) -> NDArray[np.bool_]:
        """Маска точек, образующих с i нарушающую пару."""
        tol = self.settings.tolerance
        scores = self._scores()
        up, down = self._movable()
        if direction > 0:
            return down & (scores < scores[i] - tol)
        return up & (scores > scores[i] + tol)

    def _random_partner(self, i: int) -> int:
        j = int(self.rng.integers(self.n - 1))
        return j + 1 if j >= i else j

    def _step(self, i: int, j: int) -> bool:
        t, K, C = self.targets, self.gram, self.c
        a_i, a_j = self.alphas[i], self.alphas[j]
        if t[i] != t[j]:
            low, high = max(0.0, a_j - a_i), min(C, C + a_j - a_i)
        else:
            low, high = max(0.0, a_i + a_j - C), min(C, a_i + a_j)
        if high <= low:
            return False

        # eᵢ − eⱼ не зависит от смещения
        diff = (self.u[i] - t[i]) - (self.u[j] - t[j])
        eta = 2.0 * K[i, j] - K[i, i] - K[j, j]
        if eta < -ETA_EPS:
            new_j = float(np.clip(a_j - t[j] * diff / eta, low, high))
        else:
            # вдоль линейной целевой функции идем к выгодной границе
            new_j = high if t[j] * diff > 0 else low
        if abs(new_j - a_j) < STEP_EPS * (a_j + new_j + STEP_EPS):
            return False
        new_i = a_i + t[i] * t[j] * (a_j - new_j)
        # ошибки округления у границ прижимаются к 0 и C
        if new_i < STEP_EPS * C:
            new_i = 0.0
        elif new_i > C * (1 - STEP_EPS):
            new_i = C

        d_i, d_j = t[i] * (new_i - a_i), t[j] * (new_j - a_j)
        self.alphas[i], self.alphas[j] = new_i, new_j
        self.u += d_i * K[:, i] + d_j * K[:, j]
        return True

    def examine(self, i: int) -> tuple[bool, bool]:
        """Обработать точку i; вернуть (нарушала ли ККТ, изменились ли α)."""
        direction = self._direction(i)
        if direction == 0:
            return False, False

        partners = self._partners(i, direction)
        j = self._random_partner(i)
        if partners[j] and self._step(i, j):
            return True, True

        i_high, i_low = self._extremes()
        if self._step(i, i_low if direction > 0 else i_high):
            return True, True

        # сначала несвязанные точки, затем все, с произвольного начала
        order = np.roll(np.arange(self.n), -int(self.rng.integers(self.n)))
        order = order[partners[order]]
        bound = (self.alphas[order] <= 0) | (self.alphas[order] >= self.c)
        for j in (*order[~bound], *order[bound]):
            if self._step(i, int(j)):
                return True, True
        return True, False

    def solve(self) -> None:
        quiet = 0
        while quiet < self.settings.max_passes:
            if self.passes >= self.settings.max_iterations:
                raise ConvergenceError(self.passes, self._final_violation())
            violators = changed = 0
            for i in range(self.n):
                violated, moved = self.examine(i)
                violators += violated
                changed += moved
            self.passes += 1
            if violators and not changed:
                raise ConvergenceError(self.passes, self._final_violation())
            quiet = quiet + 1 if violators == 0 else 0
        self._finalize_bias()

    def _finalize_bias(self) -> None:
        """Смещение как среднее tᵢ − uᵢ по несвязанным опорным векторам."""
        free = (self.alphas > BOUND_EPS * self.c) & (self.alphas < self.c * (1 - BOUND_EPS))
        if np.any(free):
            self.bias = float(np.mean(self.targets[free] - self.u[free]))
            return
        i_high, i_low = self._extremes()
        scores = self._scores()
        self.bias = float((scores[i_high] + scores[i_low]) / 2.0)

    def _final_violation(self) -> float:
        self._finalize_bias()
        return self.violation()

    def violation(self) -> float:
        return kkt_violation(self.alphas, self.targets, self.u + self.bias, self.c)

    def dual_objective(self) -> float:
        return _dual_value(self.alphas, self.targets, self.gram)


def svm_train(
    X: ArrayLike,
    labels: Sequence[int],
    c: float,
    settings: SmoSettings,
    kernel: KernelSpec = LINEAR,
) -> SvmModel:
    inputs = as_matrix(X)
    if inputs.shape[0] != len(labels):
        raise TrainingError(f"inputs and labels lengths differ: {inputs.shape[0]} vs {len(labels)}")
    if not c > 0:
        raise TrainingError(f"c must be positive, got {c}")
    if not {BENIGN, MALIGNANT} <= set(labels):
        raise TrainingError("SVM training needs both classes present")

    targets = encode_labels(labels, {BENIGN: -1, MALIGNANT: 1})
    solver = SmoSolver(kernel_matrix(kernel, inputs), targets, c, settings)
    solver.solve()

    support = solver.alphas > 0
    violation = solver.violation()
    logger.info(
        f"SMO: проходов {solver.passes}, опорных векторов {int(support.sum())}/{solver.n}, "
        f"нарушение ККТ {violation:.2e}"
    )
    return SvmModel(
        alphas=solver.alphas[support].tolist(),
        bias=solver.bias,
        support_inputs=inputs[support].tolist(),
        support_targets=[int(t) for t in targets[support]],
        c=c,
        kernel=kernel,
        tolerance=settings.tolerance,
        seed=settings.seed,
        passes=solver.passes,
        dual_objective=solver.dual_objective(),
        kkt_violation=violation,
    )


def svm_decisions(m: SvmModel, X: ArrayLike) -> NDArray[np.float64]:
    inputs = as_matrix(X)
    if not m.alphas:
        return np.full(inputs.shape[0], m.bias)
    coef = np.asarray(m.alphas) * np.asarray(m.support_targets, dtype=np.float64)
    return kernel_cross(m.kernel, inputs, m.support_inputs) @ coef + m.bias


def svm_decision(m: SvmModel, x: ArrayLike) -> float:
    return float(svm_decisions(m, x)[0])


def svm_predict(m: SvmModel, x: ArrayLike) -> int:
    return sign_label(svm_decision(m, x))


def dual_objective(m: SvmModel) -> float:
    if not m.alphas:
        return 0.0
    gram = kernel_matrix(m.kernel, m.support_inputs)
    return _dual_value(np.asarray(m.alphas), np.asarray(m.support_targets, dtype=np.float64), gram)


def weight_vector(m: SvmModel) -> NDArray[np.float64]:
    """w = Σ αᵢtᵢxᵢ; определен только для линейного ядра."""
    if m.kernel.kind != "linear":
        raise TrainingError("weight vector is defined for the linear kernel only")
    if not m.alphas:
        return np.zeros(0)
    coef = np.asarray(m.alphas) * np.asarray(m.support_targets, dtype=np.float64)
    return coef @ np.asarray(m.support_inputs)


def primal_objective(m: SvmModel, X: ArrayLike, labels: Sequence[int]) -> float:
    """½‖w‖² + C·Σ max(0, 1 − tᵢ f(xᵢ)); ‖w‖² через ядро опорных векторов."""
    targets = encode_labels(labels, {BENIGN: -1, MALIGNANT: 1})
    if m.alphas:
        coef = np.asarray(m.alphas) * np.asarray(m.support_targets, dtype=np.float64)
        norm_sq = float(coef @ kernel_matrix(m.kernel, m.support_inputs) @ coef)
    else:
        norm_sq = 0.0
    hinge = np.maximum(0.0, 1.0 - targets * svm_decisions(m, X))
    return 0.5 * norm_sq + m.c * float(hinge.sum())
