import itertools

import numpy as np
import pytest
from pydantic import ValidationError

from src.classifiers.svm import (
    SmoSolver,
    dual_objective,
    kkt_violation,
    primal_objective,
    svm_decision,
    svm_decisions,
    svm_predict,
    svm_train,
    weight_vector,
)
from src.core.errors import ConvergenceError, TrainingError
from src.core.numeric import feature_matrix, kernel_matrix
from src.models.schemas import KernelSpec, SmoSettings, SvmModel

from .conftest import make_records

LINEAR = KernelSpec(kind="linear")
TIGHT = SmoSettings(tolerance=1e-6, max_passes=50)


def brute_force_dual(X: np.ndarray, t: np.ndarray, c: float) -> float:
    """Максимум двойственной задачи перебором активных множеств (n <= 6)."""
    n = len(t)
    Q = np.outer(t, t) * kernel_matrix(LINEAR, X)
    best = -np.inf
    for state in itertools.product((0, 1, 2), repeat=n):
        alphas = np.array([c if s == 1 else 0.0 for s in state])
        free = [i for i, s in enumerate(state) if s == 2]
        fixed = [i for i, s in enumerate(state) if s != 2]
        if free:
            m = len(free)
            system = np.zeros((m + 1, m + 1))
            system[:m, :m] = Q[np.ix_(free, free)]
            system[:m, m] = t[free]
            system[m, :m] = t[free]
            rhs = np.empty(m + 1)
            rhs[:m] = 1.0 - Q[np.ix_(free, fixed)] @ alphas[fixed]
            rhs[m] = -t[fixed] @ alphas[fixed]
            solution = np.linalg.lstsq(system, rhs, rcond=None)[0]
            alphas[free] = solution[:m]
        if np.any(alphas < -1e-9) or np.any(alphas > c + 1e-9) or abs(alphas @ t) > 1e-9:
            continue
        best = max(best, alphas.sum() - 0.5 * alphas @ Q @ alphas)
    return float(best)


def test_symmetric_pair():
    m = svm_train([[-1.0], [1.0]], [2, 4], c=10.0, settings=SmoSettings())
    assert m.alphas == pytest.approx([0.5, 0.5], abs=1e-6)
    assert m.bias == pytest.approx(0.0, abs=1e-6)
    assert weight_vector(m).tolist() == pytest.approx([1.0], abs=1e-6)
    assert svm_decisions(m, [[-1.0], [0.0], [3.0]]).tolist() == pytest.approx([-1.0, 0.0, 3.0], abs=1e-6)


def test_shifted_pair():
    m = svm_train([[0.0], [2.0]], [2, 4], c=10.0, settings=SmoSettings())
    assert m.alphas == pytest.approx([0.5, 0.5], abs=1e-6)
    assert m.bias == pytest.approx(-1.0, abs=1e-6)
    assert svm_decision(m, [1.0]) == pytest.approx(0.0, abs=1e-6)


def test_swapped_labels_negate_decisions():
    X = [[-1.0], [1.0]]
    a = svm_train(X, [2, 4], c=10.0, settings=SmoSettings())
    b = svm_train(X, [4, 2], c=10.0, settings=SmoSettings())
    probe = [[-2.0], [0.5], [4.0]]
    np.testing.assert_allclose(svm_decisions(b, probe), -svm_decisions(a, probe), atol=1e-6)


def test_zero_decision_predicts_malignant():
    m = svm_train([[-1.0], [1.0]], [2, 4], c=10.0, settings=SmoSettings())
    assert svm_predict(m, [0.0]) == 4
    assert svm_predict(m, [-0.5]) == 2


def test_objectives_of_symmetric_pair():
    X, labels = [[-1.0], [1.0]], [2, 4]
    m = svm_train(X, labels, c=10.0, settings=SmoSettings())
    assert dual_objective(m) == pytest.approx(0.5, abs=1e-6)
    assert m.dual_objective == pytest.approx(0.5, abs=1e-6)
    assert primal_objective(m, X, labels) == pytest.approx(0.5, abs=1e-6)


def test_model_without_support_vectors():
    m = SvmModel(alphas=[], bias=0.3, support_inputs=[], support_targets=[], c=2.0)
    assert svm_decisions(m, [[1.0], [5.0]]).tolist() == [0.3, 0.3]
    assert primal_objective(m, [[1.0], [2.0], [3.0]], [2, 4, 4]) == pytest.approx(2.0 * 2.7)


def test_single_class_rejected():
    with pytest.raises(TrainingError):
        svm_train([[1.0], [2.0]], [4, 4], c=1.0, settings=SmoSettings())


@pytest.mark.parametrize(
    "fields",
    [
        {"alphas": [1.5], "support_targets": [1]},
        {"alphas": [0.5], "support_targets": [2]},
        {"alphas": [0.5, 0.4], "support_targets": [1, -1]},
    ],
)
def test_model_rejects_infeasible_duals(fields):
    inputs = [[0.0]] * len(fields["alphas"])
    with pytest.raises(ValidationError):
        SvmModel(bias=0.0, support_inputs=inputs, c=1.0, **fields)


def test_support_vectors_only():
    rs = make_records(30, 20, seed=4)
    X = feature_matrix(rs.records)
    m = svm_train(X, [r.class_label for r in rs.records], c=1.0, settings=SmoSettings())
    assert 0 < len(m.alphas) < len(rs)
    assert all(0 < a <= 1.0 for a in m.alphas)


def test_kkt_conditions_hold_on_separable_set():
    rs = make_records(30, 20, seed=5)
    X = feature_matrix(rs.records)
    labels = [r.class_label for r in rs.records]
    settings = SmoSettings(tolerance=1e-3)
    m = svm_train(X, labels, c=1.0, settings=settings)
    assert m.kkt_violation <= settings.tolerance
    assert [4 if d >= 0 else 2 for d in svm_decisions(m, X)] == labels


@pytest.mark.parametrize("seed", range(6))
def test_matches_brute_force_dual(seed):
    rng = np.random.default_rng(seed)
    n = 4 + seed % 3
    X = rng.normal(size=(n, 9))
    labels = [2, 4] + list(rng.choice([2, 4], size=n - 2))
    t = np.array([1.0 if y == 4 else -1.0 for y in labels])
    m = svm_train(X, labels, c=1.0, settings=TIGHT)
    optimum = brute_force_dual(X, t, 1.0)
    assert m.dual_objective == pytest.approx(optimum, abs=1e-3 * max(1.0, abs(optimum)))


@pytest.mark.parametrize("seed", range(5))
def test_weak_duality(seed):
    rng = np.random.default_rng(100 + seed)
    X = rng.normal(size=(15, 9))
    labels = [2, 4] + list(rng.choice([2, 4], size=13))
    m = svm_train(X, labels, c=0.5, settings=SmoSettings())
    assert primal_objective(m, X, labels) >= m.dual_objective - 1e-6


def test_duality_gap_closes_on_separable_set():
    rs = make_records(15, 10, seed=6)
    X = feature_matrix(rs.records, normalize=True)
    labels = [r.class_label for r in rs.records]
    m = svm_train(X, labels, c=1.0, settings=TIGHT)
    primal = primal_objective(m, X, labels)
    assert primal - m.dual_objective <= 1e-3 * max(1.0, abs(primal))


def test_same_seed_same_model():
    rs = make_records(20, 15, seed=7)
    X = feature_matrix(rs.records)
    labels = [r.class_label for r in rs.records]
    assert svm_train(X, labels, 1.0, SmoSettings(seed=3)) == svm_train(X, labels, 1.0, SmoSettings(seed=3))


def test_iteration_cap():
    rs = make_records(20, 15, seed=8)
    X = feature_matrix(rs.records)
    labels = [r.class_label for r in rs.records]
    with pytest.raises(ConvergenceError) as exc:
        svm_train(X, labels, 1.0, SmoSettings(max_iterations=1, max_passes=5))
    assert exc.value.passes == 1


def test_kkt_violation_measure():
    alphas = np.array([0.0, 1.0, 0.5])
    targets = np.array([1.0, -1.0, 1.0])
    decisions = np.array([0.5, 2.0, 1.2])
    # margins 0.5, -2.0, 1.2: нарушения 0.5, 0.0, 0.2
    assert kkt_violation(alphas, targets, decisions, c=1.0) == pytest.approx(0.5)


def test_error_cache_tracks_gram():
    gram = np.array([[1.0, -1.0], [-1.0, 1.0]])
    solver = SmoSolver(gram, np.array([-1.0, 1.0]), 10.0, SmoSettings())
    solver.solve()
    at = solver.alphas * solver.targets
    np.testing.assert_allclose(solver.u, gram @ at, atol=1e-12)


def test_kkt_on_wbcd(wbcd):
    X = feature_matrix(wbcd.records)
    labels = [r.class_label for r in wbcd.records]
    settings = SmoSettings()
    m = svm_train(X, labels, c=1.0, settings=settings)
    assert m.kkt_violation <= settings.tolerance


def overlapping_wbcd_like(n_benign: int, n_malignant: int, seed: int) -> tuple[np.ndarray, list[int]]:
    """Пересекающиеся классы с целыми признаками 1..10, без масштабирования."""
    rng = np.random.default_rng(seed)
    benign = rng.normal(2.5, 1.8, size=(n_benign, 9))
    malignant = rng.normal(6.5, 2.5, size=(n_malignant, 9))
    X = np.clip(np.rint(np.vstack([benign, malignant])), 1, 10)
    return X, [2] * n_benign + [4] * n_malignant


@pytest.mark.parametrize("seed", range(3))
def test_kkt_conditions_hold_on_overlapping_set(seed):
    X, labels = overlapping_wbcd_like(310, 170, seed)
    t = np.array([1.0 if y == 4 else -1.0 for y in labels])
    settings = SmoSettings(seed=seed)
    tol = settings.tolerance
    solver = SmoSolver(kernel_matrix(LINEAR, X), t, 1.0, settings)
    solver.solve()

    a = solver.alphas
    margins = t * (solver.u + solver.bias)
    at_zero, at_c = a == 0, a == 1.0
    free = ~(at_zero | at_c)
    assert np.all(margins[at_zero] >= 1 - tol)
    assert np.all(np.abs(margins[free] - 1) <= tol)
    assert np.all(margins[at_c] <= 1 + tol)
    assert abs(a @ t) <= 1e-9
    assert np.all((a >= 0) & (a <= 1.0))


def test_trained_model_reports_kkt_within_tolerance_on_overlapping_set():
    X, labels = overlapping_wbcd_like(310, 170, seed=11)
    settings = SmoSettings()
    m = svm_train(X, labels, c=1.0, settings=settings)
    assert m.kkt_violation <= settings.tolerance
    assert m.passes >= settings.max_passes


def test_quiet_passes_require_no_violators():
    X, labels = overlapping_wbcd_like(60, 40, seed=12)
    t = np.array([1.0 if y == 4 else -1.0 for y in labels])
    solver = SmoSolver(kernel_matrix(LINEAR, X), t, 1.0, SmoSettings(max_passes=3))
    solver.solve()
    assert not any(solver.examine(i)[0] for i in range(solver.n))
    assert solver.violation() <= solver.settings.tolerance
