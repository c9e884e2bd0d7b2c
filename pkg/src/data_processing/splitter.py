"""Стратифицированное разбиение на train/test/validation и фолды."""

import math

import numpy as np

from ..core.errors import ConfigError
from ..models.schemas import BENIGN, MALIGNANT, FoldPlan, RecordSet, SplitPlan

# Защита floor от ошибок округления вида 0.7 * 10 = 6.999...
_FLOOR_EPS = 1e-9


def _class_members(rs: RecordSet) -> dict[int, list[int]]:
    members: dict[int, list[int]] = {BENIGN: [], MALIGNANT: []}
    for r in rs.records:
        members[r.class_label].append(r.line)
    return members


def _shuffled(lines: list[int], rng: np.random.Generator) -> list[int]:
    order = rng.permutation(len(lines))
    return [lines[i] for i in order]


def split(rs: RecordSet, ratios: tuple[float, float, float], seed: int) -> SplitPlan:
    """Разбить набор по классам: floor для train и test, остаток в validation."""
    if len(ratios) != 3 or any(r < 0 for r in ratios):
        raise ConfigError(f"split ratios must be three non-negative numbers, got {ratios}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ConfigError(f"split ratios must sum to 1, got {sum(ratios)}")

    rng = np.random.default_rng(seed)
    train: list[int] = []
    test: list[int] = []
    val: list[int] = []
    members = _class_members(rs)

    for label in (BENIGN, MALIGNANT):
        lines = _shuffled(members[label], rng)
        n = len(lines)
        n_train = math.floor(n * ratios[0] + _FLOOR_EPS)
        n_test = min(math.floor(n * ratios[1] + _FLOOR_EPS), n - n_train)
        train.extend(lines[:n_train])
        test.extend(lines[n_train : n_train + n_test])
        val.extend(lines[n_train + n_test :])

    return SplitPlan(
        train_ids=tuple(sorted(train)),
        test_ids=tuple(sorted(test)),
        val_ids=tuple(sorted(val)),
        ratios=ratios,
        seed=seed,
    )


def make_folds(rs: RecordSet, k: int, seed: int) -> FoldPlan:
    """Стратифицированные фолды.

    Перемешанные записи каждого класса выкладываются подряд и раздаются по кругу,
    так что размеры фолдов отличаются не более чем на 1.
    """
    if k < 3:
        raise ConfigError(f"k must be at least 3 (train/test/validation roles), got {k}")
    if k > len(rs):
        raise ConfigError(f"k={k} exceeds record count {len(rs)}")

    rng = np.random.default_rng(seed)
    members = _class_members(rs)
    ordered = [line for label in (BENIGN, MALIGNANT) for line in _shuffled(members[label], rng)]
    assignments = {line: position % k for position, line in enumerate(ordered)}
    return FoldPlan(k=k, seed=seed, fold_assignments=dict(sorted(assignments.items())))


def cv_roles(k: int, iteration: int) -> tuple[int, tuple[int, int], tuple[int, ...]]:
    """Роли фолдов на итерации: (validation, test-пара, train)."""
    validation = iteration % k
    test = ((iteration + 1) % k, (iteration + 2) % k)
    train = tuple(f for f in range(k) if f != validation and f not in test)
    return validation, test, train
