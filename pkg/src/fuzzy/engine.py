"""Вывод Мамдани: min/max, отсечение выходных множеств, центроид."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..core.errors import EmptyRuleBaseError, NoRuleFiredError
from ..models.schemas import BENIGN, FEATURE_NAMES, MALIGNANT, Record
from .membership import lookup
from .rules import Clause, Conjunction, Disjunction, Expr, RuleBase

SELECTOR_MIN = 1.0
SELECTOR_MAX = 5.0
GRID_POINTS = 401
SELECTOR_GRID: NDArray[np.float64] = np.linspace(SELECTOR_MIN, SELECTOR_MAX, GRID_POINTS)
DECISION_THRESHOLD = 3.0
# Центроид, попавший в 3.0 с точностью до округления, считается ничьей -> malignant
TIE_EPS = 1e-9


@dataclass(frozen=True)
class ActivationProfile:
    """Агрегированные (max) отсеченные выходные множества на сетке селектора."""

    record_id: int
    levels: dict[int, float]
    curves: dict[int, NDArray[np.float64]]

    @property
    def aggregated(self) -> NDArray[np.float64]:
        return np.maximum(self.curves[BENIGN], self.curves[MALIGNANT])


def _triangle(a: float, b: float, c: float) -> NDArray[np.float64]:
    return np.interp(SELECTOR_GRID, (a, b, c), (0.0, 1.0, 0.0), left=0.0, right=0.0)


def degree(expr: Expr, values: dict[str, float]) -> float:
    """Степень истинности условия: AND = min, OR = max."""
    match expr:
        case Clause(feature=feature, term=term):
            return float(lookup(feature, term)(values[feature]))
        case Conjunction(operands=operands):
            return min(degree(op, values) for op in operands)
        case Disjunction(operands=operands):
            return max(degree(op, values) for op in operands)


def infer(rb: RuleBase, r: Record) -> ActivationProfile:
    if not rb.rules:
        raise EmptyRuleBaseError("rule base is empty")
    if not r.is_complete:
        raise ValueError(f"record {r.id} (line {r.line}) has missing values")

    values = {name: float(v) for name, v in zip(FEATURE_NAMES, r.features, strict=True)}  # pyright: ignore[reportArgumentType]
    levels = {BENIGN: 0.0, MALIGNANT: 0.0}
    for rule in rb.rules:
        activation = rule.weight * degree(rule.antecedent, values)
        levels[rule.label] = max(levels[rule.label], activation)

    # Отсечение по min и агрегация по max сводятся к отсечению на максимальном уровне
    curves = {
        label: np.minimum(_triangle(*rb.output_sets[label]), level)
        for label, level in levels.items()
    }
    return ActivationProfile(record_id=r.id, levels=levels, curves=curves)


def defuzzify(ap: ActivationProfile) -> tuple[float, int]:
    """Центроид на сетке из 401 точки; метка 2 при значении < 3, иначе 4."""
    aggregated = ap.aggregated
    mass = float(aggregated.sum())
    if mass <= 0.0:
        raise NoRuleFiredError([ap.record_id])
    crisp = float(np.dot(SELECTOR_GRID, aggregated) / mass)
    label = BENIGN if crisp < DECISION_THRESHOLD - TIE_EPS else MALIGNANT
    return crisp, label
