"""Кусочно-линейные функции принадлежности признаков.

Признаки с двумя термами (Low, High): Low = 1 на [1, 3], линейно до 0 в 7;
High дополняет Low до 1. Признаки с тремя термами (ClumpThickness,
NormalNucleoli): Low = 1 на [1, 2], до 0 в 5; Medium = треугольник (2, 5, 8);
High растет от 0 в 5 до 1 в 8. Обе семьи образуют разбиение единицы.
"""

from enum import StrEnum
from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict

from ..core.errors import UnknownFeatureError, UnknownTermError
from ..models.schemas import FEATURE_MAX, FEATURE_MIN, FEATURE_NAMES


class Term(StrEnum):
    LOW = "Low"
    MEDIUM = "Medium"
    HIGH = "High"


class MembershipSpec(BaseModel):
    """Функция принадлежности, заданная точками излома на [1, 10]."""

    model_config = ConfigDict(frozen=True)

    feature: str
    term: Term
    breakpoints: tuple[float, ...]
    degrees: tuple[float, ...]

    def __call__(self, x: ArrayLike) -> NDArray[np.float64]:
        return np.interp(x, self.breakpoints, self.degrees)


_TWO_TERM: Final = {
    Term.LOW: ((1.0, 3.0, 7.0, 10.0), (1.0, 1.0, 0.0, 0.0)),
    Term.HIGH: ((1.0, 3.0, 7.0, 10.0), (0.0, 0.0, 1.0, 1.0)),
}
_THREE_TERM: Final = {
    Term.LOW: ((1.0, 2.0, 5.0, 10.0), (1.0, 1.0, 0.0, 0.0)),
    Term.MEDIUM: ((1.0, 2.0, 5.0, 8.0, 10.0), (0.0, 0.0, 1.0, 0.0, 0.0)),
    Term.HIGH: ((1.0, 5.0, 8.0, 10.0), (0.0, 0.0, 1.0, 1.0)),
}
THREE_TERM_FEATURES: Final = frozenset({"ClumpThickness", "NormalNucleoli"})


def _build_table() -> dict[str, dict[Term, MembershipSpec]]:
    table: dict[str, dict[Term, MembershipSpec]] = {}
    for feature in FEATURE_NAMES:
        shapes = _THREE_TERM if feature in THREE_TERM_FEATURES else _TWO_TERM
        table[feature] = {
            term: MembershipSpec(feature=feature, term=term, breakpoints=xs, degrees=ys)
            for term, (xs, ys) in shapes.items()
        }
    return table


MEMBERSHIP_TABLE: Final = _build_table()


def terms_for(feature: str) -> tuple[Term, ...]:
    if feature not in MEMBERSHIP_TABLE:
        raise UnknownFeatureError(feature)
    return tuple(MEMBERSHIP_TABLE[feature])


def lookup(feature: str, term: str) -> MembershipSpec:
    """Найти функцию принадлежности; ошибка, если терм не определен для признака."""
    if feature not in MEMBERSHIP_TABLE:
        raise UnknownFeatureError(feature)
    try:
        return MEMBERSHIP_TABLE[feature][Term(term)]
    except (ValueError, KeyError):
        raise UnknownTermError(feature, term)


def membership(feature: str, term: str, x: float) -> float:
    if not FEATURE_MIN <= x <= FEATURE_MAX:
        raise ValueError(f"x={x} outside [{FEATURE_MIN}, {FEATURE_MAX}]")
    return float(lookup(feature, term)(x))
