"""Критерии оценки: RMSE, корреляция и R², MAPE, матрица ошибок и производные доли.

Положительный класс - злокачественный (4). Доли с нулевым знаменателем
возвращаются как None, а не 0 или 1.
"""

import math
from collections.abc import Sequence

from ..core.errors import MetricError, UndefinedCorrelationError
from ..models.schemas import BENIGN, MALIGNANT, ConfusionMatrix, MetricReport, RateReport

type Numbers = Sequence[float] | Sequence[int]


def _check_pair(actual: Numbers, predicted: Numbers) -> int:
    n = len(actual)
    if n != len(predicted):
        raise MetricError(f"length mismatch: {n} actual vs {len(predicted)} predicted")
    if n == 0:
        raise MetricError("metrics of an empty sequence are undefined")
    return n


def rmse(actual: Numbers, predicted: Numbers) -> float:
    n = _check_pair(actual, predicted)
    return math.sqrt(sum((a - p) ** 2 for a, p in zip(actual, predicted, strict=True)) / n)


def correlation_and_r2(actual: Numbers, predicted: Numbers) -> tuple[float, float]:
    """Коэффициент корреляции Пирсона r и его квадрат."""
    n = _check_pair(actual, predicted)
    mean_a = sum(actual) / n
    mean_p = sum(predicted) / n
    dev_a = [a - mean_a for a in actual]
    dev_p = [p - mean_p for p in predicted]
    var_a = sum(d * d for d in dev_a)
    var_p = sum(d * d for d in dev_p)
    if var_a == 0 or var_p == 0:
        raise UndefinedCorrelationError("correlation undefined: zero variance input")
    r = sum(da * dp for da, dp in zip(dev_a, dev_p, strict=True)) / math.sqrt(var_a * var_p)
    # Ошибки округления не должны выводить r за [-1, 1]
    r = max(-1.0, min(1.0, r))
    return r, r * r


def mape(actual: Numbers, predicted: Numbers) -> float:
    """Средняя абсолютная ошибка в процентах."""
    n = _check_pair(actual, predicted)
    if any(a == 0 for a in actual):
        raise MetricError("MAPE undefined: actual value is zero")
    return (100.0 / n) * sum(abs((a - p) / a) for a, p in zip(actual, predicted, strict=True))


def confusion(actual: Sequence[int], predicted: Sequence[int]) -> ConfusionMatrix:
    if len(actual) != len(predicted):
        raise MetricError(f"length mismatch: {len(actual)} actual vs {len(predicted)} predicted")
    counts = {"tp": 0, "fp": 0, "fn": 0, "tn": 0}
    for a, p in zip(actual, predicted, strict=True):
        if a not in {BENIGN, MALIGNANT} or p not in {BENIGN, MALIGNANT}:
            raise MetricError(f"labels must be 2 or 4, got actual={a}, predicted={p}")
        match a == MALIGNANT, p == MALIGNANT:
            case True, True:
                counts["tp"] += 1
            case False, True:
                counts["fp"] += 1
            case True, False:
                counts["fn"] += 1
            case False, False:
                counts["tn"] += 1
    return ConfusionMatrix(**counts)


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


def derive(cm: ConfusionMatrix) -> RateReport:
    sensitivity = _ratio(cm.tp, cm.tp + cm.fn)
    specificity = _ratio(cm.tn, cm.tn + cm.fp)
    precision = _ratio(cm.tp, cm.tp + cm.fp)
    f_measure = None
    if precision is not None and sensitivity is not None and precision + sensitivity > 0:
        f_measure = 2 * precision * sensitivity / (precision + sensitivity)
    return RateReport(
        accuracy=_ratio(cm.tp + cm.tn, cm.total),
        precision=precision,
        sensitivity=sensitivity,
        specificity=specificity,
        f_measure=f_measure,
        fpr=None if specificity is None else 1 - specificity,
        fnr=None if sensitivity is None else 1 - sensitivity,
        counts=cm,
    )


def evaluate(actual: Sequence[int], predicted: Sequence[int]) -> MetricReport:
    """Полный отчет по меткам {2, 4}; r и r² равны None при нулевой дисперсии."""
    rates = derive(confusion(actual, predicted))
    try:
        r, r_squared = correlation_and_r2(actual, predicted)
    except UndefinedCorrelationError:
        r, r_squared = None, None
    return MetricReport(
        **rates.model_dump(exclude={"counts"}),
        counts=rates.counts,
        rmse=rmse(actual, predicted),
        r=r,
        r_squared=r_squared,
        mape=mape(actual, predicted),
    )
