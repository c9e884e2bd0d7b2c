"""Иерархия исключений конвейера."""

from collections.abc import Sequence


class WbcdError(Exception):
    """Базовое исключение. usage_error=True означает код выхода 2."""

    usage_error: bool = False


class ConfigError(WbcdError):
    usage_error = True


class DatasetParseError(WbcdError):
    usage_error = True

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


# Нечеткий слой


class FuzzyError(WbcdError):
    pass


class RuleSyntaxError(FuzzyError):
    usage_error = True

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class UnknownFeatureError(FuzzyError, LookupError):
    usage_error = True

    def __init__(self, feature: str, where: str = "") -> None:
        super().__init__(f"unknown feature {feature}{where}")
        self.feature = feature


class UnknownTermError(FuzzyError, LookupError):
    usage_error = True

    def __init__(self, feature: str, term: str, where: str = "") -> None:
        super().__init__(f"term {term} undefined for {feature}{where}")
        self.feature = feature
        self.term = term


class RuleWeightError(FuzzyError):
    usage_error = True


class EmptyRuleBaseError(FuzzyError):
    pass


class NoRuleFiredError(FuzzyError):
    def __init__(self, record_ids: Sequence[int]) -> None:
        ids = ", ".join(str(i) for i in record_ids)
        super().__init__(f"no rule fired for record(s): {ids}")
        self.record_ids = list(record_ids)


# Численные методы и обучение


class NumericError(WbcdError, ArithmeticError):
    pass


class NotPositiveDefiniteError(NumericError):
    pass


class TrainingError(WbcdError):
    pass


class ConvergenceError(TrainingError):
    def __init__(self, passes: int, violation: float) -> None:
        super().__init__(
            f"SMO did not converge after {passes} passes (max KKT violation {violation:.3e})"
        )
        self.passes = passes
        self.violation = violation


class MetricError(WbcdError, ValueError):
    pass


class UndefinedCorrelationError(MetricError):
    pass


# Артефакты


class ArtifactError(WbcdError):
    pass


class FingerprintMismatchError(ArtifactError):
    def __init__(self, expected: str, actual: str) -> None:
        super().__init__(
            f"dataset fingerprint mismatch: model was trained on {expected[:12]}..., "
            f"got {actual[:12]}... (use --allow-fingerprint-mismatch to override)"
        )
        self.expected = expected
        self.actual = actual
