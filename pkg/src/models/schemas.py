from enum import StrEnum
from pathlib import Path
from typing import Annotated, Literal, Self

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    ValidationInfo,
    field_validator,
    model_validator,
)

FORMAT_VERSION = 1

BENIGN = 2
MALIGNANT = 4

# Порядок признаков фиксирован форматом UCI
FEATURE_NAMES: tuple[str, ...] = (
    "ClumpThickness",
    "UniformityCellSize",
    "UniformityCellShape",
    "MarginalAdhesion",
    "SingleEpithelialCellSize",
    "BareNuclei",
    "BlandChromatin",
    "NormalNucleoli",
    "Mitoses",
)
FEATURE_COUNT = len(FEATURE_NAMES)
FEATURE_MIN = 1
FEATURE_MAX = 10

ModelKind = Literal["elm-rbf", "svm-linear"]
LabelSource = Literal["original", "fuzzy"]
ClassLabel = Literal[2, 4]


# Модуль 1: Данные
class Provenance(StrEnum):
    RAW = "raw"
    CLEANED = "cleaned"
    FUZZY_LABELED = "fuzzy_labeled"


class Record(BaseModel):
    """Одна строка WBCD. features[i] is None для пропуска `?`."""

    model_config = ConfigDict(frozen=True)

    id: int = Field(description="Sample code number из файла (может повторяться)")
    line: int = Field(ge=1, description="Номер строки данных в исходном файле")
    features: tuple[int | None, ...]
    class_label: ClassLabel
    fuzzy_label: ClassLabel | None = None

    @field_validator("features")
    @classmethod
    def _check_features(cls, value: tuple[int | None, ...]) -> tuple[int | None, ...]:
        if len(value) != FEATURE_COUNT:
            raise ValueError(f"expected {FEATURE_COUNT} features, got {len(value)}")
        for v in value:
            if v is not None and not FEATURE_MIN <= v <= FEATURE_MAX:
                raise ValueError(f"feature value {v} outside [{FEATURE_MIN}, {FEATURE_MAX}]")
        return value

    @property
    def is_complete(self) -> bool:
        return all(v is not None for v in self.features)

    def target(self, source: LabelSource) -> int:
        """Метка класса из выбранного источника."""
        if source == "original":
            return self.class_label
        if self.fuzzy_label is None:
            raise ValueError(f"record {self.id} (line {self.line}) has no fuzzy label")
        return self.fuzzy_label


class RecordSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    records: tuple[Record, ...] = ()
    provenance: Provenance = Provenance.RAW

    @model_validator(mode="after")
    def _check_invariants(self) -> Self:
        lines = [r.line for r in self.records]
        if len(set(lines)) != len(lines):
            raise ValueError("record lines must be unique")
        if self.provenance != Provenance.RAW and not all(r.is_complete for r in self.records):
            raise ValueError(f"{self.provenance} record set contains missing values")
        if self.provenance == Provenance.FUZZY_LABELED and any(
            r.fuzzy_label is None for r in self.records
        ):
            raise ValueError("fuzzy_labeled record set contains unlabeled records")
        return self

    def __len__(self) -> int:
        return len(self.records)

    def by_line(self) -> dict[int, Record]:
        return {r.line: r for r in self.records}

    def subset(self, lines: tuple[int, ...] | list[int]) -> list[Record]:
        """Записи в порядке заданных номеров строк."""
        index = self.by_line()
        return [index[line] for line in lines]

    def class_counts(self) -> dict[int, int]:
        counts = {BENIGN: 0, MALIGNANT: 0}
        for r in self.records:
            counts[r.class_label] += 1
        return counts


class ParsedDataset(BaseModel):
    """Результат разбора: сырые записи плюс флаги пропусков."""

    records: RecordSet
    missing_lines: tuple[int, ...] = ()

    @property
    def missing_count(self) -> int:
        return len(self.missing_lines)


class SplitPlan(BaseModel):
    model_config = ConfigDict(frozen=True)

    train_ids: tuple[int, ...]
    test_ids: tuple[int, ...]
    val_ids: tuple[int, ...]
    ratios: tuple[float, float, float]
    seed: int

    @model_validator(mode="after")
    def _check_disjoint(self) -> Self:
        train, test, val = set(self.train_ids), set(self.test_ids), set(self.val_ids)
        if train & test or train & val or test & val:
            raise ValueError("split phases overlap")
        return self


class FoldPlan(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=1)
    seed: int
    fold_assignments: dict[int, int]

    @field_validator("fold_assignments")
    @classmethod
    def _check_range(cls, value: dict[int, int]) -> dict[int, int]:
        if any(f < 0 for f in value.values()):
            raise ValueError("fold index must be non-negative")
        return value

    def folds(self) -> list[list[int]]:
        """Номера строк каждого фолда в порядке возрастания."""
        result: list[list[int]] = [[] for _ in range(self.k)]
        for line, fold in sorted(self.fold_assignments.items()):
            result[fold].append(line)
        return result


# Модуль 2: Нечеткая разметка
class LabelingReport(BaseModel):
    total: int
    agreeing: int
    agreement: float | None = Field(description="None, если записей нет")
    per_class_agreement: dict[int, float | None]
    fuzzy_counts: dict[int, int]


# Модуль 3: Ядра
class KernelSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["rbf", "linear"] = "rbf"
    sigma: float | None = None

    @model_validator(mode="after")
    def _check_sigma(self) -> Self:
        if self.kind == "rbf" and (self.sigma is None or not self.sigma > 0):
            raise ValueError("rbf kernel requires sigma > 0")
        return self


# Модуль 4: ELM
class ElmModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    training_inputs: list[list[float]]
    beta: list[float]
    kernel: KernelSpec
    c: float = Field(gt=0)
    label_map: dict[int, int] = Field(default_factory=lambda: {BENIGN: -1, MALIGNANT: 1})

    @model_validator(mode="after")
    def _check_lengths(self) -> Self:
        if len(self.beta) != len(self.training_inputs):
            raise ValueError("beta and training_inputs lengths differ")
        return self


# Модуль 5: SVM
class SmoSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    tolerance: float = Field(default=1e-3, gt=0)
    max_passes: int = Field(default=10, ge=1)
    seed: int = 0
    max_iterations: int = Field(default=100_000, ge=1, description="Лимит полных проходов")


class SvmModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    alphas: list[float]
    bias: float
    support_inputs: list[list[float]]
    support_targets: list[int]
    c: float = Field(gt=0)
    kernel: KernelSpec = KernelSpec(kind="linear")
    tolerance: float = 1e-3
    seed: int = 0
    passes: int = 0
    dual_objective: float | None = None
    kkt_violation: float | None = None

    @model_validator(mode="after")
    def _check_dual_feasibility(self) -> Self:
        if not len(self.alphas) == len(self.support_inputs) == len(self.support_targets):
            raise ValueError("alphas, support_inputs and support_targets lengths differ")
        if any(a < 0 or a > self.c for a in self.alphas):
            raise ValueError("alpha outside [0, C]")
        if any(t not in {-1, 1} for t in self.support_targets):
            raise ValueError("support targets must be -1 or +1")
        if abs(sum(a * t for a, t in zip(self.alphas, self.support_targets, strict=True))) > 1e-6:
            raise ValueError("sum of alpha_i * t_i must be zero")
        return self


# Модуль 6: Метрики
class ConfusionMatrix(BaseModel):
    model_config = ConfigDict(frozen=True)

    tp: NonNegativeInt = 0
    fp: NonNegativeInt = 0
    fn: NonNegativeInt = 0
    tn: NonNegativeInt = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


class RateReport(BaseModel):
    """Критерии по матрице ошибок. None означает "не определено" (нулевой знаменатель)."""

    accuracy: float | None
    precision: float | None
    sensitivity: float | None
    specificity: float | None
    f_measure: float | None
    fpr: float | None
    fnr: float | None
    counts: ConfusionMatrix


class MetricReport(RateReport):
    rmse: float
    r: float | None
    r_squared: float | None
    mape: float


# Модуль 7: Эксперименты
class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    model_kind: ModelKind = "elm-rbf"
    c: float | None = Field(default=None, gt=0)
    sigma: float | None = Field(default=None, gt=0)
    kernel: Literal["rbf", "linear"] | None = None
    smo: SmoSettings = SmoSettings()
    label_source: LabelSource = "original"
    ratios: tuple[float, float, float] = (0.7, 0.2, 0.1)
    seed: int = 42
    normalize: bool = False
    rules_path: str | None = None
    folds: int = Field(default=10, ge=3)

    @field_validator("ratios")
    @classmethod
    def _check_ratios(cls, value: tuple[float, float, float]) -> tuple[float, float, float]:
        if any(r < 0 for r in value):
            raise ValueError("split ratios must be non-negative")
        if abs(sum(value) - 1.0) > 1e-9:
            raise ValueError(f"split ratios must sum to 1, got {sum(value)}")
        return value

    @field_validator("rules_path")
    @classmethod
    def _check_rules_path(cls, value: str | None, info: ValidationInfo) -> str | None:
        # Сохраненные артефакты читаются и без исходного файла правил
        loading = bool(info.context and info.context.get("loading"))
        if value is not None and not loading and not Path(value).exists():
            raise ValueError(f"rules file not found: {value}")
        return value

    def resolved_c(self) -> float:
        if self.c is not None:
            return self.c
        return 100.0 if self.model_kind == "elm-rbf" else 1.0

    def resolved_kernel(self) -> Literal["rbf", "linear"]:
        if self.kernel is not None:
            return self.kernel
        return "rbf" if self.model_kind == "elm-rbf" else "linear"


class PhaseResult(BaseModel):
    records: int
    metrics: MetricReport


class RunTiming(BaseModel):
    started_at: str
    elapsed_s: float


class ArtifactHeader(BaseModel):
    """Общие поля всех артефактов: версия, seed, эхо конфигурации, отпечаток данных."""

    format_version: int = FORMAT_VERSION
    seed: int
    dataset_fingerprint: str
    config: ExperimentConfig


class PhaseReport(ArtifactHeader):
    report_kind: Literal["phase"] = "phase"
    model_kind: ModelKind
    kernel: KernelSpec
    train: PhaseResult
    test: PhaseResult | None = None
    validation: PhaseResult | None = None
    timing: RunTiming | None = None

    @property
    def total_records(self) -> int:
        return sum(p.records for p in (self.train, self.test, self.validation) if p is not None)


class CvIteration(BaseModel):
    index: int
    validation_fold: int
    test_folds: tuple[int, ...]
    train_records: int
    test_records: int
    validation_records: int
    train_accuracy: float | None
    test_accuracy: float | None
    validation_accuracy: float | None


class CvReport(ArtifactHeader):
    report_kind: Literal["cv"] = "cv"
    model_kind: ModelKind
    k: int
    standard_protocol: bool = Field(description="False, если k != 10")
    iterations: list[CvIteration]
    average_train_accuracy: float | None
    average_test_accuracy: float | None
    average_validation_accuracy: float | None
    timing: RunTiming | None = None


class ComparisonReport(BaseModel):
    report_kind: Literal["comparison"] = "comparison"
    format_version: int = FORMAT_VERSION
    seed: int
    dataset_fingerprint: str
    split_reports: list[PhaseReport]
    cv_reports: list[CvReport]
    timing: RunTiming | None = None


AnyReport = Annotated[PhaseReport | CvReport | ComparisonReport, Field(discriminator="report_kind")]


# Модуль 8: Сохраненные модели
class ModelHeader(ArtifactHeader):
    normalization_flag: bool
    c: float


class ElmDocument(ModelHeader):
    model_kind: Literal["elm-rbf"] = "elm-rbf"
    sigma: float | None
    kernel: KernelSpec
    training_inputs: list[list[float]]
    beta: list[float]
    label_map: dict[int, int]


class SvmDocument(ModelHeader):
    model_kind: Literal["svm-linear"] = "svm-linear"
    kernel: KernelSpec
    alphas: list[float]
    bias: float
    support_inputs: list[list[float]]
    support_targets: list[int]
    tolerance: float
    passes: int
    dual_objective: float | None
    kkt_violation: float | None


AnyModelDocument = Annotated[ElmDocument | SvmDocument, Field(discriminator="model_kind")]


# Модуль 9: Сводка загрузки
class IngestSummary(BaseModel):
    parsed: int
    dropped: int
    kept: int
    benign: int
    malignant: int
    dataset_fingerprint: str
