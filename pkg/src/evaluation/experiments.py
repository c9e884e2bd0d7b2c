import logging
import time
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime

from ..classifiers.registry import Classifier, predict, train_model
from ..core.errors import ConfigError, TrainingError
from ..core.numeric import feature_matrix
from ..data_processing.splitter import cv_roles, make_folds, split
from ..data_processing.wbcd_parser import fingerprint
from ..fuzzy.labeler import FuzzyLabeler
from ..models.schemas import (
    ComparisonReport,
    CvIteration,
    CvReport,
    ExperimentConfig,
    ModelKind,
    PhaseReport,
    PhaseResult,
    Provenance,
    Record,
    RecordSet,
    RunTiming,
    SplitPlan,
)
from .metrics import confusion, derive, evaluate

logger = logging.getLogger(__name__)

STANDARD_FOLDS = 10
# Порядок строк в таблицах сравнения
COMPARISON_ORDER: tuple[ModelKind, ...] = ("svm-linear", "elm-rbf")


class Stopwatch:
    def __init__(self) -> None:
        self.started_at = datetime.now().isoformat(timespec="seconds")
        self._start = time.perf_counter()

    def timing(self) -> RunTiming:
        return RunTiming(started_at=self.started_at, elapsed_s=time.perf_counter() - self._start)


def prepare_records(cfg: ExperimentConfig, rs: RecordSet) -> RecordSet:
    """Нечеткая разметка набора, если она нужна конфигурации и еще не выполнена."""
    if cfg.label_source != "fuzzy" or rs.provenance == Provenance.FUZZY_LABELED:
        return rs
    if cfg.rules_path is None:
        raise ConfigError("--rules is required when --labels fuzzy is used on unlabeled data")
    logger.info(f"Набор не размечен, нечеткая разметка правилами {cfg.rules_path}")
    labeled, _ = FuzzyLabeler.from_file(cfg.rules_path).label_set(rs)
    return labeled


def _targets(records: Sequence[Record], cfg: ExperimentConfig) -> list[int]:
    return [r.target(cfg.label_source) for r in records]


def fit(cfg: ExperimentConfig, records: Sequence[Record]) -> Classifier:
    if not records:
        raise TrainingError("training phase is empty")
    X = feature_matrix(records, normalize=cfg.normalize)
    return train_model(cfg, X, _targets(records, cfg))


def predict_records(model: Classifier, cfg: ExperimentConfig, records: Sequence[Record]) -> list[int]:
    return predict(model, feature_matrix(records, normalize=cfg.normalize))


def _phase(model: Classifier, cfg: ExperimentConfig, records: Sequence[Record]) -> PhaseResult | None:
    if not records:
        return None
    metrics = evaluate(_targets(records, cfg), predict_records(model, cfg, records))
    return PhaseResult(records=len(records), metrics=metrics)


def _accuracy(model: Classifier, cfg: ExperimentConfig, records: Sequence[Record]) -> float | None:
    if not records:
        return None
    cm = confusion(_targets(records, cfg), predict_records(model, cfg, records))
    return derive(cm).accuracy


def train_split(cfg: ExperimentConfig, rs: RecordSet) -> tuple[Classifier, SplitPlan, RecordSet]:
    """Обучить модель на train-части разбиения."""
    records = prepare_records(cfg, rs)
    plan = split(records, cfg.ratios, cfg.seed)
    logger.info(
        f"Разбиение {cfg.ratios}: train={len(plan.train_ids)}, "
        f"test={len(plan.test_ids)}, validation={len(plan.val_ids)}"
    )
    model = fit(cfg, records.subset(plan.train_ids))
    return model, plan, records


def _phase_report(
    model: Classifier,
    cfg: ExperimentConfig,
    records: RecordSet,
    plan: SplitPlan,
    dataset_fingerprint: str,
    watch: Stopwatch,
) -> PhaseReport:
    train = _phase(model, cfg, records.subset(plan.train_ids))
    if train is None:
        raise TrainingError("training phase is empty")
    report = PhaseReport(
        seed=cfg.seed,
        dataset_fingerprint=dataset_fingerprint,
        config=cfg,
        model_kind=cfg.model_kind,
        kernel=model.kernel,
        train=train,
        test=_phase(model, cfg, records.subset(plan.test_ids)),
        validation=_phase(model, cfg, records.subset(plan.val_ids)),
        timing=watch.timing(),
    )
    accuracy = report.test.metrics.accuracy if report.test else None
    logger.info(f"{cfg.model_kind}: точность на test = {accuracy}")
    return report


def evaluate_model(model: Classifier, cfg: ExperimentConfig, rs: RecordSet) -> PhaseReport:
    """Оценить обученную модель на всех трех частях разбиения из конфигурации."""
    watch = Stopwatch()
    records = prepare_records(cfg, rs)
    plan = split(records, cfg.ratios, cfg.seed)
    return _phase_report(model, cfg, records, plan, fingerprint(rs), watch)


def run_split_experiment(cfg: ExperimentConfig, rs: RecordSet) -> PhaseReport:
    """Обучение на train, полный набор критериев на train, test и validation."""
    watch = Stopwatch()
    model, plan, records = train_split(cfg, rs)
    return _phase_report(model, cfg, records, plan, fingerprint(rs), watch)


def _cv_iteration(
    cfg: ExperimentConfig, records: RecordSet, folds: list[list[int]], index: int
) -> CvIteration:
    k = len(folds)
    validation, test, train = cv_roles(k, index)
    train_records = records.subset([line for f in train for line in folds[f]])
    test_records = records.subset([line for f in test for line in folds[f]])
    val_records = records.subset(folds[validation])

    model = fit(cfg, train_records)
    iteration = CvIteration(
        index=index,
        validation_fold=validation,
        test_folds=test,
        train_records=len(train_records),
        test_records=len(test_records),
        validation_records=len(val_records),
        train_accuracy=_accuracy(model, cfg, train_records),
        test_accuracy=_accuracy(model, cfg, test_records),
        validation_accuracy=_accuracy(model, cfg, val_records),
    )
    logger.debug(f"Итерация {index + 1}/{k}: test accuracy = {iteration.test_accuracy}")
    return iteration


def _mean(values: Sequence[float | None]) -> float | None:
    present = [v for v in values if v is not None]
    return sum(present) / len(present) if present else None


def run_cv(
    cfg: ExperimentConfig,
    rs: RecordSet,
    k: int | None = None,
    workers: int = 1,
) -> CvReport:
    """Кросс-валидация 7/2/1: итерация i берет фолд i для validation, i+1 и i+2 для test."""
    watch = Stopwatch()
    k = cfg.folds if k is None else k
    if k != STANDARD_FOLDS:
        logger.warning(f"k={k}: схема отличается от стандартной 10-fold")

    records = prepare_records(cfg, rs)
    folds = make_folds(records, k, cfg.seed).folds()
    logger.info(f"Кросс-валидация {cfg.model_kind}: k={k}, потоков {workers}")

    # map сохраняет порядок итераций независимо от расписания потоков
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        iterations = list(pool.map(lambda i: _cv_iteration(cfg, records, folds, i), range(k)))

    report = CvReport(
        seed=cfg.seed,
        dataset_fingerprint=fingerprint(rs),
        config=cfg.model_copy(update={"folds": k}),
        model_kind=cfg.model_kind,
        k=k,
        standard_protocol=k == STANDARD_FOLDS,
        iterations=iterations,
        average_train_accuracy=_mean([it.train_accuracy for it in iterations]),
        average_test_accuracy=_mean([it.test_accuracy for it in iterations]),
        average_validation_accuracy=_mean([it.validation_accuracy for it in iterations]),
        timing=watch.timing(),
    )
    logger.info(f"Средняя точность на test: {report.average_test_accuracy}")
    return report


def compare_models(cfg: ExperimentConfig, rs: RecordSet, workers: int = 1) -> ComparisonReport:
    """Оба классификатора при общей конфигурации и seed: разбиение и кросс-валидация."""
    watch = Stopwatch()
    split_reports: list[PhaseReport] = []
    cv_reports: list[CvReport] = []
    for kind in COMPARISON_ORDER:
        model_cfg = cfg.model_copy(update={"model_kind": kind, "kernel": None})
        logger.info(f"Сравнение: модель {kind}")
        split_reports.append(_strip_timing(run_split_experiment(model_cfg, rs)))
        cv_reports.append(_strip_timing(run_cv(model_cfg, rs, workers=workers)))
    return ComparisonReport(
        seed=cfg.seed,
        dataset_fingerprint=fingerprint(rs),
        split_reports=split_reports,
        cv_reports=cv_reports,
        timing=watch.timing(),
    )


def _strip_timing[R: (PhaseReport, CvReport)](report: R) -> R:
    return report.model_copy(update={"timing": None})
