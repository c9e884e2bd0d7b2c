"""Сохранение и загрузка моделей и отчетов (версионированный JSON)."""

import logging
from pathlib import Path

from pydantic import TypeAdapter, ValidationError

from ..models.schemas import (
    FORMAT_VERSION,
    AnyModelDocument,
    AnyReport,
    ComparisonReport,
    CvReport,
    ElmDocument,
    ElmModel,
    ExperimentConfig,
    PhaseReport,
    SvmDocument,
    SvmModel,
)
from .errors import ArtifactError, FingerprintMismatchError

logger = logging.getLogger(__name__)

TIMING_SUFFIX = ".timing.json"
LOADING = {"loading": True}

_MODEL_ADAPTER: TypeAdapter[ElmDocument | SvmDocument] = TypeAdapter(AnyModelDocument)
_REPORT_ADAPTER: TypeAdapter[PhaseReport | CvReport | ComparisonReport] = TypeAdapter(AnyReport)


def model_document(
    model: ElmModel | SvmModel, cfg: ExperimentConfig, dataset_fingerprint: str
) -> ElmDocument | SvmDocument:
    header = {
        "seed": cfg.seed,
        "dataset_fingerprint": dataset_fingerprint,
        "config": cfg,
        "normalization_flag": cfg.normalize,
        "c": model.c,
    }
    if isinstance(model, ElmModel):
        return ElmDocument(
            **header,
            sigma=model.kernel.sigma,
            kernel=model.kernel,
            training_inputs=model.training_inputs,
            beta=model.beta,
            label_map=model.label_map,
        )
    return SvmDocument(
        **header,
        kernel=model.kernel,
        alphas=model.alphas,
        bias=model.bias,
        support_inputs=model.support_inputs,
        support_targets=model.support_targets,
        tolerance=model.tolerance,
        passes=model.passes,
        dual_objective=model.dual_objective,
        kkt_violation=model.kkt_violation,
    )


def document_model(doc: ElmDocument | SvmDocument) -> ElmModel | SvmModel:
    if isinstance(doc, ElmDocument):
        return ElmModel(
            training_inputs=doc.training_inputs,
            beta=doc.beta,
            kernel=doc.kernel,
            c=doc.c,
            label_map=doc.label_map,
        )
    return SvmModel(
        alphas=doc.alphas,
        bias=doc.bias,
        support_inputs=doc.support_inputs,
        support_targets=doc.support_targets,
        c=doc.c,
        kernel=doc.kernel,
        tolerance=doc.tolerance,
        seed=doc.config.smo.seed,
        passes=doc.passes,
        dual_objective=doc.dual_objective,
        kkt_violation=doc.kkt_violation,
    )


def _check_version(version: int, path: Path) -> None:
    if version != FORMAT_VERSION:
        raise ArtifactError(f"{path}: unsupported format_version {version} (expected {FORMAT_VERSION})")


def save_model(doc: ElmDocument | SvmDocument, path: str | Path) -> None:
    path = Path(path)
    path.write_text(doc.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"Модель {doc.model_kind} сохранена: {path}")


def load_model(path: str | Path) -> ElmDocument | SvmDocument:
    path = Path(path)
    if not path.exists():
        raise ArtifactError(f"model file not found: {path}")
    try:
        doc = _MODEL_ADAPTER.validate_json(path.read_bytes(), context=LOADING)
    except ValidationError as e:
        raise ArtifactError(f"{path}: invalid model document: {e}") from e
    _check_version(doc.format_version, path)
    return doc


def check_fingerprint(expected: str, actual: str, *, allow_mismatch: bool = False) -> None:
    if expected == actual:
        return
    if allow_mismatch:
        logger.warning(f"Отпечаток набора не совпадает с моделью ({expected[:12]} != {actual[:12]})")
        return
    raise FingerprintMismatchError(expected, actual)


def timing_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + TIMING_SUFFIX)


def save_report(report: PhaseReport | CvReport | ComparisonReport, path: str | Path, text: str) -> None:
    """Записать отчет; время выполнения уходит в файл `<name>.timing.json`."""
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    if report.timing is not None:
        timing_path(path).write_text(report.timing.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"Отчет сохранен: {path}")


def load_report(path: str | Path) -> PhaseReport | CvReport | ComparisonReport:
    path = Path(path)
    if not path.exists():
        raise ArtifactError(f"report file not found: {path}")
    try:
        report = _REPORT_ADAPTER.validate_json(path.read_bytes(), context=LOADING)
    except ValidationError as e:
        raise ArtifactError(f"{path}: invalid report document: {e}") from e
    _check_version(report.format_version, path)
    return report
