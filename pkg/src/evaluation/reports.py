"""Отображение отчетов: выровненные таблицы, CSV и JSON.

Порядок колонок таблиц фаз повторяет RMSE, R², MAPE; блок критериев
повторяет список точность / precision / чувствительность / специфичность /
validation / FPR / FNR.
"""

import csv
import io
from collections.abc import Sequence
from typing import Literal

from ..models.schemas import (
    ComparisonReport,
    CvReport,
    LabelingReport,
    MetricReport,
    PhaseReport,
    PhaseResult,
)

type OutputFormat = Literal["table", "csv", "json"]
type AnyReportModel = PhaseReport | CvReport | ComparisonReport

NA = "N/A"
PHASES = ("train", "test", "validation")
PHASE_COLUMNS = (
    "records", "rmse", "r_squared", "r", "mape", "accuracy", "precision", "sensitivity",
    "specificity", "f_measure", "fpr", "fnr", "tp", "fp", "fn", "tn",
)  # fmt: skip
MODEL_TITLES = {"svm-linear": "Linear-SVM", "elm-rbf": "ELM-RBF"}


def _num(value: float | None, digits: int = 4) -> str:
    return NA if value is None else f"{value:.{digits}f}"


def _pct(value: float | None) -> str:
    return NA if value is None else f"{value:.4f} ({value * 100:.2f}%)"


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    widths = [max(len(str(c)) for c in column) for column in zip(header, *rows, strict=True)]

    def line(cells: Sequence[str]) -> str:
        return "  ".join(str(c).ljust(w) for c, w in zip(cells, widths, strict=True)).rstrip()

    return [line(header), line(["-" * w for w in widths]), *(line(r) for r in rows)]


def _phases(report: PhaseReport) -> list[tuple[str, PhaseResult | None]]:
    return [(name, getattr(report, name)) for name in PHASES]


def _error_rows(report: PhaseReport) -> list[list[str]]:
    rows = []
    for name, phase in _phases(report):
        if phase is None:
            rows.append([name, "0", NA, NA, NA, NA])
            continue
        m = phase.metrics
        rows.append([name, str(phase.records), _num(m.rmse), _num(m.r_squared), _num(m.r), _num(m.mape)])
    return rows


def _criteria_rows(metrics: Sequence[MetricReport | None], validation: Sequence[float | None]) -> list[list[str]]:
    def row(title: str, values: Sequence[float | None], fmt=_num) -> list[str]:
        return [title, *(fmt(v) for v in values)]

    def pick(attr: str) -> list[float | None]:
        return [None if m is None else getattr(m, attr) for m in metrics]

    return [
        row("Accuracy", pick("accuracy")),
        row("Precision", pick("precision")),
        row("Sensitivity (TPR)", pick("sensitivity")),
        row("Specificity (TNR)", pick("specificity")),
        row("F-measure", pick("f_measure")),
        row("Validation", validation),
        row("FPR", pick("fpr"), _pct),
        row("FNR", pick("fnr"), _pct),
    ]


def phase_table(report: PhaseReport) -> str:
    kernel = report.kernel
    sigma = f", sigma={kernel.sigma:.4f}" if kernel.sigma is not None else ""
    lines = [
        f"Модель: {MODEL_TITLES[report.model_kind]} (kernel {kernel.kind}{sigma}, "
        f"C={report.config.resolved_c()}), seed={report.seed}, метки: {report.config.label_source}",
        f"Отпечаток набора: {report.dataset_fingerprint}",
        "",
        *_table(["Phase", "Records", "RMSE", "R^2", "r", "MAPE"], _error_rows(report)),
        "",
    ]
    validation = report.validation.metrics.accuracy if report.validation else None
    metrics = [p.metrics if p else None for _, p in _phases(report)]
    lines += _table(["Criterion", *PHASES], _criteria_rows(metrics, [None, None, validation]))
    counts = report.test.metrics.counts if report.test else report.train.metrics.counts
    lines += ["", f"Матрица ошибок ({'test' if report.test else 'train'}): "
              f"TP={counts.tp} FP={counts.fp} FN={counts.fn} TN={counts.tn}"]
    return "\n".join(lines) + "\n"


def cv_table(report: CvReport) -> str:
    lines = [f"Кросс-валидация {MODEL_TITLES[report.model_kind]}: k={report.k}, seed={report.seed}"]
    if not report.standard_protocol:
        lines.append(f"⚠️ k={report.k}: нестандартная схема (ожидается 10)")
    rows = [
        [
            str(it.index + 1),
            str(it.validation_fold),
            "+".join(str(f) for f in it.test_folds),
            _num(it.train_accuracy),
            _num(it.test_accuracy),
            _num(it.validation_accuracy),
        ]
        for it in report.iterations
    ]
    rows.append([
        "average", "", "",
        _num(report.average_train_accuracy),
        _num(report.average_test_accuracy),
        _num(report.average_validation_accuracy),
    ])  # fmt: skip
    header = ["Iteration", "Val fold", "Test folds", "Train acc", "Test acc", "Val acc"]
    lines += ["", *_table(header, rows)]
    return "\n".join(lines) + "\n"


def comparison_table(report: ComparisonReport) -> str:
    lines = [f"Сравнение моделей, seed={report.seed}", f"Отпечаток набора: {report.dataset_fingerprint}"]
    for phase in PHASES:
        rows = []
        for split_report in report.split_reports:
            result: PhaseResult | None = getattr(split_report, phase)
            m = result.metrics if result else None
            rows.append([
                _num(m.rmse if m else None),
                _num(m.r_squared if m else None),
                _num(m.mape if m else None),
                MODEL_TITLES[split_report.model_kind],
            ])
        lines += ["", f"Критерии оценки, фаза {phase}", *_table(["RMSE", "R^2", "MAPE", "Model"], rows)]

    header = ["Criterion"]
    metrics: list[MetricReport | None] = []
    validation: list[float | None] = []
    for split_report in report.split_reports:
        title = MODEL_TITLES[split_report.model_kind]
        header += [f"{title} train", f"{title} test"]
        metrics += [split_report.train.metrics, split_report.test.metrics if split_report.test else None]
        val = split_report.validation.metrics.accuracy if split_report.validation else None
        validation += [None, val]
    lines += ["", "Критерии матрицы ошибок", *_table(header, _criteria_rows(metrics, validation))]

    cv_rows = [
        [
            MODEL_TITLES[cv.model_kind],
            str(cv.k),
            _num(cv.average_train_accuracy),
            _num(cv.average_test_accuracy),
            _num(cv.average_validation_accuracy),
        ]
        for cv in report.cv_reports
    ]
    header = ["Model", "k", "Avg train acc", "Avg test acc", "Avg val acc"]
    lines += ["", "Кросс-валидация", *_table(header, cv_rows)]
    return "\n".join(lines) + "\n"


def _metric_cells(records: int, m: MetricReport | None) -> list[object]:
    if m is None:
        return [records, *([""] * (len(PHASE_COLUMNS) - 1))]
    c = m.counts
    values = [m.rmse, m.r_squared, m.r, m.mape, m.accuracy, m.precision, m.sensitivity,
              m.specificity, m.f_measure, m.fpr, m.fnr]  # fmt: skip
    return [records, *("" if v is None else repr(v) for v in values), c.tp, c.fp, c.fn, c.tn]


def _phase_rows(report: PhaseReport) -> list[list[object]]:
    return [
        [name, *_metric_cells(p.records if p else 0, p.metrics if p else None)]
        for name, p in _phases(report)
    ]


def _cv_rows(report: CvReport) -> list[list[object]]:
    def cell(v: float | None) -> str:
        return "" if v is None else repr(v)

    rows: list[list[object]] = [
        [it.index, it.validation_fold, "+".join(map(str, it.test_folds)), it.train_records,
         it.test_records, it.validation_records, cell(it.train_accuracy), cell(it.test_accuracy),
         cell(it.validation_accuracy)]  # fmt: skip
        for it in report.iterations
    ]
    rows.append(["average", "", "", "", "", "", cell(report.average_train_accuracy),
                 cell(report.average_test_accuracy), cell(report.average_validation_accuracy)])  # fmt: skip
    return rows


def to_csv(report: AnyReportModel) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    match report:
        case PhaseReport():
            writer.writerow(["phase", *PHASE_COLUMNS])
            writer.writerows(_phase_rows(report))
        case CvReport():
            writer.writerow([
                "iteration", "validation_fold", "test_folds", "train_records", "test_records",
                "validation_records", "train_accuracy", "test_accuracy", "validation_accuracy",
            ])  # fmt: skip
            writer.writerows(_cv_rows(report))
        case ComparisonReport():
            writer.writerow(["model", "protocol", "phase", *PHASE_COLUMNS])
            for split_report in report.split_reports:
                for row in _phase_rows(split_report):
                    writer.writerow([split_report.model_kind, "split", *row])
            accuracy_at = PHASE_COLUMNS.index("accuracy")
            for cv in report.cv_reports:
                averages = zip(
                    PHASES,
                    (cv.average_train_accuracy, cv.average_test_accuracy,
                     cv.average_validation_accuracy),
                    strict=True,
                )  # fmt: skip
                for phase, value in averages:
                    cells: list[object] = [""] * len(PHASE_COLUMNS)
                    cells[accuracy_at] = "" if value is None else repr(value)
                    writer.writerow([cv.model_kind, f"cv-{cv.k}", phase, *cells])
    return buffer.getvalue()


def to_json(report: AnyReportModel) -> str:
    """Основной JSON без времени выполнения; время пишется в отдельный файл."""
    return report.model_dump_json(indent=2, exclude={"timing"}) + "\n"


def to_table(report: AnyReportModel) -> str:
    match report:
        case PhaseReport():
            return phase_table(report)
        case CvReport():
            return cv_table(report)
        case ComparisonReport():
            return comparison_table(report)


def render(report: AnyReportModel, fmt: OutputFormat) -> str:
    match fmt:
        case "table":
            return to_table(report)
        case "csv":
            return to_csv(report)
        case "json":
            return to_json(report)


def labeling_summary(report: LabelingReport) -> str:
    lines = [
        f"Записей размечено: {report.total}",
        f"Нечеткие метки: benign={report.fuzzy_counts.get(2, 0)}, "
        f"malignant={report.fuzzy_counts.get(4, 0)}",
    ]
    if report.agreement is None:
        lines.append(f"Согласие с исходными метками: {NA}")
    else:
        lines.append(
            f"Согласие с исходными метками: {report.agreeing}/{report.total} "
            f"({report.agreement:.4f})"
        )
    for label, name in ((2, "benign"), (4, "malignant")):
        lines.append(f"  {name}: {_num(report.per_class_agreement.get(label))}")
    return "\n".join(lines) + "\n"
