"""Общие флаги и помощники подкоманд."""

import argparse
import sys
from pathlib import Path

from ..config import Settings, load_settings
from ..core.errors import ConfigError
from ..core.storage import save_report
from ..data_processing.wbcd_parser import CSV_HEADER, clean, load_wbcd, read_csv
from ..evaluation.reports import AnyReportModel, render
from ..models.schemas import ExperimentConfig, RecordSet, SmoSettings


def add_input(parser: argparse.ArgumentParser, help_text: str = "Файл WBCD (UCI) или CSV") -> None:
    parser.add_argument("input", type=Path, help=help_text)


def add_output(parser: argparse.ArgumentParser, help_text: str) -> None:
    parser.add_argument("-o", "--output", type=Path, default=None, help=help_text)


def add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=["table", "csv", "json"],
        default=None,
        help="Формат вывода (по умолчанию: table)",
    )


def add_model_flags(parser: argparse.ArgumentParser) -> None:
    """Флаги эксперимента; None означает значение из конфигурации."""
    group = parser.add_argument_group("эксперимент")
    group.add_argument("--model", choices=["elm-rbf", "svm-linear"], default=None)
    group.add_argument("--c", type=float, default=None, help="Регуляризация C")
    group.add_argument("--sigma", type=float, default=None, help="Радиус RBF (по умолчанию: медиана)")
    group.add_argument("--tol", type=float, default=None, help="Допуск ККТ для SMO")
    group.add_argument("--seed", type=int, default=None)
    group.add_argument("--split", default=None, help="Доли train,test,validation (0.7,0.2,0.1)")
    group.add_argument("--folds", type=int, default=None)
    group.add_argument("--rules", default=None, help="Файл правил .frs")
    group.add_argument("--labels", choices=["original", "fuzzy"], default=None)
    group.add_argument(
        "--normalize", action=argparse.BooleanOptionalAction, default=None,
        help="Масштабировать признаки в [0, 1]",
    )  # fmt: skip


def settings_for(args: argparse.Namespace) -> Settings:
    return load_settings(getattr(args, "config", None))


def _pick[T](flag: T | None, fallback: T) -> T:
    return fallback if flag is None else flag


def parse_ratios(text: str) -> tuple[float, float, float]:
    try:
        parts = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise ConfigError(f"--split must be three comma-separated numbers, got {text!r}")
    if len(parts) != 3:
        raise ConfigError(f"--split must be three comma-separated numbers, got {text!r}")
    return parts  # pyright: ignore[reportReturnType]


def experiment_config(args: argparse.Namespace, settings: Settings) -> ExperimentConfig:
    """Собрать конфигурацию: флаги поверх файла и переменных окружения."""
    label_source = _pick(args.labels, settings.labels)
    rules = _pick(args.rules, settings.rules)
    if label_source == "fuzzy" and rules is None:
        raise ConfigError("--rules is required when --labels fuzzy")
    if rules is not None and not Path(rules).exists():
        raise ConfigError(f"rules file not found: {rules}")
    return ExperimentConfig(
        model_kind=_pick(args.model, settings.model),
        c=_pick(args.c, settings.c),
        sigma=_pick(args.sigma, settings.sigma),
        smo=SmoSettings(
            tolerance=_pick(args.tol, settings.tol),
            max_passes=settings.max_passes,
            seed=_pick(args.seed, settings.seed),
        ),
        label_source=label_source,
        ratios=parse_ratios(_pick(args.split, settings.split)),
        seed=_pick(args.seed, settings.seed),
        normalize=_pick(args.normalize, settings.normalize),
        rules_path=rules,
        folds=_pick(args.folds, settings.folds),
    )


def output_format(args: argparse.Namespace, settings: Settings) -> str:
    return _pick(getattr(args, "format", None), settings.output_format)


def load_dataset(path: Path) -> RecordSet:
    """CSV с заголовком читается как есть, иначе файл разбирается как UCI и очищается."""
    if not path.exists():
        raise ConfigError(f"input file not found: {path}")
    with path.open(encoding="utf-8") as f:
        first = f.readline().strip()
    if first.startswith(",".join(CSV_HEADER)):
        return read_csv(path)
    return clean(load_wbcd(path).records)


def emit(report: AnyReportModel, fmt: str, output: Path | None) -> None:
    text = render(report, fmt)  # pyright: ignore[reportArgumentType]
    if output is None:
        sys.stdout.write(text)
        return
    save_report(report, output, text)
    print(f"📝 Отчет сохранен: {output}")
