import argparse
from pathlib import Path

from ..core.storage import check_fingerprint, document_model, load_model
from ..data_processing.wbcd_parser import fingerprint
from ..evaluation.experiments import evaluate_model, run_split_experiment
from .common import (
    add_format,
    add_input,
    add_model_flags,
    add_output,
    emit,
    experiment_config,
    load_dataset,
    output_format,
    settings_for,
)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "eval", help="Оценка на train/test/validation (по сохраненной модели или с обучением)"
    )
    add_input(parser)
    add_model_flags(parser)
    parser.add_argument("--model-file", type=Path, default=None, help="Модель JSON из train")
    parser.add_argument(
        "--allow-fingerprint-mismatch",
        action="store_true",
        help="Оценивать модель на наборе с другим отпечатком",
    )
    add_format(parser)
    add_output(parser, "Файл отчета")
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    settings = settings_for(args)
    fmt = output_format(args, settings)
    records = load_dataset(args.input)

    if args.model_file is None:
        report = run_split_experiment(experiment_config(args, settings), records)
    else:
        doc = load_model(args.model_file)
        check_fingerprint(
            doc.dataset_fingerprint,
            fingerprint(records),
            allow_mismatch=args.allow_fingerprint_mismatch,
        )
        # Конфигурация берется из модели, чтобы разбиение совпало с обучением
        report = evaluate_model(document_model(doc), doc.config, records)

    emit(report, fmt, args.output)
    return 0
