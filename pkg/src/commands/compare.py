import argparse

from ..evaluation.experiments import compare_models
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
    parser = subparsers.add_parser("compare", help="Сравнить Linear-SVM и ELM-RBF")
    add_input(parser)
    add_model_flags(parser)
    parser.add_argument("--workers", type=int, default=None, help="Потоков для фолдов")
    add_format(parser)
    add_output(parser, "Файл отчета")
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    settings = settings_for(args)
    cfg = experiment_config(args, settings)
    workers = args.workers if args.workers is not None else settings.cv_workers
    report = compare_models(cfg, load_dataset(args.input), workers=workers)
    emit(report, output_format(args, settings), args.output)
    return 0
