import argparse
import sys
from pathlib import Path

from ..core.storage import load_report
from ..evaluation.reports import render
from .common import add_format, output_format, settings_for


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("report", help="Перерисовать сохраненный JSON-отчет")
    parser.add_argument("input", type=Path, help="JSON-отчет из eval, cv или compare")
    add_format(parser)
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    report = load_report(args.input)
    sys.stdout.write(render(report, output_format(args, settings_for(args))))  # pyright: ignore[reportArgumentType]
    return 0
