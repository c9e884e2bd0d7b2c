import argparse
from pathlib import Path

from ..data_processing.wbcd_parser import write_csv
from ..evaluation.reports import labeling_summary
from ..fuzzy.labeler import FuzzyLabeler
from .common import add_input, add_output, load_dataset


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("label", help="Нечеткая разметка очищенного набора")
    add_input(parser)
    parser.add_argument("--rules", type=Path, required=True, help="Файл правил .frs")
    add_output(parser, "Размеченный CSV (по умолчанию: <input>.labeled.csv)")
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    records = load_dataset(args.input)
    labeler = FuzzyLabeler.from_file(args.rules)
    labeled, report = labeler.label_set(records)

    output: Path = args.output or args.input.with_suffix(".labeled.csv")
    write_csv(labeled, output)
    print(f"🧠 Правил: {len(labeler.rule_base.rules)}")
    print(labeling_summary(report), end="")
    print(f"📝 CSV сохранен: {output}")
    return 0
