import argparse
from pathlib import Path

from ..data_processing.wbcd_parser import clean, fingerprint, load_wbcd, write_csv
from ..models.schemas import IngestSummary
from .common import add_input, add_output, output_format, settings_for


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("ingest", help="Разобрать и очистить файл WBCD")
    add_input(parser, "Файл breast-cancer-wisconsin.data")
    add_output(parser, "Очищенный CSV (по умолчанию: <input>.clean.csv)")
    parser.add_argument("--format", choices=["table", "json"], default=None)
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    parsed = load_wbcd(args.input)
    cleaned = clean(parsed.records)
    output: Path = args.output or args.input.with_suffix(".clean.csv")
    write_csv(cleaned, output)

    counts = cleaned.class_counts()
    summary = IngestSummary(
        parsed=len(parsed.records),
        dropped=parsed.missing_count,
        kept=len(cleaned),
        benign=counts[2],
        malignant=counts[4],
        dataset_fingerprint=fingerprint(cleaned),
    )
    if output_format(args, settings_for(args)) == "json":
        print(summary.model_dump_json(indent=2))
        return 0

    print(f"📚 Разобрано записей: {summary.parsed}")
    print(f"🧹 Удалено с пропусками: {summary.dropped}")
    print(f"✅ Осталось: {summary.kept} (benign {summary.benign}, malignant {summary.malignant})")
    print(f"🔑 Отпечаток: {summary.dataset_fingerprint}")
    print(f"📝 CSV сохранен: {output}")
    return 0
