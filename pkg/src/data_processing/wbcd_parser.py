"""Разбор и очистка набора данных Wisconsin Breast Cancer (формат UCI)."""

import csv
import hashlib
import io
import logging
from collections.abc import Iterable
from pathlib import Path

from ..core.errors import DatasetParseError
from ..models.schemas import (
    BENIGN,
    FEATURE_COUNT,
    FEATURE_MAX,
    FEATURE_MIN,
    MALIGNANT,
    ParsedDataset,
    Provenance,
    Record,
    RecordSet,
)

logger = logging.getLogger(__name__)

MISSING_MARKER = "?"
FIELD_COUNT = FEATURE_COUNT + 2
CSV_HEADER: tuple[str, ...] = ("id", *(f"f{i}" for i in range(1, FEATURE_COUNT + 1)), "class")
FUZZY_COLUMN = "fuzzy_label"


def _parse_int(raw: str, line: int, what: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise DatasetParseError(line, f"{what} is not an integer: {raw!r}")


def _parse_class(raw: str, line: int) -> int:
    value = _parse_int(raw, line, "class")
    if value not in {BENIGN, MALIGNANT}:
        raise DatasetParseError(line, f"class must be 2 or 4, got {value}")
    return value


def _parse_fields(fields: list[str], line: int) -> tuple[Record, bool]:
    record_id = _parse_int(fields[0], line, "id")
    features: list[int | None] = []
    for position, raw in enumerate(fields[1 : FEATURE_COUNT + 1], start=1):
        if raw == MISSING_MARKER:
            features.append(None)
            continue
        value = _parse_int(raw, line, f"feature {position}")
        if not FEATURE_MIN <= value <= FEATURE_MAX:
            raise DatasetParseError(
                line, f"feature {position} outside [{FEATURE_MIN}, {FEATURE_MAX}]: {value}"
            )
        features.append(value)
    class_label = _parse_class(fields[FEATURE_COUNT + 1], line)
    record = Record(id=record_id, line=line, features=tuple(features), class_label=class_label)  # pyright: ignore[reportArgumentType]
    return record, not record.is_complete


def parse_wbcd(text: str | Iterable[str]) -> ParsedDataset:
    """Разобрать файл `breast-cancer-wisconsin.data`.

    Записи с `?` не отбрасываются, а помечаются; номер строки считается по
    физическим строкам файла, пустые строки пропускаются.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    records: list[Record] = []
    missing: list[int] = []

    for line_no, raw_line in enumerate(lines, start=1):
        stripped = raw_line.strip()
        if not stripped:
            continue
        fields = [f.strip() for f in stripped.split(",")]
        if len(fields) != FIELD_COUNT:
            raise DatasetParseError(
                line_no, f"expected {FIELD_COUNT} comma-separated fields, got {len(fields)}"
            )
        record, is_missing = _parse_fields(fields, line_no)
        records.append(record)
        if is_missing:
            missing.append(line_no)

    if not records:
        raise DatasetParseError(1, "dataset contains no records")

    logger.info(f"Разобрано записей: {len(records)}, с пропусками: {len(missing)}")
    return ParsedDataset(
        records=RecordSet(records=tuple(records), provenance=Provenance.RAW),
        missing_lines=tuple(missing),
    )


def clean(rs: RecordSet) -> RecordSet:
    """Удалить записи с пропусками, сохранив порядок."""
    kept = tuple(r for r in rs.records if r.is_complete)
    dropped = len(rs.records) - len(kept)
    if dropped:
        logger.info(f"Удалено записей с пропусками: {dropped}")
    provenance = Provenance.CLEANED if rs.provenance == Provenance.RAW else rs.provenance
    return RecordSet(records=kept, provenance=provenance)


def load_wbcd(path: str | Path) -> ParsedDataset:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Dataset file not found: {path}")
    return parse_wbcd(path.read_text(encoding="utf-8"))


# CSV очищенного / размеченного набора


def to_csv(rs: RecordSet) -> str:
    """Каноническое CSV-представление: заголовок, `\\n` как разделитель строк."""
    labeled = rs.provenance == Provenance.FUZZY_LABELED
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([*CSV_HEADER, FUZZY_COLUMN] if labeled else CSV_HEADER)
    for r in rs.records:
        row: list[int | None] = [r.id, *r.features, r.class_label]
        if labeled:
            row.append(r.fuzzy_label)
        writer.writerow(row)
    return buffer.getvalue()


def fingerprint(rs: RecordSet) -> str:
    """SHA-256 канонического CSV."""
    return hashlib.sha256(to_csv(rs).encode("utf-8")).hexdigest()


def write_csv(rs: RecordSet, path: str | Path) -> None:
    Path(path).write_text(to_csv(rs), encoding="utf-8")


def parse_csv(text: str) -> RecordSet:
    """Прочитать CSV, записанный `to_csv`; колонка fuzzy_label необязательна."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        raise DatasetParseError(1, "empty CSV")
    header = [h.strip() for h in header]
    labeled = header == [*CSV_HEADER, FUZZY_COLUMN]
    if not labeled and header != list(CSV_HEADER):
        raise DatasetParseError(1, f"unexpected header: {','.join(header)}")

    records: list[Record] = []
    width = len(header)
    # Строка 1 занята заголовком
    for line_no, fields in enumerate(reader, start=2):
        if not fields:
            continue
        if len(fields) != width:
            raise DatasetParseError(line_no, f"expected {width} fields, got {len(fields)}")
        record, is_missing = _parse_fields([f.strip() for f in fields[:FIELD_COUNT]], line_no)
        if is_missing:
            raise DatasetParseError(line_no, "cleaned CSV must not contain missing values")
        if labeled:
            fuzzy = _parse_class(fields[FIELD_COUNT].strip(), line_no)
            record = record.model_copy(update={"fuzzy_label": fuzzy})
        records.append(record)

    provenance = Provenance.FUZZY_LABELED if labeled else Provenance.CLEANED
    return RecordSet(records=tuple(records), provenance=provenance)


def read_csv(path: str | Path) -> RecordSet:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"CSV file not found: {path}")
    return parse_csv(path.read_text(encoding="utf-8"))
