import os
from pathlib import Path

import numpy as np
import pytest

from src.data_processing.wbcd_parser import clean, load_wbcd
from src.models.schemas import ParsedDataset, Provenance, Record, RecordSet

ROOT = Path(__file__).resolve().parents[1]
DEFAULT_RULES = ROOT / "rules" / "default.frs"
DATA_PATH = Path(os.environ.get("WBCD_DATA_PATH", ROOT / "data" / "breast-cancer-wisconsin.data"))

TAUTOLOGY_RULES = "RULE always: IF Mitoses IS Low OR Mitoses IS High THEN class IS benign\n"


def make_records(n_benign: int, n_malignant: int, seed: int = 0) -> RecordSet:
    """Синтетический набор: benign с признаками 1-3, malignant с признаками 6-10."""
    rng = np.random.default_rng(seed)
    labels = [2] * n_benign + [4] * n_malignant
    records = []
    for line, label in enumerate(labels, start=1):
        low, high = (1, 4) if label == 2 else (6, 11)
        features = tuple(int(v) for v in rng.integers(low, high, size=9))
        records.append(Record(id=1000 + line, line=line, features=features, class_label=label))
    return RecordSet(records=tuple(records), provenance=Provenance.CLEANED)


def uci_lines(rs: RecordSet) -> list[str]:
    return [",".join(str(v) for v in (r.id, *r.features, r.class_label)) for r in rs.records]


@pytest.fixture
def small_set() -> RecordSet:
    return make_records(30, 20, seed=1)


@pytest.fixture
def raw_wbcd_file(tmp_path: Path) -> Path:
    """UCI-файл: 40 полных записей и две с пропусками."""
    lines = uci_lines(make_records(24, 16, seed=3))
    lines.insert(5, "555,3,1,1,1,2,?,3,1,1,2")
    lines.insert(20, "556,8,7,8,7,3,?,3,1,1,4")
    path = tmp_path / "wbcd.data"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def tautology_rules(tmp_path: Path) -> Path:
    path = tmp_path / "tautology.frs"
    path.write_text(TAUTOLOGY_RULES, encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def wbcd_parsed() -> ParsedDataset:
    if not DATA_PATH.exists():
        pytest.skip(f"WBCD file not available at {DATA_PATH}")
    return load_wbcd(DATA_PATH)


@pytest.fixture(scope="session")
def wbcd(wbcd_parsed: ParsedDataset) -> RecordSet:
    return clean(wbcd_parsed.records)
