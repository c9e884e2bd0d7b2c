from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import ConfigError, DatasetParseError
from src.data_processing.splitter import cv_roles, make_folds, split
from src.data_processing.wbcd_parser import clean, fingerprint, parse_csv, parse_wbcd, to_csv
from src.models.schemas import ParsedDataset, Provenance, RecordSet

from .conftest import make_records, uci_lines


def test_parse_complete_line():
    parsed = parse_wbcd("123,5,1,1,1,2,1,3,1,1,2\n")
    (record,) = parsed.records.records
    assert record.id == 123
    assert record.features == (5, 1, 1, 1, 2, 1, 3, 1, 1)
    assert record.class_label == 2
    assert parsed.missing_lines == ()


def test_parse_flags_missing_value():
    parsed = parse_wbcd("123,5,1,1,1,2,1,3,1,1,2\n124,8,?,8,7,3,4,3,1,1,4\n")
    assert parsed.missing_lines == (2,)
    flagged = parsed.records.records[1]
    assert flagged.features[1] is None
    assert not flagged.is_complete


@pytest.mark.parametrize(
    "bad_line",
    [
        "124,8,8,7,3,4,3,1,1,4",
        "124,8,x,8,7,3,4,3,1,1,4",
        "124,8,11,8,7,3,4,3,1,1,4",
        "124,8,0,8,7,3,4,3,1,1,4",
        "124,8,8,8,7,3,4,3,1,1,3",
    ],
)
def test_parse_rejects_malformed_line(bad_line):
    with pytest.raises(DatasetParseError) as exc:
        parse_wbcd(f"123,5,1,1,1,2,1,3,1,1,2\n{bad_line}\n")
    assert exc.value.line == 2
    assert "line 2" in str(exc.value)


def test_parse_empty_input():
    with pytest.raises(DatasetParseError):
        parse_wbcd("")


def test_duplicate_ids_are_kept_apart_by_line():
    parsed = parse_wbcd("7,5,1,1,1,2,1,3,1,1,2\n7,5,1,1,1,2,1,3,1,1,2\n")
    assert [r.line for r in parsed.records.records] == [1, 2]
    assert len(clean(parsed.records)) == 2


def test_clean_drops_flagged_and_keeps_order():
    text = "1,5,1,1,1,2,1,3,1,1,2\n2,8,?,8,7,3,4,3,1,1,4\n3,8,8,8,7,3,4,3,1,1,4\n"
    cleaned = clean(parse_wbcd(text).records)
    assert [r.id for r in cleaned.records] == [1, 3]
    assert cleaned.provenance == Provenance.CLEANED


def test_clean_is_identity_without_missing(small_set):
    assert clean(small_set).records == small_set.records


def test_csv_reads_back_same_records(small_set):
    restored = parse_csv(to_csv(small_set))
    assert [r.features for r in restored.records] == [r.features for r in small_set.records]
    assert [r.class_label for r in restored.records] == [r.class_label for r in small_set.records]
    assert fingerprint(restored) == fingerprint(small_set)


def test_fingerprint_tracks_content(small_set):
    first = small_set.records[0]
    flipped = first.model_copy(update={"class_label": 4 if first.class_label == 2 else 2})
    changed = RecordSet(records=(flipped, *small_set.records[1:]), provenance=small_set.provenance)
    assert fingerprint(small_set) == fingerprint(small_set)
    assert fingerprint(changed) != fingerprint(small_set)


def test_csv_rejects_unknown_header():
    with pytest.raises(DatasetParseError):
        parse_csv("a,b,c\n1,2,3\n")


# Разбиение


def wbcd_shaped() -> RecordSet:
    return make_records(444, 239, seed=0)


def test_split_sizes_on_wbcd_shape():
    plan = split(wbcd_shaped(), (0.7, 0.2, 0.1), seed=42)
    assert (len(plan.train_ids), len(plan.test_ids), len(plan.val_ids)) == (477, 135, 71)


def test_split_is_a_partition():
    rs = wbcd_shaped()
    plan = split(rs, (0.7, 0.2, 0.1), seed=5)
    phases = [set(plan.train_ids), set(plan.test_ids), set(plan.val_ids)]
    assert set().union(*phases) == {r.line for r in rs.records}
    assert sum(len(p) for p in phases) == len(rs)


def test_split_stratifies_by_class():
    rs = wbcd_shaped()
    plan = split(rs, (0.7, 0.2, 0.1), seed=3)
    labels = {r.line: r.class_label for r in rs.records}
    assert Counter(labels[line] for line in plan.train_ids) == {2: 310, 4: 167}
    assert Counter(labels[line] for line in plan.test_ids) == {2: 88, 4: 47}


def test_split_is_deterministic_per_seed():
    rs = wbcd_shaped()
    assert split(rs, (0.7, 0.2, 0.1), 11) == split(rs, (0.7, 0.2, 0.1), 11)
    assert split(rs, (0.7, 0.2, 0.1), 11).train_ids != split(rs, (0.7, 0.2, 0.1), 12).train_ids


def test_split_everything_to_train(small_set):
    plan = split(small_set, (1.0, 0.0, 0.0), seed=0)
    assert len(plan.train_ids) == len(small_set)
    assert plan.test_ids == plan.val_ids == ()


@pytest.mark.parametrize("ratios", [(0.5, 0.2, 0.1), (0.8, 0.3, -0.1)])
def test_split_rejects_bad_ratios(small_set, ratios):
    with pytest.raises(ConfigError):
        split(small_set, ratios, seed=0)


def test_fold_sizes_on_wbcd_shape():
    plan = make_folds(wbcd_shaped(), 10, seed=42)
    sizes = sorted(len(f) for f in plan.folds())
    assert sizes == [68] * 7 + [69] * 3


def test_folds_are_stratified():
    rs = wbcd_shaped()
    labels = {r.line: r.class_label for r in rs.records}
    folds = make_folds(rs, 10, seed=7).folds()
    for label in (2, 4):
        per_fold = [sum(labels[line] == label for line in fold) for fold in folds]
        assert max(per_fold) - min(per_fold) <= 1


def test_as_many_folds_as_records(small_set):
    folds = make_folds(small_set, len(small_set), seed=0).folds()
    assert all(len(f) == 1 for f in folds)


@pytest.mark.parametrize("k", [2, 51])
def test_fold_count_out_of_range(small_set, k):
    with pytest.raises(ConfigError):
        make_folds(small_set, k, seed=0)


def test_cv_roles_rotate_7_2_1():
    usage = {f: Counter() for f in range(10)}
    for i in range(10):
        validation, test, train = cv_roles(10, i)
        assert len(train) == 7
        assert len({validation, *test, *train}) == 10
        usage[validation]["validation"] += 1
        for f in test:
            usage[f]["test"] += 1
        for f in train:
            usage[f]["train"] += 1
    assert all(u == {"validation": 1, "test": 2, "train": 7} for u in usage.values())


@settings(max_examples=30, deadline=None)
@given(n_benign=st.integers(5, 40), n_malignant=st.integers(5, 40), seed=st.integers(0, 2**16))
def test_split_property_partition(n_benign, n_malignant, seed):
    rs = make_records(n_benign, n_malignant, seed=seed)
    plan = split(rs, (0.7, 0.2, 0.1), seed)
    assert len(plan.train_ids) + len(plan.test_ids) + len(plan.val_ids) == len(rs)


# Полный набор UCI


def test_uci_dataset_counts(wbcd_parsed: ParsedDataset, wbcd: RecordSet):
    assert len(wbcd_parsed.records) == 699
    assert wbcd_parsed.missing_count == 16
    assert len(wbcd) == 683
    assert wbcd.class_counts() == {2: 444, 4: 239}


def test_uci_lines_helper_parses(small_set):
    parsed = parse_wbcd("\n".join(uci_lines(small_set)))
    assert [r.features for r in parsed.records.records] == [r.features for r in small_set.records]
