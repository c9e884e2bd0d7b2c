import logging
from pathlib import Path

from ..core.errors import NoRuleFiredError
from ..models.schemas import BENIGN, MALIGNANT, LabelingReport, Provenance, Record, RecordSet
from .engine import defuzzify, infer
from .rules import RuleBase, load_rules

logger = logging.getLogger(__name__)


class FuzzyLabeler:
    """Разметка очищенного набора базой нечетких правил."""

    def __init__(self, rule_base: RuleBase) -> None:
        self.rule_base = rule_base

    @classmethod
    def from_file(cls, rules_path: str | Path) -> "FuzzyLabeler":
        return cls(load_rules(rules_path))

    def label(self, r: Record) -> tuple[float, int]:
        """Четкое значение селектора и метка одной записи."""
        return defuzzify(infer(self.rule_base, r))

    def label_set(self, rs: RecordSet) -> tuple[RecordSet, LabelingReport]:
        """Разметить все записи; записи без сработавших правил собираются в одну ошибку."""
        logger.info(f"Нечеткая разметка {len(rs)} записей, правил: {len(self.rule_base.rules)}")

        labeled: list[Record] = []
        unfired: list[int] = []
        for r in rs.records:
            try:
                _, fuzzy = self.label(r)
            except NoRuleFiredError:
                unfired.append(r.id)
                continue
            labeled.append(r.model_copy(update={"fuzzy_label": fuzzy}))

        if unfired:
            logger.error(f"Ни одно правило не сработало для записей: {len(unfired)}")
            raise NoRuleFiredError(unfired)

        result = RecordSet(records=tuple(labeled), provenance=Provenance.FUZZY_LABELED)
        report = self.agreement(result)
        if report.agreement is None:
            logger.info("Набор пуст: согласие не определено")
        else:
            logger.info(f"Согласие с исходными метками: {report.agreeing}/{report.total} "
                        f"({report.agreement:.4f})")
        return result, report

    @staticmethod
    def agreement(rs: RecordSet) -> LabelingReport:
        """Сравнить нечеткие метки с исходными классами."""
        totals = {BENIGN: 0, MALIGNANT: 0}
        hits = {BENIGN: 0, MALIGNANT: 0}
        fuzzy_counts = {BENIGN: 0, MALIGNANT: 0}
        for r in rs.records:
            if r.fuzzy_label is None:
                continue
            totals[r.class_label] += 1
            fuzzy_counts[r.fuzzy_label] += 1
            if r.fuzzy_label == r.class_label:
                hits[r.class_label] += 1

        total = sum(totals.values())
        agreeing = sum(hits.values())
        return LabelingReport(
            total=total,
            agreeing=agreeing,
            agreement=agreeing / total if total else None,
            per_class_agreement={
                label: hits[label] / totals[label] if totals[label] else None for label in totals
            },
            fuzzy_counts=fuzzy_counts,
        )


def label_set(rb: RuleBase, rs: RecordSet) -> tuple[RecordSet, LabelingReport]:
    """Удобная функция: разметить набор и вернуть отчет о согласии."""
    return FuzzyLabeler(rb).label_set(rs)
