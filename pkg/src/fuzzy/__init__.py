from .engine import ActivationProfile, defuzzify, infer
from .labeler import FuzzyLabeler, label_set
from .membership import MEMBERSHIP_TABLE, MembershipSpec, Term, lookup, membership, terms_for
from .rules import (
    Clause,
    Conjunction,
    Disjunction,
    Rule,
    RuleBase,
    format_rules,
    load_rules,
    parse_expression,
    parse_rules,
)

__all__ = [
    "MEMBERSHIP_TABLE",
    "ActivationProfile",
    "Clause",
    "Conjunction",
    "Disjunction",
    "FuzzyLabeler",
    "MembershipSpec",
    "Rule",
    "RuleBase",
    "Term",
    "defuzzify",
    "format_rules",
    "infer",
    "label_set",
    "load_rules",
    "lookup",
    "membership",
    "parse_expression",
    "parse_rules",
    "terms_for",
]
