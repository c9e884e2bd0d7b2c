"""DSL нечетких правил (`.frs`): токенизатор, парсер рекурсивного спуска, печать.

    RULE <ident> : IF <expr> THEN [class IS] (benign|malignant) [WEIGHT <real>]
    expr   := and ( OR and )*
    and    := atom ( AND atom )*
    atom   := '(' expr ')' | <Feature> IS <Term>

`#` начинает комментарий до конца строки.
"""

import logging
import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from ..core.errors import (
    RuleSyntaxError,
    RuleWeightError,
    UnknownFeatureError,
    UnknownTermError,
)
from ..models.schemas import BENIGN, MALIGNANT
from .membership import MEMBERSHIP_TABLE, Term, lookup

logger = logging.getLogger(__name__)

Consequent = Literal["benign", "malignant"]
CONSEQUENT_LABELS: Mapping[str, int] = {"benign": BENIGN, "malignant": MALIGNANT}

KEYWORDS = frozenset({"RULE", "IF", "THEN", "AND", "OR", "IS", "WEIGHT", "class"})

_TOKEN_RE = re.compile(
    r"""
    (?P<newline>\n)
    |(?P<ws>[ \t\r\f]+)
    |(?P<comment>\#[^\n]*)
    |(?P<number>[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
    |(?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    |(?P<lparen>\()
    |(?P<rparen>\))
    |(?P<colon>:)
    |(?P<mismatch>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    value: str
    line: int
    column: int


# Дерево условия


@dataclass(frozen=True, slots=True)
class Clause:
    feature: str
    term: Term


@dataclass(frozen=True, slots=True)
class Conjunction:
    operands: tuple["Expr", ...]


@dataclass(frozen=True, slots=True)
class Disjunction:
    operands: tuple["Expr", ...]


type Expr = Clause | Conjunction | Disjunction


@dataclass(frozen=True, slots=True)
class Rule:
    name: str
    antecedent: Expr
    consequent: Consequent
    weight: float = 1.0

    @property
    def label(self) -> int:
        return CONSEQUENT_LABELS[self.consequent]


@dataclass(frozen=True, slots=True)
class RuleBase:
    rules: tuple[Rule, ...]
    # Выходные треугольники на области селектора [1, 5]
    output_sets: Mapping[int, tuple[float, float, float]] = field(
        default_factory=lambda: {BENIGN: (1.0, 2.0, 3.0), MALIGNANT: (3.0, 4.0, 5.0)}
    )

    def __hash__(self) -> int:
        return hash(self.rules)

    def uncovered_classes(self) -> list[str]:
        present = {r.consequent for r in self.rules}
        return [c for c in CONSEQUENT_LABELS if c not in present]


def tokenize(text: str) -> Iterator[Token]:
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup or "mismatch"
        column = match.start() - line_start + 1
        if kind == "newline":
            line, line_start = line + 1, match.end()
            continue
        if kind in {"ws", "comment"}:
            continue
        if kind == "mismatch":
            raise RuleSyntaxError(f"unexpected character {match.group()!r}", line, column)
        yield Token(kind, match.group(), line, column)
    yield Token("eof", "", line, len(text) - line_start + 1)


class RuleParser:
    """Парсер рекурсивного спуска; AND связывает сильнее OR."""

    def __init__(self, text: str) -> None:
        self.tokens = list(tokenize(text))
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.current
        if token.kind != "eof":
            self.pos += 1
        return token

    def _error(self, message: str, token: Token | None = None) -> RuleSyntaxError:
        token = token or self.current
        found = "end of input" if token.kind == "eof" else repr(token.value)
        return RuleSyntaxError(f"{message}, found {found}", token.line, token.column)

    def _at_keyword(self, keyword: str) -> bool:
        return self.current.kind == "ident" and self.current.value == keyword

    def _expect_keyword(self, keyword: str) -> Token:
        if not self._at_keyword(keyword):
            raise self._error(f"expected {keyword}")
        return self._advance()

    def _expect(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            raise self._error(f"expected {what}")
        return self._advance()

    def _identifier(self, what: str) -> Token:
        token = self._expect("ident", what)
        if token.value in KEYWORDS:
            raise self._error(f"expected {what}", token)
        return token

    def parse_rules(self) -> RuleBase:
        rules: list[Rule] = []
        names: set[str] = set()
        while self.current.kind != "eof":
            start = self.current
            rule = self._rule()
            if rule.name in names:
                raise RuleSyntaxError(f"duplicate rule name {rule.name}", start.line, start.column)
            names.add(rule.name)
            rules.append(rule)
        if not rules:
            raise self._error("expected at least one RULE")
        return RuleBase(rules=tuple(rules))

    def parse_expression(self) -> Expr:
        expr = self._or()
        if self.current.kind != "eof":
            raise self._error("expected end of condition")
        return expr

    def _rule(self) -> Rule:
        self._expect_keyword("RULE")
        name = self._identifier("rule name").value
        self._expect("colon", "':'")
        self._expect_keyword("IF")
        antecedent = self._or()
        self._expect_keyword("THEN")
        if self._at_keyword("class"):
            self._advance()
            self._expect_keyword("IS")
        consequent_token = self._expect("ident", "benign or malignant")
        if consequent_token.value not in CONSEQUENT_LABELS:
            raise self._error("expected benign or malignant", consequent_token)
        weight = 1.0
        if self._at_keyword("WEIGHT"):
            self._advance()
            weight_token = self._expect("number", "weight value")
            weight = float(weight_token.value)
            if not 0.0 < weight <= 1.0:
                raise RuleWeightError(
                    f"{weight_token.line}:{weight_token.column}: "
                    f"weight {weight_token.value} outside (0, 1] in rule {name}"
                )
        return Rule(
            name=name,
            antecedent=antecedent,
            consequent=consequent_token.value,  # pyright: ignore[reportArgumentType]
            weight=weight,
        )

    def _or(self) -> Expr:
        operands = [self._and()]
        while self._at_keyword("OR"):
            self._advance()
            operands.append(self._and())
        return _combine(Disjunction, operands)

    def _and(self) -> Expr:
        operands = [self._atom()]
        while self._at_keyword("AND"):
            self._advance()
            operands.append(self._atom())
        return _combine(Conjunction, operands)

    def _atom(self) -> Expr:
        if self.current.kind == "lparen":
            self._advance()
            expr = self._or()
            self._expect("rparen", "')'")
            return expr
        feature_token = self._identifier("feature name")
        self._expect_keyword("IS")
        term_token = self._identifier("term")
        where = f" (line {feature_token.line}, column {feature_token.column})"
        if feature_token.value not in MEMBERSHIP_TABLE:
            raise UnknownFeatureError(feature_token.value, where)
        try:
            spec = lookup(feature_token.value, term_token.value)
        except UnknownTermError:
            raise UnknownTermError(feature_token.value, term_token.value, where)
        return Clause(feature=spec.feature, term=spec.term)


def _combine(node: type[Conjunction] | type[Disjunction], operands: list[Expr]) -> Expr:
    if len(operands) == 1:
        return operands[0]
    flat: list[Expr] = []
    for op in operands:
        # Вложенная группа с той же связкой раскрывается
        if isinstance(op, node):
            flat.extend(op.operands)
        else:
            flat.append(op)
    return node(operands=tuple(flat))


def parse_rules(text: str) -> RuleBase:
    rule_base = RuleParser(text).parse_rules()
    for missing in rule_base.uncovered_classes():
        logger.warning(f"В базе правил нет ни одного правила для класса {missing}")
    return rule_base


def parse_expression(text: str) -> Expr:
    return RuleParser(text).parse_expression()


def load_rules(path: str | Path) -> RuleBase:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Rules file not found: {path}")
    return parse_rules(path.read_text(encoding="utf-8"))


def format_expr(expr: Expr) -> str:
    match expr:
        case Clause(feature=feature, term=term):
            return f"{feature} IS {term}"
        case Conjunction(operands=operands):
            parts = [
                f"({format_expr(op)})" if isinstance(op, Disjunction) else format_expr(op)
                for op in operands
            ]
            return " AND ".join(parts)
        case Disjunction(operands=operands):
            return " OR ".join(format_expr(op) for op in operands)


def format_rule(rule: Rule) -> str:
    text = f"RULE {rule.name}: IF {format_expr(rule.antecedent)} THEN class IS {rule.consequent}"
    if rule.weight != 1.0:
        text += f" WEIGHT {rule.weight!r}"
    return text


def format_rules(rule_base: RuleBase) -> str:
    return "".join(f"{format_rule(r)}\n" for r in rule_base.rules)
