"""Association rules with exact-rational confidence, and the search for a
confident rule whose head contains a given item."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dataset import Itemset, TransactionDataset, _support, canonical_key, iter_subsets
from .errors import UndefinedConfidenceError, UniverseMismatchError


@dataclass(frozen=True)
class AssociationRule:
    """``body -> head``. The body may be empty (it then covers every transaction)."""

    body: Itemset
    head: Itemset

    def __post_init__(self):
        if self.head == 0:
            raise ValueError("rule head must be non-empty")
        if self.body & self.head:
            raise ValueError("rule body and head must be disjoint")
        if self.body < 0 or self.head < 0:
            raise ValueError("itemsets are non-negative masks")


def parse_threshold(value) -> Fraction:
    """Exact confidence threshold from ``"1/2"``, ``"0.5"``, ``"60%"`` or a number."""
    if isinstance(value, str):
        text = value.strip()
        if text.endswith("%"):
            c = Fraction(text[:-1].strip()) / 100
        else:
            c = Fraction(text)
    elif isinstance(value, float):
        # floats go through their shortest repr so 0.6 means 3/5, not the binary value
        c = Fraction(repr(value))
    else:
        c = Fraction(value)
    if not 0 <= c <= 1:
        raise ValueError(f"confidence threshold {c} outside [0, 1]")
    return c


def _check_rule(dataset: TransactionDataset, rule: AssociationRule) -> None:
    dataset.universe.check(rule.body)
    dataset.universe.check(rule.head)


def confidence(dataset: TransactionDataset, rule: AssociationRule) -> Fraction:
    """``freq(body | head) / freq(body)`` as an exact fraction."""
    _check_rule(dataset, rule)
    f_body = _support(dataset.transactions, rule.body)
    if f_body == 0:
        raise UndefinedConfidenceError("confidence undefined: body has frequency 0")
    return Fraction(_support(dataset.transactions, rule.body | rule.head), f_body)


def is_confident(dataset: TransactionDataset, rule: AssociationRule, c) -> bool:
    return confidence(dataset, rule) >= parse_threshold(c)


def exists_confident_rule_with_head_item(
    dataset: TransactionDataset, z: int, c
) -> Optional[AssociationRule]:
    """First confident rule (canonical order) whose head contains item ``z``.

    Bodies are visited in canonical order starting with the empty body, and
    for each body the heads containing ``z`` in canonical order. Two cuts keep
    this cheap: a body with frequency 0 ends its whole subtree, and since a
    larger head can only shrink ``freq(body | head)``, a body whose rule
    ``body -> {z}`` is not confident has no confident head at all.
    """
    c = parse_threshold(c)
    if not 0 <= z < dataset.n:
        raise UniverseMismatchError(f"head item id {z} outside universe")
    trans = dataset.transactions
    zbit = 1 << z
    others = [i for i in range(dataset.n) if i != z]
    num, den = c.numerator, c.denominator

    def first_head(body: Itemset, f_body: int) -> AssociationRule:
        free = dataset.universe.full & ~body & ~zbit
        heads = [zbit] + [s | zbit for s in iter_subsets(free)]
        heads.sort(key=canonical_key)
        for head in heads:
            if _support(trans, body | head) * den >= num * f_body:
                return AssociationRule(body, head)
        raise AssertionError("head {z} was confident")  # pragma: no cover

    def visit(body: Itemset, tids: list[int]) -> Optional[AssociationRule]:
        f_body = len(tids)
        f_z = sum(1 for j in tids if trans[j] & zbit)
        if f_z * den >= num * f_body:
            return first_head(body, f_body)
        return None

    def extend(body: Itemset, tids: list[int], start: int) -> Optional[AssociationRule]:
        for k in range(start, len(others)):
            bit = 1 << others[k]
            sub = [j for j in tids if trans[j] & bit]
            if not sub:
                continue
            child = body | bit
            found = visit(child, sub) or extend(child, sub, k + 1)
            if found:
                return found
        return None

    tids = list(range(len(trans)))
    if not tids:
        return None
    return visit(0, tids) or extend(0, tids, 0)


def format_rule(dataset: TransactionDataset, rule: AssociationRule, conf: Fraction | None = None) -> str:
    """``{X} -> {Y} @ conf p/q`` with tokens in universe order."""
    if conf is None:
        conf = confidence(dataset, rule)
    u = dataset.universe
    return f"{u.format(rule.body)} -> {u.format(rule.head)} @ conf {conf.numerator}/{conf.denominator}"
