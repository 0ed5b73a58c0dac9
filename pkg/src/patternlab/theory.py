"""Constraints over itemsets, theories, and maximal/closed membership checks.

The constraint language is deliberately small: a minimum frequency, a
cardinality disequality ``|P & scope| != k``, and the disjunction
``P & left == 0 or P & right != 0``.
"""
from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Union

from .dataset import (
    ItemUniverse,
    Itemset,
    TransactionDataset,
    _check_pattern,
    _support,
    size,
)
from .errors import ParseError, UniverseMismatchError


@dataclass(frozen=True)
class MinFreq:
    s: int

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("minfreq threshold must be >= 0")

    def holds(self, dataset: TransactionDataset, pattern: Itemset) -> bool:
        return _support(dataset.transactions, pattern) >= self.s

    def to_sexp(self, universe: ItemUniverse) -> str:
        return f"(minfreq {self.s})"


@dataclass(frozen=True)
class CardNeq:
    scope: Itemset
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("card-neq k must be >= 0")

    def holds(self, dataset: TransactionDataset, pattern: Itemset) -> bool:
        return size(pattern & self.scope) != self.k

    def to_sexp(self, universe: ItemUniverse) -> str:
        return f"(card-neq ({' '.join(universe.tokens(self.scope))}) {self.k})"


@dataclass(frozen=True)
class OrEmptyNonempty:
    left: Itemset
    right: Itemset

    def holds(self, dataset: TransactionDataset, pattern: Itemset) -> bool:
        return not (pattern & self.left) or bool(pattern & self.right)

    def to_sexp(self, universe: ItemUniverse) -> str:
        left = " ".join(universe.tokens(self.left))
        right = " ".join(universe.tokens(self.right))
        return f"(or-empty-nonempty ({left}) ({right}))"


ConstraintTerm = Union[MinFreq, CardNeq, OrEmptyNonempty]


@dataclass(frozen=True)
class ConstraintSet:
    """Conjunction of constraint terms."""

    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def __iter__(self) -> Iterator[ConstraintTerm]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def min_frequency(self) -> int:
        return max((t.s for t in self.terms if isinstance(t, MinFreq)), default=0)


class Border(enum.Enum):
    """Outcome of a maximal/closed check. Only ``YES`` is truthy."""

    YES = "yes"
    NO = "no"
    NOT_IN_THEORY = "not-in-theory"

    def __bool__(self) -> bool:
        return self is Border.YES


def _as_set(C) -> ConstraintSet:
    return C if isinstance(C, ConstraintSet) else ConstraintSet(tuple(C))


def check_constraints(dataset: TransactionDataset, C) -> None:
    for term in _as_set(C):
        if isinstance(term, CardNeq):
            dataset.universe.check(term.scope)
        elif isinstance(term, OrEmptyNonempty):
            dataset.universe.check(term.left)
            dataset.universe.check(term.right)


def satisfies(dataset: TransactionDataset, pattern: Itemset, C) -> bool:
    _check_pattern(dataset, pattern)
    return all(term.holds(dataset, pattern) for term in _as_set(C))


def theory(dataset: TransactionDataset, C) -> list[Itemset]:
    """Non-empty itemsets satisfying every term of ``C``, canonical order.

    Subtrees whose cover drops under the largest minfreq threshold are cut;
    no other term is monotone, so everything else is checked per node.
    """
    C = _as_set(C)
    check_constraints(dataset, C)
    s = C.min_frequency()
    others = [t for t in C if not isinstance(t, MinFreq)]
    trans = dataset.transactions
    n = dataset.n
    out: list[Itemset] = []

    def extend(prefix: Itemset, tids: list[int], start: int) -> None:
        for i in range(start, n):
            bit = 1 << i
            sub = [j for j in tids if trans[j] & bit]
            if len(sub) < s:
                continue
            p = prefix | bit
            if all(t.holds(dataset, p) for t in others):
                out.append(p)
            extend(p, sub, i + 1)

    extend(0, list(range(len(trans))), 0)
    return out


def iter_strict_supersets(universe_size: int, pattern: Itemset) -> Iterator[Itemset]:
    """Strict supersets of ``pattern`` by number of added items, then lexicographically."""
    free = [i for i in range(universe_size) if not pattern >> i & 1]
    for k in range(1, len(free) + 1):
        for extra in combinations(free, k):
            q = pattern
            for i in extra:
                q |= 1 << i
            yield q


def find_superset_witness(
    dataset: TransactionDataset, pattern: Itemset, C, same_frequency: bool = False
) -> Optional[Itemset]:
    """First strict superset of ``pattern`` inside the theory, or ``None``.

    With ``same_frequency`` the superset must also match the frequency of
    ``pattern`` (a witness against closedness rather than maximality).
    """
    C = _as_set(C)
    f = _support(dataset.transactions, pattern)
    for q in iter_strict_supersets(dataset.n, pattern):
        if same_frequency and _support(dataset.transactions, q) != f:
            continue
        if all(t.holds(dataset, q) for t in C):
            return q
    return None


def is_maximal(dataset: TransactionDataset, pattern: Itemset, C) -> Border:
    C = _as_set(C)
    check_constraints(dataset, C)
    if not satisfies(dataset, pattern, C):
        return Border.NOT_IN_THEORY
    return Border.NO if find_superset_witness(dataset, pattern, C) is not None else Border.YES


def is_closed(dataset: TransactionDataset, pattern: Itemset, C) -> Border:
    C = _as_set(C)
    check_constraints(dataset, C)
    if not satisfies(dataset, pattern, C):
        return Border.NOT_IN_THEORY
    witness = find_superset_witness(dataset, pattern, C, same_frequency=True)
    return Border.NO if witness is not None else Border.YES


def enumerate_maximal(dataset: TransactionDataset, C) -> list[Itemset]:
    th = theory(dataset, C)
    return [p for p in th if not any(q != p and q & p == p for q in th)]


def enumerate_closed(dataset: TransactionDataset, C) -> list[Itemset]:
    th = theory(dataset, C)
    freq = {p: _support(dataset.transactions, p) for p in th}
    return [
        p for p in th
        if not any(q != p and q & p == p and freq[q] == freq[p] for q in th)
    ]


# ---------------------------------------------------------------- file format

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def _read_sexp(tokens: list[str], pos: int, lineno: int, source):
    if pos >= len(tokens):
        raise ParseError("unexpected end of term", lineno, source)
    tok = tokens[pos]
    if tok == ")":
        raise ParseError("unexpected ')'", lineno, source)
    if tok != "(":
        return tok, pos + 1
    items = []
    pos += 1
    while True:
        if pos >= len(tokens):
            raise ParseError("missing ')'", lineno, source)
        if tokens[pos] == ")":
            return items, pos + 1
        item, pos = _read_sexp(tokens, pos, lineno, source)
        items.append(item)


def _scope(universe: ItemUniverse, node, lineno, source) -> Itemset:
    if not isinstance(node, list) or any(isinstance(x, list) for x in node):
        raise ParseError("expected a flat token list like (a b c)", lineno, source)
    try:
        return universe.itemset(node)
    except UniverseMismatchError as exc:
        raise ParseError(str(exc), lineno, source) from None


def _int(node, lineno, source) -> int:
    if isinstance(node, list):
        raise ParseError("expected an integer", lineno, source)
    try:
        value = int(node)
    except ValueError:
        raise ParseError(f"expected an integer, got {node!r}", lineno, source) from None
    if value < 0:
        raise ParseError("integers in constraints must be >= 0", lineno, source)
    return value


def parse_term(line: str, universe: ItemUniverse, lineno=None, source=None) -> ConstraintTerm:
    tokens = _TOKEN.findall(line)
    node, pos = _read_sexp(tokens, 0, lineno, source)
    if pos != len(tokens):
        raise ParseError("trailing input after term", lineno, source)
    if not isinstance(node, list) or not node or isinstance(node[0], list):
        raise ParseError("expected (name args...)", lineno, source)
    name, args = node[0], node[1:]
    if name == "minfreq" and len(args) == 1:
        return MinFreq(_int(args[0], lineno, source))
    if name == "card-neq" and len(args) == 2:
        return CardNeq(_scope(universe, args[0], lineno, source), _int(args[1], lineno, source))
    if name == "or-empty-nonempty" and len(args) == 2:
        return OrEmptyNonempty(
            _scope(universe, args[0], lineno, source), _scope(universe, args[1], lineno, source)
        )
    raise ParseError(f"unknown or malformed term {name!r}/{len(args)}", lineno, source)


def loads_constraints(text: str, universe: ItemUniverse, source=None) -> ConstraintSet:
    terms = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        terms.append(parse_term(stripped, universe, lineno, source))
    return ConstraintSet(tuple(terms))


def dumps_constraints(C: Iterable[ConstraintTerm], universe: ItemUniverse) -> str:
    return "".join(term.to_sexp(universe) + "\n" for term in C)


def read_constraints(path, universe: ItemUniverse) -> ConstraintSet:
    with open(path, encoding="utf-8") as fh:
        return loads_constraints(fh.read(), universe, os.fspath(path))


def write_constraints(C, universe: ItemUniverse, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_constraints(C, universe))
