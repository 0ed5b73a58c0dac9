"""Quantitative transactions and high-utility itemsets."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .dataset import (
    EMPTY_TRANSACTION,
    ItemUniverse,
    Itemset,
    TransactionDataset,
    _check_pattern,
    _content_lines,
    _parse_header,
    _split_text,
    members,
)
from .errors import ParseError, UniverseMismatchError


@dataclass(frozen=True)
class QuantitativeDataset:
    """Transactions with per-item quantities and a per-item unit utility.

    ``cardinalities[j][i]`` is the quantity of item ``i`` in transaction ``j``;
    an item belongs to ``t_j`` exactly when its quantity is positive.
    """

    base: TransactionDataset
    cardinalities: tuple[tuple[int, ...], ...]
    utilities: tuple[int, ...]

    def __post_init__(self):
        n, m = self.base.n, self.base.m
        card = tuple(tuple(row) for row in self.cardinalities)
        util = tuple(self.utilities)
        object.__setattr__(self, "cardinalities", card)
        object.__setattr__(self, "utilities", util)
        if len(util) != n:
            raise ValueError(f"need {n} utilities, got {len(util)}")
        if len(card) != m:
            raise ValueError(f"need {m} cardinality vectors, got {len(card)}")
        for x in util:
            if not isinstance(x, int) or x < 0:
                raise ValueError(f"utilities must be non-negative integers, got {x!r}")
        for j, (row, t) in enumerate(zip(card, self.base.transactions)):
            if len(row) != n:
                raise ValueError(f"cardinality vector {j} has length {len(row)}, expected {n}")
            for i, q in enumerate(row):
                if not isinstance(q, int) or q < 0:
                    raise ValueError(f"cardinalities must be non-negative integers, got {q!r}")
                if (q > 0) != bool(t >> i & 1):
                    raise ValueError(f"transaction {j}: membership of item {i} disagrees with quantity {q}")

    @classmethod
    def from_matrix(cls, items: Sequence[str], cardinalities, utilities) -> "QuantitativeDataset":
        """Build from a quantity matrix; membership is read off the positive entries."""
        universe = ItemUniverse(tuple(items))
        rows = [tuple(int(q) for q in row) for row in cardinalities]
        trans = []
        for row in rows:
            mask = 0
            for i, q in enumerate(row):
                if q > 0:
                    mask |= 1 << i
            trans.append(mask)
        return cls(TransactionDataset(universe, tuple(trans)), tuple(rows), tuple(int(x) for x in utilities))

    @property
    def universe(self) -> ItemUniverse:
        return self.base.universe

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    def itemset(self, tokens) -> Itemset:
        return self.base.itemset(tokens)

    def transaction_utility(self, j: int) -> int:
        """Utility of the whole transaction ``t_j``."""
        return sum(q * u for q, u in zip(self.cardinalities[j], self.utilities))


def utility_in_transaction(qd: QuantitativeDataset, pattern: Itemset, j: int) -> int:
    _check_pattern(qd.base, pattern)
    if not 0 <= j < qd.m:
        raise IndexError(f"transaction index {j} out of range 0..{qd.m - 1}")
    if pattern & qd.base.transactions[j] != pattern:
        return 0
    row = qd.cardinalities[j]
    return sum(row[i] * qd.utilities[i] for i in members(pattern))


def utility(qd: QuantitativeDataset, pattern: Itemset) -> int:
    _check_pattern(qd.base, pattern)
    ids = members(pattern)
    total = 0
    for t, row in zip(qd.base.transactions, qd.cardinalities):
        if pattern & t == pattern:
            total += sum(row[i] * qd.utilities[i] for i in ids)
    return total


def is_high_utility(qd: QuantitativeDataset, pattern: Itemset, ut: int) -> bool:
    return utility(qd, pattern) >= _check_threshold(ut)


def twu(qd: QuantitativeDataset, pattern: Itemset) -> int:
    """Transaction-weighted utility: summed transaction utilities over the cover.

    Upper-bounds the utility of ``pattern`` and of every superset.
    """
    _check_pattern(qd.base, pattern)
    return sum(
        qd.transaction_utility(j)
        for j, t in enumerate(qd.base.transactions)
        if pattern & t == pattern
    )


def _check_threshold(ut: int) -> int:
    if not isinstance(ut, int) or ut < 0:
        raise ValueError(f"utility threshold must be a non-negative integer, got {ut!r}")
    return ut


def iter_high_utility(qd: QuantitativeDataset, ut: int, prune: bool = True) -> Iterator[tuple[Itemset, int]]:
    """Yield ``(pattern, utility)`` for every pattern reaching ``ut``, canonical order.

    Depth-first set extension. With ``prune`` a subtree is skipped once the
    transaction-weighted utility of its root falls below ``ut``.
    """
    ut = _check_threshold(ut)
    n = qd.n
    trans = qd.base.transactions
    card = qd.cardinalities
    util = qd.utilities
    tu = [qd.transaction_utility(j) for j in range(qd.m)]

    def extend(prefix: Itemset, tids: list[int], acc: list[int], start: int):
        for i in range(start, n):
            bit = 1 << i
            w = util[i]
            sub, sub_acc = [], []
            for j, a in zip(tids, acc):
                if trans[j] & bit:
                    sub.append(j)
                    sub_acc.append(a + card[j][i] * w)
            if prune and sum(tu[j] for j in sub) < ut:
                continue
            p = prefix | bit
            value = sum(sub_acc)
            if value >= ut:
                yield p, value
            yield from extend(p, sub, sub_acc, i + 1)

    tids = list(range(qd.m))
    yield from extend(0, tids, [0] * len(tids), 0)


def enumerate_high_utility(qd: QuantitativeDataset, ut: int, prune: bool = True) -> list[Itemset]:
    return [p for p, _ in iter_high_utility(qd, ut, prune)]


def exists_high_utility_itemset(qd: QuantitativeDataset, ut: int, prune: bool = True) -> Optional[Itemset]:
    """First pattern in canonical order with utility >= ``ut``, else ``None``."""
    for p, _ in iter_high_utility(qd, ut, prune):
        return p
    return None


# ---------------------------------------------------------------- file format


def loads_quantitative(text: str, utilities_text: str, source=None, utilities_source=None) -> QuantitativeDataset:
    lines = _content_lines(_split_text(text))
    universe = _parse_header(lines, source)
    n = len(universe)
    rows = []
    for lineno, line in lines:
        tokens = line.split()
        if not tokens:
            raise ParseError("blank transaction line; write '-' for an empty transaction", lineno, source)
        row = [0] * n
        if tokens != [EMPTY_TRANSACTION]:
            for pair in tokens:
                tok, sep, qty = pair.rpartition(":")
                if not sep or not tok:
                    raise ParseError(f"expected tok:qty, got {pair!r}", lineno, source)
                try:
                    i = universe.id_of(tok)
                    q = int(qty)
                except UniverseMismatchError as exc:
                    raise ParseError(str(exc), lineno, source) from None
                except ValueError:
                    raise ParseError(f"bad quantity in {pair!r}", lineno, source) from None
                if q < 1:
                    raise ParseError(f"quantity must be >= 1 in {pair!r}", lineno, source)
                if row[i]:
                    raise ParseError(f"duplicate item {tok!r} in transaction", lineno, source)
                row[i] = q
        rows.append(row)
    utilities = _loads_utilities(utilities_text, universe, utilities_source)
    return QuantitativeDataset.from_matrix(universe.names, rows, utilities)


def _loads_utilities(text: str, universe: ItemUniverse, source=None) -> list[int]:
    values: list[Optional[int]] = [None] * len(universe)
    for lineno, line in _content_lines(_split_text(text)):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError("expected 'tok<TAB>utility'", lineno, source)
        tok, raw = parts[0].strip(), parts[1].strip()
        try:
            i = universe.id_of(tok)
            value = int(raw)
        except UniverseMismatchError as exc:
            raise ParseError(str(exc), lineno, source) from None
        except ValueError:
            raise ParseError(f"bad utility {raw!r}", lineno, source) from None
        if value < 0:
            raise ParseError("utilities must be non-negative", lineno, source)
        if values[i] is not None:
            raise ParseError(f"utility for {tok!r} given twice", lineno, source)
        values[i] = value
    missing = [universe.names[i] for i, v in enumerate(values) if v is None]
    if missing:
        raise ParseError(f"no utility for items {missing}", None, source)
    return values  # type: ignore[return-value]


def dumps_quantitative(qd: QuantitativeDataset) -> tuple[str, str]:
    """Return ``(dataset_text, utilities_text)``."""
    names = qd.universe.names
    lines = ["items: " + " ".join(names)]
    for row in qd.cardinalities:
        pairs = [f"{names[i]}:{q}" for i, q in enumerate(row) if q > 0]
        lines.append(" ".join(pairs) if pairs else EMPTY_TRANSACTION)
    utext = "".join(f"{tok}\t{u}\n" for tok, u in zip(names, qd.utilities))
    return "\n".join(lines) + "\n", utext


def read_quantitative(path, utilities_path) -> QuantitativeDataset:
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    with open(utilities_path, encoding="utf-8", newline="") as fh:
        utext = fh.read()
    return loads_quantitative(text, utext, os.fspath(path), os.fspath(utilities_path))


def write_quantitative(qd: QuantitativeDataset, path, utilities_path) -> None:
    text, utext = dumps_quantitative(qd)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    with open(utilities_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(utext)
