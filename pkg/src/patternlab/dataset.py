"""Item universes, transaction bags, cover and frequency.

Itemsets are plain ``int`` bit masks over the universe: bit ``i`` set means
item id ``i`` is a member. Subset tests are then ``p & t == p``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import EmptyPatternError, ParseError, UniverseMismatchError

Itemset = int

EMPTY_TRANSACTION = "-"


def members(itemset: Itemset) -> tuple[int, ...]:
    """Ascending item ids of ``itemset``."""
    out = []
    i = 0
    while itemset:
        if itemset & 1:
            out.append(i)
        itemset >>= 1
        i += 1
    return tuple(out)


def from_ids(ids: Iterable[int]) -> Itemset:
    mask = 0
    for i in ids:
        if i < 0:
            raise UniverseMismatchError(f"negative item id {i}")
        mask |= 1 << i
    return mask


def size(itemset: Itemset) -> int:
    return bin(itemset).count("1")


def is_subset(small: Itemset, big: Itemset) -> bool:
    return small & big == small


def canonical_key(itemset: Itemset) -> tuple[int, ...]:
    """Sort key for the canonical (lexicographic by item id) order."""
    return members(itemset)


@dataclass(frozen=True)
class ItemUniverse:
    names: tuple[str, ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        index = {}
        for i, tok in enumerate(names):
            if not isinstance(tok, str) or not tok or any(c.isspace() for c in tok):
                raise ValueError(f"invalid item token {tok!r}")
            if tok in index:
                raise ValueError(f"duplicate item token {tok!r}")
            index[tok] = i
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.names)

    @property
    def full(self) -> Itemset:
        return (1 << len(self.names)) - 1

    def id_of(self, token: str) -> int:
        try:
            return self.index[token]
        except KeyError:
            raise UniverseMismatchError(f"unknown item {token!r}") from None

    def itemset(self, tokens: Iterable[str]) -> Itemset:
        """Mask for ``tokens``. A bare string is split on whitespace."""
        if isinstance(tokens, str):
            tokens = tokens.split()
        return from_ids(self.id_of(t) for t in tokens)

    def tokens(self, itemset: Itemset) -> list[str]:
        self.check(itemset)
        return [self.names[i] for i in members(itemset)]

    def format(self, itemset: Itemset) -> str:
        return "{" + ", ".join(self.tokens(itemset)) + "}"

    def check(self, itemset: Itemset) -> None:
        if itemset < 0 or itemset >> len(self.names):
            raise UniverseMismatchError(
                f"itemset {itemset:#x} has items outside a universe of {len(self.names)}"
            )


@dataclass(frozen=True)
class TransactionDataset:
    """A bag of transactions. Order and duplicates are preserved."""

    universe: ItemUniverse
    transactions: tuple[Itemset, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "transactions", tuple(self.transactions))
        for t in self.transactions:
            self.universe.check(t)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(self.transactions):
                raise ValueError("one label per transaction required")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_tokens(cls, items: Sequence[str], rows: Iterable[Iterable[str]], labels=None):
        universe = ItemUniverse(tuple(items))
        return cls(universe, tuple(universe.itemset(r) for r in rows), labels)

    @property
    def m(self) -> int:
        return len(self.transactions)

    @property
    def n(self) -> int:
        return len(self.universe)

    def itemset(self, tokens) -> Itemset:
        return self.universe.itemset(tokens)

    def label(self, j: int) -> str:
        if self.labels is not None:
            return self.labels[j]
        return f"t{j + 1}"

    def __len__(self) -> int:
        return len(self.transactions)

    def __iter__(self) -> Iterator[Itemset]:
        return iter(self.transactions)


def _check_pattern(dataset: TransactionDataset, pattern: Itemset) -> None:
    dataset.universe.check(pattern)
    if pattern == 0:
        raise EmptyPatternError("patterns must be non-empty")


def cover(dataset: TransactionDataset, pattern: Itemset) -> list[int]:
    """Indices of the transactions containing ``pattern``, in dataset order."""
    _check_pattern(dataset, pattern)
    return [j for j, t in enumerate(dataset.transactions) if pattern & t == pattern]


def frequency(dataset: TransactionDataset, pattern: Itemset) -> int:
    _check_pattern(dataset, pattern)
    return sum(1 for t in dataset.transactions if pattern & t == pattern)


def is_frequent(dataset: TransactionDataset, pattern: Itemset, s: int) -> bool:
    if s < 0:
        raise ValueError("frequency threshold must be >= 0")
    return frequency(dataset, pattern) >= s


def _support(transactions: Sequence[Itemset], pattern: Itemset) -> int:
    # cover(empty) is every transaction; rule bodies rely on this.
    return sum(1 for t in transactions if pattern & t == pattern)


def enumerate_frequent(dataset: TransactionDataset, s: int) -> list[Itemset]:
    """All non-empty itemsets with frequency >= ``s``, in canonical order.

    Depth-first extension by increasing item id; a branch is cut as soon as
    its cover drops below ``s`` (frequency is anti-monotone).
    """
    if s < 1:
        raise ValueError("enumerate_frequent needs s >= 1")
    trans = dataset.transactions
    n = dataset.n
    out: list[Itemset] = []

    def extend(prefix: Itemset, tids: list[int], start: int) -> None:
        for i in range(start, n):
            bit = 1 << i
            sub = [j for j in tids if trans[j] & bit]
            if len(sub) >= s:
                p = prefix | bit
                out.append(p)
                extend(p, sub, i + 1)

    extend(0, list(range(len(trans))), 0)
    return out


def iter_subsets(pool: Itemset) -> Iterator[Itemset]:
    """Non-empty subsets of ``pool`` in canonical order (depth-first, by id)."""
    ids = members(pool)

    def extend(prefix: Itemset, start: int):
        for k in range(start, len(ids)):
            p = prefix | (1 << ids[k])
            yield p
            yield from extend(p, k + 1)

    return extend(0, 0)


def all_itemsets(n: int) -> list[Itemset]:
    """Every non-empty itemset over ``n`` items in canonical order."""
    return list(iter_subsets((1 << n) - 1))


# ---------------------------------------------------------------- file format


def _content_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if line.startswith("#"):
            continue
        yield lineno, line


def _parse_header(lines, source) -> ItemUniverse:
    for lineno, line in lines:
        head, sep, rest = line.partition(":")
        if not sep or head.strip() != "items":
            raise ParseError("expected 'items: tok1 tok2 ...' header", lineno, source)
        try:
            return ItemUniverse(tuple(rest.split()))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, source) from None
    raise ParseError("missing 'items:' header", None, source)


def _split_text(text: str):
    # a single trailing newline terminates the last line, it is not a blank row
    if text.endswith("\n"):
        text = text[:-1]
    return text


def parse_transaction_line(line: str, lineno: int, source=None) -> list[str]:
    tokens = line.split()
    if not tokens:
        raise ParseError("blank transaction line; write '-' for an empty transaction", lineno, source)
    if tokens == [EMPTY_TRANSACTION]:
        return []
    seen = set()
    for tok in tokens:
        if tok in seen:
            raise ParseError(f"duplicate item {tok!r} in transaction", lineno, source)
        seen.add(tok)
    return tokens


def loads_dataset(text: str, source=None) -> TransactionDataset:
    lines = _content_lines(_split_text(text))
    universe = _parse_header(lines, source)
    rows = []
    for lineno, line in lines:
        tokens = parse_transaction_line(line, lineno, source)
        try:
            rows.append(universe.itemset(tokens))
        except UniverseMismatchError as exc:
            raise ParseError(str(exc), lineno, source) from None
    return TransactionDataset(universe, tuple(rows))


def dumps_dataset(dataset: TransactionDataset) -> str:
    lines = ["items: " + " ".join(dataset.universe.names)]
    for t in dataset.transactions:
        toks = dataset.universe.tokens(t)
        lines.append(" ".join(toks) if toks else EMPTY_TRANSACTION)
    return "\n".join(lines) + "\n"


def read_dataset(path) -> TransactionDataset:
    with open(path, encoding="utf-8", newline="") as fh:
        return loads_dataset(fh.read(), source=os.fspath(path))


def write_dataset(dataset: TransactionDataset, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_dataset(dataset))
