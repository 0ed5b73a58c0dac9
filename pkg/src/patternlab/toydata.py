"""Small reference datasets used by the demo and the test-suite."""
from __future__ import annotations

from .dataset import TransactionDataset
from .sat import CnfFormula
from .utility import QuantitativeDataset

ITEMS = ("A", "B", "C", "D", "E")

BASKETS = (
    "A B D E",
    "A C",
    "A B C E",
    "B C E",
    "A B C E",
)

QUANTITIES = (
    (5, 7, 0, 3, 1),
    (4, 0, 8, 0, 0),
    (2, 11, 14, 0, 3),
    (0, 9, 24, 0, 1),
    (6, 5, 11, 0, 2),
)

UNIT_UTILITIES = (25, 14, 12, 36, 34)

# single clause v1 | ~v2 | v3 and the two-clause positive formula used for the utility gadget
ONE_CLAUSE = CnfFormula(3, ((1, -2, 3),))
TWO_POSITIVE_CLAUSES = CnfFormula(5, ((1, 2, 3), (2, 4, 5)))


def baskets() -> TransactionDataset:
    """Five items, five transactions."""
    return TransactionDataset.from_tokens(ITEMS, [row.split() for row in BASKETS])


def quantified_baskets() -> QuantitativeDataset:
    """The same baskets with purchase quantities and unit profits."""
    return QuantitativeDataset.from_matrix(ITEMS, QUANTITIES, UNIT_UTILITIES)
