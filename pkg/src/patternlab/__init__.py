"""Itemset mining problems, SAT gadgets reducing to them, and a harness that
checks gadget verdicts against brute-force oracles."""

from .dataset import (
    ItemUniverse,
    Itemset,
    TransactionDataset,
    cover,
    enumerate_frequent,
    frequency,
    is_frequent,
    read_dataset,
    write_dataset,
)
from .errors import (
    CapExceededError,
    EmptyPatternError,
    ParseError,
    PatternLabError,
    UndefinedConfidenceError,
    UniverseMismatchError,
    WitnessError,
)
from .rules import AssociationRule, confidence, exists_confident_rule_with_head_item, is_confident
from .sat import CnfFormula, evaluate, evaluate_1in3, random_formula, solve, solve_1in3
from .theory import (
    Border,
    CardNeq,
    ConstraintSet,
    MinFreq,
    OrEmptyNonempty,
    enumerate_closed,
    enumerate_maximal,
    is_closed,
    is_maximal,
    satisfies,
    theory,
)
from .utility import (
    QuantitativeDataset,
    enumerate_high_utility,
    exists_high_utility_itemset,
    is_high_utility,
    utility,
    utility_in_transaction,
)

__version__ = "0.1.0"

__all__ = [
    "ItemUniverse",
    "Itemset",
    "TransactionDataset",
    "cover",
    "enumerate_frequent",
    "frequency",
    "is_frequent",
    "read_dataset",
    "write_dataset",
    "CapExceededError",
    "EmptyPatternError",
    "ParseError",
    "PatternLabError",
    "UndefinedConfidenceError",
    "UniverseMismatchError",
    "WitnessError",
    "AssociationRule",
    "confidence",
    "exists_confident_rule_with_head_item",
    "is_confident",
    "CnfFormula",
    "evaluate",
    "evaluate_1in3",
    "random_formula",
    "solve",
    "solve_1in3",
    "Border",
    "CardNeq",
    "ConstraintSet",
    "MinFreq",
    "OrEmptyNonempty",
    "enumerate_closed",
    "enumerate_maximal",
    "is_closed",
    "is_maximal",
    "satisfies",
    "theory",
    "QuantitativeDataset",
    "enumerate_high_utility",
    "exists_high_utility_itemset",
    "is_high_utility",
    "utility",
    "utility_in_transaction",
]
