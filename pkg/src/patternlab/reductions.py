"""Gadget generators turning a 3-CNF formula into a mining instance, with the
maps between formula assignments and mining witnesses in both directions.

Item naming is fixed so emitted files are reproducible byte for byte:
``pos<i>``/``neg<i>`` for the two polarities of variable ``i``, ``p<i>`` for
variable ``i`` in the utility gadget, ``cl<j>`` for clause ``j`` and ``z`` for
the distinguished item.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .dataset import ItemUniverse, Itemset, TransactionDataset, write_dataset
from .errors import WitnessError
from .rules import AssociationRule, confidence
from .sat import Assignment, CnfFormula, evaluate, evaluate_1in3
from .theory import CardNeq, ConstraintSet, MinFreq, OrEmptyNonempty, satisfies, write_constraints
from .utility import QuantitativeDataset, utility, write_quantitative

CONFRULE_THRESHOLD = Fraction(1, 2)


def _polarity_items(n: int) -> list[str]:
    names = []
    for i in range(1, n + 1):
        names += [f"pos{i}", f"neg{i}"]
    return names


def _lit_item(universe: ItemUniverse, lit: int) -> int:
    return universe.id_of(f"pos{lit}" if lit > 0 else f"neg{-lit}")


# ------------------------------------------------------------ confident rules


@dataclass(frozen=True)
class ConfRuleInstance:
    formula: CnfFormula
    dataset: TransactionDataset
    head_item: int
    threshold: Fraction = CONFRULE_THRESHOLD


def reduce_confrule(formula: CnfFormula) -> ConfRuleInstance:
    """Dataset of ``5n + m`` transactions where a confident rule with ``z`` in its
    head exists exactly when ``formula`` is satisfiable.

    Rows: ``n`` copies of All-{z}; per variable All-{pos_i}, All-{neg_i} and two
    copies of All-{pos_i, neg_i, z}; per clause All minus its literal items and z.
    """
    n = formula.num_vars
    universe = ItemUniverse(tuple(_polarity_items(n) + ["z"]))
    full = universe.full
    z = 1 << universe.id_of("z")
    rows = [full & ~z] * n
    for i in range(1, n + 1):
        pos = 1 << universe.id_of(f"pos{i}")
        neg = 1 << universe.id_of(f"neg{i}")
        rows += [full & ~pos, full & ~neg, full & ~(pos | neg | z), full & ~(pos | neg | z)]
    for cl in formula.clauses:
        missing = z
        for lit in cl:
            missing |= 1 << _lit_item(universe, lit)
        rows.append(full & ~missing)
    return ConfRuleInstance(formula, TransactionDataset(universe, tuple(rows)), universe.id_of("z"))


def confrule_forward(instance: ConfRuleInstance, assignment: Sequence[bool]) -> AssociationRule:
    """Rule ``X -> {z}`` with ``pos_i`` in X for true variables and ``neg_i`` for false ones."""
    if not evaluate(instance.formula, assignment):
        raise WitnessError("assignment does not satisfy the formula")
    u = instance.dataset.universe
    body = 0
    for i, value in enumerate(assignment, start=1):
        body |= 1 << u.id_of(f"pos{i}" if value else f"neg{i}")
    return AssociationRule(body, 1 << instance.head_item)


def confrule_backward(instance: ConfRuleInstance, rule: AssociationRule) -> Assignment:
    """Read an assignment off a confident rule: ``v_i`` is true iff ``pos_i`` is in the body."""
    u = instance.dataset.universe
    if not rule.head >> instance.head_item & 1:
        raise WitnessError("rule head does not contain z")
    values = []
    for i in range(1, instance.formula.num_vars + 1):
        has_pos = bool(rule.body >> u.id_of(f"pos{i}") & 1)
        has_neg = bool(rule.body >> u.id_of(f"neg{i}") & 1)
        if has_pos == has_neg:
            which = "both" if has_pos else "neither"
            raise WitnessError(f"variable {i}: body holds {which} of pos{i}/neg{i}")
        values.append(has_pos)
    if confidence(instance.dataset, rule) < instance.threshold:
        raise WitnessError("rule is not confident")
    return tuple(values)


# ------------------------------------------------------------ high utility


@dataclass(frozen=True)
class HuiInstance:
    formula: CnfFormula
    qd: QuantitativeDataset
    threshold: int


def reduce_hui(formula: CnfFormula) -> HuiInstance:
    """Quantitative dataset of ``3m`` transactions and unit utilities where an
    itemset reaches ``3 n m**2`` exactly when ``formula`` is 1-in-3 satisfiable.

    Clause ``(a, b, c)`` adds three rows; row ``k`` gives the ``k``-th clause
    variable quantity ``3nm``, the other two clause variables 0, everything else 1.
    """
    if not formula.is_positive:
        raise ValueError("the utility gadget needs a positive formula")
    if not formula.has_distinct_clause_vars:
        raise ValueError("the utility gadget needs three distinct variables per clause")
    n, m = formula.num_vars, formula.m
    big = 3 * n * m
    rows = []
    for cl in formula.clauses:
        for slot in cl:
            row = [1] * n
            for v in cl:
                row[v - 1] = 0
            row[slot - 1] = big
            rows.append(row)
    items = [f"p{i}" for i in range(1, n + 1)]
    qd = QuantitativeDataset.from_matrix(items, rows, [1] * n)
    return HuiInstance(formula, qd, 3 * n * m * m)


def hui_forward(instance: HuiInstance, assignment: Sequence[bool]) -> Itemset:
    if not evaluate_1in3(instance.formula, assignment):
        raise WitnessError("assignment is not a 1-in-3 solution")
    pattern = 0
    for i, value in enumerate(assignment):
        if value:
            pattern |= 1 << i
    if not pattern:
        raise WitnessError("the all-false assignment maps to the empty itemset")
    return pattern


def hui_backward(instance: HuiInstance, pattern: Itemset) -> Assignment:
    if not pattern:
        raise WitnessError("empty itemset")
    value = utility(instance.qd, pattern)
    if value < instance.threshold:
        raise WitnessError(f"utility {value} is below the threshold {instance.threshold}")
    return tuple(bool(pattern >> i & 1) for i in range(instance.formula.num_vars))


# ------------------------------------------------------------ maximal / closed


@dataclass(frozen=True)
class MaxClosedInstance:
    formula: CnfFormula
    dataset: TransactionDataset
    constraints: ConstraintSet
    target: Itemset


def reduce_maxclosed(formula: CnfFormula) -> MaxClosedInstance:
    """Dataset and constraints where ``{z}`` is maximal (and closed) for the
    theory exactly when ``formula`` is unsatisfiable.

    One transaction All-{cl_j} per clause. Constraints, in order: for each
    variable ``|P & {pos_i, neg_i}| != 2``; for each clause "P holds no literal
    item, or P meets {cl_j} plus the clause's literal items"; minfreq m.
    """
    n, m = formula.num_vars, formula.m
    universe = ItemUniverse(tuple(_polarity_items(n) + [f"cl{j}" for j in range(1, m + 1)] + ["z"]))
    full = universe.full
    rows = tuple(full & ~(1 << universe.id_of(f"cl{j}")) for j in range(1, m + 1))
    literal_items = universe.itemset(_polarity_items(n))
    terms = []
    for i in range(1, n + 1):
        terms.append(CardNeq(universe.itemset([f"pos{i}", f"neg{i}"]), 2))
    for j, cl in enumerate(formula.clauses, start=1):
        right = 1 << universe.id_of(f"cl{j}")
        for lit in cl:
            right |= 1 << _lit_item(universe, lit)
        terms.append(OrEmptyNonempty(literal_items, right))
    terms.append(MinFreq(m))
    return MaxClosedInstance(
        formula,
        TransactionDataset(universe, rows),
        ConstraintSet(tuple(terms)),
        1 << universe.id_of("z"),
    )


def maxclosed_forward(instance: MaxClosedInstance, assignment: Sequence[bool]) -> Itemset:
    """Superset of ``{z}`` in the theory with frequency ``m``, built from a model."""
    if not evaluate(instance.formula, assignment):
        raise WitnessError("assignment does not satisfy the formula")
    u = instance.dataset.universe
    pattern = instance.target
    for i, value in enumerate(assignment, start=1):
        pattern |= 1 << u.id_of(f"pos{i}" if value else f"neg{i}")
    return pattern


def maxclosed_backward(instance: MaxClosedInstance, pattern: Itemset) -> Assignment:
    """``v_i`` is true iff ``pos_i`` is in the pattern; a variable with neither
    polarity present is set to false."""
    if pattern == instance.target or pattern & instance.target != instance.target:
        raise WitnessError("pattern is not a strict superset of the target")
    if not satisfies(instance.dataset, pattern, instance.constraints):
        raise WitnessError("pattern does not satisfy the constraints")
    u = instance.dataset.universe
    return tuple(
        bool(pattern >> u.id_of(f"pos{i}") & 1) for i in range(1, instance.formula.num_vars + 1)
    )


# ------------------------------------------------------------ emission


def _write_meta(out: Path, fields: dict) -> None:
    with open(out / "meta.txt", "w", encoding="utf-8", newline="\n") as fh:
        for key, value in fields.items():
            fh.write(f"{key}: {value}\n")


def read_meta(path) -> dict[str, str]:
    meta = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            key, sep, value = line.partition(":")
            if sep:
                meta[key.strip()] = value.strip()
    return meta


def instance_summary(instance) -> dict:
    """Size-formula values recorded in ``meta.txt`` and printed by the CLI."""
    if not isinstance(instance, (ConfRuleInstance, HuiInstance, MaxClosedInstance)):
        raise TypeError(f"not a gadget instance: {instance!r}")
    n, m = instance.formula.num_vars, instance.formula.m
    if isinstance(instance, ConfRuleInstance):
        c = instance.threshold
        return {
            "problem": "confrule", "n": n, "m": m,
            "threshold": f"{c.numerator}/{c.denominator}",
            "head": instance.dataset.universe.names[instance.head_item],
            "transactions": instance.dataset.m,
            "expected_transactions": f"5n+m = {5 * n + m}",
        }
    if isinstance(instance, HuiInstance):
        return {
            "problem": "hui", "n": n, "m": m,
            "threshold": instance.threshold,
            "threshold_formula": f"3nm^2 = {3 * n * m * m}",
            "transactions": instance.qd.m,
            "expected_transactions": f"3m = {3 * m}",
        }
    return {
        "problem": "maxclosed", "n": n, "m": m,
        "threshold": m,
        "target": " ".join(instance.dataset.universe.tokens(instance.target)),
        "transactions": instance.dataset.m,
        "expected_transactions": f"m = {m}",
        "constraints": len(instance.constraints),
        "expected_constraints": f"n+m+1 = {n + m + 1}",
    }


def emit(instance, out_dir) -> Path:
    """Write the instance files into ``out_dir`` (created if needed)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if isinstance(instance, ConfRuleInstance):
        write_dataset(instance.dataset, out / "dataset.txt")
    elif isinstance(instance, HuiInstance):
        write_quantitative(instance.qd, out / "dataset.txt", out / "utilities.tsv")
    elif isinstance(instance, MaxClosedInstance):
        universe = instance.dataset.universe
        write_dataset(instance.dataset, out / "dataset.txt")
        write_constraints(instance.constraints, universe, out / "constraints.sexp")
        with open(out / "target.txt", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(" ".join(universe.tokens(instance.target)) + "\n")
    else:
        raise TypeError(f"not a gadget instance: {instance!r}")
    _write_meta(out, instance_summary(instance))
    return out


REDUCERS = {
    "confrule": reduce_confrule,
    "hui": reduce_hui,
    "maxclosed": reduce_maxclosed,
}

__all__ = [
    "ConfRuleInstance", "HuiInstance", "MaxClosedInstance",
    "reduce_confrule", "confrule_forward", "confrule_backward",
    "reduce_hui", "hui_forward", "hui_backward",
    "reduce_maxclosed", "maxclosed_forward", "maxclosed_backward",
    "emit", "read_meta", "instance_summary", "REDUCERS",
]
