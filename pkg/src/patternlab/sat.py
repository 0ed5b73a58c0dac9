"""3-CNF formulas, DIMACS I/O and exhaustive satisfiability oracles."""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .errors import CapExceededError, ParseError

Assignment = tuple  # tuple[bool, ...], index i holds the value of v_{i+1}

DEFAULT_CAP = 20


@dataclass(frozen=True)
class CnfFormula:
    """Conjunction of 3-literal clauses over ``v_1..v_n``.

    Literals are signed variable numbers: ``3`` is ``v_3``, ``-3`` its negation.
    """

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in cl) for cl in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 0:
            raise ValueError("num_vars must be >= 0")
        for j, cl in enumerate(clauses):
            if len(cl) != 3:
                raise ValueError(f"clause {j + 1} has {len(cl)} literals, expected 3")
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {j + 1}: literal {lit} outside 1..{self.num_vars}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def n(self) -> int:
        return self.num_vars

    @property
    def is_positive(self) -> bool:
        return all(lit > 0 for cl in self.clauses for lit in cl)

    @property
    def has_distinct_clause_vars(self) -> bool:
        return all(len({abs(l) for l in cl}) == 3 for cl in self.clauses)


def _check_dims(formula: CnfFormula, assignment: Sequence[bool]) -> None:
    if len(assignment) != formula.num_vars:
        raise ValueError(f"assignment has {len(assignment)} values for {formula.num_vars} variables")


def evaluate(formula: CnfFormula, assignment: Sequence[bool]) -> bool:
    """Every clause has at least one true literal."""
    _check_dims(formula, assignment)
    return all(
        any(bool(assignment[abs(l) - 1]) == (l > 0) for l in cl)
        for cl in formula.clauses
    )


def evaluate_1in3(formula: CnfFormula, assignment: Sequence[bool]) -> bool:
    """Every clause has exactly one true variable (repeated variables count once)."""
    if not formula.is_positive:
        raise ValueError("1-in-3 evaluation needs a positive formula")
    _check_dims(formula, assignment)
    return all(
        sum(1 for v in set(cl) if assignment[v - 1]) == 1
        for cl in formula.clauses
    )


def _check_cap(formula: CnfFormula, cap: int) -> None:
    if formula.num_vars > cap:
        raise CapExceededError(f"{formula.num_vars} variables exceeds the brute-force cap of {cap}")


def iter_assignments(n: int):
    """All ``2**n`` assignments in binary counting order (``v_1`` most significant)."""
    return product((False, True), repeat=n)


def solve(formula: CnfFormula, cap: int = DEFAULT_CAP) -> Optional[Assignment]:
    _check_cap(formula, cap)
    for a in iter_assignments(formula.num_vars):
        if evaluate(formula, a):
            return a
    return None


def solve_1in3(formula: CnfFormula, cap: int = DEFAULT_CAP) -> Optional[Assignment]:
    _check_cap(formula, cap)
    for a in iter_assignments(formula.num_vars):
        if evaluate_1in3(formula, a):
            return a
    return None


def random_formula(n: int, m: int, seed: int, positive_only: bool = False) -> CnfFormula:
    """``m`` clauses over three distinct variables each, fully determined by ``seed``."""
    if n < 3:
        raise ValueError("need at least 3 variables")
    if m < 1:
        raise ValueError("need at least 1 clause")
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), 3)
        if positive_only:
            clauses.append(tuple(vs))
        else:
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(n, tuple(clauses))


# ---------------------------------------------------------------- DIMACS


def dumps_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_vars} {formula.m}"]
    lines += [" ".join(str(l) for l in cl) + " 0" for cl in formula.clauses]
    return "\n".join(lines) + "\n"


def loads_dimacs(text: str, source=None) -> CnfFormula:
    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("%"):
            break
        if stripped.startswith("p"):
            parts = stripped.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("expected a single 'p cnf <vars> <clauses>' header", lineno, source)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("non-integer in header", lineno, source) from None
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header", lineno, source)
        for tok in stripped.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno, source) from None
            if lit == 0:
                if len(current) != 3:
                    raise ParseError(
                        f"clause {len(clauses) + 1} has {len(current)} literals, expected 3", lineno, source
                    )
                clauses.append(current)
                current = []
                continue
            if abs(lit) > header[0]:
                raise ParseError(f"literal {lit} outside 1..{header[0]}", lineno, source)
            current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header", None, source)
    if current:
        raise ParseError(f"clause {len(clauses) + 1} is not terminated by 0", None, source)
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}", None, source)
    return CnfFormula(header[0], tuple(tuple(c) for c in clauses))


def parse_dimacs(path) -> CnfFormula:
    with open(path, encoding="utf-8") as fh:
        return loads_dimacs(fh.read(), os.fspath(path))


def write_dimacs(formula: CnfFormula, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_dimacs(formula))


_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def formula_digest(formula: CnfFormula) -> str:
    """64-bit FNV-1a of the DIMACS text, as 16 hex digits."""
    h = _FNV_OFFSET
    for b in dumps_dimacs(formula).encode("utf-8"):
        h = ((h ^ b) * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"
