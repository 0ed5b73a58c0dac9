"""Randomized agreement checks between SAT oracles and miners run on gadgets.

Each trial draws a formula, decides it with the exhaustive oracle, runs the
matching miner on the reduced instance, and compares verdicts. When a model
or a mining witness exists, the forward and backward maps are exercised and
their outputs re-checked too, so a wrong map shows up as a disagreement.
"""
from __future__ import annotations

import json
import logging
import random
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

from .dataset import _support
from .errors import CapExceededError
from .reductions import (
    confrule_backward,
    confrule_forward,
    hui_backward,
    hui_forward,
    maxclosed_backward,
    maxclosed_forward,
    reduce_confrule,
    reduce_hui,
    reduce_maxclosed,
)
from .rules import exists_confident_rule_with_head_item, is_confident
from .sat import (
    CnfFormula,
    dumps_dimacs,
    evaluate,
    evaluate_1in3,
    formula_digest,
    random_formula,
    solve,
    solve_1in3,
)
from .theory import Border, find_superset_witness, is_closed, is_maximal, satisfies
from .utility import exists_high_utility_itemset, utility

log = logging.getLogger(__name__)

PROBLEMS = ("confrule", "hui", "maxclosed")

# (max variables, max clauses) the exhaustive routines are allowed by default
CAPS = {
    "confrule": (5, None),
    "hui": (14, None),
    "maxclosed": (4, 5),
}


@dataclass
class Disagreement:
    trial: int
    seed: int
    formula_digest: str
    oracle: str
    miner: str
    formula: str


@dataclass
class VerificationReport:
    problem: str
    trials: int = 0
    agreements: int = 0
    disagreements: list = field(default_factory=list)
    oracle_verdicts: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.disagreements and self.agreements == self.trials

    def to_json(self, include_elapsed: bool = False) -> str:
        """Report as JSON; ``elapsed`` is left out unless asked for so that
        identical runs give identical bytes."""
        data = asdict(self)
        if not include_elapsed:
            del data["elapsed"]
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        verdicts = ", ".join(f"{k}={v}" for k, v in sorted(self.oracle_verdicts.items()))
        return (
            f"{self.problem}: {self.agreements}/{self.trials} agreements, "
            f"{len(self.disagreements)} disagreements, oracle verdicts {verdicts}, "
            f"{self.elapsed:.2f}s [{status}]"
        )


def check_caps(problem: str, max_vars: int, max_clauses: int, force: bool = False) -> None:
    cap_n, cap_m = CAPS[problem]
    over = max_vars > cap_n or (cap_m is not None and max_clauses > cap_m)
    if not over:
        return
    limit = f"n <= {cap_n}" + (f", m <= {cap_m}" if cap_m is not None else "")
    if not force:
        raise CapExceededError(f"{problem}: requested sizes exceed the brute-force cap ({limit}); pass --force")
    log.warning("%s: running beyond the brute-force cap (%s); this may take very long", problem, limit)


# Each trial returns (oracle verdict, miner verdict, agreed)


def trial_confrule(formula: CnfFormula) -> tuple[str, str, bool]:
    inst = reduce_confrule(formula)
    model = solve(formula, cap=formula.num_vars)
    witness = exists_confident_rule_with_head_item(inst.dataset, inst.head_item, inst.threshold)
    oracle = "sat" if model is not None else "unsat"
    miner = "witness" if witness is not None else "none"
    problems = []
    if model is not None:
        rule = confrule_forward(inst, model)
        if not is_confident(inst.dataset, rule, inst.threshold):
            problems.append("forward rule not confident")
        elif confrule_backward(inst, rule) != tuple(model):
            problems.append("forward/backward round trip changed the model")
    if witness is not None:
        if not (witness.head >> inst.head_item & 1) or not is_confident(inst.dataset, witness, inst.threshold):
            problems.append("mined rule fails re-check")
        elif not evaluate(formula, confrule_backward(inst, witness)):
            problems.append("backward assignment does not satisfy the formula")
    return oracle, _annotate(miner, problems), (model is None) == (witness is None) and not problems


def trial_hui(formula: CnfFormula) -> tuple[str, str, bool]:
    inst = reduce_hui(formula)
    model = solve_1in3(formula, cap=formula.num_vars)
    witness = exists_high_utility_itemset(inst.qd, inst.threshold)
    oracle = "sat" if model is not None else "unsat"
    miner = "witness" if witness is not None else "none"
    problems = []
    if model is not None:
        pattern = hui_forward(inst, model)
        if utility(inst.qd, pattern) < inst.threshold:
            problems.append("forward itemset below threshold")
        elif hui_backward(inst, pattern) != tuple(model):
            problems.append("forward/backward round trip changed the model")
    if witness is not None:
        if utility(inst.qd, witness) < inst.threshold:
            problems.append("mined itemset fails re-check")
        elif not evaluate_1in3(formula, hui_backward(inst, witness)):
            problems.append("backward assignment is not a 1-in-3 solution")
    return oracle, _annotate(miner, problems), (model is None) == (witness is None) and not problems


def trial_maxclosed(formula: CnfFormula) -> tuple[str, str, bool]:
    inst = reduce_maxclosed(formula)
    ds, C, target = inst.dataset, inst.constraints, inst.target
    model = solve(formula, cap=formula.num_vars)
    maximal = is_maximal(ds, target, C)
    closed = is_closed(ds, target, C)
    oracle = "sat" if model is not None else "unsat"
    miner = {Border.YES: "maximal", Border.NO: "not-maximal"}.get(maximal, maximal.value)
    problems = []
    if maximal is Border.NOT_IN_THEORY:
        problems.append("target outside the theory")
    if maximal is not closed:
        problems.append(f"maximal={maximal.value} but closed={closed.value}")
    m = formula.m
    if model is not None:
        pattern = maxclosed_forward(inst, model)
        if not (satisfies(ds, pattern, C) and _support(ds.transactions, pattern) == m):
            problems.append("forward superset not in the theory at frequency m")
        elif maxclosed_backward(inst, pattern) != tuple(model):
            problems.append("forward/backward round trip changed the model")
    if maximal is Border.NO:
        witness = find_superset_witness(ds, target, C)
        if witness is None or not satisfies(ds, witness, C):
            problems.append("counterexample superset fails re-check")
        elif not evaluate(formula, maxclosed_backward(inst, witness)):
            problems.append("backward assignment does not satisfy the formula")
    agreed = (model is None) == (maximal is Border.YES)
    return oracle, _annotate(miner, problems), agreed and not problems


def _annotate(verdict: str, problems: list[str]) -> str:
    return verdict if not problems else f"{verdict} ({'; '.join(problems)})"


TRIALS: dict[str, Callable[[CnfFormula], tuple[str, str, bool]]] = {
    "confrule": trial_confrule,
    "hui": trial_hui,
    "maxclosed": trial_maxclosed,
}


def parse_range(text) -> tuple[int, int]:
    """``"6"`` -> (6, 6); ``"6..10"`` or ``"6-10"`` -> (6, 10)."""
    if isinstance(text, int):
        return text, text
    if isinstance(text, tuple):
        return text
    for sep in ("..", "-"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError(f"empty range {text!r}")
            return lo, hi
    value = int(text)
    return value, value


def verify(problem: str, n, m, trials: int, seed: int = 0, force: bool = False) -> VerificationReport:
    """Run ``trials`` seeded agreement checks. ``n``/``m`` are ints or ranges."""
    if problem not in TRIALS:
        raise ValueError(f"unknown problem {problem!r}")
    n_lo, n_hi = parse_range(n)
    m_lo, m_hi = parse_range(m)
    if n_lo < 3 or m_lo < 1:
        raise ValueError("need n >= 3 and m >= 1")
    check_caps(problem, n_hi, m_hi, force)
    rng = random.Random(seed)
    run = TRIALS[problem]
    report = VerificationReport(problem)
    start = time.perf_counter()
    for t in range(trials):
        n_t = rng.randint(n_lo, n_hi)
        m_t = rng.randint(m_lo, m_hi)
        fseed = rng.getrandbits(64)
        formula = random_formula(n_t, m_t, fseed, positive_only=(problem == "hui"))
        try:
            oracle, miner, agreed = run(formula)
        except Exception as exc:  # a crash in a mapping is a disagreement, not an abort
            oracle, miner, agreed = "?", f"error: {type(exc).__name__}: {exc}", False
        report.trials += 1
        report.oracle_verdicts[oracle] = report.oracle_verdicts.get(oracle, 0) + 1
        if agreed:
            report.agreements += 1
        else:
            report.disagreements.append(
                asdict(Disagreement(t, fseed, formula_digest(formula), oracle, miner, dumps_dimacs(formula)))
            )
    report.elapsed = time.perf_counter() - start
    return report


def write_report(report: VerificationReport, out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "report.json"
    path.write_text(report.to_json(), encoding="utf-8")
    return path
