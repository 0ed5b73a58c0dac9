"""Command-line front end: ``reduce``, ``mine``, ``verify`` and ``demo``.

Exit codes: 0 pass, 1 disagreement or failed witness re-check, 2 usage or
parse error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import demo, harness
from .dataset import _support, read_dataset
from .errors import CapExceededError, PatternLabError
from .reductions import REDUCERS, emit, instance_summary, read_meta
from .rules import exists_confident_rule_with_head_item, format_rule, is_confident, parse_threshold
from .sat import parse_dimacs
from .theory import Border, find_superset_witness, is_closed, is_maximal, read_constraints, satisfies
from .utility import exists_high_utility_itemset, read_quantitative, utility

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("patternlab")


class UsageError(Exception):
    pass


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # the same flags are accepted before and after the subcommand
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=default(0), help="64-bit unsigned seed")
    p.add_argument("--out", default=default(None), help="output directory")
    p.add_argument("--force", action="store_true", default=default(False),
                   help="allow sizes beyond the brute-force caps")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="patternlab", parents=[_global_flags(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="build a gadget instance from a DIMACS file")
    p.add_argument("problem", choices=harness.PROBLEMS)
    p.add_argument("--cnf", required=True)

    p = sub.add_parser("mine", parents=[common], help="search an instance for a witness")
    p.add_argument("problem", choices=harness.PROBLEMS)
    p.add_argument("--instance", help="directory written by 'reduce'")
    p.add_argument("--dataset")
    p.add_argument("--utilities", help="hui: tok<TAB>utility file")
    p.add_argument("--constraints", help="maxclosed: constraint file")
    p.add_argument("--target", help="maxclosed: file holding the target itemset")
    p.add_argument("--head", help="confrule: head item token (default z)")
    p.add_argument("--conf", help="confrule: confidence threshold, e.g. 1/2 or 60%%")
    p.add_argument("--ut", type=int, help="hui: utility threshold")
    p.add_argument("--no-prune", action="store_true", help="hui: disable TWU pruning")

    p = sub.add_parser("verify", parents=[common], help="randomized oracle-vs-miner agreement run")
    p.add_argument("problem", choices=harness.PROBLEMS)
    p.add_argument("--vars", required=True, help="N or LO..HI")
    p.add_argument("--clauses", required=True, help="M or LO..HI")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--timing", action="store_true", help="include elapsed time in report.json")

    sub.add_parser("demo", parents=[common], help="recompute the toy reference values")
    return parser


def cmd_reduce(args) -> int:
    formula = parse_dimacs(args.cnf)
    if args.problem == "hui":
        if not formula.is_positive:
            raise UsageError("hui needs a positive formula (no negative literals)")
        if not formula.has_distinct_clause_vars:
            raise UsageError("hui needs three distinct variables per clause")
    if not args.out:
        raise UsageError("reduce needs --out <dir>")
    instance = REDUCERS[args.problem](formula)
    out = emit(instance, args.out)
    for key, value in instance_summary(instance).items():
        print(f"{key}: {value}")
    print(f"written to {out}")
    return EXIT_OK


def _instance_path(args, name: str, given):
    if given:
        return Path(given)
    if args.instance:
        return Path(args.instance) / name
    raise UsageError(f"need --{name.split('.')[0]} or --instance")


def _meta(args) -> dict:
    if args.instance and (Path(args.instance) / "meta.txt").exists():
        return read_meta(Path(args.instance) / "meta.txt")
    return {}


def cmd_mine(args) -> int:
    meta = _meta(args)
    if args.problem == "confrule":
        ds = read_dataset(_instance_path(args, "dataset.txt", args.dataset))
        head = args.head or meta.get("head", "z")
        c = parse_threshold(args.conf or meta.get("threshold") or "1/2")
        z = ds.universe.id_of(head)
        rule = exists_confident_rule_with_head_item(ds, z, c)
        if rule is None:
            print("none")
            return EXIT_OK
        if not (rule.head >> z & 1 and is_confident(ds, rule, c)):
            print(f"witness re-check failed: {format_rule(ds, rule)}", file=sys.stderr)
            return EXIT_FAIL
        print(f"witness: {format_rule(ds, rule)} (threshold {c.numerator}/{c.denominator})")
        return EXIT_OK

    if args.problem == "hui":
        qd = read_quantitative(
            _instance_path(args, "dataset.txt", args.dataset),
            _instance_path(args, "utilities.tsv", args.utilities),
        )
        if args.ut is not None:
            ut = args.ut
        elif "threshold" in meta:
            ut = int(meta["threshold"])
        else:
            raise UsageError("hui needs --ut or an --instance with meta.txt")
        pattern = exists_high_utility_itemset(qd, ut, prune=not args.no_prune)
        if pattern is None:
            print("none")
            return EXIT_OK
        value = utility(qd, pattern)
        if value < ut:
            print(f"witness re-check failed: utility {value} < {ut}", file=sys.stderr)
            return EXIT_FAIL
        print(f"witness: {qd.universe.format(pattern)} utility {value} >= {ut}")
        return EXIT_OK

    ds = read_dataset(_instance_path(args, "dataset.txt", args.dataset))
    C = read_constraints(_instance_path(args, "constraints.sexp", args.constraints), ds.universe)
    target_path = _instance_path(args, "target.txt", args.target)
    target = ds.universe.itemset(target_path.read_text(encoding="utf-8").split())
    maximal = is_maximal(ds, target, C)
    closed = is_closed(ds, target, C)
    print(f"maximal: {maximal.value}, closed: {closed.value}")
    f = _support(ds.transactions, target)
    for label, verdict, same in (("maximality", maximal, False), ("closedness", closed, True)):
        if verdict is not Border.NO:
            continue
        q = find_superset_witness(ds, target, C, same_frequency=same)
        fq = _support(ds.transactions, q) if q is not None else None
        if q is None or not satisfies(ds, q, C) or (same and fq != f):
            print(f"counterexample re-check failed for {label}", file=sys.stderr)
            return EXIT_FAIL
        print(f"counterexample to {label}: {ds.universe.format(q)} freq {fq}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        report = harness.verify(args.problem, args.vars, args.clauses, args.trials, args.seed, args.force)
    except ValueError as exc:
        if isinstance(exc, CapExceededError):
            raise
        raise UsageError(str(exc)) from None
    print(report.summary())
    for d in report.disagreements:
        print(f"  trial {d['trial']} seed {d['seed']} digest {d['formula_digest']}: "
              f"oracle {d['oracle']} vs miner {d['miner']}")
        print("  repro formula: " + d["formula"].strip().replace("\n", " | "))
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report.to_json(include_elapsed=args.timing), encoding="utf-8")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_demo(args) -> int:
    return demo.run()


COMMANDS = {"reduce": cmd_reduce, "mine": cmd_mine, "verify": cmd_verify, "demo": cmd_demo}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.seed < 0 or args.seed >= 2**64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, PatternLabError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
