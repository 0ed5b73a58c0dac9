import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patternlab.dataset import ItemUniverse, TransactionDataset, _support, members, read_dataset
from patternlab.errors import UndefinedConfidenceError, UniverseMismatchError
from patternlab.reductions import reduce_confrule
from patternlab.rules import (
    AssociationRule,
    confidence,
    exists_confident_rule_with_head_item,
    format_rule,
    is_confident,
    parse_threshold,
)
from patternlab.sat import CnfFormula

import oracles

ALL_SIGNS_3 = CnfFormula(3, tuple(
    tuple(s * v for s, v in zip(signs, (1, 2, 3))) for signs in itertools.product((1, -1), repeat=3)
))


def rule_key(pair):
    body, head = pair
    return members(body), members(head)


class TestConfidence:
    def test_b_to_c(self, baskets):
        rule = AssociationRule(baskets.itemset("B"), baskets.itemset("C"))
        assert confidence(baskets, rule) == Fraction(3, 4)
        assert is_confident(baskets, rule, "60%")
        assert is_confident(baskets, rule, 0.6)
        assert not is_confident(baskets, rule, "4/5")

    def test_covers_coincide(self, baskets):
        # every basket holding D also holds A, B and E
        rule = AssociationRule(baskets.itemset("D"), baskets.itemset("A B E"))
        assert confidence(baskets, rule) == 1

    def test_gadget_witness(self, data_dir):
        ds = read_dataset(data_dir / "confrule_one_clause.txt")
        rule = AssociationRule(ds.itemset("pos1 neg2 neg3"), ds.itemset("z"))
        assert confidence(ds, rule) == Fraction(3, 6)
        assert is_confident(ds, rule, Fraction(1, 2))

    def test_threshold_zero(self, baskets):
        rule = AssociationRule(baskets.itemset("D"), baskets.itemset("C"))
        assert confidence(baskets, rule) == 0
        assert is_confident(baskets, rule, 0)

    def test_empty_body(self, baskets):
        rule = AssociationRule(0, baskets.itemset("A"))
        assert confidence(baskets, rule) == Fraction(4, 5)

    def test_undefined(self):
        ds = TransactionDataset.from_tokens("ab", [["a"]])
        with pytest.raises(UndefinedConfidenceError):
            confidence(ds, AssociationRule(ds.itemset("b"), ds.itemset("a")))

    def test_rule_invariants(self):
        with pytest.raises(ValueError):
            AssociationRule(0b1, 0b1)
        with pytest.raises(ValueError):
            AssociationRule(0b1, 0)

    @settings(max_examples=200)
    @given(st.integers(1, 7), st.lists(st.integers(0, 127), min_size=1, max_size=10), st.data())
    def test_exact_and_bounded(self, n, rows, data):
        full = (1 << n) - 1
        ds = TransactionDataset(ItemUniverse(tuple(f"i{k}" for k in range(n))), tuple(r & full for r in rows))
        head = data.draw(st.integers(1, full))
        body = data.draw(st.integers(0, full)) & ~head
        rule = AssociationRule(body, head)
        fb = _support(ds.transactions, body)
        if fb == 0:
            with pytest.raises(UndefinedConfidenceError):
                confidence(ds, rule)
            return
        c = confidence(ds, rule)
        assert 0 <= c <= 1
        assert c * fb == _support(ds.transactions, body | head)

    def test_format(self, baskets):
        rule = AssociationRule(baskets.itemset("B"), baskets.itemset("C"))
        assert format_rule(baskets, rule) == "{B} -> {C} @ conf 3/4"


def test_parse_threshold():
    assert parse_threshold("1/2") == Fraction(1, 2)
    assert parse_threshold("60%") == Fraction(3, 5)
    assert parse_threshold(0.5) == Fraction(1, 2)
    with pytest.raises(ValueError):
        parse_threshold("3/2")


class TestSearch:
    def test_gadget_fixture_has_witness(self, data_dir):
        ds = read_dataset(data_dir / "confrule_one_clause.txt")
        rule = exists_confident_rule_with_head_item(ds, ds.universe.id_of("z"), Fraction(1, 2))
        assert rule is not None
        assert rule.head >> ds.universe.id_of("z") & 1
        assert confidence(ds, rule) >= Fraction(1, 2)

    def test_item_never_present(self):
        ds = TransactionDataset.from_tokens("abz", [["a"], ["a", "b"], ["b"]])
        assert exists_confident_rule_with_head_item(ds, 2, Fraction(1, 100)) is None

    def test_unsat_gadget(self):
        inst = reduce_confrule(ALL_SIGNS_3)
        ds = inst.dataset
        assert exists_confident_rule_with_head_item(ds, inst.head_item, inst.threshold) is None
        assert oracles.confident_rules_with_item(ds.transactions, ds.n, inst.head_item, 1, 2) == []

    def test_bad_item(self, baskets):
        with pytest.raises(UniverseMismatchError):
            exists_confident_rule_with_head_item(baskets, 9, "1/2")

    def test_matches_three_way_brute_force(self):
        rng = random.Random(5)
        for case in range(150):
            n = rng.randint(1, 7)
            rows = oracles.random_rows(rng, n, rng.randint(0, 8), rng.choice((0.3, 0.5, 0.8)))
            ds = TransactionDataset(ItemUniverse(tuple(f"i{k}" for k in range(n))), tuple(rows))
            z = rng.randrange(n)
            c = Fraction(rng.randint(0, 6), 6)
            found = exists_confident_rule_with_head_item(ds, z, c)
            expected = oracles.confident_rules_with_item(rows, n, z, c.numerator, c.denominator)
            if not expected:
                assert found is None, case
                continue
            assert (found.body, found.head) == min(expected, key=rule_key), case
            # soundness by re-evaluation
            assert found.head >> z & 1 and not found.body & found.head
            assert confidence(ds, found) >= c
