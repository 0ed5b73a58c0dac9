import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patternlab import toydata
from patternlab.dataset import ItemUniverse, TransactionDataset, enumerate_frequent
from patternlab.errors import ParseError
from patternlab.theory import (
    Border,
    CardNeq,
    ConstraintSet,
    MinFreq,
    OrEmptyNonempty,
    dumps_constraints,
    enumerate_closed,
    enumerate_maximal,
    find_superset_witness,
    is_closed,
    is_maximal,
    iter_strict_supersets,
    loads_constraints,
    parse_term,
    read_constraints,
    satisfies,
    theory,
    write_constraints,
)

import oracles


def as_tuple(term):
    if isinstance(term, MinFreq):
        return ("minfreq", term.s)
    if isinstance(term, CardNeq):
        return ("card-neq", term.scope, term.k)
    return ("or", term.left, term.right)


def random_terms(rng, n, m):
    full = (1 << n) - 1
    terms = [MinFreq(rng.randint(0, max(1, m // 2)))]
    for _ in range(rng.randint(0, 3)):
        kind = rng.random()
        if kind < 0.5:
            terms.append(CardNeq(rng.randint(1, full), rng.randint(0, 3)))
        else:
            terms.append(OrEmptyNonempty(rng.randint(1, full), rng.randint(1, full)))
    rng.shuffle(terms)
    return terms


def random_instance(rng, max_n=8):
    n = rng.randint(1, max_n)
    m = rng.randint(0, 10)
    rows = oracles.random_rows(rng, n, m, density=rng.choice((0.4, 0.6, 0.8)))
    ds = TransactionDataset.from_tokens([f"i{k}" for k in range(n)], [[f"i{k}" for k in range(n) if t >> k & 1] for t in rows])
    return ds, random_terms(rng, n, m)


class TestBorders:
    def test_worked_example(self, baskets):
        C = [MinFreq(2)]
        P = baskets.itemset
        assert is_closed(baskets, P("C E"), C) is Border.NO
        assert is_closed(baskets, P("B C E"), C) is Border.YES
        assert is_maximal(baskets, P("B C E"), C) is Border.NO
        assert is_maximal(baskets, P("A B C E"), C) is Border.YES

    def test_closedness_witness(self, baskets):
        C = [MinFreq(2)]
        q = find_superset_witness(baskets, baskets.itemset("C E"), C, same_frequency=True)
        assert q == baskets.itemset("B C E")

    def test_not_in_theory(self, baskets):
        C = [MinFreq(2)]
        assert is_maximal(baskets, baskets.itemset("D"), C) is Border.NOT_IN_THEORY
        assert is_closed(baskets, baskets.itemset("D"), C) is Border.NOT_IN_THEORY
        assert not Border.NOT_IN_THEORY and not Border.NO and Border.YES

    def test_goldens(self, baskets):
        C = [MinFreq(2)]
        fmt = lambda ps: ["".join(baskets.universe.tokens(p)) for p in ps]
        assert fmt(enumerate_maximal(baskets, C)) == ["ABCE"]
        assert fmt(enumerate_closed(baskets, C)) == ["A", "ABCE", "ABE", "AC", "BCE", "BE", "C"]

    def test_empty_constraints(self, baskets):
        assert satisfies(baskets, baskets.itemset("D"), [])
        assert len(theory(baskets, [])) == 31
        assert enumerate_maximal(baskets, []) == [baskets.universe.full]

    def test_filtering_is_not_mining(self, baskets):
        # ABCE is the only maximal frequent set, but it violates the extra term;
        # the maximal sets of the combined theory are not a filtered MFI list
        C = [MinFreq(2), CardNeq(baskets.itemset("A B C E"), 4)]
        mfi = enumerate_maximal(baskets, [MinFreq(2)])
        filtered = [p for p in mfi if satisfies(baskets, p, C)]
        assert filtered == []
        got = enumerate_maximal(baskets, C)
        assert got == oracles.maximal_members(baskets.transactions, 5, [as_tuple(t) for t in C])
        assert len(got) == 4

    def test_superset_order(self):
        assert list(iter_strict_supersets(3, 0b001)) == [0b011, 0b101, 0b111]

    def test_mfi_matches_frequency_only(self):
        rng = random.Random(11)
        for _ in range(50):
            n, m = rng.randint(1, 8), rng.randint(1, 10)
            rows = oracles.random_rows(rng, n, m)
            ds = TransactionDataset(ItemUniverse(tuple(f"i{k}" for k in range(n))), rows)
            s = rng.randint(1, m)
            frequent = enumerate_frequent(ds, s)
            expected = [p for p in frequent if not any(q != p and q & p == p for q in frequent)]
            assert oracles.canonical(expected) == oracles.canonical(enumerate_maximal(ds, [MinFreq(s)]))


class TestAgainstOracle:
    def test_theory_and_borders(self):
        rng = random.Random(5)
        for _ in range(60):
            ds, terms = random_instance(rng)
            tuples = [as_tuple(t) for t in terms]
            assert theory(ds, terms) == oracles.theory_members(ds.transactions, ds.n, tuples)
            assert enumerate_maximal(ds, terms) == oracles.maximal_members(ds.transactions, ds.n, tuples)
            assert enumerate_closed(ds, terms) == oracles.maximal_members(
                ds.transactions, ds.n, tuples, same_frequency=True
            )

    def test_maximal_implies_closed(self):
        rng = random.Random(8)
        for _ in range(100):
            ds, terms = random_instance(rng, max_n=6)
            for p in theory(ds, terms):
                if is_maximal(ds, p, terms):
                    assert is_closed(ds, p, terms) is Border.YES

    def test_permutation_invariance(self):
        rng = random.Random(9)
        for _ in range(30):
            ds, terms = random_instance(rng, max_n=6)
            shuffled = list(terms)
            rng.shuffle(shuffled)
            assert theory(ds, shuffled) == theory(ds, terms)
            for p in range(1, 1 << ds.n):
                assert is_maximal(ds, p, shuffled) is is_maximal(ds, p, terms)
                assert is_closed(ds, p, shuffled) is is_closed(ds, p, terms)


class TestFileFormat:
    def test_round_trip(self, baskets, tmp_path):
        P = baskets.itemset
        C = ConstraintSet((MinFreq(2), CardNeq(P("A B"), 1), OrEmptyNonempty(P("A"), P("C E"))))
        text = dumps_constraints(C, baskets.universe)
        assert text == "(minfreq 2)\n(card-neq (A B) 1)\n(or-empty-nonempty (A) (C E))\n"
        assert loads_constraints(text, baskets.universe) == C
        write_constraints(C, baskets.universe, tmp_path / "c.sexp")
        assert read_constraints(tmp_path / "c.sexp", baskets.universe) == C

    def test_comments_and_spacing(self, baskets):
        C = loads_constraints("# header\n\n  ( minfreq   3 )\n", baskets.universe)
        assert C == ConstraintSet((MinFreq(3),))

    @pytest.mark.parametrize("line", [
        "(minfreq)",
        "(minfreq -1)",
        "(minfreq x)",
        "(maxfreq 2)",
        "(card-neq (A Q) 1)",
        "(card-neq A 1)",
        "(or-empty-nonempty (A))",
        "(minfreq 2",
        "(minfreq 2))",
        "minfreq 2",
    ])
    def test_bad_terms(self, baskets, line):
        with pytest.raises(ParseError) as err:
            loads_constraints(f"(minfreq 1)\n{line}\n", baskets.universe, source="c.sexp")
        assert err.value.lineno == 2

    @settings(max_examples=100)
    @given(st.data())
    def test_round_trip_property(self, data):
        baskets = toydata.baskets()
        term = data.draw(st.one_of(
            st.builds(MinFreq, st.integers(0, 50)),
            st.builds(CardNeq, st.integers(0, 31), st.integers(0, 5)),
            st.builds(OrEmptyNonempty, st.integers(0, 31), st.integers(0, 31)),
        ))
        assert parse_term(term.to_sexp(baskets.universe), baskets.universe) == term
