import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patternlab.dataset import members
from patternlab.errors import ParseError
from patternlab.utility import (
    QuantitativeDataset,
    dumps_quantitative,
    enumerate_high_utility,
    exists_high_utility_itemset,
    is_high_utility,
    loads_quantitative,
    read_quantitative,
    twu,
    utility,
    utility_in_transaction,
    write_quantitative,
)

import oracles


@st.composite
def quantitative(draw, max_items=7, max_rows=8, max_qty=20, max_util=40):
    n = draw(st.integers(1, max_items))
    m = draw(st.integers(0, max_rows))
    rows = draw(st.lists(st.lists(st.integers(0, max_qty), min_size=n, max_size=n), min_size=m, max_size=m))
    utils = draw(st.lists(st.integers(0, max_util), min_size=n, max_size=n))
    return QuantitativeDataset.from_matrix([f"i{k}" for k in range(n)], rows, utils)


def random_qd(rng, n, m):
    rows = [[rng.choice((0, 0, rng.randint(1, 9))) for _ in range(n)] for _ in range(m)]
    utils = [rng.randint(0, 9) for _ in range(n)]
    return QuantitativeDataset.from_matrix([f"i{k}" for k in range(n)], rows, utils)


class TestUtility:
    def test_per_transaction(self, qbaskets):
        ac = qbaskets.itemset("A C")
        assert utility_in_transaction(qbaskets, ac, 0) == 0
        assert utility_in_transaction(qbaskets, ac, 1) == 196
        assert utility_in_transaction(qbaskets, ac, 4) == 282

    def test_totals(self, qbaskets):
        assert utility(qbaskets, qbaskets.itemset("A C")) == 696
        # the quantity vectors give 320 + 350; see data/baskets_high_utility_660.txt
        assert utility(qbaskets, qbaskets.itemset("A C E")) == 670

    def test_single_occurrence(self):
        qd = QuantitativeDataset.from_matrix(["A", "B"], [[1, 3], [0, 2]], [7, 1])
        assert utility(qd, qd.itemset("A")) == 7

    def test_thresholds(self, qbaskets):
        assert is_high_utility(qbaskets, qbaskets.itemset("A C"), 660)
        assert not is_high_utility(qbaskets, qbaskets.itemset("B D"), 660)
        assert is_high_utility(qbaskets, qbaskets.itemset("D"), 0)

    def test_not_anti_monotone(self, qbaskets):
        # the superset AC beats C: 696 > 684
        assert utility(qbaskets, qbaskets.itemset("A C")) > utility(qbaskets, qbaskets.itemset("C"))

    def test_index_out_of_range(self, qbaskets):
        with pytest.raises(IndexError):
            utility_in_transaction(qbaskets, qbaskets.itemset("A"), 5)

    def test_membership_must_agree(self, baskets):
        with pytest.raises(ValueError):
            QuantitativeDataset(baskets, [[1, 1, 1, 1, 1]] * 5, [1] * 5)

    @settings(max_examples=200)
    @given(quantitative(), st.data())
    def test_additive(self, qd, data):
        p = data.draw(st.integers(1, (1 << qd.n) - 1))
        assert utility(qd, p) == sum(utility_in_transaction(qd, p, j) for j in range(qd.m))

    @settings(max_examples=200)
    @given(quantitative(), st.data())
    def test_twu_bound(self, qd, data):
        p = data.draw(st.integers(1, (1 << qd.n) - 1))
        for i in members(p):
            assert utility(qd, p) <= twu(qd, 1 << i)
        assert utility(qd, p) <= twu(qd, p)


class TestSearch:
    def test_enumerate_660(self, qbaskets, data_dir):
        golden = [
            line for line in (data_dir / "baskets_high_utility_660.txt").read_text().splitlines()
            if line and not line.startswith("#")
        ]
        got = ["".join(qbaskets.universe.tokens(p)) for p in enumerate_high_utility(qbaskets, 660)]
        assert got == golden
        assert "AC" in got and "ACE" in got

    def test_unreachable(self, qbaskets):
        ut = max(qbaskets.utilities) * max(max(r) for r in qbaskets.cardinalities) * qbaskets.m + 1
        assert enumerate_high_utility(qbaskets, ut) == []
        assert exists_high_utility_itemset(qbaskets, ut) is None

    def test_zero_threshold(self, qbaskets):
        assert exists_high_utility_itemset(qbaskets, 0) == qbaskets.itemset("A")
        assert len(enumerate_high_utility(qbaskets, 0)) == 31

    def test_gadget_matrix(self, data_dir):
        qd = read_quantitative(data_dir / "utility_gadget_quantities.txt", data_dir / "utility_gadget_utilities.tsv")
        found = exists_high_utility_itemset(qd, 60)
        assert found == qd.itemset("p1 p4")
        assert utility(qd, found) == 62
        assert oracles.high_utility_itemsets(qd.cardinalities, qd.utilities, qd.n, 60)[0] == found

    def test_pruning_agrees(self):
        rng = random.Random(3)
        for _ in range(40):
            qd = random_qd(rng, rng.randint(1, 9), rng.randint(0, 8))
            ut = rng.randint(0, 120)
            expected = oracles.high_utility_itemsets(qd.cardinalities, qd.utilities, qd.n, ut)
            assert enumerate_high_utility(qd, ut) == expected
            assert enumerate_high_utility(qd, ut, prune=False) == expected
            assert exists_high_utility_itemset(qd, ut) == (expected[0] if expected else None)


class TestFileFormat:
    def test_round_trip(self, qbaskets, tmp_path):
        write_quantitative(qbaskets, tmp_path / "d.txt", tmp_path / "u.tsv")
        assert read_quantitative(tmp_path / "d.txt", tmp_path / "u.tsv") == qbaskets

    def test_shipped(self, qbaskets, data_dir):
        assert read_quantitative(data_dir / "baskets_quantities.txt", data_dir / "baskets_utilities.tsv") == qbaskets

    def test_writer_output(self, qbaskets, data_dir):
        text, utext = dumps_quantitative(qbaskets)
        assert text == (data_dir / "baskets_quantities.txt").read_text()
        assert utext == (data_dir / "baskets_utilities.tsv").read_text()

    @pytest.mark.parametrize("line", ["A:0", "A:x", "A", "Q:1", "A:1 A:2"])
    def test_bad_lines(self, line):
        with pytest.raises(ParseError) as err:
            loads_quantitative(f"items: A B\n{line}\n", "A\t1\nB\t1\n")
        assert err.value.lineno == 2

    def test_missing_utility(self):
        with pytest.raises(ParseError):
            loads_quantitative("items: A B\nA:1\n", "A\t1\n")

    @settings(max_examples=100)
    @given(quantitative())
    def test_round_trip_property(self, qd):
        assert loads_quantitative(*dumps_quantitative(qd)) == qd
