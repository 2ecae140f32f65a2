from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from figures import rank3_example
from kshuffle import spider
from kshuffle.oracle import enumerate_ktilings
from kshuffle.shuffle import sample
from kshuffle.spider import BC, CellWeights, bc_class, check_relations, transform
from kshuffle.tiling import WeightConfig, total_interactions

rationals = st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=50)


def test_transform_examples():
    cw = transform(CellWeights(1, 1, 1, 1))
    assert (cw.a, cw.b, cw.c, cw.d) == (Fraction(1, 2),) * 4
    cw = CellWeights(2, 3, 5, 7)
    assert cw.delta == 31
    assert transform(cw).a == Fraction(5, 31)


def test_one_color_creation_counts_both_fillings():
    assert spider.local_Z_one(CellWeights(1, 1, 1, 1), BC.DESTROY, "before") == 2
    assert spider.local_Z_one(CellWeights(1, 1, 1, 1), BC.CREATE, "before") == 1


def test_bc_classes():
    table = {(a, b): bc_class(a, b) for a in BC for b in BC}
    assert sum(v == "C" for v in table.values()) == 5
    assert sum(v == "D" for v in table.values()) == 5
    assert table[BC.CREATE, BC.CREATE] == "C"
    assert table[BC.CREATE, BC.DESTROY] == "-"


def test_known_cell():
    rows = check_relations(CellWeights(2, 3, 5, 7), Fraction(1, 2))
    assert len(rows) == 36 and all(r.ok for r in rows)


def test_destroy_down_value():
    a, b, c, d, t = map(Fraction, (2, 3, 5, 7, 4))
    cw = CellWeights(a, b, c, d)
    assert spider.local_Z(cw, BC.DESTROY, BC.DOWN, "before", t) == a * a * c * t + a * b * d
    assert spider.local_Z(cw, BC.DESTROY, BC.DOWN, "after", t) == transform(cw).c


@settings(max_examples=25, deadline=None)
@given(rationals, rationals, rationals, rationals, st.fractions(min_value=0, max_value=20, max_denominator=20))
def test_lemma_random(a, b, c, d, t):
    assert spider.verify_lemma(CellWeights(a, b, c, d), t) is None


def test_rejects_nonpositive():
    with pytest.raises(ValueError):
        CellWeights(1, 0, 1, 1)


@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_cell_count(N):
    assert len(spider.cells_of_rank(N)) == (N + 1) ** 2


def test_cell_interactions_match_dominoes():
    KT = rank3_example()
    assert spider.cell_interactions(KT) == total_interactions(KT) == 10
    for KT in enumerate_ktilings(2, 2):
        assert spider.cell_interactions(KT) == total_interactions(KT)


def test_diagonal_counts():
    for KT in enumerate_ktilings(2, 2):
        assert spider.diagonal_count_check(KT)
    KT = sample(7, 2, WeightConfig.uniform(7, 3.0), 2)
    assert set(spider.diagonal_counts(KT).values()) == {1}
    with pytest.raises(ValueError):
        spider.diagonal_counts(rank3_example())
