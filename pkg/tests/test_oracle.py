from fractions import Fraction

import pytest

from kshuffle.oracle import (CapExceeded, compare_counts, distribution_to_dict, enumerate_ktilings,
                             enumerate_tilings, exact_distribution, exact_Z, exact_Z_poly,
                             product_formula, product_formula_poly, check_product_formula)
from kshuffle.poly import Poly
from kshuffle.tiling import WeightConfig, tiling_weight, total_interactions


def test_counts():
    assert [len(enumerate_tilings(N)) for N in range(4)] == [1, 2, 8, 64]
    assert len(enumerate_ktilings(1, 2)) == 4
    assert len(enumerate_ktilings(2, 2)) == 64
    assert len(enumerate_ktilings(2, 3)) == 512
    with pytest.raises(CapExceeded):
        enumerate_tilings(5)


def test_rank1_closed_form():
    assert exact_Z(1, 2, WeightConfig.uniform(1, 3)) == 8
    assert exact_Z(1, 1, WeightConfig((2,), (7,), 1)) == 15


def test_poly_basics():
    t = Poly.monomial(1, 1)
    p = (1 + t) * (1 + t)
    assert p.degree == 2 and p(Fraction(2)) == 9
    assert p == Poly([1, 2, 1])


@pytest.mark.parametrize("N,k", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (1, 3), (2, 3)])
def test_product_formula_polynomial(N, k):
    w = WeightConfig((2, 3, 5)[:N], (7, 11, 13)[:N], 1)
    assert exact_Z_poly(N, k, w) == product_formula_poly(N, k, w)
    check_product_formula(N, k, WeightConfig.uniform(N, Fraction(1, 2)))


def test_degenerate_t():
    w1 = WeightConfig((2, 3), (5, 7), 1)
    one = sum(tiling_weight(T, w1) for T in enumerate_tilings(2))
    assert exact_Z(2, 3, w1) == one ** 3
    assert exact_Z(2, 3, WeightConfig((2, 3), (5, 7), 0)) == one
    assert product_formula(2, 3, WeightConfig((2, 3), (5, 7), 0)) == one


def test_uniform_closed_form():
    for N in (1, 2, 3):
        for t in (0, Fraction(1, 2), 1, 2):
            assert exact_Z(N, 2, WeightConfig.uniform(N, t)) == (2 * (1 + t)) ** (N * (N + 1) // 2)


def test_distributions():
    d = exact_distribution(1, 2, WeightConfig.uniform(1, 1))
    assert set(d.probs.values()) == {Fraction(1, 4)}
    d = exact_distribution(1, 1, WeightConfig.uniform(1, 1))
    assert sorted(d.probs.values()) == [Fraction(1, 2)] * 2
    d = exact_distribution(2, 2, WeightConfig.uniform(2, 0))
    assert all(total_interactions(K) == 0 for K in d.support())
    assert sum(d.probs.values()) == 1


def test_distribution_dump():
    doc = distribution_to_dict(exact_distribution(1, 2, WeightConfig.uniform(1, Fraction(1, 3))))
    assert doc["Z_num"] == "8" and doc["Z_den"] == "3"
    assert len(doc["entries"]) == 4


def test_compare_counts_flags_off_support():
    from collections import Counter
    d = exact_distribution(1, 2, WeightConfig.uniform(1, 0))
    bad = [K for K in d.probs if d.probs[K] == 0][0]
    good = d.support()
    rep = compare_counts(Counter({good[0]: 50, good[1]: 49, bad: 1}), d)
    assert rep.off_support == 1 and not rep.passed()
