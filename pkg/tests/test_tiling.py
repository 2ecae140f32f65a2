import json

import pytest
from hypothesis import given, strategies as st

from figures import rank3_example
from kshuffle.oracle import enumerate_tilings
from kshuffle.tiling import (CompassType, H, KTiling, Tiling, V, WeightConfig, classify,
                             count_interactions, domino_weight, dumps, ktiling_weight, loads,
                             tiling_weight, total_interactions, validate)

ALL_V = Tiling(1, [V(-1, -1), V(0, -1)])
ALL_H = Tiling(1, [H(-1, -1), H(-1, 0)])


def test_validate():
    assert validate(Tiling(0, []))
    assert validate(ALL_V) and validate(ALL_H)
    assert not validate(Tiling(1, [V(-1, -1)]))
    assert not validate(Tiling(1, [V(-1, -1), H(-1, -1), V(0, -1)]))
    assert not validate(Tiling(1, [H(0, 0), V(-1, -1)]))


def test_classify_rank1():
    assert {classify(d, 1) for d in ALL_H.dominoes} == {CompassType.N, CompassType.S}
    assert {classify(d, 1) for d in ALL_V.dominoes} == {CompassType.E, CompassType.W}
    # the lower horizontal moves down, the upper one up
    assert classify(H(-1, -1), 1) is CompassType.S
    assert classify(H(-1, 0), 1) is CompassType.N


@given(st.integers(-20, 20), st.integers(-20, 20), st.sampled_from("hv"), st.integers(0, 9))
def test_classify_translation_invariant(u, v, o, N):
    from kshuffle.tiling import Domino
    assert classify(Domino(u, v, o), N) is classify(Domino(u + 1, v + 1, o), N)


def test_weights():
    w = WeightConfig((2,), (7,), 1)
    assert domino_weight(V(0, -1), w, 1) == 1
    assert domino_weight(H(-1, -1), w, 1) == 2
    assert domino_weight(H(-1, 0), w, 1) == 7
    assert tiling_weight(ALL_V, w) == 1
    assert tiling_weight(ALL_H, w) == 14
    assert tiling_weight(ALL_H, WeightConfig.uniform(1)) == 1


def test_weight_config_rejects_bad_values():
    with pytest.raises(ValueError):
        WeightConfig((0,), (1,), 1)
    with pytest.raises(ValueError):
        WeightConfig((1,), (1,), -1)


def test_rank1_interactions():
    assert count_interactions(ALL_V, ALL_V) == 0
    assert count_interactions(ALL_H, ALL_H) == 1
    assert count_interactions(ALL_H, ALL_V) + count_interactions(ALL_V, ALL_H) == 1
    ws = sorted(ktiling_weight(KTiling([a, b]), WeightConfig.uniform(1, 5))
                for a in (ALL_H, ALL_V) for b in (ALL_H, ALL_V))
    assert ws == [1, 1, 5, 5]
    with pytest.raises(ValueError):
        count_interactions(ALL_V, Tiling(0, []))


def test_order_matters_somewhere():
    Ts = enumerate_tilings(2)
    assert any(count_interactions(a, b) != count_interactions(b, a) for a in Ts for b in Ts)


def test_t1_and_k1_degenerate():
    w = WeightConfig((2, 3, 5), (7, 11, 13), 1)
    KT = rank3_example()
    prod = 1
    for T in KT.colors:
        prod *= tiling_weight(T, w)
    assert ktiling_weight(KT, w) == prod
    assert ktiling_weight(KTiling([KT.colors[0]]), WeightConfig((2, 3, 5), (7, 11, 13), 3)) == \
        tiling_weight(KT.colors[0], w)


def test_rank3_example_interactions_frozen():
    # computed once and frozen
    KT = rank3_example()
    assert [count_interactions(KT.colors[a], KT.colors[b]) for a, b in ((0, 1), (0, 2), (1, 2))] == [4, 4, 2]
    assert total_interactions(KT) == 10


def test_dump_roundtrip_and_order():
    KT = rank3_example()
    s = dumps(KT)
    doc = json.loads(s)
    assert doc["rank"] == 3 and doc["colors"] == 3
    for dl in doc["tilings"]:
        assert dl == sorted(dl, key=lambda e: (e["v"], e["u"]))
    doc["tilings"][0].reverse()
    assert loads(json.dumps(doc)) == KT
    with pytest.raises(ValueError):
        loads('{"rank": 1, "colors": 1, "tilings": [[{"u": 0, "v": 0, "o": "x"}]]}')
