from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from figures import RANK3_CHAINS, rank3_example
from kshuffle.oracle import enumerate_ktilings, enumerate_tilings
from kshuffle.partitions import (ColoredParticleArray, InterlacedSequence, array_to_ktiling,
                                 co_interlaces, conjugate, from_maya, interactions_from_partitions,
                                 interlaces, ktiling_to_array, maya, maya_string, partition,
                                 sequence_to_tiling, tiling_to_sequence)
from kshuffle.tiling import count_interactions

partitions = st.lists(st.integers(0, 9), max_size=7).map(lambda xs: partition(sorted(xs, reverse=True)))


def test_partition_normalizes():
    assert partition([3, 1, 0, 0]) == (3, 1)
    with pytest.raises(ValueError):
        partition([1, 2])


def test_conjugate_example():
    assert conjugate((4, 3, 2, 2, 1)) == (5, 4, 2, 1)
    assert conjugate(()) == ()


@given(partitions)
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


def test_maya_diagram_example():
    s = maya_string((4, 3, 2, 2, 1), Fraction(-13, 2), Fraction(11, 2))
    assert s == "••◦•◦••◦•◦•◦◦"
    assert maya((4, 3, 2, 2, 1))[:2] == [Fraction(7, 2), Fraction(3, 2)]


@given(partitions, st.integers(0, 4))
def test_maya_roundtrip(lam, extra):
    assert from_maya(maya(lam, len(lam) + extra)) == lam


def test_interlacing_small():
    assert interlaces((3, 1), (2,))
    assert not interlaces((3, 1), (2, 2))
    assert co_interlaces((2, 1), (1, 1))     # vertical strip
    assert not co_interlaces((2,), (0,))


def test_rank3_example_chains():
    for T, chain in zip(rank3_example().colors, RANK3_CHAINS):
        seq = tiling_to_sequence(T)
        assert seq.chain() == [partition(c) for c in chain]
        assert seq.is_interlaced()
        assert sequence_to_tiling(seq) == T


def test_rank1_sequences():
    seqs = {tuple(tiling_to_sequence(T).lam) for T in enumerate_tilings(1)}
    assert seqs == {((),), ((1,),)}


@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_sequence_bijection(N):
    Ts = enumerate_tilings(N)
    seqs = {tiling_to_sequence(T) for T in Ts}
    assert len(seqs) == len(Ts) == 2 ** (N * (N + 1) // 2)
    for s in seqs:
        assert s.is_interlaced()
        assert tiling_to_sequence(sequence_to_tiling(s)) == s


def test_bad_sequences_rejected():
    with pytest.raises(ValueError):
        InterlacedSequence(1, [()], [()])
    with pytest.raises(ValueError):
        sequence_to_tiling(InterlacedSequence(1, [(2,)], [(), ()]))


def test_partition_side_interactions_rank2():
    Ts = enumerate_tilings(2)
    seqs = [tiling_to_sequence(T) for T in Ts]
    for a, Ta in enumerate(Ts):
        for b, Tb in enumerate(Ts):
            assert interactions_from_partitions(seqs[a], seqs[b]) == count_interactions(Ta, Tb)


def test_rank3_example_partition_interactions():
    s = [tiling_to_sequence(T) for T in rank3_example().colors]
    assert sum(interactions_from_partitions(s[a], s[b]) for a in range(3) for b in range(a + 1, 3)) == 10


def test_array_roundtrip_k2():
    for KT in enumerate_ktilings(2, 2):
        A = ktiling_to_array(KT)
        assert all(x % 2 for level in A.x for col in level for x in col)
        assert array_to_ktiling(A) == KT


def test_array_check_catches_bounds():
    A = ktiling_to_array(rank3_example())
    x = list(A.x)
    x[0] = ((99,),) + x[0][1:]
    with pytest.raises(AssertionError):
        ColoredParticleArray(A.rank, A.colors, tuple(x), A.y).check()
