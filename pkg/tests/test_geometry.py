from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kshuffle.geometry import (Face, ParityConvention, diagonal, diagonal_faces, diagonal_size,
                               faces_of_rank, in_diamond)


def test_face_counts():
    assert faces_of_rank(0) == set()
    assert faces_of_rank(1) == {Face(-1, -1), Face(0, -1), Face(-1, 0), Face(0, 0)}
    assert len(faces_of_rank(3)) == 24
    for N in range(8):
        assert len(faces_of_rank(N)) == 2 * N * (N + 1)


def test_membership_uses_all_corners():
    for N in range(5):
        for f in faces_of_rank(N):
            corners = [(f.u + a, f.v + b) for a in (0, 1) for b in (0, 1)]
            assert all(abs(x) + abs(y) <= N + 1 for x, y in corners)
        assert not in_diamond(N, 0, N)


def test_diagonal_examples():
    assert diagonal(Face.from_center(Fraction(1, 2), Fraction(-1, 2)), 1) == 0
    assert diagonal(Face.from_center(Fraction(-1, 2), Fraction(1, 2)), 1) == 2
    assert diagonal(Face.from_center(Fraction(1, 2), Fraction(1, 2)), 3) == 3
    with pytest.raises(ValueError):
        diagonal(Face(5, 5), 2)


def test_diagonal_sizes_exhaustive():
    # odd diagonals hold N+1 faces, even ones N
    for N in range(1, 7):
        faces = faces_of_rank(N)
        for d in range(2 * N + 1):
            line = [f for f in faces if f.v - f.u + N == d]
            assert len(line) == diagonal_size(d, N)
            assert sorted(line) == diagonal_faces(d, N)
            us = sorted(f.u for f in line)
            assert us == list(range(us[0], us[0] + len(us)))


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_center_roundtrip(u, v):
    f = Face(u, v)
    assert Face.from_center(f.i, f.j) == f


@given(st.integers(0, 12), st.integers(0, 1))
def test_neighbours_have_opposite_shades(N, off):
    conv = ParityConvention(off)
    for f in faces_of_rank(N):
        for g in (Face(f.u + 1, f.v), Face(f.u, f.v + 1)):
            assert conv.is_gray(f, N) != conv.is_gray(g, N)


def test_bad_offset():
    with pytest.raises(ValueError):
        ParityConvention(2)
