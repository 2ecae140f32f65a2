"""Aztec diamond lattice: faces, diagonals and checkerboard shading.

A face is stored by its integer lower-left corner (u, v); its center is
(u + 1/2, v + 1/2).  The rank-N diamond is the set of faces whose four
corners satisfy |x| + |y| <= N + 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


class Face(NamedTuple):
    u: int
    v: int

    @property
    def i(self) -> Fraction:
        return Fraction(2 * self.u + 1, 2)

    @property
    def j(self) -> Fraction:
        return Fraction(2 * self.v + 1, 2)

    @classmethod
    def from_center(cls, i, j) -> "Face":
        i, j = Fraction(i), Fraction(j)
        if i.denominator != 2 or j.denominator != 2:
            raise ValueError(f"face centers are half-integers, got ({i}, {j})")
        return cls(int(i - Fraction(1, 2)), int(j - Fraction(1, 2)))


def in_diamond(u: int, v: int, N: int) -> bool:
    # the corner farthest from the origin decides membership
    return abs(2 * u + 1) + abs(2 * v + 1) <= 2 * N


def faces_of_rank(N: int) -> set[Face]:
    if N < 0:
        raise ValueError("rank must be nonnegative")
    return {Face(u, v) for u in range(-N - 1, N + 1) for v in range(-N - 1, N + 1)
            if in_diamond(u, v, N)}


def diagonal(f: Face, N: int) -> int:
    if not in_diamond(f.u, f.v, N):
        raise ValueError(f"{f} is not a face of the rank-{N} diamond")
    return f.v - f.u + N


def diagonal_faces(d: int, N: int) -> list[Face]:
    """Faces on diagonal d, listed SW to NE."""
    if not 0 <= d <= 2 * N:
        raise ValueError(f"diagonal {d} out of range for rank {N}")
    return [Face(u, u + d - N) for u in range(-N - 1, N + 1) if in_diamond(u, u + d - N, N)]


def diagonal_size(d: int, N: int) -> int:
    # odd diagonals carry lambda slices (N+1 faces), even ones mu slices (N faces)
    return N + 1 if d % 2 else N


@dataclass(frozen=True)
class ParityConvention:
    """Checkerboard shading.  A face is gray when v - u + N + offset is even.

    offset=0 is the shading under which slides produce 2x2 holes; it makes
    the all-vertical tiling the vacuum of the particle picture.
    """
    offset: int = 0

    def __post_init__(self):
        if self.offset not in (0, 1):
            raise ValueError("offset must be 0 or 1")

    def is_gray(self, f: Face, N: int) -> bool:
        return (f.v - f.u + N + self.offset) % 2 == 0

    def shade(self, f: Face, N: int) -> str:
        return "gray" if self.is_gray(f, N) else "white"


DEFAULT_PARITY = ParityConvention(0)
