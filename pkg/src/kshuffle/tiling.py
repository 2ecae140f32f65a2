"""Domino tilings, k-tilings, weights and interaction counting."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from .geometry import DEFAULT_PARITY, Face, ParityConvention, faces_of_rank


class Domino(NamedTuple):
    u: int
    v: int
    orient: str  # "h" or "v"

    @property
    def anchor(self) -> Face:
        return Face(self.u, self.v)

    @property
    def horizontal(self) -> bool:
        return self.orient == "h"

    def faces(self) -> tuple[Face, Face]:
        if self.orient == "h":
            return Face(self.u, self.v), Face(self.u + 1, self.v)
        return Face(self.u, self.v), Face(self.u, self.v + 1)


def H(u, v):
    return Domino(u, v, "h")


def V(u, v):
    return Domino(u, v, "v")


class CompassType(enum.Enum):
    N = "N"
    S = "S"
    E = "E"
    W = "W"


MOVES = {CompassType.N: (0, 1), CompassType.S: (0, -1),
         CompassType.E: (1, 0), CompassType.W: (-1, 0)}


@dataclass(frozen=True)
class Tiling:
    rank: int
    dominoes: frozenset

    def __init__(self, rank, dominoes=()):
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "dominoes", frozenset(Domino(*d) for d in dominoes))

    @cached_property
    def cover(self) -> dict:
        """face -> domino covering it (last writer wins on overlaps)."""
        out = {}
        for d in self.dominoes:
            for f in d.faces():
                out[f] = d
        return out

    def sorted(self) -> list:
        return sorted(self.dominoes, key=lambda d: (d.v, d.u, d.orient))

    def __repr__(self):
        return f"Tiling(rank={self.rank}, {len(self.dominoes)} dominoes)"


@dataclass(frozen=True)
class KTiling:
    rank: int
    colors: tuple

    def __init__(self, colors, rank=None):
        colors = tuple(colors)
        if rank is None:
            if not colors:
                raise ValueError("need at least one color or an explicit rank")
            rank = colors[0].rank
        if any(T.rank != rank for T in colors):
            raise ValueError("all colors must share the same rank")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "colors", colors)

    @property
    def k(self) -> int:
        return len(self.colors)


def _num(x):
    if isinstance(x, str):
        return Fraction(x)
    return x


@dataclass(frozen=True)
class WeightConfig:
    """Horizontal-domino weights c_1.., b_1.. and interaction strength t.

    Entries may be floats (sampling) or Fractions (exact oracle work).
    Tuples may be longer than the rank in use; only a prefix is read.
    """
    c: tuple
    b: tuple
    t: object = 1

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(_num(x) for x in self.c))
        object.__setattr__(self, "b", tuple(_num(x) for x in self.b))
        object.__setattr__(self, "t", _num(self.t))
        if any(x <= 0 for x in self.c + self.b):
            raise ValueError("c and b weights must be positive")
        if self.t < 0:
            raise ValueError("t must be nonnegative")

    @classmethod
    def uniform(cls, N: int, t=1, value=1):
        return cls((value,) * N, (value,) * N, t)

    def cw(self, m: int):
        return self.c[m - 1]

    def bw(self, m: int):
        return self.b[m - 1]

    def check_rank(self, N: int):
        if len(self.c) < N or len(self.b) < N:
            raise ValueError(f"weights cover rank {min(len(self.c), len(self.b))}, need {N}")

    def exact(self) -> "WeightConfig":
        return WeightConfig(tuple(Fraction(x) for x in self.c),
                            tuple(Fraction(x) for x in self.b), Fraction(self.t))


def validate(T: Tiling) -> bool:
    faces = faces_of_rank(T.rank)
    seen = set()
    for d in T.dominoes:
        if d.orient not in ("h", "v"):
            return False
        for f in d.faces():
            if f in seen or f not in faces:
                return False
            seen.add(f)
    return len(seen) == len(faces)


def classify(dom: Domino, N: int, conv: ParityConvention = DEFAULT_PARITY) -> CompassType:
    gray = conv.is_gray(dom.anchor, N)
    if dom.orient == "h":
        return CompassType.N if gray else CompassType.S
    return CompassType.E if gray else CompassType.W


def domino_weight(dom: Domino, w: WeightConfig, N: int):
    if dom.orient == "v":
        return 1
    d = dom.v - dom.u + N
    if d <= 0 or d > 2 * N:
        raise ValueError(f"horizontal domino {dom} has its left cell on boundary diagonal {d}")
    m = (d + 1) // 2
    return w.cw(m) if d % 2 else w.bw(N - m + 1)


def tiling_weight(T: Tiling, w: WeightConfig):
    if not validate(T):
        raise ValueError("invalid tiling")
    out = 1
    for d in T.dominoes:
        if d.orient == "h":
            out = out * domino_weight(d, w, T.rank)
    return out


def count_interactions(Ta: Tiling, Tb: Tiling) -> int:
    """Interactions between a smaller color Ta (blue) and a larger color Tb (red)."""
    if Ta.rank != Tb.rank:
        raise ValueError("rank mismatch")
    N = Ta.rank
    A, B = Ta.dominoes, Tb.dominoes
    n = 0
    for (u, v, o) in A:
        if o != "h" or (v - u + N) % 2 == 0:
            continue
        # blue horizontal with white left cell f=(u,v)
        n += (u, v, "h") in B            # I
        n += (u - 1, v, "h") in B        # II
        n += (u, v, "v") in B            # III
    for (u, v, o) in B:
        if o == "h" and (v - u + N) % 2 == 0:
            n += (u + 1, v, "v") in A    # IV
    return n


def total_interactions(KT: KTiling) -> int:
    cols = KT.colors
    return sum(count_interactions(cols[a], cols[b])
               for a in range(len(cols)) for b in range(a + 1, len(cols)))


def ktiling_weight(KT: KTiling, w: WeightConfig):
    out = 1
    for T in KT.colors:
        out = out * tiling_weight(T, w)
    e = total_interactions(KT)
    return out * w.t ** e if e else out


# -- dump format ---------------------------------------------------------

def ktiling_to_dict(KT: KTiling) -> dict:
    return {
        "rank": KT.rank,
        "colors": KT.k,
        "tilings": [[{"u": d.u, "v": d.v, "o": d.orient} for d in T.sorted()]
                    for T in KT.colors],
    }


def ktiling_from_dict(doc: dict) -> KTiling:
    N = int(doc["rank"])
    tilings = doc["tilings"]
    if int(doc.get("colors", len(tilings))) != len(tilings):
        raise ValueError("'colors' does not match the number of tilings")
    cols = []
    for dl in tilings:
        doms = []
        for e in dl:
            if e["o"] not in ("h", "v"):
                raise ValueError(f"bad orientation {e['o']!r}")
            doms.append(Domino(int(e["u"]), int(e["v"]), e["o"]))
        cols.append(Tiling(N, doms))
    return KTiling(cols, rank=N)


def dumps(KT: KTiling) -> str:
    return json.dumps(ktiling_to_dict(KT), separators=(",", ":"))


def loads(s: str) -> KTiling:
    return ktiling_from_dict(json.loads(s))
