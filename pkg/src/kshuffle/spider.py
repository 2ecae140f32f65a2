"""The two-color spider move on a single dimer cell.

A cell is a square face of the dimer graph: black vertices at its
bottom-left (BL) and top-right (TR) corners, white ones at BR and TL.  Its
edges carry weights a (top), b (right), c (bottom), d (left).  Each corner
vertex also has one more edge leaving the cell (a "leg").

For one color, the boundary condition records which corners are matched
outside the cell.  The six possibilities are named by what the
corresponding dominoes do under shuffling.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .tiling import KTiling


class BC(enum.Enum):
    CREATE = "c"
    DESTROY = "d"
    LEFT = "←"
    RIGHT = "→"
    UP = "↑"
    DOWN = "↓"


CORNERS = ("BL", "BR", "TL", "TR")
EDGES = {"a": ("TL", "TR"), "b": ("BR", "TR"), "c": ("BL", "BR"), "d": ("BL", "TL")}

# corners matched outside the cell
EXTERNAL = {
    BC.CREATE: frozenset(CORNERS),
    BC.DESTROY: frozenset(),
    BC.RIGHT: frozenset({"TR", "BR"}),
    BC.LEFT: frozenset({"BL", "TL"}),
    BC.UP: frozenset({"TL", "TR"}),
    BC.DOWN: frozenset({"BL", "BR"}),
}
_BY_INTERNAL = {frozenset(CORNERS) - ext: bc for bc, ext in EXTERNAL.items()}


@dataclass(frozen=True)
class CellWeights:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            x = Fraction(getattr(self, name))
            if x <= 0:
                raise ValueError("cell weights must be positive")
            object.__setattr__(self, name, x)

    @property
    def delta(self) -> Fraction:
        return self.a * self.c + self.b * self.d

    def edge(self, name: str) -> Fraction:
        return getattr(self, name)


def transform(cw: CellWeights) -> CellWeights:
    D = cw.delta
    return CellWeights(cw.c / D, cw.d / D, cw.a / D, cw.b / D)


def gamma(cw: CellWeights, t) -> Fraction:
    t = Fraction(t)
    return cw.delta / (cw.a * cw.c * t + cw.b * cw.d)


def _matchings(corners: frozenset):
    """Sets of cell edges covering `corners` exactly once."""
    out = []
    for r in range(3):
        for es in itertools.combinations("abcd", r):
            hit = [v for e in es for v in EDGES[e]]
            if len(hit) == len(set(hit)) and set(hit) == set(corners):
                out.append(frozenset(es))
    return out


def configurations(bc: BC, side: str) -> list[frozenset]:
    """Occupied local edges.  Before: cell edges plus 'leg:X' for corners
    matched outside.  After: cell edges plus 'in:X' (the new inner legs)
    and 'out:X' (the legs beyond them)."""
    ext = EXTERNAL[bc]
    if side == "before":
        legs = {f"leg:{x}" for x in ext}
        return [m | legs for m in _matchings(frozenset(CORNERS) - ext)]
    if side == "after":
        legs = {f"out:{x}" for x in ext} | {f"in:{x}" for x in CORNERS if x not in ext}
        return [m | legs for m in _matchings(ext)]
    raise ValueError(side)


def local_interactions(blue: frozenset, red: frozenset, side: str) -> int:
    if side == "before":
        return (("a" in blue and "a" in red) + ("b" in blue and "c" in red)
                + ("a" in blue and "leg:TL" in red))
    return (("c" in blue and "c" in red) + ("c" in blue and "d" in red)
            + ("in:TR" in blue and "a" in red))


def _weight(cfg, cw: CellWeights):
    out = Fraction(1)
    for e in cfg:
        if e in EDGES:
            out *= cw.edge(e)
    return out


def local_Z(cw: CellWeights, alpha: BC, beta: BC, side: str, t) -> Fraction:
    """Two-color local partition function; alpha is the smaller color."""
    t = Fraction(t)
    w = cw if side == "before" else transform(cw)
    total = Fraction(0)
    for A in configurations(alpha, side):
        for R in configurations(beta, side):
            e = local_interactions(A, R, side)
            total += _weight(A, w) * _weight(R, w) * (t ** e if e else 1)
    return total


def local_Z_one(cw: CellWeights, bc: BC, side: str) -> Fraction:
    w = cw if side == "before" else transform(cw)
    return sum((_weight(A, w) for A in configurations(bc, side)), Fraction(0))


_CLASS_C_SIDE = (BC.CREATE, BC.LEFT, BC.DOWN)
_CLASS_D_SIDE = (BC.DESTROY, BC.LEFT, BC.DOWN)


def bc_class(alpha: BC, beta: BC) -> str:
    if (alpha is BC.CREATE and beta in _CLASS_C_SIDE) or (beta is BC.CREATE and alpha in _CLASS_C_SIDE):
        return "C"
    if (alpha is BC.DESTROY and beta in _CLASS_D_SIDE) or (beta is BC.DESTROY and alpha in _CLASS_D_SIDE):
        return "D"
    return "-"


@dataclass
class RelationResult:
    alpha: BC
    beta: BC
    cls: str
    before: Fraction
    after: Fraction
    factor: Fraction

    @property
    def ok(self) -> bool:
        return self.before == self.factor * self.after


def check_relations(cw: CellWeights, t) -> list[RelationResult]:
    t = Fraction(t)
    D2 = cw.delta ** 2
    G = gamma(cw, t)
    out = []
    for alpha, beta in itertools.product(BC, repeat=2):
        cls = bc_class(alpha, beta)
        factor = D2 * (G if cls == "C" else 1 / G if cls == "D" else 1)
        out.append(RelationResult(alpha, beta, cls, local_Z(cw, alpha, beta, "before", t),
                                  local_Z(cw, alpha, beta, "after", t), factor))
    return out


def verify_lemma(cw: CellWeights, t) -> RelationResult | None:
    """First failing relation, or None when all 36 hold."""
    for r in check_relations(cw, t):
        if not r.ok:
            return r
    return None


# -- cells of a whole diamond ---------------------------------------------

def cells_of_rank(N: int) -> list[tuple[int, int]]:
    """Lattice points (x, y) carrying a spider cell: x + y + N even and
    |x| + |y| <= N + 1.  Cells sit on N + 1 SW-NE diagonals of N + 1 cells."""
    return [(x, y) for x in range(-N - 1, N + 2) for y in range(-N - 1, N + 2)
            if (x + y + N) % 2 == 0 and abs(x) + abs(y) <= N + 1]


def cell_faces(x: int, y: int) -> dict:
    return {"BL": (x - 1, y - 1), "BR": (x, y - 1), "TL": (x - 1, y), "TR": (x, y)}


def cell_state(T, x: int, y: int) -> tuple[BC, frozenset]:
    """Boundary condition of one color at a cell, with its local edge set."""
    faces = cell_faces(x, y)
    where = {f: name for name, f in faces.items()}
    internal = set()
    edges = set()
    for name, f in faces.items():
        dom = T.cover.get(f)
        if dom is None:
            continue
        other = [g for g in dom.faces() if tuple(g) != f][0]
        if tuple(other) in where:
            internal.add(name)
            pair = {name, where[tuple(other)]}
            edges.update(e for e, ends in EDGES.items() if set(ends) == pair)
    internal = frozenset(internal)
    if internal not in _BY_INTERNAL:
        raise ValueError(f"impossible local state at cell ({x}, {y})")
    bc = _BY_INTERNAL[internal]
    return bc, frozenset(edges) | {f"leg:{c}" for c in EXTERNAL[bc]}


def cell_interactions(KT: KTiling) -> int:
    """Total interactions of a k-tiling, summed cell by cell."""
    N = KT.rank
    total = 0
    for x, y in cells_of_rank(N):
        states = [cell_state(T, x, y)[1] for T in KT.colors]
        for a in range(len(states)):
            for b in range(a + 1, len(states)):
                total += local_interactions(states[a], states[b], "before")
    return total


def diagonal_counts(KT: KTiling) -> dict:
    """(#C - #D) per SW-NE diagonal y - x of cells."""
    if KT.k != 2:
        raise ValueError("the diagonal count is defined for 2-tilings")
    Ta, Tb = KT.colors
    out = {}
    for x, y in cells_of_rank(KT.rank):
        cls = bc_class(cell_state(Ta, x, y)[0], cell_state(Tb, x, y)[0])
        out.setdefault(y - x, 0)
        out[y - x] += (cls == "C") - (cls == "D")
    return out


def diagonal_count_check(KT: KTiling) -> bool:
    return all(v == 1 for v in diagonal_counts(KT).values())
