"""Generalized domino shuffling.

Each step slides every domino one unit in its compass direction, deletes
pairs that would pass through each other, and fills the uncovered 2x2
blocks color by color, smallest color first.  The fill of a block is
horizontal with probability w t^e / (1 + w t^e), where w is the weight of
a horizontal pair on that block and e counts nearby dominoes of the other
colors (see creation_exponent).

Two implementations live here: a readable set-based one (shuffle_step)
and a numba kernel (sample_batch) that runs many samples at once.  They
consume the same keyed randomness and must agree exactly.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numba
import numpy as np

from .geometry import DEFAULT_PARITY, Face, diagonal_faces, faces_of_rank
from .rng import RngStream, as_seed, batch_seeds, keyed_uniform_nb
from .tiling import MOVES, CompassType, Domino, KTiling, Tiling, WeightConfig, classify


class ShuffleError(AssertionError):
    """The slide step did not produce a partial tiling with 2x2 holes."""


class CreationIndex(enum.Enum):
    """How the weight index i of a created block is read off its lower-left
    face.  ODD: that face sits on diagonal 2i-1 of the new diamond.  EVEN:
    literal "diagonal 2i" reading, i = floor(d/2), clamped to 1."""
    ODD = "2i-1"
    EVEN = "2i"


def weight_index(d: int, conv: CreationIndex = CreationIndex.ODD) -> int:
    if conv is CreationIndex.ODD:
        return (d + 1) // 2
    return max(d // 2, 1)


def pair_weight(d: int, Np: int, w: WeightConfig, conv: CreationIndex = CreationIndex.ODD):
    """Weight c_i b_{N'-i+1} of a horizontal pair whose lower-left face is on diagonal d."""
    i = weight_index(d, conv)
    return w.cw(i) * w.bw(Np - i + 1)


@dataclass(frozen=True)
class PartialTiling:
    rank: int
    placed: frozenset          # Domino
    holes: tuple               # lower-left faces of the 2x2 blocks, raster order

    def hole_faces(self):
        for f in self.holes:
            yield from (f, Face(f.u + 1, f.v), Face(f.u, f.v + 1), Face(f.u + 1, f.v + 1))


def slide_destroy(T: Tiling) -> PartialTiling:
    N = T.rank
    doms = T.dominoes
    kinds = {d: classify(d, N) for d in doms}
    dead = set()
    for d, c in kinds.items():
        if c is CompassType.N and Domino(d.u, d.v + 1, "h") in doms:
            dead.update((d, Domino(d.u, d.v + 1, "h")))
        elif c is CompassType.E and Domino(d.u + 1, d.v, "v") in doms:
            dead.update((d, Domino(d.u + 1, d.v, "v")))
    placed = set()
    for d, c in kinds.items():
        if d not in dead:
            du, dv = MOVES[c]
            placed.add(Domino(d.u + du, d.v + dv, d.orient))
    Np = N + 1
    region = faces_of_rank(Np)
    covered = set()
    for d in placed:
        for f in d.faces():
            if f in covered or f not in region:
                raise ShuffleError(f"slid domino {d} collides or leaves the diamond")
            covered.add(f)
    free = region - covered
    holes = []
    for f in sorted(free, key=lambda f: (f.v, f.u)):
        if f not in free:
            continue
        block = (f, Face(f.u + 1, f.v), Face(f.u, f.v + 1), Face(f.u + 1, f.v + 1))
        if not all(g in free for g in block) or (f.v - f.u + Np) % 2 == 0:
            raise ShuffleError(f"uncovered region is not a union of 2x2 blocks near {f}")
        free.difference_update(block)
        holes.append(f)
    return PartialTiling(Np, frozenset(placed), tuple(holes))


def creation_exponent(block: Face, l: int, states) -> int:
    """states[m] is a PartialTiling (m >= l, not yet filled) or a filled Tiling (m < l)."""
    n = 0
    u, v = block
    for m, s in enumerate(states):
        if m > l:
            if not isinstance(s, PartialTiling):
                raise ValueError("larger colors must still be unfilled")
            n += (Domino(u, v, "v") in s.placed or Domino(u, v, "h") in s.placed
                  or block in s.holes)
        elif m < l:
            if isinstance(s, PartialTiling):
                raise ValueError(f"color {m} must be filled before color {l}")
            n += (Domino(u + 1, v + 1, "h") in s.dominoes or Domino(u + 1, v + 1, "v") in s.dominoes)
    return n


def fill_probability(weight, t, e: int, t_inf: bool = False) -> float:
    if t_inf:
        return 1.0 if e > 0 else weight / (1 + weight)
    x = weight * (t ** e if e else 1)
    return x / (1 + x)


def particle_index(P: PartialTiling, block: Face) -> int:
    """1 + number of particles to the NE of the block on its slice."""
    Np = P.rank
    d = block.v - block.u + Np
    cover = {}
    for dom in P.placed:
        for f in dom.faces():
            cover[f] = dom
    holes = set(P.holes)
    i = 1
    for f in diagonal_faces(d, Np):
        if f.u <= block.u:
            continue
        if f in holes:
            i += 1
        elif f in cover:
            dom = cover[f]
            gray = DEFAULT_PARITY.is_gray(dom.anchor, Np)
            i += gray if dom.orient == "h" else not gray
    return i


def fill_block(block: Face, l: int, e: int, P: PartialTiling, w: WeightConfig, rng: RngStream,
               conv: CreationIndex = CreationIndex.ODD, t_inf: bool = False) -> str:
    Np = P.rank
    d = block.v - block.u + Np
    n = (d + 1) // 2
    p = fill_probability(pair_weight(d, Np, w, conv), w.t, e, t_inf)
    u = rng.draw(Np, l, n, particle_index(P, block))
    return "h" if u < p else "v"


def pair_dominoes(block: Face, kind: str):
    u, v = block
    if kind == "h":
        return Domino(u, v, "h"), Domino(u, v + 1, "h")
    return Domino(u, v, "v"), Domino(u + 1, v, "v")


def shuffle_step(KT: KTiling, w: WeightConfig, rng: RngStream,
                 conv: CreationIndex = CreationIndex.ODD, t_inf: bool = False) -> KTiling:
    w.check_rank(KT.rank + 1)
    states = [slide_destroy(T) for T in KT.colors]
    for l, P in enumerate(states):
        doms = set(P.placed)
        for block in P.holes:
            e = creation_exponent(block, l, states)
            doms.update(pair_dominoes(block, fill_block(block, l, e, P, w, rng, conv, t_inf)))
        states[l] = Tiling(P.rank, doms)
    return KTiling(states, rank=KT.rank + 1)


def empty_ktiling(k: int) -> KTiling:
    return KTiling([Tiling(0, ())] * k, rank=0)


def sample_reference(N: int, k: int, w: WeightConfig, seed: int,
                     conv: CreationIndex = CreationIndex.ODD) -> KTiling:
    rng = RngStream(seed)
    KT = empty_ktiling(k)
    for _ in range(N):
        KT = shuffle_step(KT, w, rng, conv)
    return KT


# -- numba kernel ----------------------------------------------------------
# grid layout: g[l, U, V] with U = u + off, V = v + off; code 1 marks the
# anchor of a horizontal domino, code 2 the anchor of a vertical one.

@numba.njit(cache=True, nogil=True)
def _step(g, N, off, pw, t, t_inf, seed):
    k, G, _ = g.shape
    Np = N + 1
    lo = off - Np - 1
    hi = off + Np + 1
    new = np.zeros_like(g)
    part = np.zeros((k, G, G), np.int8)   # 1 covered by a non-particle, 2 by a particle
    hole = np.zeros((k, G, G), np.bool_)
    err = 0
    for l in range(k):
        for U in range(lo, hi):
            for V in range(lo, hi):
                c = g[l, U, V]
                if c == 0:
                    continue
                gray = ((V - U + N) & 1) == 0
                if c == 1:
                    if gray:
                        if g[l, U, V + 1] != 1:
                            new[l, U, V + 1] = 1
                    elif g[l, U, V - 1] != 1:
                        new[l, U, V - 1] = 1
                else:
                    if gray:
                        if g[l, U + 1, V] != 2:
                            new[l, U + 1, V] = 2
                    elif g[l, U - 1, V] != 2:
                        new[l, U - 1, V] = 2
        for U in range(lo, hi):
            for V in range(lo, hi):
                c = new[l, U, V]
                if c == 0:
                    continue
                u = U - off
                v = V - off
                gray = ((V - U + Np) & 1) == 0
                if c == 1:
                    U2, V2 = U + 1, V
                    pf = 2 if gray else 1
                else:
                    U2, V2 = U, V + 1
                    pf = 1 if gray else 2
                if part[l, U, V] or part[l, U2, V2]:
                    err = 1
                if abs(2 * u + 1) + abs(2 * v + 1) > 2 * Np:
                    err = 1
                if abs(2 * (U2 - off) + 1) + abs(2 * (V2 - off) + 1) > 2 * Np:
                    err = 1
                part[l, U, V] = pf
                part[l, U2, V2] = pf
        # raster decomposition of the uncovered faces into blocks
        for V in range(lo, hi):
            for U in range(lo, hi):
                if part[l, U, V] != 0:
                    continue
                u = U - off
                v = V - off
                if abs(2 * u + 1) + abs(2 * v + 1) > 2 * Np:
                    continue
                ok = ((V - U + Np) & 1) == 1
                for (a, b) in ((U + 1, V), (U, V + 1), (U + 1, V + 1)):
                    if part[l, a, b] != 0 or abs(2 * (a - off) + 1) + abs(2 * (b - off) + 1) > 2 * Np:
                        ok = False
                if not ok:
                    err = 2
                    continue
                hole[l, U, V] = True
                part[l, U, V] = 3
                part[l, U + 1, V] = 3
                part[l, U, V + 1] = 3
                part[l, U + 1, V + 1] = 3
    if err:
        return new, err
    for l in range(k):
        # particle index of every block along its slice, counted from the NE end
        idx = np.zeros((G, G), np.int64)
        for d in range(1, 2 * Np + 1, 2):
            cnt = 0
            for U in range(hi - 1, lo - 1, -1):
                V = U + d - Np
                if V < lo or V >= hi:
                    continue
                if hole[l, U, V]:
                    cnt += 1
                    idx[U, V] = cnt
                elif part[l, U, V] == 2:
                    cnt += 1
        for U in range(lo, hi):
            for V in range(lo, hi):
                if not hole[l, U, V]:
                    continue
                e = 0
                for m in range(l + 1, k):
                    if new[m, U, V] != 0 or hole[m, U, V]:
                        e += 1
                for m in range(l):
                    if new[m, U + 1, V + 1] != 0:
                        e += 1
                d = V - U + Np
                n = (d + 1) // 2
                wgt = pw[(d - 1) // 2]
                if t_inf:
                    p = 1.0 if e > 0 else wgt / (1.0 + wgt)
                else:
                    x = wgt * t ** e
                    p = x / (1.0 + x)
                r = keyed_uniform_nb(seed, Np, l, n, idx[U, V])
                if r < p:
                    new[l, U, V] = 1
                    new[l, U, V + 1] = 1
                else:
                    new[l, U, V] = 2
                    new[l, U + 1, V] = 2
    return new, 0


@numba.njit(cache=True, nogil=True)
def _run(g, N0, N1, off, pws, t, t_inf, seed):
    for N in range(N0, N1):
        g, err = _step(g, N, off, pws[N], t, t_inf, seed)
        if err:
            return g, err, N
    return g, 0, N1


def pair_weight_table(N: int, w: WeightConfig, conv: CreationIndex = CreationIndex.ODD) -> np.ndarray:
    """pws[s, m-1] = weight of a horizontal pair on slice 2m-1 at step s -> s+1."""
    w.check_rank(N)
    out = np.zeros((max(N, 1), max(N, 1)))
    for s in range(N):
        Np = s + 1
        for m in range(1, Np + 1):
            out[s, m - 1] = float(pair_weight(2 * m - 1, Np, w, conv))
    return out


def grid_size(N: int) -> tuple[int, int]:
    off = N + 2
    return 2 * N + 4, off


def grid_to_tiling(g2: np.ndarray, N: int, off: int) -> Tiling:
    Us, Vs = np.nonzero(g2)
    doms = [Domino(int(U) - off, int(V) - off, "h" if g2[U, V] == 1 else "v")
            for U, V in zip(Us, Vs)]
    return Tiling(N, doms)


def _run_one(N, k, pws, t, t_inf, seed):
    G, off = grid_size(N)
    g = np.zeros((k, G, G), np.int8)
    g, err, at = _run(g, 0, N, off, pws, t, t_inf, np.uint64(seed))
    if err:
        raise ShuffleError(f"invariant failure at step {at} -> {at + 1} (code {err})")
    return g


def sample_grids(N: int, k: int, w: WeightConfig, seeds, t_inf: bool = False,
                 conv: CreationIndex = CreationIndex.ODD, threads: int = 1):
    """Run the kernel once per seed; yields (seed, grid, off) in seed order.
    The kernel releases the GIL, so threads > 1 runs samples concurrently
    without changing any output."""
    _, off = grid_size(N)
    pws = pair_weight_table(N, w, conv)
    t = float(w.t)
    seeds = np.atleast_1d(np.asarray(seeds, dtype=np.uint64))
    if threads > 1 and len(seeds) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(threads) as ex:
            grids = ex.map(lambda s: _run_one(N, k, pws, t, t_inf, s), seeds)
            for s, g in zip(seeds, grids):
                yield s, g, off
        return
    for s in seeds:
        yield s, _run_one(N, k, pws, t, t_inf, s), off


def sample_stepwise(N: int, k: int, w: WeightConfig, seed: int, t_inf: bool = False,
                    on_step=None) -> KTiling:
    """Same result as sample(); calls on_step(rank) after every step."""
    G, off = grid_size(N)
    pws = pair_weight_table(N, w)
    g = np.zeros((k, G, G), np.int8)
    for s in range(N):
        g, err, at = _run(g, s, s + 1, off, pws, float(w.t), t_inf, as_seed(seed))
        if err:
            raise ShuffleError(f"invariant failure at step {at} -> {at + 1} (code {err})")
        if on_step:
            on_step(s + 1)
    return grid_to_ktiling(g, N, off)


def sample(N: int, k: int, w: WeightConfig, seed: int, t_inf: bool = False,
           conv: CreationIndex = CreationIndex.ODD) -> KTiling:
    if N < 0 or k < 1:
        raise ValueError("need N >= 0 and k >= 1")
    (_, g, off), = sample_grids(N, k, w, [as_seed(seed)], t_inf, conv)
    return grid_to_ktiling(g, N, off)


def sample_many(N: int, k: int, w: WeightConfig, count: int, seed: int, **kw):
    """count independent samples with seeds derived from one master seed."""
    for _, g, off in sample_grids(N, k, w, batch_seeds(seed, count), **kw):
        yield grid_to_ktiling(g, N, off)


def grid_to_ktiling(g: np.ndarray, N: int, off: int) -> KTiling:
    return KTiling([grid_to_tiling(g[l], N, off) for l in range(g.shape[0])], rank=N)
