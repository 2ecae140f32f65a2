"""Colored interlacing particle dynamics (LLT parallel update).

State at rank N: for each level n = 1..N an integer array X[n-1] of shape
(B, k, n) holding p = x - 1/2 for the particles of lambda^(n), largest
first, for a batch of B independent samples.  The mu particles are not
stored: after an update, mu^(n) is the previous lambda^(n-1).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .partitions import ColoredParticleArray
from .rng import as_seed, batch_seeds, keyed_uniform
from .tiling import WeightConfig

FREE, JUMP, STAY = 0, 1, 2


class DynamicsError(AssertionError):
    pass


@dataclass
class DynState:
    rank: int
    X: list           # level n -> (B, k, n) int64
    Y: list           # level n -> (B, k, n-1) int64
    seeds: np.ndarray  # (B,) uint64

    @property
    def batch(self) -> int:
        return len(self.seeds)

    @classmethod
    def vacuum(cls, k: int, seeds) -> "DynState":
        seeds = np.atleast_1d(np.asarray(seeds, dtype=np.uint64))
        return cls(0, [], [], seeds)

    def to_array(self, b: int = 0) -> ColoredParticleArray:
        k = self.X[0].shape[1] if self.X else 0
        x = tuple(tuple(tuple(int(2 * p + 1) for p in self.X[n][b, l]) for l in range(k))
                  for n in range(self.rank))
        y = tuple(tuple(tuple(int(2 * p + 1) for p in self.Y[n][b, l]) for l in range(k))
                  for n in range(self.rank))
        return ColoredParticleArray(self.rank, k, x, y)

    @classmethod
    def from_array(cls, A: ColoredParticleArray, seed) -> "DynState":
        X = [np.array([[[(a - 1) // 2 for a in A.x[n][l]] for l in range(A.colors)]], np.int64)
             for n in range(A.rank)]
        Y = [np.array([[[(a - 1) // 2 for a in A.y[n][l]] for l in range(A.colors)]], np.int64)
             .reshape(1, A.colors, n) for n in range(A.rank)]
        return cls(A.rank, X, Y, np.atleast_1d(np.asarray(as_seed(seed), dtype=np.uint64)))


def _augmented(state: DynState, k: int):
    """Old levels 1..N plus the vacuum row at level N+1."""
    B, N = state.batch, state.rank
    vac = np.broadcast_to(-np.arange(1, N + 2, dtype=np.int64), (B, k, N + 1))
    return state.X + [vac]


def _ytilde(Xold, n: int, B: int, k: int):
    """ytilde^(n) with the convention ytilde_n = -n (in p coordinates)."""
    tail = np.full((B, k, 1), -n, np.int64)
    if n == 1:
        return tail
    return np.concatenate([Xold[n - 2], tail], axis=2)


def forced_moves(x, yt) -> np.ndarray:
    """x, yt: (..., n).  Returns FREE / JUMP / STAY codes per particle."""
    jump = x == yt - 1
    stay = np.zeros_like(jump)
    stay[..., 1:] = x[..., 1:] == yt[..., :-1] - 1
    if np.any(jump & stay):
        raise DynamicsError("particle both forced to jump and to stay")
    return np.where(jump, JUMP, np.where(stay, STAY, FREE))


def t_power(x, yt) -> np.ndarray:
    """x, yt: (B, k, n) at one level.  Count per particle (b, l, i) of colors
    m > l with some j: yt_j^m <= x_i^l <= x_j^m, plus colors m < l with some
    j: yt_j^m <= x_i^l + 1 <= x_j^m."""
    B, k, n = x.shape
    xi = x[:, :, None, :, None]                 # (B, l, 1, i, 1)
    xj = x[:, None, :, None, :]                 # (B, 1, m, 1, j)
    yj = yt[:, None, :, None, :]
    hit0 = ((yj <= xi) & (xi <= xj)).any(-1)            # (B, l, m, i)
    hit1 = ((yj <= xi + 1) & (xi + 1 <= xj)).any(-1)
    lm = np.arange(k)
    above = (lm[None, :] > lm[:, None])[None, :, :, None]   # m > l
    below = (lm[None, :] < lm[:, None])[None, :, :, None]
    return (hit0 & above).sum(2) + (hit1 & below).sum(2)


def level_weights(N: int, w: WeightConfig) -> np.ndarray:
    """Jump weight c_n b_{N-n+2} for levels n = 1..N+1 of the step N -> N+1."""
    w.check_rank(N + 1)
    return np.array([float(w.cw(n) * w.bw(N - n + 2)) for n in range(1, N + 2)])


def parallel_update(state: DynState, w: WeightConfig, k: int | None = None,
                    t_inf: bool = False, check: bool = True) -> DynState:
    if k is None:
        if not state.X:
            raise ValueError("pass k when updating the empty state")
        k = state.X[0].shape[1]
    B, N = state.batch, state.rank
    Xold = _augmented(state, k)
    W = level_weights(N, w)
    t = float(w.t)
    step = N + 1
    Xnew = []
    for n in range(1, N + 2):
        x = Xold[n - 1]
        yt = _ytilde(Xold, n, B, k)
        mv = forced_moves(x, yt)
        e = t_power(x, yt)
        if t_inf:
            p = np.where(e > 0, 1.0, W[n - 1] / (1 + W[n - 1]))
        else:
            z = W[n - 1] * np.power(t, e)
            p = z / (1 + z)
        r = keyed_uniform(state.seeds[:, None, None], step, np.arange(k)[None, :, None], n,
                          np.arange(1, n + 1)[None, None, :])
        jump = (mv == JUMP) | ((mv == FREE) & (r < p))
        Xnew.append(x + jump)
    Ynew = [np.zeros((B, k, 0), np.int64)] + [Xold[n - 1] for n in range(1, N + 1)]
    out = DynState(N + 1, Xnew, Ynew, state.seeds)
    if check:
        check_state(out)
    return out


def check_state(state: DynState) -> None:
    """Interlacing and bounds, vectorized over the batch."""
    N = state.rank
    for n in range(1, N + 1):
        x, y = state.X[n - 1], state.Y[n - 1]
        if x.size and (x.min() < -n or x.max() > N - n):
            raise DynamicsError(f"x out of bounds at level {n}")
        if y.size and (y.min() < -n + 1 or y.max() > N - n):
            raise DynamicsError(f"y out of bounds at level {n}")
        if n > 1 and not (np.all(x[..., :-1] >= y) and np.all(y > x[..., 1:])):
            raise DynamicsError(f"x/y interlacing fails at level {n}")
        if n < N:
            y2 = state.Y[n]
            if not (np.all(x >= y2) and np.all(y2 >= x - 1)):
                raise DynamicsError(f"x/y' interlacing fails at level {n}")


def run(N: int, k: int, w: WeightConfig, seeds, t_inf: bool = False) -> DynState:
    state = DynState.vacuum(k, seeds)
    for _ in range(N):
        state = parallel_update(state, w, k, t_inf)
    return state


def sample_arrays(N: int, k: int, w: WeightConfig, count: int, seed: int) -> DynState:
    return run(N, k, w, batch_seeds(seed, count))


def bottom_row_probabilities(x_bottom, t: float) -> dict:
    """Uniform-weight jump probabilities t^i/(1+t^i) for the bottom level,
    where i ranks a particle from the right, ties broken by putting larger
    colors first.  x_bottom: list over colors of positions (one per color)."""
    k = len(x_bottom)
    order = sorted(range(k), key=lambda l: (-x_bottom[l], -l))
    return {l: t ** (r) / (1 + t ** r) for r, l in enumerate(order)}
