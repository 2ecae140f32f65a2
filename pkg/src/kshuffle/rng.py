"""Counter-based randomness.

Every Bernoulli draw in the samplers is a pure function of
(seed, step, color, level, index), so draws never depend on evaluation
order and the shuffle and the particle dynamics can be fed identical
randomness.  The mixer is the SplitMix64 finalizer.
"""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_SAMPLE_SALT = np.uint64(0x5851F42D4C957F2D)
_S30, _S27, _S31, _S11 = np.uint64(30), np.uint64(27), np.uint64(31), np.uint64(11)
_INV53 = 1.0 / 9007199254740992.0

MASK64 = (1 << 64) - 1


def as_seed(seed) -> np.uint64:
    return np.uint64(int(seed) & MASK64)


def _mix_np(z):
    z = z ^ (z >> _S30)
    z = z * _M1
    z = z ^ (z >> _S27)
    z = z * _M2
    return z ^ (z >> _S31)


def keyed_uniform(seed, step, color, level, index) -> np.ndarray:
    """Uniform doubles in [0,1) for broadcastable integer key arrays."""
    with np.errstate(over="ignore"):
        h = np.asarray(seed, dtype=np.uint64)
        for key in (step, color, level, index):
            k = np.asarray(key, dtype=np.int64).astype(np.uint64)
            h = _mix_np(h ^ _mix_np(k + _GOLDEN))
        return (h >> _S11).astype(np.float64) * _INV53


def batch_seeds(seed, count: int) -> np.ndarray:
    """Independent per-sample seeds derived from one master seed."""
    with np.errstate(over="ignore"):
        b = np.arange(count, dtype=np.uint64)
        s = _mix_np(np.asarray(as_seed(seed), dtype=np.uint64) ^ _SAMPLE_SALT)
        return _mix_np(s + _mix_np(b + _GOLDEN))


@numba.njit(cache=True)
def _mix_nb(z):
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(0xBF58476D1CE4E5B9)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@numba.njit(cache=True)
def keyed_uniform_nb(seed, step, color, level, index):
    g = np.uint64(0x9E3779B97F4A7C15)
    h = seed
    h = _mix_nb(h ^ _mix_nb(np.uint64(step) + g))
    h = _mix_nb(h ^ _mix_nb(np.uint64(color) + g))
    h = _mix_nb(h ^ _mix_nb(np.uint64(level) + g))
    h = _mix_nb(h ^ _mix_nb(np.uint64(index) + g))
    return np.float64(h >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@dataclass(frozen=True)
class RngStream:
    seed: int

    def uniform(self, step, color, level, index):
        return keyed_uniform(as_seed(self.seed), step, color, level, index)

    def draw(self, step, color, level, index) -> float:
        return float(self.uniform(step, color, level, index))
