import numpy as np
from hypothesis import given, settings, strategies as st

from kshuffle.rng import RngStream, as_seed, batch_seeds, keyed_uniform, keyed_uniform_nb

keys = st.integers(0, 2**20)


@settings(deadline=None)
@given(st.integers(0, 2**64 - 1), keys, keys, keys, keys)
def test_numba_matches_numpy(seed, a, b, c, d):
    x = keyed_uniform(as_seed(seed), a, b, c, d)
    assert float(x) == keyed_uniform_nb(as_seed(seed), a, b, c, d)
    assert 0 <= x < 1


def test_broadcast_and_purity():
    r = keyed_uniform(np.uint64(5), 3, np.arange(2)[:, None], 4, np.arange(1, 6)[None, :])
    assert r.shape == (2, 5)
    assert r[1, 2] == RngStream(5).draw(3, 1, 4, 3)
    assert len(np.unique(r)) == 10


def test_rough_uniformity():
    u = keyed_uniform(np.uint64(0), np.arange(200_000), 0, 0, 0)
    assert abs(u.mean() - 0.5) < 0.005
    assert abs((u < 0.25).mean() - 0.25) < 0.005


def test_batch_seeds():
    s = batch_seeds(1, 1000)
    assert s.dtype == np.uint64 and len(np.unique(s)) == 1000
    assert (batch_seeds(1, 10) == s[:10]).all()
    assert not (batch_seeds(2, 10) == s[:10]).any()
