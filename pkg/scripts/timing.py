"""Wall time of one exact sample against rank (kernel only, compile excluded).

    python3 scripts/timing.py --ranks 32 64 128 256 512 --colors 2 3
"""
import argparse
import time

import numpy as np

from kshuffle import shuffle
from kshuffle.tiling import WeightConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ranks", type=int, nargs="+", default=[32, 64, 128, 256])
    ap.add_argument("--colors", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--t", type=float, default=0.2)
    ap.add_argument("--seed", type=int, default=1)
    a = ap.parse_args()

    shuffle.sample(4, 1, WeightConfig.uniform(4), 0)   # warm the jit cache
    for k in a.colors:
        Ns, ts = [], []
        for N in a.ranks:
            w = WeightConfig.uniform(N, a.t)
            pws = shuffle.pair_weight_table(N, w)
            t0 = time.perf_counter()
            shuffle._run_one(N, k, pws, float(w.t), False, a.seed)
            dt = time.perf_counter() - t0
            t1 = time.perf_counter()
            shuffle.sample(N, k, w, a.seed)
            full = time.perf_counter() - t1
            Ns.append(N)
            ts.append(dt)
            print(f"k={k} N={N:4d}  kernel {dt:7.3f}s  with conversion {full:7.3f}s")
        if len(Ns) > 2:
            slope = np.polyfit(np.log(Ns[1:]), np.log(ts[1:]), 1)[0]
            print(f"k={k}: kernel time ~ N^{slope:.2f}")


if __name__ == "__main__":
    main()
