"""How often does a *perfect* sampler pass TV < 0.01 at N=2, k=2, 1e5 samples?

Compares the TV distribution of the shuffle sampler over many master seeds
with that of an exact multinomial draw from the enumerated law, and pools
all shuffle samples for a much tighter TV.

    python3 scripts/tv_calibration.py --seeds 20 --out /tmp/tv.json
"""
import argparse
import json
from collections import Counter

import numpy as np
from scipy import stats

from kshuffle import oracle, shuffle
from kshuffle.tiling import WeightConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--t", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--reps", type=int, default=5000, help="multinomial replicates")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out")
    a = ap.parse_args()

    rows = []
    for t in a.t:
        w = WeightConfig.uniform(2, t)
        dist = oracle.exact_distribution(2, 2, w)
        keys = list(dist.probs)
        p = np.array([float(dist.probs[K]) for K in keys])
        X = np.random.default_rng(12345).multinomial(a.samples, p, size=a.reps)
        ref = 0.5 * np.abs(X / a.samples - p).sum(1)

        tvs, pooled = [], Counter()
        for s in range(1, a.seeds + 1):
            c = Counter(shuffle.sample_many(2, 2, w, a.samples, s, threads=a.threads))
            pooled.update(c)
            tvs.append(oracle.compare_counts(c, dist).tv_distance)
        tvs = np.array(tvs)
        big = oracle.compare_counts(pooled, dist)
        ks = stats.ks_2samp(tvs, ref)
        row = {"t": t, "exact_tv_mean": ref.mean(), "exact_tv_sd": ref.std(),
               "exact_pass_rate": float((ref < 0.01).mean()),
               "shuffle_tv_mean": tvs.mean(), "shuffle_tv_sd": tvs.std(),
               "shuffle_pass_rate": float((tvs < 0.01).mean()), "ks_p": ks.pvalue,
               "pooled_samples": big.samples, "pooled_tv": big.tv_distance,
               "pooled_chi2_p": big.chi_square_p}
        rows.append(row)
        print(f"t={t}: exact sampler TV {ref.mean():.5f}±{ref.std():.5f}, P(TV<0.01)={row['exact_pass_rate']:.2f} | "
              f"shuffle TV {tvs.mean():.5f}±{tvs.std():.5f}, pass {row['shuffle_pass_rate']:.2f}, KS p={ks.pvalue:.2f} | "
              f"pooled {big.samples}: TV {big.tv_distance:.5f}, chi2 p {big.chi_square_p:.3f}")
    if a.out:
        with open(a.out, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
