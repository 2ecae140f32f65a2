"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a plain dict with an "ok" flag and enough detail to
see what was checked.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from fractions import Fraction

import numpy as np

from . import dynamics, oracle, shuffle, spider
from .partitions import (array_to_ktiling, interactions_from_partitions, ktiling_to_array,
                         sequence_to_tiling, tiling_to_sequence)
from .rng import RngStream, batch_seeds
from .tiling import KTiling, WeightConfig, count_interactions, loads, total_interactions, validate

T_VALUES = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7))
PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def nonuniform(N: int, t=1) -> WeightConfig:
    """c = (2, 3, 5, ...), b = (7, 11, 13, ...)."""
    return WeightConfig(PRIMES[:N], PRIMES[3:3 + N], t)


def product_formula_suite(max_rank=3, colors=(1, 2), k3_rank=2) -> dict:
    cases = [(N, k) for N in range(1, max_rank + 1) for k in colors]
    cases += [(N, 3) for N in range(1, k3_rank + 1) if 3 not in colors]
    rows = []
    ok = True
    for N, k in cases:
        for label, w in (("uniform", WeightConfig.uniform(N)), ("nonuniform", nonuniform(N))):
            lhs = oracle.exact_Z_poly(N, k, w)
            rhs = oracle.product_formula_poly(N, k, w)
            good = lhs == rhs and all(lhs(t) == rhs(t) for t in T_VALUES)
            ok &= good
            rows.append({"rank": N, "colors": k, "weights": label, "ok": good})
    return {"suite": "product-formula", "ok": ok, "cases": rows}


def uniform_closed_form_suite(ranks=(1, 2, 3), ts=T_VALUES[:4]) -> dict:
    rows = []
    for N in ranks:
        Zp = oracle.exact_Z_poly(N, 2, WeightConfig.uniform(N))
        for t in ts:
            rows.append({"rank": N, "t": str(t), "ok": Zp(t) == (2 * (1 + t)) ** (N * (N + 1) // 2)})
    return {"suite": "closed-form", "ok": all(r["ok"] for r in rows), "cases": rows}


def convention_suite(cases=((2, 1), (3, 1), (2, 2), (3, 2), (2, 3)), t=Fraction(1, 2)) -> dict:
    """Exact law of the shuffle chain vs wt/Z under each creation-index convention."""
    out = {}
    for conv in shuffle.CreationIndex:
        out[conv.value] = all(oracle.shuffle_law_matches(N, k, nonuniform(N, t), conv)
                              for N, k in cases)
    passing = [c for c, good in out.items() if good]
    return {"suite": "convention", "ok": len(passing) == 1, "results": out, "selected": passing}


def shuffle_sampler(N, k, w, samples, seed, threads=1):
    return shuffle.sample_many(N, k, w, samples, seed, threads=threads)


def dynamics_sampler(N, k, w, samples, seed):
    state = dynamics.sample_arrays(N, k, w, samples, seed)
    cache = {}
    for b in range(samples):
        key = tuple(a[b].tobytes() for a in state.X + state.Y)
        if key not in cache:
            cache[key] = array_to_ktiling(state.to_array(b))
        yield cache[key]


def sampler_suite(rank=2, colors=2, ts=(0.5, 1.0, 2.0), samples=100_000, seed=1,
                  tv_max=0.01, p_min=1e-4, threads=1) -> dict:
    rows = []
    for t in ts:
        w = WeightConfig.uniform(rank, t)
        dist = oracle.exact_distribution(rank, colors, w)
        fast = lambda *a: shuffle_sampler(*a, threads=threads)
        for name, fn in (("shuffle", fast), ("dynamics", dynamics_sampler)):
            t0 = time.time()
            rep = oracle.validate_sampler(fn, rank, colors, w, samples, seed, dist)
            z = tv_zscore(rep.tv_distance, dist, samples)
            rows.append({"sampler": name, "t": t, "tv": rep.tv_distance, "chi2_p": rep.chi_square_p,
                         "tv_z": z, "ok": rep.passed(tv_max, p_min), "seconds": time.time() - t0})
    return {"suite": "sampler", "ok": all(r["ok"] for r in rows), "cases": rows}


def tv_zscore(tv: float, dist, samples: int, reps: int = 2000, seed: int = 0) -> float:
    """Where an observed TV sits in the TV distribution of an exact
    multinomial sampler of the same size (reference only)."""
    p = np.array([float(x) for x in dist.probs.values()])
    X = np.random.default_rng(seed).multinomial(samples, p, size=reps)
    ref = 0.5 * np.abs(X / samples - p).sum(1)
    return float((tv - ref.mean()) / ref.std())


def coupling_suite(max_rank=10, colors=(1, 2, 3), seeds=50, seed=0, t=0.5) -> dict:
    """Shuffle steps vs particle updates on shared randomness, compared
    through the bijection after every step."""
    rows = []
    w = WeightConfig(PRIMES[:max_rank], PRIMES[3:3 + max_rank], t)
    ss = batch_seeds(seed, seeds)
    for k in colors:
        state = dynamics.DynState.vacuum(k, ss)
        kts = [shuffle.empty_ktiling(k) for _ in ss]
        mism = 0
        for step in range(max_rank):
            state = dynamics.parallel_update(state, w, k)
            kts = [shuffle.shuffle_step(KT, w, RngStream(int(s))) for KT, s in zip(kts, ss)]
            for b in range(len(ss)):
                if ktiling_to_array(kts[b]) != state.to_array(b):
                    mism += 1
        # the numba kernel must land on the same tilings
        for b, s in enumerate(ss):
            if shuffle.sample(max_rank, k, w, int(s)) != kts[b]:
                mism += 1
        rows.append({"colors": k, "steps": max_rank, "seeds": seeds, "mismatches": mism, "ok": mism == 0})
    return {"suite": "coupling", "ok": all(r["ok"] for r in rows), "cases": rows}


def bijection_suite(max_rank=3, colors=(1, 2), sampled=1000, sample_rank=8, sample_colors=3,
                    seed=2) -> dict:
    bad = 0
    count = 0
    for N in range(0, max_rank + 1):
        tilings = oracle.enumerate_tilings(N)
        seqs = {}
        for T in tilings:
            s = tiling_to_sequence(T)
            if not s.is_interlaced() or sequence_to_tiling(s) != T:
                bad += 1
            seqs[T] = s
        for k in colors:
            for KT in oracle.enumerate_ktilings(N, k):
                count += 1
                A = ktiling_to_array(KT)   # checks interlacing and bounds
                if array_to_ktiling(A) != KT:
                    bad += 1
    w = WeightConfig.uniform(sample_rank, 0.5)
    for KT in shuffle.sample_many(sample_rank, sample_colors, w, sampled, seed):
        count += 1
        if array_to_ktiling(ktiling_to_array(KT)) != KT:
            bad += 1
    return {"suite": "bijection", "ok": bad == 0, "checked": count, "failures": bad}


def interaction_suite(max_rank=3) -> dict:
    bad = 0
    pairs = 0
    for N in range(0, max_rank + 1):
        tilings = oracle.enumerate_tilings(N)
        seqs = [tiling_to_sequence(T) for T in tilings]
        for a, Ta in enumerate(tilings):
            for b, Tb in enumerate(tilings):
                pairs += 1
                bad += count_interactions(Ta, Tb) != interactions_from_partitions(seqs[a], seqs[b])
    return {"suite": "interactions", "ok": bad == 0, "pairs": pairs, "failures": bad}


def random_cell(rng: random.Random) -> spider.CellWeights:
    return spider.CellWeights(*(Fraction(rng.randint(1, 30), rng.randint(1, 30)) for _ in range(4)))


def spider_suite(trials=100, seed=3, diag_rank=2, sampled=1000, sample_rank=8) -> dict:
    rng = random.Random(seed)
    failures = []
    for _ in range(trials):
        cw = random_cell(rng)
        t = rng.choice([Fraction(0), Fraction(1, 2), Fraction(2), Fraction(rng.randint(0, 20), rng.randint(1, 20))])
        r = spider.verify_lemma(cw, t)
        if r is not None:
            failures.append({"a": str(cw.a), "b": str(cw.b), "c": str(cw.c), "d": str(cw.d), "t": str(t),
                             "alpha": r.alpha.value, "beta": r.beta.value,
                             "before": str(r.before), "after_times_factor": str(r.factor * r.after)})
    diag_bad = 0
    diag_n = 0
    for N in range(1, diag_rank + 1):
        for KT in oracle.enumerate_ktilings(N, 2):
            diag_n += 1
            diag_bad += not spider.diagonal_count_check(KT)
    w = WeightConfig.uniform(sample_rank, 0.5)
    for KT in shuffle.sample_many(sample_rank, 2, w, sampled, seed):
        diag_n += 1
        diag_bad += not spider.diagonal_count_check(KT)
    table = []
    cw = spider.CellWeights(2, 3, 5, 7)
    for r in spider.check_relations(cw, Fraction(1, 2)):
        table.append({"alpha": r.alpha.value, "beta": r.beta.value, "class": r.cls, "ok": r.ok})
    ok = not failures and diag_bad == 0 and all(r["ok"] for r in table)
    return {"suite": "spider", "ok": ok, "relation_failures": failures[:5], "table": table,
            "diagonal_checked": diag_n, "diagonal_failures": diag_bad}


def degeneration_suite(samples=100_000, seed=4) -> dict:
    zero = 0
    n0 = 0
    for N, k in ((2, 2), (3, 3), (8, 3)):
        w = WeightConfig.uniform(N, 0)
        for KT in shuffle.sample_many(N, k, w, 200, seed):
            n0 += 1
            zero += total_interactions(KT) != 0
    w = WeightConfig.uniform(2, 1.0)
    joint = Counter(shuffle.sample_many(2, 2, w, samples, seed))
    m0, m1 = Counter(), Counter()
    for KT, c in joint.items():
        m0[KT.colors[0]] += c
        m1[KT.colors[1]] += c
    tv = 0.5 * sum(abs(joint.get(KTiling([a, b], rank=2), 0) / samples - m0[a] * m1[b] / samples ** 2)
                   for a in m0 for b in m1)
    return {"suite": "degenerations", "ok": zero == 0 and tv < 0.01, "t0_samples": n0,
            "t0_with_interactions": zero, "t1_factorization_tv": tv}


def performance_suite(cases=((256, 3, 30.0), (512, 2, 120.0)), seed=1) -> dict:
    """Times the CLI end to end (start-up, sampling, JSON dump) in a child process."""
    import os
    import resource
    import subprocess
    import sys
    import tempfile

    rows = []
    for N, k, budget in cases:
        with tempfile.TemporaryDirectory() as tmp:
            out = os.path.join(tmp, "dump.json")
            cmd = [sys.executable, "-m", "kshuffle", "sample", "--rank", str(N), "--colors", str(k),
                   "--t", "0.2", "--seed", str(seed), "--out", out]
            t0 = time.time()
            proc = subprocess.run(cmd, capture_output=True, text=True)
            dt = time.time() - t0
            good = proc.returncode == 0
            if good:
                with open(out, encoding="utf-8") as fh:
                    KT = loads(fh.read())
                good = KT.rank == N and KT.k == k and all(validate(T) for T in KT.colors)
        # peak over all children so far, so an upper bound for this one
        rss = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss / 1024
        rows.append({"rank": N, "colors": k, "seconds": dt, "budget": budget, "max_rss_mb": rss,
                     "ok": good and dt < budget and rss < 1024})
    return {"suite": "performance", "ok": all(r["ok"] for r in rows), "cases": rows}
