"""Brute-force ground truth: enumeration, exact partition functions and
exact laws, plus the statistical harness used to check the samplers."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .geometry import faces_of_rank
from .poly import Poly
from .tiling import (Domino, KTiling, Tiling, WeightConfig, count_interactions,
                     tiling_weight)

ENUM_CAP = 4
KTILING_CAP = 1 << 16


class CapExceeded(ValueError):
    pass


def enumerate_tilings(N: int, cap: int = ENUM_CAP) -> list[Tiling]:
    """All tilings of the rank-N diamond, in a canonical order."""
    if N > cap:
        raise CapExceeded(f"rank {N} exceeds enumeration cap {cap}")
    faces = faces_of_rank(N)
    order = sorted(faces, key=lambda f: (f.v, f.u))
    out = []
    covered = set()
    chosen = []

    def rec(pos):
        while pos < len(order) and order[pos] in covered:
            pos += 1
        if pos == len(order):
            out.append(Tiling(N, chosen))
            return
        f = order[pos]
        for d in (Domino(f.u, f.v, "h"), Domino(f.u, f.v, "v")):
            g = d.faces()[1]
            if g in faces and g not in covered:
                covered.update((f, g))
                chosen.append(d)
                rec(pos + 1)
                chosen.pop()
                covered.difference_update((f, g))

    rec(0)
    return out


def enumerate_ktilings(N: int, k: int, cap: int = KTILING_CAP) -> list[KTiling]:
    base = enumerate_tilings(N)
    if len(base) ** k > cap:
        raise CapExceeded(f"{len(base)}^{k} k-tilings exceed cap {cap}")
    return [KTiling(c, rank=N) for c in itertools.product(base, repeat=k)]


# -- exact weights ----------------------------------------------------------

class _Tables:
    """Per-color weights and the pairwise interaction matrix of an enumeration."""

    def __init__(self, N, w):
        self.tilings = enumerate_tilings(N)
        self.weights = [tiling_weight(T, w) for T in self.tilings]
        n = len(self.tilings)
        self.inter = [[count_interactions(self.tilings[a], self.tilings[b]) for b in range(n)]
                      for a in range(n)]

    def exponent(self, idx) -> int:
        return sum(self.inter[idx[a]][idx[b]]
                   for a in range(len(idx)) for b in range(a + 1, len(idx)))

    def base_weight(self, idx):
        out = Fraction(1)
        for i in idx:
            out *= self.weights[i]
        return out


def _exact(w: WeightConfig) -> WeightConfig:
    return w.exact()


def exact_Z_poly(N: int, k: int, w: WeightConfig) -> Poly:
    """Sum of k-tiling weights as a polynomial in t (w.t is ignored)."""
    w = _exact(w)
    w.check_rank(N)
    tab = _Tables(N, w)
    n = len(tab.tilings)
    if n ** k > KTILING_CAP:
        raise CapExceeded(f"{n}^{k} k-tilings exceed cap {KTILING_CAP}")
    coeffs = Counter()
    for idx in itertools.product(range(n), repeat=k):
        coeffs[tab.exponent(idx)] += tab.base_weight(idx)
    top = max(coeffs) if coeffs else 0
    return Poly([coeffs.get(e, 0) for e in range(top + 1)])


def exact_Z(N: int, k: int, w: WeightConfig) -> Fraction:
    return exact_Z_poly(N, k, w)(Fraction(w.t))


def product_formula_poly(N: int, k: int, w: WeightConfig) -> Poly:
    w = _exact(w)
    w.check_rank(N)
    out = Poly([1])
    for l in range(k):
        for i in range(1, N + 1):
            for j in range(i, N + 1):
                out = out * (Poly([1]) + Poly.monomial(w.cw(i) * w.bw(N - j + 1), l))
    return out


def product_formula(N: int, k: int, w: WeightConfig) -> Fraction:
    return product_formula_poly(N, k, w)(Fraction(w.t))


def check_product_formula(N: int, k: int, w: WeightConfig) -> None:
    lhs = exact_Z_poly(N, k, w)
    rhs = product_formula_poly(N, k, w)
    if lhs != rhs:
        raise AssertionError(f"Z mismatch at N={N}, k={k}, c={w.c}, b={w.b}: {lhs} != {rhs}")


@dataclass
class ExactDistribution:
    rank: int
    k: int
    t: Fraction
    probs: dict            # KTiling -> Fraction (normalized)
    weights: dict          # KTiling -> Fraction (unnormalized)
    Z: Fraction

    def support(self):
        return [KT for KT, p in self.probs.items() if p > 0]


def exact_distribution(N: int, k: int, w: WeightConfig) -> ExactDistribution:
    w = _exact(w)
    w.check_rank(N)
    tab = _Tables(N, w)
    n = len(tab.tilings)
    if n ** k > KTILING_CAP:
        raise CapExceeded(f"{n}^{k} k-tilings exceed cap {KTILING_CAP}")
    weights = {}
    for idx in itertools.product(range(n), repeat=k):
        e = tab.exponent(idx)
        wt = tab.base_weight(idx) * (w.t ** e if e else 1)
        weights[KTiling([tab.tilings[i] for i in idx], rank=N)] = wt
    Z = sum(weights.values(), Fraction(0))
    probs = {KT: x / Z for KT, x in weights.items()}
    return ExactDistribution(N, k, w.t, probs, weights, Z)


def distribution_to_dict(dist: ExactDistribution) -> dict:
    from .tiling import ktiling_to_dict
    entries = []
    for KT, x in dist.weights.items():
        entries.append({"tiling": ktiling_to_dict(KT),
                        "weight_num": str(x.numerator), "weight_den": str(x.denominator)})
    return {"rank": dist.rank, "colors": dist.k, "t": str(dist.t), "entries": entries,
            "Z_num": str(dist.Z.numerator), "Z_den": str(dist.Z.denominator)}


# -- sampler validation -----------------------------------------------------

@dataclass
class SamplerReport:
    samples: int
    tv_distance: float
    chi_square: float
    chi_square_p: float
    dof: int
    off_support: int

    def passed(self, tv_max=0.01, p_min=1e-4) -> bool:
        return self.tv_distance < tv_max and self.chi_square_p > p_min and not self.off_support


def compare_counts(counts: Counter, dist: ExactDistribution, min_expected=5.0) -> SamplerReport:
    from scipy.stats import chi2

    n = sum(counts.values())
    off = sum(c for KT, c in counts.items() if dist.probs.get(KT, 0) == 0)
    tv = 0.5 * sum(abs(counts.get(KT, 0) / n - float(p)) for KT, p in dist.probs.items())
    tv += 0.5 * off / n
    # pool sparse cells so the chi-square approximation is sane
    stat, pooled_o, pooled_e, cells = 0.0, 0, 0.0, 0
    for KT, p in dist.probs.items():
        if p == 0:
            continue
        e = n * float(p)
        o = counts.get(KT, 0)
        if e < min_expected:
            pooled_o += o
            pooled_e += e
            continue
        stat += (o - e) ** 2 / e
        cells += 1
    if pooled_e > 0:
        stat += (pooled_o - pooled_e) ** 2 / pooled_e
        cells += 1
    dof = max(cells - 1, 1)
    p = 0.0 if off else float(chi2.sf(stat, dof))
    return SamplerReport(n, tv, stat, p, dof, off)


def validate_sampler(sampler, N: int, k: int, w: WeightConfig, samples: int, seed: int,
                     dist: ExactDistribution | None = None) -> SamplerReport:
    """sampler(N, k, w, samples, seed) must return an iterable of KTiling."""
    if dist is None:
        dist = exact_distribution(N, k, w)
    counts = Counter(sampler(N, k, w, samples, seed))
    return compare_counts(counts, dist)


# -- exact law of the shuffle chain ------------------------------------------

def shuffle_transition(KT: KTiling, w: WeightConfig, conv=None) -> dict:
    """Exact law of one shuffle step from KT: {KTiling: Fraction}."""
    from .shuffle import (CreationIndex, creation_exponent, fill_probability,
                          pair_dominoes, pair_weight, slide_destroy)
    conv = conv or CreationIndex.ODD
    w = _exact(w)
    partials = [slide_destroy(T) for T in KT.colors]
    Np = KT.rank + 1
    out = {}

    def rec(l, states, prob):
        if l == len(states):
            key = KTiling(states, rank=Np)
            out[key] = out.get(key, Fraction(0)) + prob
            return
        P = states[l]
        probs = []
        for block in P.holes:
            e = creation_exponent(block, l, states)
            d = block.v - block.u + Np
            probs.append(Fraction(fill_probability(pair_weight(d, Np, w, conv), w.t, e)))
        for kinds in itertools.product("hv", repeat=len(P.holes)):
            p = prob
            doms = set(P.placed)
            for block, kind, ph in zip(P.holes, kinds, probs):
                p *= ph if kind == "h" else 1 - ph
                doms.update(pair_dominoes(block, kind))
            if p:
                rec(l + 1, states[:l] + [Tiling(Np, doms)] + states[l + 1:], p)

    rec(0, list(partials), Fraction(1))
    return out


def exact_shuffle_law(N: int, k: int, w: WeightConfig, conv=None) -> dict:
    """Pushforward of the empty k-tiling through N exact shuffle steps."""
    from .shuffle import empty_ktiling
    law = {empty_ktiling(k): Fraction(1)}
    for _ in range(N):
        nxt = {}
        for KT, p in law.items():
            for KT2, q in shuffle_transition(KT, w, conv).items():
                nxt[KT2] = nxt.get(KT2, Fraction(0)) + p * q
        law = nxt
    return law


def shuffle_law_matches(N: int, k: int, w: WeightConfig, conv=None) -> bool:
    law = exact_shuffle_law(N, k, w, conv)
    dist = exact_distribution(N, k, w)
    keys = set(law) | set(dist.probs)
    return all(law.get(K, 0) == dist.probs.get(K, 0) for K in keys)
