"""Partitions, Maya diagrams and the tiling <-> particle bijection.

Particles live on the diagonal slices of the diamond.  Slice 2n-1 carries
lambda^(n) with n particles and slice 2n-2 carries mu^(n) with n-1
particles.  The position of a face on a slice is the x-coordinate of its
center; internally we use p = x - 1/2, an integer, and the i-th particle
(counted from the right) sits at p_i = part_i - i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import DEFAULT_PARITY, Face, diagonal_faces
from .tiling import Domino, KTiling, Tiling, validate

HALF = Fraction(1, 2)


def partition(parts) -> tuple:
    parts = [int(x) for x in parts]
    if any(x < 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"not a partition: {parts}")
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


def part(lam, i: int) -> int:
    """lambda_i, 1-based, zero past the end."""
    return lam[i - 1] if i <= len(lam) else 0


def conjugate(lam) -> tuple:
    lam = partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > c) for c in range(lam[0]))


def interlaces(lam, mu) -> bool:
    """lambda_1 >= mu_1 >= lambda_2 >= mu_2 >= ...  (mu interlaces lambda)."""
    n = max(len(lam), len(mu)) + 1
    return all(part(lam, i) >= part(mu, i) >= part(lam, i + 1) for i in range(1, n + 1))


def co_interlaces(lam, mu) -> bool:
    return interlaces(conjugate(lam), conjugate(mu))


# -- Maya diagrams ------------------------------------------------------------

def maya(lam, count: int | None = None) -> list[Fraction]:
    """First `count` particle positions x_i = lambda_i - i + 1/2, right to left."""
    lam = partition(lam)
    if count is None:
        count = len(lam)
    return [part(lam, i) - i + HALF for i in range(1, count + 1)]


def from_maya(xs) -> tuple:
    """Inverse of maya(): positions must be strictly decreasing half-integers."""
    xs = [Fraction(x) for x in xs]
    if any(a <= b for a, b in zip(xs, xs[1:])):
        raise ValueError("particle positions must be strictly decreasing")
    return partition([x + i - HALF for i, x in enumerate(xs, 1)])


def maya_string(lam, lo, hi, particle="•", hole="◦") -> str:
    """Occupation of the positions lo, lo+1, ..., hi (half-integers), left to right."""
    lam = partition(lam)
    lo, hi = Fraction(lo), Fraction(hi)
    occupied = set(maya(lam, len(lam)))
    # everything left of the last moved particle is occupied, as in the vacuum
    floor = -len(lam) - HALF
    out = []
    x = lo
    while x <= hi:
        out.append(particle if (x in occupied or x <= floor) else hole)
        x += 1
    return "".join(out)


# -- tiling <-> interlaced sequences ---------------------------------------------

def face_is_particle(T: Tiling, f: Face) -> bool:
    d = T.cover[f]
    conv = DEFAULT_PARITY
    if d.orient == "h":
        return conv.is_gray(d.anchor, T.rank)
    return not conv.is_gray(d.anchor, T.rank)


def slice_particles(T: Tiling, d: int) -> list[int]:
    """Particle positions p = x - 1/2 on slice d, largest first."""
    return sorted((f.u for f in diagonal_faces(d, T.rank) if face_is_particle(T, f)), reverse=True)


@dataclass(frozen=True)
class InterlacedSequence:
    """lam[n-1] = lambda^(n) for n=1..N; mu[n-1] = mu^(n) for n=1..N+1."""
    rank: int
    lam: tuple
    mu: tuple

    def __post_init__(self):
        N = self.rank
        object.__setattr__(self, "lam", tuple(partition(x) for x in self.lam))
        object.__setattr__(self, "mu", tuple(partition(x) for x in self.mu))
        if len(self.lam) != N or len(self.mu) != N + 1:
            raise ValueError("need N lambdas and N+1 mus")

    def chain(self) -> list:
        """mu^(1), lambda^(1), mu^(2), ..., lambda^(N), mu^(N+1)."""
        out = []
        for n in range(self.rank):
            out += [self.mu[n], self.lam[n]]
        return out + [self.mu[self.rank]]

    def is_interlaced(self) -> bool:
        N = self.rank
        if self.mu[0] or self.mu[N]:
            return False
        return all(interlaces(self.lam[n], self.mu[n]) and co_interlaces(self.lam[n], self.mu[n + 1])
                   for n in range(N))


def tiling_to_sequence(T: Tiling) -> InterlacedSequence:
    if not validate(T):
        raise ValueError("invalid tiling")
    N = T.rank
    lam, mu = [], []
    for n in range(1, N + 2):
        if n <= N:
            ps = slice_particles(T, 2 * n - 1)
            if len(ps) != n:
                raise AssertionError(f"slice {2*n-1} has {len(ps)} particles, expected {n}")
            lam.append(partition([p + i for i, p in enumerate(ps, 1)]))
        ps = slice_particles(T, 2 * n - 2)
        if len(ps) != n - 1:
            raise AssertionError(f"slice {2*n-2} has {len(ps)} particles, expected {n-1}")
        mu.append(partition([p + i for i, p in enumerate(ps, 1)]))
    return InterlacedSequence(N, tuple(lam), tuple(mu))


def _positions(lam, n: int) -> list[int]:
    return [part(lam, i) - i for i in range(1, n + 1)]


def sequence_to_tiling(seq: InterlacedSequence) -> Tiling:
    """Rebuild the tiling: lambda^(n) particles pair with mu^(n+1) particles,
    lambda^(n) holes pair with mu^(n) holes."""
    N = seq.rank
    if not seq.is_interlaced():
        raise ValueError("sequence is not interlaced")
    doms = []
    for n in range(1, N + 1):
        lo, hi = -n, N - n          # p-range of slice 2n-1
        d = 2 * n - 1
        xs = _positions(seq.lam[n - 1], n)
        ys_up = _positions(seq.mu[n], n)            # slice 2n, n particles
        ys_dn = _positions(seq.mu[n - 1], n - 1)    # slice 2n-2
        if xs and (xs[0] > hi or xs[-1] < lo):
            raise ValueError(f"lambda^({n}) out of bounds")
        for x, y in zip(xs, ys_up):
            v = x + d - N
            if y == x:
                doms.append(Domino(x, v, "v"))          # white bottom, particle
            elif y == x - 1:
                doms.append(Domino(x - 1, v, "h"))      # gray left on slice 2n
            else:
                raise ValueError(f"cannot pair particles {x}, {y} at level {n}")
        xset = set(xs)
        holes_x = sorted(p for p in range(lo, hi + 1) if p not in xset)
        yset = set(ys_dn)
        holes_y = sorted(p for p in range(lo + 1, hi + 1) if p not in yset)
        if len(holes_x) != len(holes_y):
            raise ValueError(f"hole counts disagree at level {n}")
        for x, y in zip(holes_x, holes_y):
            v = x + d - N
            if y == x + 1:
                doms.append(Domino(x, v, "h"))          # white left, hole
            elif y == x:
                doms.append(Domino(x, v - 1, "v"))      # gray bottom below
            else:
                raise ValueError(f"cannot pair holes {x}, {y} at level {n}")
    T = Tiling(N, doms)
    if not validate(T):
        raise ValueError("sequence does not describe a tiling")
    return T


# -- colored particle arrays ---------------------------------------------------

@dataclass(frozen=True)
class ColoredParticleArray:
    """x[n-1][l] holds the n positions of level n, color l; y[n-1][l] holds the
    n-1 positions of mu^(n).  Positions are stored as doubled half-integers
    (2x, always odd), largest first."""
    rank: int
    colors: int
    x: tuple
    y: tuple

    def check(self) -> None:
        N = self.rank
        for n in range(1, N + 1):
            for l in range(self.colors):
                xs, ys = self.x[n - 1][l], self.y[n - 1][l]
                if len(xs) != n or len(ys) != n - 1:
                    raise AssertionError(f"wrong particle counts at level {n}")
                if any(a % 2 == 0 for a in xs + ys):
                    raise AssertionError("positions must be half-integers")
                if any(not (-2 * n + 1 <= a <= 2 * (N - n) + 1) for a in xs):
                    raise AssertionError(f"x out of bounds at level {n}")
                if any(not (-2 * n + 3 <= a <= 2 * (N - n) + 1) for a in ys):
                    raise AssertionError(f"y out of bounds at level {n}")
                for i in range(n - 1):
                    if not xs[i] >= ys[i] > xs[i + 1]:
                        raise AssertionError(f"x/y interlacing fails at level {n}")
                if n < N:
                    yn = self.y[n][l]
                    for i in range(n):
                        if not xs[i] >= yn[i] >= xs[i] - 2:
                            raise AssertionError(f"x/y' interlacing fails at level {n}")


def _doubled(lam, count):
    return tuple(2 * p + 1 for p in _positions(lam, count))


def _undoubled(xs):
    return partition([(a - 1) // 2 + i for i, a in enumerate(xs, 1)])


def ktiling_to_array(KT: KTiling) -> ColoredParticleArray:
    N = KT.rank
    seqs = [tiling_to_sequence(T) for T in KT.colors]
    x = tuple(tuple(_doubled(s.lam[n - 1], n) for s in seqs) for n in range(1, N + 1))
    y = tuple(tuple(_doubled(s.mu[n - 1], n - 1) for s in seqs) for n in range(1, N + 1))
    A = ColoredParticleArray(N, KT.k, x, y)
    A.check()
    return A


def array_to_ktiling(A: ColoredParticleArray) -> KTiling:
    A.check()
    N = A.rank
    cols = []
    for l in range(A.colors):
        lam = [_undoubled(A.x[n - 1][l]) for n in range(1, N + 1)]
        mu = [_undoubled(A.y[n - 1][l]) for n in range(1, N + 1)] + [()]
        cols.append(sequence_to_tiling(InterlacedSequence(N, lam, mu)))
    return KTiling(cols, rank=N)


# -- partition-side interaction count -------------------------------------------

def interactions_from_partitions(seq_a: InterlacedSequence, seq_b: InterlacedSequence) -> int:
    """t-power of the pair (a < b) read off row by row from the partitions."""
    if seq_a.rank != seq_b.rank:
        raise ValueError("rank mismatch")
    N = seq_a.rank
    total = 0
    for n in range(1, N + 1):
        la, lb = seq_a.lam[n - 1], seq_b.lam[n - 1]
        # horizontal strip lambda^(n) / mu^(n)
        ma, mb = seq_a.mu[n - 1], seq_b.mu[n - 1]
        for i in range(1, n + 1):
            ai, ami = part(la, i) - i, part(ma, i) - i
            for j in range(1, n + 1):
                bj, bmj = part(lb, j) - j, part(mb, j) - j
                gap = min(bj, ai) - max(bmj, ami)
                if gap >= 0:
                    total += gap + (bj < ai)
        # vertical strip lambda^(n) / mu^(n+1)
        ma, mb = seq_a.mu[n], seq_b.mu[n]
        for i in range(1, n + 1):
            ai, ami = part(la, i) - i, part(ma, i) - i
            for j in range(1, n + 1):
                bj, bmj = part(lb, j) - j, part(mb, j) - j
                if bj == bmj + 1 == ami == ai:
                    total += 1
    return total
