"""Dense polynomials in t with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=(0,)):
        cs = [Fraction(x) for x in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs) or (Fraction(0),)

    @classmethod
    def monomial(cls, coeff, e: int) -> "Poly":
        return cls([0] * e + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        other = other if isinstance(other, Poly) else Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __mul__(self, other):
        other = other if isinstance(other, Poly) else Poly([other])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = other if isinstance(other, Poly) else Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, t):
        acc = Fraction(0) if isinstance(t, (int, Fraction)) else 0.0
        for x in reversed(self.coeffs):
            acc = acc * t + x
        return acc

    def __repr__(self):
        terms = [f"{x}*t^{i}" for i, x in enumerate(self.coeffs) if x]
        return "Poly(" + (" + ".join(terms) or "0") + ")"
