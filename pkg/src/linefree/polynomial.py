"""Homogeneous polynomials in x, y, z with exact coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

Exponent = tuple[int, int, int]


@lru_cache(maxsize=None)
def monomials(deg: int) -> tuple[Exponent, ...]:
    """Exponents of degree ``deg`` in graded lexicographic order (x > y > z)."""
    if deg < 0:
        return ()
    return tuple((i, j, deg - i - j) for i in range(deg, -1, -1) for j in range(deg - i, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(deg: int) -> dict[Exponent, int]:
    return {e: k for k, e in enumerate(monomials(deg))}


def dim_s(deg: int) -> int:
    """Dimension of the degree-``deg`` piece of C[x, y, z]."""
    return comb(deg + 2, 2) if deg >= 0 else 0


@dataclass(frozen=True)
class HomogPoly:
    degree: int
    terms: tuple[tuple[Exponent, object], ...]

    @classmethod
    def from_dict(cls, coeffs: dict[Exponent, object], degree: int | None = None) -> "HomogPoly":
        items = tuple(sorted(((tuple(e), c) for e, c in coeffs.items() if c != 0), reverse=True))
        degs = {sum(e) for e, _ in items}
        if len(degs) > 1:
            raise ValueError(f"not homogeneous: degrees {sorted(degs)}")
        if degree is None:
            if not degs:
                raise ValueError("degree of the zero polynomial must be given")
            degree = degs.pop()
        elif degs and degs != {degree}:
            raise ValueError(f"terms have degree {degs.pop()}, expected {degree}")
        return cls(degree, items)

    @classmethod
    def constant(cls, c) -> "HomogPoly":
        return cls.from_dict({(0, 0, 0): c}, 0)

    @classmethod
    def linear(cls, a, b, c) -> "HomogPoly":
        return cls.from_dict({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, 1)

    def as_dict(self) -> dict[Exponent, object]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __mul__(self, other: "HomogPoly") -> "HomogPoly":
        out: dict[Exponent, object] = {}
        for (e1, c1) in self.terms:
            for (e2, c2) in other.terms:
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return HomogPoly.from_dict(out, self.degree + other.degree)

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("degrees differ")
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return HomogPoly.from_dict(out, max(self.degree, other.degree))

    def scale(self, c) -> "HomogPoly":
        return HomogPoly.from_dict({e: c * v for e, v in self.terms}, self.degree)

    def diff(self, var: int) -> "HomogPoly":
        out: dict[Exponent, object] = {}
        for e, c in self.terms:
            if e[var]:
                f = list(e)
                f[var] -= 1
                out[tuple(f)] = c * e[var]
        return HomogPoly.from_dict(out, self.degree - 1)

    def __call__(self, point) -> object:
        x, y, z = point
        return sum(c * x ** e[0] * y ** e[1] * z ** e[2] for e, c in self.terms)

    def coefficient_vector(self) -> list:
        idx = monomial_index(self.degree)
        v = [0] * len(idx)
        for e, c in self.terms:
            v[idx[e]] = c
        return v

    def integer_scaled(self) -> "HomogPoly":
        """Multiple with integral coefficients (coprime integers when rational)."""
        from math import gcd, lcm

        from .numbers import Eis, denominator

        if self.is_zero():
            return self
        den = lcm(*(denominator(c) for _, c in self.terms))
        if any(isinstance(c, Eis) for _, c in self.terms):
            # Z[w] coefficients: clear denominators only
            return HomogPoly.from_dict({e: c * den for e, c in self.terms}, self.degree)
        ints = {e: int(Fraction(c) * den) for e, c in self.terms}
        g = gcd(*ints.values())
        return HomogPoly.from_dict({e: v // g for e, v in ints.items()}, self.degree)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip("xyz", e) if k
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def jacobian(f: HomogPoly) -> tuple[HomogPoly, HomogPoly, HomogPoly]:
    """The partial derivatives ``(f_x, f_y, f_z)``."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    return f.diff(0), f.diff(1), f.diff(2)
