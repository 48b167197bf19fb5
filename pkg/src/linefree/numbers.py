"""Exact scalars: rationals, and the Eisenstein field Q(w) with w^2 + w + 1 = 0.

Q(w) is needed for arrangements such as CEVA(3), whose lines are defined over
the cube roots of unity and have no rational realization.  Values with zero
w-part are always plain :class:`~fractions.Fraction` objects, so equality and
hashing agree across the two types.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Union


class Eis:
    """``a + b*w`` with rational ``a``, ``b`` and ``b != 0``."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def make(a, b) -> "Scalar":
        b = Fraction(b)
        if b == 0:
            return Fraction(a)
        return Eis(a, b)

    @staticmethod
    def _parts(x) -> tuple[Fraction, Fraction]:
        if isinstance(x, Eis):
            return x.a, x.b
        return Fraction(x), Fraction(0)

    def __add__(self, other):
        c, d = Eis._parts(other)
        return Eis.make(self.a + c, self.b + d)

    __radd__ = __add__

    def __neg__(self):
        return Eis(-self.a, -self.b)

    def __sub__(self, other):
        c, d = Eis._parts(other)
        return Eis.make(self.a - c, self.b - d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c, d = Eis._parts(other)
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        bd = self.b * d
        return Eis.make(self.a * c - bd, self.a * d + self.b * c - bd)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def conjugate(self) -> "Eis":
        return Eis(self.a - self.b, -self.b)

    def __truediv__(self, other):
        if isinstance(other, Eis):
            n = other.norm()
            return self * other.conjugate() * Fraction(1, 1) / n
        o = Fraction(other)
        return Eis.make(self.a / o, self.b / o)

    def __rtruediv__(self, other):
        n = self.norm()
        c = self.conjugate()
        return Eis.make(Fraction(other) * c.a / n, Fraction(other) * c.b / n)

    def __pow__(self, k: int):
        out: Scalar = Fraction(1)
        base: Scalar = self
        if k < 0:
            base, k = 1 / self, -k
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Eis):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash(("Eis", self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def __repr__(self):
        return f"Eis({self.a}, {self.b})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, Eis]

_TERM = re.compile(r"[+-]?[^+-]+")


def parse_scalar(token: str) -> Scalar:
    """Parse ``p/q``, ``w``, ``-2w``, ``1/2+3*w`` and the like."""
    t = token.replace(" ", "")
    if "w" not in t:
        return Fraction(t)
    if not t or _TERM.sub("", t):
        raise ValueError(f"bad scalar {token!r}")
    re_part, im = Fraction(0), Fraction(0)
    for term in _TERM.findall(t):
        if term.endswith("w"):
            c = term[:-1].rstrip("*")
            im += Fraction(c + "1") if c in ("", "+", "-") else Fraction(c)
        else:
            re_part += Fraction(term)
    return Eis.make(re_part, im)


def format_scalar(x) -> str:
    if isinstance(x, Eis):
        b = x.b
        if b == 1:
            wpart = "w"
        elif b == -1:
            wpart = "-w"
        else:
            wpart = f"{b}w"
        if x.a == 0:
            return wpart
        return f"{x.a}{'' if wpart.startswith('-') else '+'}{wpart}"
    return str(Fraction(x))


def to_scalar(x) -> Scalar:
    if isinstance(x, Eis):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Fraction(x)


def scalar_key(x) -> tuple[Fraction, Fraction]:
    """Total order used for canonical sorting."""
    if isinstance(x, Eis):
        return (x.a, x.b)
    return (Fraction(x), Fraction(0))


def is_eisenstein(x) -> bool:
    return isinstance(x, Eis)


def denominator(x) -> int:
    from math import lcm

    if isinstance(x, Eis):
        return lcm(x.a.denominator, x.b.denominator)
    return Fraction(x).denominator


@lru_cache(maxsize=None)
def omega_mod(p: int) -> int:
    """A primitive cube root of unity modulo ``p`` (requires ``p = 1 mod 3``)."""
    if p % 3 != 1:
        raise ValueError(f"{p} is not 1 mod 3")
    for g in range(2, p):
        w = pow(g, (p - 1) // 3, p)
        if w != 1:
            return w
    raise AssertionError("unreachable")


def to_mod(x, p: int) -> int:
    if isinstance(x, Eis):
        w = omega_mod(p)
        return (to_mod(x.a, p) + to_mod(x.b, p) * w) % p
    if isinstance(x, int):
        return x % p
    f = Fraction(x)
    if f.denominator % p == 0:
        raise ZeroDivisionError(f"denominator divisible by {p}")
    return f.numerator * pow(f.denominator, -1, p) % p
