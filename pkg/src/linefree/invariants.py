"""Combinatorial invariants computed from the multiplicity vector."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arrangement import Arrangement, IncidenceStructure, MultiplicityVector


class Kind(str, enum.Enum):
    FREE = "Free"
    NEARLY_FREE = "NearlyFree"
    NEITHER = "Neither"

    def __str__(self) -> str:
        return self.value


def as_mv(obj) -> MultiplicityVector:
    if isinstance(obj, MultiplicityVector):
        return obj
    if isinstance(obj, Arrangement):
        return obj.incidence.multiplicity_vector()
    if isinstance(obj, IncidenceStructure):
        return obj.multiplicity_vector()
    raise TypeError(f"cannot read a multiplicity vector from {type(obj).__name__}")


@dataclass(frozen=True)
class CharPoly:
    """``t^2 - b1*t + b2``."""

    b1: int
    b2: int

    def __call__(self, t):
        return t * t - self.b1 * t + self.b2

    @property
    def discriminant(self) -> int:
        return self.b1 * self.b1 - 4 * self.b2

    def integer_roots(self) -> tuple[int, int] | None:
        disc = self.discriminant
        if disc < 0:
            return None
        s = isqrt(disc)
        if s * s != disc or (self.b1 + s) % 2:
            return None
        return ((self.b1 - s) // 2, (self.b1 + s) // 2)

    def __str__(self) -> str:
        sign = "-" if self.b2 < 0 else "+"
        return f"t^2 - {self.b1}t {sign} {abs(self.b2)}"


def char_poly(mv) -> CharPoly:
    mv = as_mv(mv)
    d = mv.d
    return CharPoly(d - 1, sum((k - 1) * n for k, n in mv.counts) - (d - 1))


def char_poly_mobius(inc: IncidenceStructure) -> CharPoly:
    """Independent route: Möbius recursion over the rank-3 central lattice.

    Elements are the ambient space, the d planes, the points (as line sets)
    and the origin; chi of the cone is divided by (t - 1).
    """
    d = inc.d
    bottom: frozenset = frozenset()
    planes = [frozenset([i]) for i in range(d)]
    points = [frozenset(p) for p in inc.points]
    top = frozenset(range(d))
    elems = [(bottom, 3)] + [(h, 2) for h in planes] + [(p, 1) for p in points]
    if d >= 2 and top not in points:  # a pencil has its point equal to the origin in L
        elems.append((top, 0))
    mu: dict[frozenset, int] = {}
    for x, _ in elems:
        mu[x] = 1 if x == bottom else -sum(v for y, v in mu.items() if y < x)
    coeffs = [0, 0, 0, 0]  # by dimension
    for x, dim in elems:
        coeffs[dim] += mu[x]
    # cone polynomial c3 t^3 + c2 t^2 + c1 t + c0, divided by (t - 1)
    c3, c2, c1, c0 = coeffs[3], coeffs[2], coeffs[1], coeffs[0]
    q2 = c3
    q1 = c2 + q2
    q0 = c1 + q1
    if c0 + q0 != 0:
        raise AssertionError("cone characteristic polynomial not divisible by t - 1")
    return CharPoly(-q1, q0)


def tjurina_combinatorial(mv) -> int:
    return sum((k - 1) ** 2 * n for k, n in as_mv(mv).counts)


def tjurina_target(d: int, d1: int, kind) -> int:
    if not 0 <= d1 <= d:
        raise ValueError(f"d1={d1} outside [0, {d}]")
    free = (d - 1) ** 2 - d1 * (d - 1 - d1)
    kind = Kind(kind)
    if kind is Kind.FREE:
        return free
    if kind is Kind.NEARLY_FREE:
        return free - 1
    raise ValueError("no target for Neither")


@dataclass(frozen=True)
class Hirzebruch:
    status: str  # Satisfied | Violated | NotApplicable
    slack: Fraction | None = None  # lhs - rhs when applicable

    @property
    def deficit(self) -> Fraction | None:
        return None if self.slack is None else -self.slack

    def __str__(self) -> str:
        if self.status == "NotApplicable":
            return self.status
        if self.status == "Satisfied":
            return f"Satisfied(slack {self.slack})"
        return f"Violated(deficit {self.deficit})"


def hirzebruch_check(mv) -> Hirzebruch:
    mv = as_mv(mv)
    d = mv.d
    if mv[d] or mv[d - 1]:
        return Hirzebruch("NotApplicable")
    lhs = mv[2] + Fraction(3, 4) * mv[3]
    rhs = d + sum((k - 4) * n for k, n in mv.counts if k >= 5)
    slack = lhs - rhs
    return Hirzebruch("Satisfied" if slack >= 0 else "Violated", slack)


@dataclass(frozen=True, order=True)
class ExponentPair:
    d1: int
    d2: int
    kind: Kind = Kind.FREE

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.NEITHER:
            raise ValueError("exponents only exist for Free and NearlyFree")
        if not 0 <= self.d1 <= self.d2:
            raise ValueError(f"need 0 <= d1 <= d2, got ({self.d1}, {self.d2})")

    @property
    def d(self) -> int:
        return self.d1 + self.d2 + (1 if self.kind is Kind.FREE else 0)

    def chi(self) -> CharPoly:
        if self.kind is Kind.FREE:
            return CharPoly(self.d1 + self.d2, self.d1 * self.d2)
        return CharPoly(self.d1 + self.d2 - 1, self.d1 * (self.d2 - 1) + 1)

    def __str__(self) -> str:
        return f"({self.d1},{self.d2})"


def exponent_candidates(cp: CharPoly, kind) -> list[ExponentPair]:
    """Every exponent pair of the given kind whose polynomial equals ``cp``."""
    kind = Kind(kind)
    if kind is Kind.FREE:
        roots = cp.integer_roots()
        if roots is None or roots[0] < 0:
            return []
        return [ExponentPair(roots[0], roots[1], kind)]
    # (t - d1)(t - d2 + 1) + 1: d1 and d2 - 1 are the roots of cp - 1
    roots = CharPoly(cp.b1, cp.b2 - 1).integer_roots()
    if roots is None or roots[0] < 0:
        return []
    r1, r2 = roots
    out = [ExponentPair(r1, r2 + 1, kind)]
    if r2 == r1 + 1:
        out.append(ExponentPair(r2, r2, kind))
    return sorted(out, key=lambda e: (e.d2 - e.d1, e.d1))


def exponents_from_chi(cp: CharPoly, kind) -> ExponentPair | None:
    """The most balanced exponent pair compatible with ``cp``, if any."""
    c = exponent_candidates(cp, kind)
    return c[0] if c else None


@dataclass(frozen=True)
class BoundsCheck:
    cor17: bool  # m >= d1
    prop13: bool  # m >= 2d / (d1 + 2)


def multiplicity_bounds_check(d: int, d1: int, m: int) -> BoundsCheck:
    if d < 1 or d1 < 0 or m < 2:
        raise ValueError("need d >= 1, d1 >= 0, m >= 2")
    return BoundsCheck(m >= d1, Fraction(m) >= Fraction(2 * d, d1 + 2))
