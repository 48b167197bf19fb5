"""Line arrangements in the projective plane and their intersection combinatorics.

Lines are stored with exact coefficients (rationals, or elements of Q(w) for
configurations such as CEVA(3)) normalised so that the first nonzero
coefficient is 1; points use the same normalisation.  The abstract
combinatorics lives in :class:`IncidenceStructure`, which keeps only the points
of multiplicity at least 3 (double points are the pairs of lines not covered).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .errors import BadIndex, CountingIdentityViolation, IdenticalLines, InvalidInput
from .numbers import Eis, Scalar, denominator, scalar_key, to_scalar

Triple = tuple[Scalar, Scalar, Scalar]


def coords_key(t: Sequence) -> tuple:
    return tuple(scalar_key(x) for x in t)


def _canonical(v: Sequence) -> Triple:
    try:
        t = tuple(to_scalar(x) for x in v)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidInput(f"bad coordinate in {v!r}: {exc}") from None
    if len(t) != 3:
        raise InvalidInput(f"expected 3 coordinates, got {len(t)}")
    for x in t:
        if x != 0:
            return (t[0] / x, t[1] / x, t[2] / x)
    raise InvalidInput("all three coordinates are zero")


def _cross(u: Triple, v: Triple) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


@dataclass(frozen=True)
class ProjLine:
    """The line ``a*x + b*y + c*z = 0``."""

    coeffs: Triple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _canonical(self.coeffs))

    @classmethod
    def of(cls, a, b, c) -> "ProjLine":
        return cls((a, b, c))

    def __call__(self, point: Sequence) -> Scalar:
        return sum((c * to_scalar(x) for c, x in zip(self.coeffs, point)), Fraction(0))

    @property
    def sort_key(self) -> tuple:
        return coords_key(self.coeffs)

    def is_rational(self) -> bool:
        return not any(isinstance(c, Eis) for c in self.coeffs)

    def integer_coeffs(self) -> tuple:
        """Multiple of the coefficients with integral entries (in Z or Z[w]).

        Rational lines are made primitive; Eisenstein ones only have their
        denominators cleared.
        """
        from math import gcd, lcm

        den = lcm(*(denominator(c) for c in self.coeffs))
        vals = [c * den for c in self.coeffs]
        if self.is_rational():
            ints = [int(v) for v in vals]
            g = gcd(*ints)
            return tuple(v // g for v in ints)
        return tuple(vals)

    def __str__(self) -> str:
        from .numbers import format_scalar

        return " ".join(format_scalar(c) for c in self.coeffs)


def intersect(l1: ProjLine, l2: ProjLine) -> Triple:
    """Intersection point of two distinct lines, canonically normalised."""
    if l1 == l2:
        raise IdenticalLines(f"lines coincide: {l1}")
    return _canonical(_cross(l1.coeffs, l2.coeffs))


@dataclass(frozen=True)
class Arrangement:
    lines: tuple[ProjLine, ...]

    def __post_init__(self):
        lines = tuple(l if isinstance(l, ProjLine) else ProjLine(l) for l in self.lines)
        if not lines:
            raise InvalidInput("an arrangement needs at least one line")
        seen: dict[ProjLine, int] = {}
        for i, l in enumerate(lines):
            if l in seen:
                raise IdenticalLines(f"line {i} repeats line {seen[l]} ({l})")
            seen[l] = i
        object.__setattr__(self, "lines", lines)

    @classmethod
    def from_coeffs(cls, rows: Iterable[Sequence]) -> "Arrangement":
        return cls(tuple(ProjLine(tuple(r)) for r in rows))

    @property
    def d(self) -> int:
        return len(self.lines)

    def __len__(self) -> int:
        return len(self.lines)

    def polynomial(self):
        """The defining polynomial: product of the integer-scaled linear forms."""
        from .polynomial import HomogPoly

        f = HomogPoly.constant(1)
        for l in self.lines:
            f = f * HomogPoly.linear(*l.integer_coeffs())
        return f

    def delete(self, h: int) -> "Arrangement":
        _check_index(h, self.d)
        return Arrangement(self.lines[:h] + self.lines[h + 1:])

    def transform(self, matrix: Sequence[Sequence]) -> "Arrangement":
        """Apply the coordinate change ``x = M y`` (lines pull back by ``M^T``)."""
        m = [[to_scalar(v) for v in row] for row in matrix]
        out = []
        for l in self.lines:
            a = l.coeffs
            out.append(ProjLine(tuple(sum(m[i][j] * a[i] for i in range(3)) for j in range(3))))
        return Arrangement(tuple(out))

    @cached_property
    def points(self) -> tuple["MultiplePoint", ...]:
        return multiple_points(self)

    @cached_property
    def incidence(self) -> "IncidenceStructure":
        return incidence_of(self)


@dataclass(frozen=True)
class MultiplePoint:
    coords: Triple
    incident: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.incident)


def _check_index(h: int, d: int) -> None:
    if not isinstance(h, int) or not 0 <= h < d:
        raise BadIndex(f"line index {h!r} out of range for {d} lines")


def multiple_points(arr: Arrangement) -> tuple[MultiplePoint, ...]:
    groups: dict[Triple, set[int]] = {}
    for i, j in itertools.combinations(range(arr.d), 2):
        p = intersect(arr.lines[i], arr.lines[j])
        groups.setdefault(p, set()).update((i, j))
    pts = [MultiplePoint(p, tuple(sorted(s))) for p, s in groups.items()]
    for pt in pts:
        for i in pt.incident:
            assert arr.lines[i](pt.coords) == 0
    pts.sort(key=lambda q: coords_key(q.coords))
    return tuple(pts)


@dataclass(frozen=True)
class LineProfile:
    """Multiplicities of the points on one line: ``counts[i]`` points of multiplicity i."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_counts(cls, counts: dict[int, int], d: int | None = None) -> "LineProfile":
        items = tuple(sorted((int(k), int(v)) for k, v in counts.items() if v))
        prof = cls(items)
        if d is not None and prof.degree_sum != d - 1:
            raise InvalidInput(f"profile {dict(items)} is not a line profile for d={d}")
        return prof

    def __getitem__(self, i: int) -> int:
        return dict(self.counts).get(i, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def n_H(self) -> int:
        return sum(v for _, v in self.counts)

    @property
    def degree_sum(self) -> int:
        return sum((i - 1) * v for i, v in self.counts)

    @property
    def max_multiplicity(self) -> int:
        return max((i for i, _ in self.counts), default=1)


@dataclass(frozen=True)
class MultiplicityVector:
    d: int
    counts: tuple[tuple[int, int], ...]

    def __getitem__(self, k: int) -> int:
        return dict(self.counts).get(k, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def max_multiplicity(self) -> int:
        return max((k for k, _ in self.counts), default=1)

    @property
    def point_count(self) -> int:
        return sum(v for _, v in self.counts)


def multiplicity_vector(pts: Iterable, d: int) -> MultiplicityVector:
    """Count points by multiplicity and check the pair-count identity."""
    c = Counter(p.m if isinstance(p, MultiplePoint) else len(p) for p in pts)
    mv = MultiplicityVector(d, tuple(sorted(c.items())))
    total = sum(v * comb(k, 2) for k, v in mv.counts)
    if total != comb(d, 2):
        raise CountingIdentityViolation(
            f"sum n_k C(k,2) = {total} but C({d},2) = {comb(d, 2)}"
        )
    return mv


@dataclass(frozen=True)
class IncidenceStructure:
    """Abstract rank-2 lattice data: ``d`` lines and their points of multiplicity >= 3.

    Construct with :meth:`from_points`, which accepts double points too and
    validates that every pair of lines meets in exactly one listed or implicit
    point.
    """

    d: int
    rich: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInput("d must be at least 1")
        rich = tuple(sorted(tuple(sorted(set(p))) for p in self.rich))
        seen: set[tuple[int, int]] = set()
        for p in rich:
            if len(p) < 3:
                raise InvalidInput(f"rich point {p} has fewer than 3 lines")
            for i in p:
                _check_index(i, self.d)
            for pair in itertools.combinations(p, 2):
                if pair in seen:
                    raise InvalidInput(f"lines {pair} meet in two listed points")
                seen.add(pair)
        object.__setattr__(self, "rich", rich)

    @classmethod
    def from_points(cls, d: int, points: Iterable[Iterable[int]]) -> "IncidenceStructure":
        rich = []
        covered: set[tuple[int, int]] = set()
        for p in points:
            s = tuple(sorted(set(int(i) for i in p)))
            if len(s) < 2:
                raise InvalidInput(f"point {s} has fewer than 2 lines")
            for i in s:
                _check_index(i, d)
            for pair in itertools.combinations(s, 2):
                if pair in covered:
                    raise InvalidInput(f"lines {pair} meet in two listed points")
                covered.add(pair)
            if len(s) >= 3:
                rich.append(s)
        return cls(d, tuple(rich))

    @cached_property
    def points(self) -> tuple[tuple[int, ...], ...]:
        """All multiple points, double points included, sorted."""
        covered = {pair for p in self.rich for pair in itertools.combinations(p, 2)}
        doubles = [pr for pr in itertools.combinations(range(self.d), 2) if pr not in covered]
        return tuple(sorted(list(self.rich) + doubles))

    @cached_property
    def pair_point(self) -> list[list[int]]:
        """``pair_point[i][j]``: index into :attr:`points` of the point on lines i, j."""
        table = [[-1] * self.d for _ in range(self.d)]
        for k, p in enumerate(self.points):
            for i, j in itertools.combinations(p, 2):
                table[i][j] = table[j][i] = k
        return table

    def points_on(self, h: int) -> list[tuple[int, ...]]:
        _check_index(h, self.d)
        return [p for p in self.points if h in p]

    def multiplicity_vector(self) -> MultiplicityVector:
        return multiplicity_vector(self.points, self.d)

    @property
    def max_multiplicity(self) -> int:
        return max((len(p) for p in self.points), default=1)

    def delete(self, h: int) -> "IncidenceStructure":
        _check_index(h, self.d)
        pts = []
        for p in self.points:
            q = tuple(i - (i > h) for i in p if i != h)
            if len(q) >= 2:
                pts.append(q)
        return IncidenceStructure.from_points(self.d - 1, pts)

    def expanded(self) -> list[list[int]]:
        return [list(p) for p in self.points]


def incidence_of(arr: Arrangement) -> IncidenceStructure:
    return IncidenceStructure.from_points(arr.d, (p.incident for p in arr.points))


def line_profile(obj: Arrangement | IncidenceStructure, h: int) -> LineProfile:
    inc = obj.incidence if isinstance(obj, Arrangement) else obj
    c = Counter(len(p) for p in inc.points_on(h))
    return LineProfile.from_counts(dict(c), inc.d)


def line_profiles(obj: Arrangement | IncidenceStructure) -> list[LineProfile]:
    inc = obj.incidence if isinstance(obj, Arrangement) else obj
    return [line_profile(inc, h) for h in range(inc.d)]


# Line types for 13-line arrangements with points of multiplicity at most 5 and
# 4 to 6 points per line.  Keys are tags, values map multiplicity -> count.
TYPES_13: dict[str, dict[int, int]] = {
    "a0": {4: 4},
    "a": {4: 1, 3: 4, 2: 1},
    "b": {4: 2, 3: 3},
    "c": {4: 2, 3: 2, 2: 2},
    "d": {4: 3, 3: 1, 2: 1},
    "e": {4: 3, 2: 3},
    "f": {5: 1, 3: 3, 2: 2},
    "g": {5: 1, 3: 4},
    "h": {5: 1, 4: 1, 3: 1, 2: 3},
    "i": {5: 1, 4: 1, 3: 2, 2: 1},
    "j": {5: 1, 4: 2, 2: 2},
    "k": {5: 2, 2: 4},
    "l": {5: 2, 3: 1, 2: 2},
}

UNLISTED = "Unlisted"


def classify_profile_13(p: LineProfile | dict[int, int]) -> str:
    counts = p.as_dict() if isinstance(p, LineProfile) else {k: v for k, v in p.items() if v}
    for tag, row in TYPES_13.items():
        if row == counts:
            return tag
    return UNLISTED
