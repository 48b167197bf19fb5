"""Ziegler restrictions and deletion/restriction statements.

The restriction of an arrangement to one of its lines H is the multiset of
multiple points on H, each weighted by (its multiplicity - 1).  Exponents of
such rank-2 multiarrangements are known in closed form in three cases, and a
known case on any line makes freeness a property of the lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .arrangement import Arrangement, IncidenceStructure, line_profile
from .errors import CaseConflict, Inconsistent, NoIntegerDecomposition
from .invariants import CharPoly, ExponentPair, Kind, char_poly


def _inc(obj) -> IncidenceStructure:
    return obj.incidence if isinstance(obj, Arrangement) else obj


@dataclass(frozen=True)
class Multiarrangement2:
    mults: tuple[int, ...]

    def __post_init__(self):
        m = tuple(sorted((int(v) for v in self.mults), reverse=True))
        if any(v <= 0 for v in m):
            raise ValueError("multiplicities must be positive")
        object.__setattr__(self, "mults", m)

    @property
    def m(self) -> int:
        return sum(self.mults)

    @property
    def n(self) -> int:
        return len(self.mults)


def ziegler(obj, h: int) -> Multiarrangement2:
    prof = line_profile(_inc(obj), h)
    mults = [k - 1 for k, v in prof.counts for _ in range(v)]
    return Multiarrangement2(tuple(mults))


@dataclass(frozen=True)
class RestrictionExponents:
    value: Optional[tuple[int, int]]  # ascending; None when undetermined
    case_used: Optional[str]  # "I", "II", "III" (first applicable) or None
    cases: tuple[str, ...] = ()

    @property
    def determined(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        if self.value is None:
            return "Undetermined"
        return f"({self.value[0]},{self.value[1]}) [case {self.case_used}]"


def exponents_2multi(ma: Multiarrangement2) -> RestrictionExponents:
    mults, m, n = ma.mults, ma.m, ma.n
    found: dict[str, tuple[int, int]] = {}
    if n and 2 * mults[0] >= m:
        found["I"] = (mults[0], m - mults[0])
    if n and 2 * n >= m + 2:
        found["II"] = (m - n + 1, n - 1)
    if n >= 2 and all(v == 2 for v in mults):
        found["III"] = (n, n)
    if not found:
        return RestrictionExponents(None, None)
    values = {tuple(sorted(v)) for v in found.values()}
    if len(values) > 1:
        raise CaseConflict(f"cases disagree on {mults}: {found}")
    cases = tuple(found)
    return RestrictionExponents(values.pop(), cases[0], cases)


def yoshinaga_flag(obj) -> list[int]:
    """Lines whose Ziegler restriction has known exponents."""
    inc = _inc(obj)
    return [h for h in range(inc.d) if exponents_2multi(ziegler(inc, h)).determined]


# -- deletion / restriction ------------------------------------------------


@dataclass(frozen=True)
class DeletionFacts:
    """The three statements linking A, B = A \\ {H} and |A^H| for exponents (d1, d2).

    ``derived`` names the statement obtained by inference rather than supplied.
    """

    d1: int
    d2: int
    a_free: bool
    b_nearly_free: bool
    restriction_count: Optional[int]
    derived: Optional[str] = None

    @property
    def pair(self) -> tuple[int, int]:
        return (self.d1, self.d2)


def two_of_three(
    a_free: ExponentPair | None,
    b_nearly_free: ExponentPair | None,
    restriction_count: int | None,
    d1: int,
    d2: int,
) -> DeletionFacts:
    """Given two established statements, return all three.

    Statements: (1) A free with exponents (d1, d2); (2) B nearly free with
    exponents (d1, d2); (3) |A^H| = d1.
    """
    if d1 > d2:
        raise Inconsistent(f"exponents must satisfy d1 <= d2, got ({d1}, {d2})")
    known = {
        "a_free": a_free is not None,
        "b_nearly_free": b_nearly_free is not None,
        "restriction_count": restriction_count is not None,
    }
    if sum(known.values()) != 2:
        raise Inconsistent(f"exactly two statements must be supplied, got {sum(known.values())}")
    if a_free is not None:
        if a_free.kind is not Kind.FREE or (a_free.d1, a_free.d2) != (d1, d2):
            raise Inconsistent(f"A has exponents {a_free}, not ({d1},{d2}) free")
    if b_nearly_free is not None:
        if b_nearly_free.kind is not Kind.NEARLY_FREE or (b_nearly_free.d1, b_nearly_free.d2) != (d1, d2):
            raise Inconsistent(f"B has exponents {b_nearly_free}, not ({d1},{d2}) nearly free")
    if restriction_count is not None and restriction_count != d1:
        raise Inconsistent(f"|A^H| = {restriction_count} differs from d1 = {d1}")
    missing = next(k for k, v in known.items() if not v)
    return DeletionFacts(d1, d2, True, True, d1, derived=missing)


@dataclass(frozen=True)
class NFSufficiency:
    applicable: bool
    a: int
    b: int
    line: Optional[int] = None
    case: Optional[int] = None  # 1 or 2, the first matching case
    refined: dict = field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        if not self.applicable:
            return "NotApplicable"
        return f"Applicable(H={self.line}, case {self.case})"


def _nf_split(cp: CharPoly) -> tuple[int, int]:
    roots = CharPoly(cp.b1, cp.b2 - 1).integer_roots()
    if roots is None:
        raise NoIntegerDecomposition(f"{cp} is not (t-a)(t-b)+1 with integers a <= b")
    return roots


def refined_line_conditions(n_h: list[int], d1: int, d2: int) -> dict[str, list[int]]:
    """Lines satisfying each of the three refined conditions (empty lists if none)."""
    out = {"i": [], "ii": [], "iii": []}
    for h, n in enumerate(n_h):
        if d1 == d2 and n in (d1, d1 + 1):
            out["i"].append(h)
        if d1 < d2 and d1 + 3 != d2 and n in (d1 + 1, d2):
            out["ii"].append(h)
        if d1 + 3 == d2 and n == d2:
            out["iii"].append(h)
    return out


def nearly_free_sufficiency(obj) -> NFSufficiency:
    inc = _inc(obj)
    a, b = _nf_split(char_poly(inc.multiplicity_vector()))
    n_h = [line_profile(inc, h).n_H for h in range(inc.d)]
    refined: dict = {}
    # nearly free exponents with the same polynomial: d1 = a, d2 = b + 1 (and the swap)
    for d1, d2 in sorted({(a, b + 1), (b, a + 1)}):
        if 0 <= d1 <= d2:
            refined[f"{d1},{d2}"] = refined_line_conditions(n_h, d1, d2)
    for h, n in enumerate(n_h):
        if n == b + 1:
            return NFSufficiency(True, a, b, h, 1, refined)
    for h, n in enumerate(n_h):
        if n == a + 1 and b != a + 2:
            return NFSufficiency(True, a, b, h, 2, refined)
    return NFSufficiency(False, a, b, refined=refined)


@dataclass(frozen=True)
class StructuralChecks:
    max_points_ok: bool  # (a) every n_H <= d2 + 1
    has_d2_plus_1_line: bool  # (b)
    triple_line: Optional[bool]  # (c) only for 2d+1 lines with exponents (d, d+1)
    addition: Optional[bool]  # (d) None without a realization
    addition_line: Optional[int] = None
    lines_d2_plus_1: tuple[int, ...] = ()


def structural_checks(obj, kind, d1: int, d2: int, h: int | None = None) -> StructuralChecks:
    inc = _inc(obj)
    kind = Kind(kind)
    profiles = [line_profile(inc, i) for i in range(inc.d)]
    n_h = [p.n_H for p in profiles]
    a = all(n <= d2 + 1 for n in n_h)
    rich = tuple(i for i, n in enumerate(n_h) if n == d2 + 1)
    c = None
    if inc.d == 2 * d1 + 1 and d2 == d1 + 1:
        c = any(p.as_dict() == {3: d1} for p in profiles)
    dflag, dline = None, None
    if isinstance(obj, Arrangement):
        from .syzygy import JacobianEngine

        cands = [h] if h is not None else list(rich)
        dflag = False
        for cand in cands:
            if n_h[cand] != d2 + 1:
                continue
            rest = obj.delete(cand)
            v = JacobianEngine(rest).verdict(rest.incidence.multiplicity_vector())
            if v.kind is Kind.FREE:
                dflag, dline = True, cand
                break
    return StructuralChecks(a, bool(rich), c, dflag, dline, rich)
