"""Integer linear systems over line-type counts and their exhaustive solution.

A system lists point-count variables (numbers of points of each multiplicity)
and line-type variables (numbers of lines with a given profile), tied together
by the Tjurina row, the pair-count row, one incidence row per multiplicity and
the total-lines row.  :func:`enumerate_nonneg` lists every nonnegative integer
solution inside the variable bounds.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import InconsistentTable, InvalidInput, Unbounded, UnknownName
from .invariants import Kind, tjurina_target

THREADS_ENV = "LINEFREE_THREADS"


@dataclass(frozen=True)
class LineTypeTable:
    rows: tuple[tuple[str, tuple[tuple[int, int], ...]], ...]

    @classmethod
    def of(cls, rows: Mapping[str, Mapping[int, int]] | Iterable) -> "LineTypeTable":
        items = rows.items() if isinstance(rows, Mapping) else rows
        out = []
        for tag, prof in items:
            out.append((str(tag), tuple(sorted((int(k), int(v)) for k, v in dict(prof).items() if v))))
        return cls(tuple(out))

    def __post_init__(self):
        tags = [t for t, _ in self.rows]
        if len(set(tags)) != len(tags):
            raise InconsistentTable(f"duplicate tags in {tags}")

    @property
    def tags(self) -> list[str]:
        return [t for t, _ in self.rows]

    def profile(self, tag: str) -> dict[int, int]:
        return dict(dict(self.rows)[tag])

    def multiplicities(self) -> list[int]:
        return sorted({k for _, p in self.rows for k, _ in p})

    def validate(self, d: int) -> None:
        for tag, prof in self.rows:
            s = sum((k - 1) * v for k, v in prof)
            if s != d - 1:
                raise InconsistentTable(f"type {tag}: sum (i-1) n_i = {s}, expected {d - 1}")


@dataclass(frozen=True)
class LinearSystem:
    var_names: tuple[str, ...]
    eqs: tuple[tuple[tuple[int, ...], int], ...]
    bounds: tuple[int | None, ...]

    def __post_init__(self):
        n = len(self.var_names)
        if len(set(self.var_names)) != n:
            raise InvalidInput("duplicate variable names")
        if len(self.bounds) != n:
            raise InvalidInput("one bound per variable required")
        for coeffs, rhs in self.eqs:
            if len(coeffs) != n:
                raise InvalidInput("equation length does not match variables")
            if not all(isinstance(c, (int, np.integer)) for c in coeffs) or not isinstance(rhs, (int, np.integer)):
                raise InvalidInput("coefficients must be integers")

    @classmethod
    def from_rows(cls, var_names: Sequence[str], rows: Iterable[tuple[Mapping[str, int], int]],
                  bounds: Mapping[str, int | None] | None = None) -> "LinearSystem":
        names = tuple(var_names)
        idx = {v: i for i, v in enumerate(names)}
        eqs = []
        for coeffs, rhs in rows:
            vec = [0] * len(names)
            for v, c in coeffs.items():
                if v not in idx:
                    raise InvalidInput(f"unknown variable {v!r}")
                vec[idx[v]] += int(c)
            eqs.append((tuple(vec), int(rhs)))
        b = tuple((bounds or {}).get(v) for v in names)
        return cls(names, tuple(eqs), b)

    def row_dicts(self) -> list[tuple[dict[str, int], int]]:
        return [({v: c for v, c in zip(self.var_names, co) if c}, rhs) for co, rhs in self.eqs]

    def row_set(self) -> frozenset:
        return frozenset((frozenset(r.items()), rhs) for r, rhs in self.row_dicts())

    def rename(self, mapping: Mapping[str, str]) -> "LinearSystem":
        return LinearSystem(tuple(mapping.get(v, v) for v in self.var_names), self.eqs, self.bounds)

    def check(self, x: Sequence[int]) -> bool:
        if any(v < 0 or (b is not None and v > b) for v, b in zip(x, self.bounds)):
            return False
        return all(sum(c * v for c, v in zip(co, x)) == rhs for co, rhs in self.eqs)

    def to_json(self) -> dict:
        return {
            "vars": list(self.var_names),
            "eqs": [{"coeffs": r, "rhs": rhs} for r, rhs in self.row_dicts()],
            "bounds": {v: b for v, b in zip(self.var_names, self.bounds) if b is not None},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LinearSystem":
        try:
            names = list(data["vars"])
            rows = [({str(k): int(v) for k, v in e["coeffs"].items()}, int(e["rhs"])) for e in data["eqs"]]
            bounds = {str(k): (None if v is None else int(v)) for k, v in data.get("bounds", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad system spec: {exc}") from None
        return cls.from_rows(names, rows, bounds)

    def __str__(self) -> str:
        lines = []
        for r, rhs in self.row_dicts():
            terms = []
            for v, c in r.items():
                sign = "-" if c < 0 else "+"
                mag = "" if abs(c) == 1 else str(abs(c))
                terms.append(f"{sign} {mag}{v}")
            s = " ".join(terms).lstrip("+ ").replace("- ", "-", 1) if terms else "0"
            lines.append(f"| {s} = {rhs}")
        return "\n".join(lines)


@dataclass(frozen=True)
class SolutionSet:
    var_names: tuple[str, ...]
    solutions: tuple[tuple[int, ...], ...]
    complete: bool = True

    def __len__(self) -> int:
        return len(self.solutions)

    @property
    def empty(self) -> bool:
        return not self.solutions

    def as_dicts(self) -> list[dict[str, int]]:
        return [dict(zip(self.var_names, s)) for s in self.solutions]

    def to_json(self) -> dict:
        return {"vars": list(self.var_names), "complete": self.complete,
                "solutions": [list(s) for s in self.solutions]}

    def table(self) -> str:
        cols = [list(self.var_names)] + [[str(v) for v in s] for s in self.solutions]
        widths = [max(len(r[i]) for r in cols) for i in range(len(self.var_names))]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cols)


# -- building ---------------------------------------------------------------


def default_bounds(d: int, point_vars: Mapping[str, int], type_vars: Iterable[str]) -> dict[str, int]:
    out = {v: comb(d, 2) // comb(k, 2) for v, k in point_vars.items()}
    out.update({t: d for t in type_vars})
    return out


def build_system(d: int, exponents: tuple[int, int], kind, table: LineTypeTable,
                 extra: Mapping | None = None) -> LinearSystem:
    """Assemble the combinatorial system for ``d`` lines of the given types.

    ``extra`` options: ``fixed`` (multiplicity -> known point count, moved to
    the right-hand sides), ``point_vars`` (multiplicities kept as variables;
    default: every multiplicity in the table that is not fixed), ``names``
    (multiplicity -> variable name, default ``n<k>``).
    """
    extra = dict(extra or {})
    table.validate(d)
    kind = Kind(kind)
    d1, d2 = exponents
    expected = d - 1 if kind is Kind.FREE else d
    if d1 + d2 != expected or d1 > d2:
        raise InconsistentTable(f"exponents {exponents} do not fit {kind} with d={d}")
    fixed = {int(k): int(v) for k, v in extra.get("fixed", {}).items()}
    mults = extra.get("point_vars") or [k for k in table.multiplicities() if k not in fixed]
    names = {k: f"n{k}" for k in mults}
    names.update({int(k): v for k, v in extra.get("names", {}).items()})
    pvars = {names[k]: k for k in mults}
    tags = table.tags
    var_names = list(pvars) + tags

    tau = tjurina_target(d, d1, kind) - sum((k - 1) ** 2 * n for k, n in fixed.items())
    pairs = comb(d, 2) - sum(comb(k, 2) * n for k, n in fixed.items())
    rows: list[tuple[dict[str, int], int]] = [
        ({names[k]: (k - 1) ** 2 for k in mults}, tau),
        ({names[k]: comb(k, 2) for k in mults}, pairs),
    ]
    for k in mults:
        r = {names[k]: -k}
        for t in tags:
            c = table.profile(t).get(k, 0)
            if c:
                r[t] = c
        rows.append((r, 0))
    rows.append(({t: 1 for t in tags}, d))
    for k, n in sorted(fixed.items()):
        r = {t: table.profile(t).get(k, 0) for t in tags if table.profile(t).get(k, 0)}
        if r or n:
            rows.append((r, k * n))
    return LinearSystem.from_rows(var_names, rows, default_bounds(d, pvars, tags))


# -- the named systems ----------------------------------------------------------

from .arrangement import TYPES_13  # noqa: E402

TYPES_11 = {"d": {4: 2, 3: 1, 2: 2}, "e": {4: 1, 3: 3, 2: 1}}
TYPES_12_I = {"d": {4: 3, 2: 2}, "e": {4: 2, 3: 2, 2: 1}, "f": {4: 1, 3: 4}}
TYPES_12_II = {
    "d": {5: 2, 2: 3}, "e": {5: 1, 4: 1, 3: 1, 2: 2}, "f": {5: 1, 3: 3, 2: 1},
    "g": {4: 3, 2: 2}, "h": {4: 2, 3: 2, 2: 1}, "i": {4: 1, 3: 4},
}
TYPES_14 = {
    "d": {5: 2, 3: 2, 2: 1}, "e": {5: 2, 4: 1, 2: 2}, "f": {5: 1, 4: 2, 3: 1, 2: 1},
    "g": {5: 1, 4: 1, 3: 3}, "h": {4: 4, 2: 1}, "i": {4: 3, 3: 2},
}

_ABCO = {2: "a", 3: "b", 4: "c", 5: "o"}


def _lin(s: str) -> dict[str, int]:
    """Parse a row such as ``-2n2+3e+d`` into coefficients."""
    import re

    out: dict[str, int] = {}
    for sign, num, var in re.findall(r"([+-]?)(\d*)([a-z]\w*)", s.replace(" ", "")):
        c = int(num) if num else 1
        out[var] = out.get(var, 0) + (-c if sign == "-" else c)
    return out


def _sys(var_names: str, rows: list[tuple[str, int]], d: int, point_vars: Mapping[str, int]) -> LinearSystem:
    names = var_names.split()
    types = [v for v in names if v not in point_vars]
    return LinearSystem.from_rows(names, [(_lin(r), rhs) for r, rhs in rows],
                                  default_bounds(d, point_vars, types))


_LEMMA_PV = {"n2": 2, "n3": 3, "n4": 4}
_ROWS_N5_HIGH_DOUBLE = "-2n2+3e+d+2c+a+2f+3h+2j+4k+2l+i"
_ROWS_N5_HIGH_TRIPLE = "-3n3+d+3b+2c+4a+3f+4g+h+l+2i"


def _transcriptions(strict: bool) -> dict[str, LinearSystem]:
    out = {
        "lemma33_n5_0": _sys("n2 n3 n4 a0 a b c d e", [
            ("n2+4n3+9n4", 108), ("n2+3n3+6n4", 78),
            ("-2n2+3e+d+2c+a", 0), ("-3n3+d+3b+2c+4a", 0),
            ("-4n4+4a0+a+2c+2b+3d+3e", 0), ("a0+a+b+c+d+e", 13),
        ], 13, _LEMMA_PV),
        "lemma33_n5_1": _sys("n2 n3 n4 a b c d e f g h i j", [
            ("n2+4n3+9n4", 92), ("n2+3n3+6n4", 68),
            ("-2n2+3e+d+2c+a+2f+3h+2j+i", 0), ("-3n3+d+3b+2c+4a+3f+4g+h+2i", 0),
            ("-4n4+a+2c+2b+3d+3e+h+2j+i", 0), ("a+b+c+d+e+f+g+h+i+j", 13),
            ("f+g+h+i+j", 5),
        ], 13, _LEMMA_PV),
        "lemma33_n5_2": _sys("n2 n3 n4 a b c d e f g h i j k l", [
            ("n2+4n3+9n4", 76), ("n2+3n3+6n4", 58),
            (_ROWS_N5_HIGH_DOUBLE, 0), (_ROWS_N5_HIGH_TRIPLE, 0),
            ("-4n4+a+2c+2b+3d+3e+h+2j+i", 0), ("a+b+c+d+e+f+g+h+i+j+k+l", 13),
            ("f+g+h+i+j+2k+2l", 10),
        ], 13, _LEMMA_PV),
        "lemma33_n5_3": _sys("n2 n3 n4 a b c d e f g h i j k l", [
            ("n2+4n3+9n4", 60), ("n2+3n3+6n4", 48),
            (_ROWS_N5_HIGH_DOUBLE, 0), (_ROWS_N5_HIGH_TRIPLE, 0),
            ("-4n4+a+2c+2b+3d+3e+h+2j+i", 0), ("a+b+c+d+e+f+g+h+i+j+k+l", 13),
            ("f+g+h+i+j+2k+2l", 15),
        ], 13, _LEMMA_PV),
        "sys11": _sys("a b c d e", [
            ("a+4b+9c", 74), ("a+3b+6c", 55), ("-2a+2d+e", 0),
            ("-3b+d+3e", 0), ("-4c+2d+e", 0), ("d+e", 11),
        ], 11, {"a": 2, "b": 3, "c": 4}),
        "sys12_I": _sys("a b c d e f", [
            ("a+4b+9c", 90), ("a+3b+6c", 66), ("-2a+2d+e", 0),
            ("-3b+2e+4f", 0), ("-4c+3d+2e+f", 0), ("d+e+f", 12),
        ], 12, {"a": 2, "b": 3, "c": 4}),
        "sys12_II": _sys("a b c o d e f g h i", [
            ("a+4b+9c+16o", 90), ("a+3b+6c+10o", 66), ("-2a+3d+2e+f+2g+h", 0),
            ("-3b+e+3f+2h+4i", 0), ("-4c+e+3g+2h+i", 0), ("-5o+2d+e+f", 0),
            ("d+e+f+g+h+i", 12),
        ], 12, {"a": 2, "b": 3, "c": 4, "o": 5}),
        "sys14": _sys("a b c o d e f g h i", [
            ("a+4b+9c+16o", 127), ("a+3b+6c+10o", 91), ("-2a+d+2e+f+h", 0),
            ("-3b+2d+f+3g+2i", 0), ("-4c+e+2f+g+4h+3i", 0),
            # printed with c; the type table forces the quintuple count o
            ("-5c+2d+2e+f+g" if strict else "-5o+2d+2e+f+g", 0),
            ("d+e+f+g+h+i", 14),
        ], 14, {"a": 2, "b": 3, "c": 4, "o": 5}),
    }
    return out


SYSTEM_NAMES = ("lemma33_n5_0", "lemma33_n5_1", "lemma33_n5_2", "lemma33_n5_3",
                "sys11", "sys12_I", "sys12_II", "sys14")

SYSTEM_INFO = {
    "lemma33_n5_0": "13 free lines (6,6), no quintuple points, types a0-e",
    "lemma33_n5_1": "13 free lines (6,6), one quintuple point, types a-j",
    "lemma33_n5_2": "13 free lines (6,6), two quintuple points, types a-l",
    "lemma33_n5_3": "13 free lines (6,6), three quintuple points, types a-l",
    "sys11": "11 nearly free lines (5,6), only 5-point lines",
    "sys12_I": "12 nearly free lines (5,7), m = 4, only 5-point lines",
    "sys12_II": "12 nearly free lines (6,6), m = 5, only 5-point lines",
    "sys14": "14 free lines (6,7), no 6-point line",
}


def predefined(name: str, strict: bool = False) -> LinearSystem:
    """One of the named systems, transcribed row by row.

    ``strict=True`` reproduces the printed quintuple row of ``sys14``
    (coefficient on c rather than o).
    """
    systems = _transcriptions(strict)
    if name not in systems:
        raise UnknownName(name)
    return systems[name]


def builder_equivalent(name: str) -> LinearSystem:
    """The same system produced by :func:`build_system`, naming point counts a, b, c, o."""
    lemma_types = {
        0: ["a0", "a", "b", "c", "d", "e"],
        1: list("abcdefghij"),
        2: list("abcdefghijkl"),
        3: list("abcdefghijkl"),
    }
    if name.startswith("lemma33_n5_"):
        n5 = int(name[-1])
        table = LineTypeTable.of({t: TYPES_13[t] for t in lemma_types[n5]})
        return build_system(13, (6, 6), Kind.FREE, table, {"fixed": {5: n5}, "point_vars": [2, 3, 4]})
    specs = {
        "sys11": (11, (5, 6), Kind.NEARLY_FREE, TYPES_11),
        "sys12_I": (12, (5, 7), Kind.NEARLY_FREE, TYPES_12_I),
        "sys12_II": (12, (6, 6), Kind.NEARLY_FREE, TYPES_12_II),
        "sys14": (14, (6, 7), Kind.FREE, TYPES_14),
    }
    if name not in specs:
        raise UnknownName(name)
    d, exps, kind, types = specs[name]
    return build_system(d, exps, kind, LineTypeTable.of(types), {"names": _ABCO})


# -- enumeration ------------------------------------------------------------


def _derive_bounds(sys: LinearSystem) -> list[int]:
    bounds = list(sys.bounds)
    for j, b in enumerate(bounds):
        if b is not None:
            continue
        for co, rhs in sys.eqs:
            if co[j] > 0 and all(c >= 0 for c in co) and rhs >= 0:
                cand = rhs // co[j]
                bounds[j] = cand if bounds[j] is None else min(bounds[j], cand)
        if bounds[j] is None:
            raise Unbounded(f"variable {sys.var_names[j]!r} has no finite bound")
    return bounds


def _rref_rational(rows: list[list[int]], rhs: list[int]) -> tuple[list[list[int]], list[int]] | None:
    """Integer-scaled reduced row echelon form of the augmented system; None if inconsistent."""
    m = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        m[rank] = [v / pv for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    for r in m[rank:]:
        if r[-1] != 0:
            return None
    out_rows, out_rhs = [], []
    for r in m[:rank]:
        den = lcm(*(v.denominator for v in r))
        ints = [int(v * den) for v in r]
        g = gcd(*ints) or 1
        ints = [v // g for v in ints]
        out_rows.append(ints[:-1])
        out_rhs.append(ints[-1])
    return out_rows, out_rhs


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def enumerate_nonneg(sys: LinearSystem, threads: int | None = None, limit: int | None = None) -> SolutionSet:
    """All nonnegative integer solutions within the bounds, sorted lexicographically.

    Variables are enumerated in increasing order of their bounds (line types
    first); equations are first brought to reduced echelon form over Q with
    pivots on the last-enumerated variables, so those become forced values.
    """
    n = len(sys.var_names)
    bounds = _derive_bounds(sys)
    order = sorted(range(n), key=lambda j: (bounds[j], j))
    if not sys.eqs:
        rows, rhs = [], []
    else:
        rev = order[::-1]
        red = _rref_rational([[co[j] for j in rev] for co, _ in sys.eqs], [r for _, r in sys.eqs])
        if red is None:
            return SolutionSet(sys.var_names, (), True)
        rows = [r[::-1] for r in red[0]]  # back to enumeration order
        rhs = red[1]
    coef = np.ascontiguousarray(np.array(rows, dtype=np.int64).reshape(len(rows), n))
    rhs_a = np.ascontiguousarray(np.array(rhs, dtype=np.int64))
    ub = np.ascontiguousarray(np.array([bounds[j] for j in order], dtype=np.int64))
    lim = -1 if limit is None else int(limit)
    threads = thread_count() if threads is None else max(1, threads)

    def run(prefix: list[int]) -> np.ndarray:
        return kernels.enumerate_box(coef, rhs_a, ub, np.array(prefix, dtype=np.int64), lim)

    if n == 0:
        sols = [()] if all(r == 0 for r in rhs) else []
        return SolutionSet(sys.var_names, tuple(sols), True)
    if threads > 1 and ub[0] > 0:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(run, [[v] for v in range(int(ub[0]) + 1)]))
        found = np.vstack(parts) if parts else np.zeros((0, n), np.int64)
    else:
        found = run([])
    if limit is not None and len(found) > limit:
        raise OverflowError("solution limit exceeded")
    inv = np.empty(n, dtype=np.int64)
    inv[order] = np.arange(n)
    sols = sorted(tuple(int(v) for v in row[inv]) for row in found)
    for s in sols:
        if not sys.check(s):
            raise AssertionError(f"enumerator produced a non-solution {s}")
    return SolutionSet(sys.var_names, tuple(sols), True)


def naive_grid(sys: LinearSystem) -> SolutionSet:
    """Reference enumerator: scan the whole bounding box."""
    import itertools

    bounds = _derive_bounds(sys)
    sols = [x for x in itertools.product(*(range(b + 1) for b in bounds)) if sys.check(x)]
    return SolutionSet(sys.var_names, tuple(sols), True)


# -- properties -------------------------------------------------------------


@dataclass(frozen=True)
class PropertyResult:
    holds: bool
    checked: int
    counterexample: dict[str, int] | None = None


def assert_property(sols: SolutionSet, predicate: Callable[[dict[str, int]], bool]) -> PropertyResult:
    count = 0
    for s in sols.as_dicts():
        count += 1
        if not predicate(s):
            return PropertyResult(False, count, s)
    return PropertyResult(True, count)


def _v(s, *names):
    return sum(s.get(n, 0) for n in names)


LEMMA_PROPERTIES: dict[str, list[tuple[str, Callable[[dict[str, int]], bool]]]] = {
    "lemma33_n5_0": [
        ("six-point lines a+c+e >= 5, and >= 6 when a0 > 0",
         lambda s: _v(s, "a", "c", "e") >= (6 if s["a0"] > 0 else 5)),
        ("b+d+a0 = 12 - n4 - a0 (as printed)",
         lambda s: _v(s, "b", "d", "a0") == 12 - s["n4"] - s["a0"]),
    ],
    "lemma33_n5_1": [
        ("six-point lines a+c+e+f+h = 4 + n4", lambda s: _v(s, "a", "c", "e", "f", "h") == 4 + s["n4"]),
        ("n4 >= 2", lambda s: s["n4"] >= 2),
        ("six-point lines >= 6", lambda s: _v(s, "a", "c", "e", "f", "h") >= 6),
    ],
    "lemma33_n5_2": [
        ("five-point lines b+d+g+i+j+l = 6 - n4", lambda s: _v(s, "b", "d", "g", "i", "j", "l") == 6 - s["n4"]),
        ("six-point lines >= 7", lambda s: 13 - _v(s, "b", "d", "g", "i", "j", "l") >= 7),
    ],
    "lemma33_n5_3": [
        ("five-point lines d+b+g+j+l+i = 3 - n4", lambda s: _v(s, "d", "b", "g", "j", "l", "i") == 3 - s["n4"]),
        ("six-point lines >= 10", lambda s: 13 - _v(s, "d", "b", "g", "j", "l", "i") >= 10),
    ],
}


def load_system_file(path) -> LinearSystem:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            from .errors import ParseError

            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return LinearSystem.from_json(data)
