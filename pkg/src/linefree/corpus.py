"""Named arrangements used throughout the tests and the CLI."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .arrangement import Arrangement, IncidenceStructure
from .numbers import Eis

W = Eis(0, 1)  # primitive cube root of unity


def triangle() -> Arrangement:
    return Arrangement.from_coeffs([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def _pencil_lines(n: int) -> list[tuple]:
    # x, y, x - y, x + y, x - 2y, x + 2y, ... through (0:0:1)
    lines = [(1, 0, 0), (0, 1, 0)]
    k = 1
    while len(lines) < n:
        lines.append((1, -k, 0))
        if len(lines) < n:
            lines.append((1, k, 0))
        k += 1
    return lines[:n]


def pencil(d: int) -> Arrangement:
    """``d`` lines through one point."""
    return Arrangement.from_coeffs(_pencil_lines(d))


def near_pencil(d: int) -> Arrangement:
    """A pencil of ``d - 1`` lines plus one line in general position."""
    if d < 3:
        raise ValueError("a near pencil needs at least 3 lines")
    return Arrangement.from_coeffs(_pencil_lines(d - 1) + [(0, 0, 1)])


def generic(d: int) -> Arrangement:
    """``x, y, z`` and the lines ``x + t y + t^2 z``: no three concurrent."""
    base = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    lines = base[: min(d, 3)] + [(1, t, t * t) for t in range(1, d - 2)]
    arr = Arrangement.from_coeffs(lines)
    assert arr.incidence.max_multiplicity <= 2
    return arr


def ceva3() -> Arrangement:
    """(x^3 - y^3)(y^3 - z^3)(x^3 - z^3): nine lines, twelve triple points."""
    lines = []
    for i, j in ((0, 1), (1, 2), (0, 2)):
        for r in (Fraction(1), W, W * W):
            v = [0, 0, 0]
            v[i], v[j] = 1, -r
            lines.append(tuple(v))
    return Arrangement.from_coeffs(lines)


def grid13() -> Arrangement:
    """z * prod_{i<6}(x - i z) * prod_{j<6}(y - j z)."""
    lines = [(0, 0, 1)]
    lines += [(1, 0, -i) for i in range(6)]
    lines += [(0, 1, -j) for j in range(6)]
    return Arrangement.from_coeffs(lines)


def a1(a=2) -> Arrangement:
    """xyz(x - y)(x + z)(y + z)(x + a y + z), a != 0, 1."""
    a = Fraction(a)
    if a in (0, 1):
        raise ValueError("a must differ from 0 and 1")
    return Arrangement.from_coeffs(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, 1), (0, 1, 1), (1, a, 1)]
    )


def a2(c=2) -> Arrangement:
    """xyz(x - c y)(x + z)(y + z)(x - c y + (1 - c) z)."""
    c = Fraction(c)
    if c in (0, 1):
        raise ValueError("c must differ from 0 and 1")
    return Arrangement.from_coeffs(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -c, 0), (1, 0, 1), (0, 1, 1), (1, -c, 1 - c)]
    )


def ceva3_split() -> IncidenceStructure:
    """CEVA(3) lattice with one triple point split into three double points."""
    inc = ceva3().incidence
    rich = list(inc.rich)
    return IncidenceStructure(inc.d, tuple(rich[1:]))


def full_corpus() -> dict[str, Arrangement]:
    """The oracle corpus: small families plus the named examples."""
    out: dict[str, Arrangement] = {"triangle": triangle()}
    for d in range(3, 7):
        out[f"pencil{d}"] = pencil(d)
    for d in range(4, 8):
        out[f"near_pencil{d}"] = near_pencil(d)
    for d in range(4, 7):
        out[f"generic{d}"] = generic(d)
    out["ceva3"] = ceva3()
    out["grid13"] = grid13()
    out["A1"] = a1(2)
    out["A2"] = a2(2)
    return out


NAMED = {
    "triangle": triangle,
    "ceva3": ceva3,
    "grid13": grid13,
    "A1": a1,
    "A2": a2,
}


def synthesize_lattice(profiles, seed: int = 0, max_nodes: int = 200_000) -> IncidenceStructure | None:
    """An abstract lattice whose line ``i`` has the point profile ``profiles[i]``.

    ``profiles[i]`` maps multiplicity -> count and must have degree sum d - 1.
    Only points of multiplicity >= 3 are placed; the remaining pairs become
    double points.  Randomised backtracking; returns None when ``max_nodes``
    is exhausted.  Realizability over the complex numbers is not checked.
    """
    d = len(profiles)
    need = [{k: v for k, v in p.items() if k >= 3 and v} for p in profiles]
    for i, p in enumerate(profiles):
        if sum((k - 1) * v for k, v in p.items()) != d - 1:
            raise ValueError(f"profile {p} of line {i} does not have degree sum {d - 1}")
    rng = random.Random(seed)
    covered = [[False] * d for _ in range(d)]
    blocks: list[tuple[int, ...]] = []
    nodes = 0

    def pick():
        # forward check: every pending (line, size) needs enough free partners
        best = None
        for i in range(d):
            for k, v in need[i].items():
                opts = sum(1 for j in range(d) if j != i and not covered[i][j] and need[j].get(k))
                key = (opts - v * (k - 1), -k, i)
                if best is None or key < best[0]:
                    best = (key, i, k)
        return best

    def place(block, k, sign):
        for a in block:
            need[a][k] = need[a].get(k, 0) - sign
            if not need[a][k]:
                del need[a][k]
        for a, b in itertools.combinations(block, 2):
            covered[a][b] = covered[b][a] = sign > 0

    def search() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            return False
        best = pick()
        if best is None:
            return True
        (slack, _, _), i, k = best
        if slack < 0:
            return False
        cands = [j for j in range(d) if j != i and not covered[i][j] and need[j].get(k)]
        rng.shuffle(cands)

        def grow(chosen, start):
            if len(chosen) == k - 1:
                block = tuple(sorted([i] + chosen))
                place(block, k, 1)
                blocks.append(block)
                if search():
                    return True
                blocks.pop()
                place(block, k, -1)
                return False
            for t in range(start, len(cands)):
                j = cands[t]
                if all(not covered[j][c] for c in chosen):
                    if grow(chosen + [j], t + 1):
                        return True
                if nodes > max_nodes:
                    return False
            return False

        return grow([], 0)

    if not search():
        return None
    return IncidenceStructure(d, tuple(blocks))


def lattice_from_solution(solution: dict, table: dict, seed: int = 0,
                          max_nodes: int = 200_000) -> IncidenceStructure | None:
    """Synthesize a lattice whose line types are counted by ``solution``."""
    profiles = []
    for tag, row in table.items():
        profiles += [dict(row)] * solution.get(tag, 0)
    random.Random(seed).shuffle(profiles)
    inc = synthesize_lattice(profiles, seed, max_nodes)
    return inc
