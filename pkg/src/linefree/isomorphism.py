"""Isomorphism of line-arrangement lattices by backtracking over line bijections."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .arrangement import Arrangement, IncidenceStructure, line_profiles


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    mapping: tuple[int, ...] | None = None  # line i of the first -> mapping[i]

    def __bool__(self) -> bool:
        return self.isomorphic


def _signatures(inc: IncidenceStructure) -> list[tuple]:
    return [(p.n_H, p.counts) for p in line_profiles(inc)]


def lattice_isomorphic(s1, s2) -> IsoResult:
    """Decide isomorphism; the witness is the lexicographically least bijection."""
    a = s1.incidence if isinstance(s1, Arrangement) else s1
    b = s2.incidence if isinstance(s2, Arrangement) else s2
    if a.d != b.d or a.multiplicity_vector() != b.multiplicity_vector():
        return IsoResult(False)
    sig_a, sig_b = _signatures(a), _signatures(b)
    if Counter(sig_a) != Counter(sig_b):
        return IsoResult(False)
    d = a.d
    cands = [[j for j in range(d) if sig_b[j] == sig_a[i]] for i in range(d)]
    pa, pb = a.pair_point, b.pair_point
    size_a = [len(p) for p in a.points]
    size_b = [len(p) for p in b.points]
    phi = [-1] * d
    used = [False] * d
    pmap: dict[int, int] = {}
    pinv: dict[int, int] = {}

    def extend(i: int) -> bool:
        if i == d:
            return True
        for j in cands[i]:
            if used[j]:
                continue
            added = []
            ok = True
            for k in range(i):
                p, q = pa[k][i], pb[phi[k]][j]
                if size_a[p] != size_b[q]:
                    ok = False
                    break
                if p in pmap:
                    if pmap[p] != q:
                        ok = False
                        break
                elif q in pinv:
                    ok = False
                    break
                else:
                    pmap[p], pinv[q] = q, p
                    added.append(p)
            if ok:
                phi[i], used[j] = j, True
                if extend(i + 1):
                    return True
                phi[i], used[j] = -1, False
            for p in added:
                del pinv[pmap.pop(p)]
        return False

    if extend(0):
        return IsoResult(True, tuple(phi))
    return IsoResult(False)


def apply_mapping(inc: IncidenceStructure, mapping) -> IncidenceStructure:
    """Relabel lines: line i becomes ``mapping[i]``."""
    return IncidenceStructure(inc.d, tuple(tuple(mapping[i] for i in p) for p in inc.rich))
