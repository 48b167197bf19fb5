"""Graded linear algebra on the Jacobian ideal of an arrangement polynomial.

The basic object is the degree-m Jacobian map

    (a, b, c) in S_m^3  ->  a f_x + b f_y + c f_z  in S_{m+d-1},

whose kernel is AR(f)_m and whose image is (J_f)_{m+d-1}.  Matrices are built
directly modulo word-sized primes from the gradient coefficients; every
modular rank is a lower bound for the rational rank, and we take the maximum
over several primes.  The minimal degree of a relation is confirmed over Q by
lifting a modular kernel vector and checking it exactly.

N(f) = Ĵ/J is computed in two ways.  ``method="local"`` uses that Ĵ is the
intersection of the primary components of J at the singular points, so
g lies in Ĵ exactly when its germ lies in the local ideal (f_x, f_y, f_z) at
every multiple point.  At an ordinary m-fold point the local quotient has
dimension (m-1)^2 and is killed by the (2m-3)-rd power of the maximal ideal,
so truncated local expansions decide membership.  ``method="power"`` is the
definition: g in Ĵ when x^N g, y^N g, z^N g all lie in J.  It needs one
elimination in degree 3d-6+N and is only practical for small d.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from . import kernels
from .arrangement import Arrangement
from .errors import (
    CertificationFailed,
    InternalInconsistency,
    InvalidInput,
    NoRelationFound,
    NotStabilized,
)
from .invariants import ExponentPair, Kind, tjurina_target
from .linalg import PRIMES, lift_kernel, rank_bareiss
from .numbers import to_mod
from .polynomial import HomogPoly, dim_s, jacobian, monomials

log = logging.getLogger(__name__)

DEFAULT_PRIMES = PRIMES[:2]


@lru_cache(maxsize=None)
def _mono_array(deg: int) -> np.ndarray:
    if deg < 0:
        return np.zeros((0, 3), dtype=np.int64)
    return np.array(monomials(deg), dtype=np.int64).reshape(-1, 3)


def grlex_index(e: np.ndarray) -> np.ndarray:
    """Position of each exponent row of ``e`` within :func:`monomials` of its degree."""
    deg = e.sum(axis=1)
    r = deg - e[:, 0]
    return r * (r + 1) // 2 + (r - e[:, 1])


def _mono_name(e) -> str:
    s = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip("xyz", e) if k)
    return s or "1"


@dataclass(frozen=True)
class SyzygyReport:
    d: int
    ar_dims: dict[int, int]
    mdr: int
    mdr_certified: bool
    tau_alg: int
    hilbert: dict[int, int]
    nf_dims: dict[int, int]
    nf_method: str = "local"

    @property
    def nf_max(self) -> int:
        return max(self.nf_dims.values(), default=0)


@dataclass(frozen=True)
class FreenessVerdict:
    kind: Kind
    exponents: ExponentPair | None
    evidence: dict = field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        if self.exponents is None:
            return str(self.kind)
        return f"{self.kind} {self.exponents}"


class JacobianEngine:
    """Syzygy computations for one arrangement polynomial.

    Pass an :class:`Arrangement` to enable the local route for N(f); a bare
    :class:`HomogPoly` supports everything else.  With ``exact=True`` the ranks
    of Jacobian maps are computed by fraction-free elimination instead (slow,
    meant as a reference for small d).
    """

    def __init__(self, obj, primes: Sequence[int] = DEFAULT_PRIMES, exact: bool = False):
        if isinstance(obj, Arrangement):
            self.arrangement: Arrangement | None = obj
            f = obj.polynomial()
        elif isinstance(obj, HomogPoly):
            self.arrangement = None
            f = obj
        else:
            raise TypeError("expected an Arrangement or a HomogPoly")
        if f.is_zero():
            raise InvalidInput("zero polynomial")
        self.f = f
        self.d = f.degree
        self.grads = jacobian(f)
        self.primes = tuple(primes)
        self.exact = exact
        self._rank_cache: dict[int, int] = {}
        self._grad_mod_cache: dict[int, list] = {}
        self._local_cache: dict[int, list | None] = {}

    # -- matrices ---------------------------------------------------------

    def _grad_mod(self, p: int):
        if p not in self._grad_mod_cache:
            out = []
            for g in self.grads:
                exps = np.array([e for e, _ in g.terms], dtype=np.int64).reshape(-1, 3)
                vals = np.array([to_mod(c, p) for _, c in g.terms], dtype=np.int64)
                out.append((exps, vals))
            self._grad_mod_cache[p] = out
        return self._grad_mod_cache[p]

    def _fill(self, m: int, grads, dtype) -> np.ndarray:
        mus = _mono_array(m)
        n = len(mus)
        mat = np.zeros((dim_s(m + self.d - 1), 3 * n), dtype=dtype)
        cols = np.arange(n)
        for b, (exps, vals) in enumerate(grads):
            for e, c in zip(exps, vals):
                rows = grlex_index(mus + e)
                mat[rows, b * n + cols] = c
        return mat

    def jacobian_matrix_mod(self, m: int, p: int) -> np.ndarray:
        """Degree-m Jacobian map modulo ``p``; rows S_{m+d-1}, columns (a|b|c) x S_m."""
        return self._fill(m, self._grad_mod(p), np.int64)

    def jacobian_matrix(self, m: int) -> np.ndarray:
        """The same map with exact entries (object dtype), from the integer-scaled f."""
        g = jacobian(self.f.integer_scaled())
        grads = [
            (np.array([e for e, _ in h.terms], dtype=np.int64).reshape(-1, 3), [c for _, c in h.terms])
            for h in g
        ]
        return self._fill(m, grads, object)

    def dump_matrix_csv(self, m: int, out=None) -> str:
        """CSV of the exact degree-m Jacobian map (entries from f as given)."""
        buf = io.StringIO()
        w = csv.writer(buf)
        buf.write(f"# monomial order: graded lex (x > y > z); rows S_{m + self.d - 1}, "
                  f"columns (a|b|c) x S_{m}\n")
        mus = monomials(m)
        w.writerow(["row"] + [f"{v}:{_mono_name(mu)}" for v in "abc" for mu in mus])
        grads = [
            (np.array([e for e, _ in h.terms], dtype=np.int64).reshape(-1, 3), [c for _, c in h.terms])
            for h in self.grads
        ]
        mat = self._fill(m, grads, object)
        for e, row in zip(monomials(m + self.d - 1), mat):
            w.writerow([_mono_name(e)] + [str(Fraction(v)) if v else "0" for v in row])
        text = buf.getvalue()
        if out is not None:
            out.write(text)
        return text

    # -- ranks ------------------------------------------------------------

    def _rank_mod(self, mat: np.ndarray, p: int) -> int:
        if mat.size == 0:
            return 0
        return len(kernels.rref_mod(np.ascontiguousarray(mat), p, False))

    def jacobian_rank(self, m: int) -> int:
        if m < 0:
            return 0
        if m not in self._rank_cache:
            if self.exact:
                r = rank_bareiss(self.jacobian_matrix(m).tolist())
            else:
                ranks = [self._rank_mod(self.jacobian_matrix_mod(m, p), p) for p in self.primes]
                if len(set(ranks)) > 1:
                    log.info("degree %d: modular ranks disagree %s", m, ranks)
                r = max(ranks)
            self._rank_cache[m] = r
        return self._rank_cache[m]

    def ar_dimension(self, m: int) -> int:
        if m < 0:
            raise ValueError("m must be nonnegative")
        return 3 * dim_s(m) - self.jacobian_rank(m)

    def mdr(self) -> int:
        for m in range(self.d):
            if self.ar_dimension(m) > 0:
                return m
        raise NoRelationFound(f"no Jacobian relation of degree <= {self.d - 1}")

    def certify_mdr(self, max_primes: int = 6) -> bool:
        """Confirm AR(f)_mdr != 0 over Q by an exact relation.

        Lower degrees need no lifting: full column rank modulo a prime implies
        full column rank over Q.
        """
        m = self.mdr()
        if not self.f.integer_scaled().terms or any(
            not isinstance(c, (int, Fraction)) for _, c in self.f.terms
        ):
            return False
        try:
            basis = lift_kernel(self.jacobian_matrix(m), max_primes)
        except CertificationFailed:
            return False
        return len(basis) >= 1

    def relation(self, m: int | None = None, max_primes: int = 6) -> tuple[HomogPoly, HomogPoly, HomogPoly]:
        """An exact Jacobian relation (a, b, c) of degree ``m`` (default: mdr)."""
        m = self.mdr() if m is None else m
        basis = lift_kernel(self.jacobian_matrix(m), max_primes)
        if not basis:
            raise NoRelationFound(f"AR(f)_{m} = 0")
        v = basis[0]
        mus = monomials(m)
        n = len(mus)
        return tuple(
            HomogPoly.from_dict({mus[i]: v[b * n + i] for i in range(n) if v[b * n + i]}, m)
            for b in range(3)
        )

    def jf_hilbert(self, k: int) -> int:
        if k < 0:
            raise ValueError("k must be nonnegative")
        return dim_s(k) - self.jacobian_rank(k - self.d + 1)

    def tau_algebraic(self) -> int:
        d = self.d
        a, b = self.jf_hilbert(3 * d - 5), self.jf_hilbert(3 * d - 4)
        if a != b:
            raise NotStabilized(f"Hilbert function {a} at {3 * d - 5} but {b} at {3 * d - 4}")
        return a

    # -- N(f) -------------------------------------------------------------

    def nf_dims(self, method: str = "local", N: int | None = None) -> dict[int, int]:
        """``k -> dim N(f)_k`` for ``0 <= k <= 3d-6``."""
        top = 3 * self.d - 6
        if top < 0:
            return {}
        if method == "local":
            if self.arrangement is None:
                raise ValueError("the local method needs the arrangement (its points)")
            ranks = self._local_ranks(top)
        elif method == "power":
            ranks = self._power_ranks(top, 3 * self.d if N is None else N)
        else:
            raise ValueError(f"unknown method {method!r}")
        out = {}
        for k in range(top + 1):
            v = self.jf_hilbert(k) - ranks[k]
            if v < 0:
                raise InternalInconsistency(f"negative dim N(f)_{k} = {v}")
            out[k] = v
        return out

    def _local_ranks(self, top: int) -> list[int]:
        best = [0] * (top + 1)
        used = 0
        for p in self.primes + tuple(q for q in PRIMES if q not in self.primes):
            data = self._local_data(p)
            if data is None:
                continue
            for k in range(top + 1):
                blocks = [self._local_eval(k, p, pt) for pt in data]
                mat = np.ascontiguousarray(np.hstack(blocks)) if blocks else np.zeros((dim_s(k), 0), np.int64)
                best[k] = max(best[k], self._rank_mod(mat, p))
            used += 1
            if used == len(self.primes):
                return best
        if used == 0:
            raise InternalInconsistency("local Jacobian quotients failed at every prime")
        return best

    def _local_data(self, p: int):
        """Per point: chart data and the RREF of the truncated local Jacobian ideal."""
        if p in self._local_cache:
            return self._local_cache[p]
        grads = self._grad_mod(p)
        data = []
        try:
            for pt in self.arrangement.points:
                m = pt.m
                s = max(1, 2 * m - 3)
                chart = next(i for i, c in enumerate(pt.coords) if c != 0)
                others = [i for i in range(3) if i != chart]
                vals = [to_mod(pt.coords[i], p) for i in others]
                loc = [(a, t - a) for t in range(s) for a in range(t, -1, -1)]
                info = {"s": s, "others": others, "vals": vals, "loc": loc,
                        "pos": {ab: i for i, ab in enumerate(loc)}}
                gen_rows = []
                for exps, cvals in grads:
                    g = np.zeros(len(loc), dtype=np.int64)
                    if len(exps):
                        ev = _expand(exps, info, p)
                        g = np.array([int(x) for x in (cvals.astype(object) @ ev.astype(object))], dtype=object)
                        g = np.array([int(x) % p for x in g], dtype=np.int64)
                    for (a, b) in loc:
                        row = np.zeros(len(loc), dtype=np.int64)
                        for j, (a2, b2) in enumerate(loc):
                            if g[j] and a + a2 + b + b2 < s:
                                row[info["pos"][(a + a2, b + b2)]] = g[j]
                        gen_rows.append(row)
                r = np.ascontiguousarray(np.array(gen_rows, dtype=np.int64))
                piv = list(kernels.rref_mod(r, p, True))
                if len(loc) - len(piv) != (m - 1) ** 2:
                    log.info("prime %d: local quotient at %s has dim %d", p, pt.coords, len(loc) - len(piv))
                    self._local_cache[p] = None
                    return None
                info["R"] = np.ascontiguousarray(r[: len(piv)])
                info["piv"] = piv
                info["free"] = [j for j in range(len(loc)) if j not in set(piv)]
                data.append(info)
        except ZeroDivisionError:
            self._local_cache[p] = None
            return None
        self._local_cache[p] = data
        return data

    def _local_eval(self, k: int, p: int, info) -> np.ndarray:
        w = _expand(_mono_array(k), info, p)
        piv, r, free = info["piv"], info["R"], info["free"]
        if piv:
            corr = kernels.matmul_mod(np.ascontiguousarray(w[:, piv]), r, p)
            w = (w - corr) % p
        return np.ascontiguousarray(w[:, free])

    def _power_ranks(self, top: int, n0: int) -> list[int]:
        big = top + n0
        best = [0] * (top + 1)
        for p in self.primes:
            gens = np.ascontiguousarray(self.jacobian_matrix_mod(big - self.d + 1, p).T)
            piv = list(kernels.rref_mod(gens, p, True))
            ncols = dim_s(big)
            pivset = set(piv)
            free = [j for j in range(ncols) if j not in pivset]
            free_pos = {j: i for i, j in enumerate(free)}
            row_of = {j: i for i, j in enumerate(piv)}
            rfree = gens[: len(piv)][:, free] if free else np.zeros((len(piv), 0), np.int64)
            for k in range(top + 1):
                nk = big - k
                mus = _mono_array(k)
                blocks = []
                for v in range(3):
                    shift = np.zeros(3, dtype=np.int64)
                    shift[v] = nk
                    idx = grlex_index(mus + shift)
                    blk = np.zeros((len(mus), len(free)), dtype=np.int64)
                    for i, j in enumerate(idx):
                        j = int(j)
                        if j in row_of:
                            blk[i] = (-rfree[row_of[j]]) % p
                        else:
                            blk[i, free_pos[j]] = 1
                    blocks.append(blk)
                mat = np.ascontiguousarray(np.hstack(blocks))
                best[k] = max(best[k], self._rank_mod(mat, p))
        return best

    # -- summaries --------------------------------------------------------

    def report(self, nf_method: str | None = None) -> SyzygyReport:
        d = self.d
        method = nf_method or ("local" if self.arrangement is not None else "power")
        ar = {m: self.ar_dimension(m) for m in range(d)}
        mdr = self.mdr()
        return SyzygyReport(
            d=d,
            ar_dims=ar,
            mdr=mdr,
            mdr_certified=self.certify_mdr(),
            tau_alg=self.tau_algebraic(),
            hilbert={k: self.jf_hilbert(k) for k in range(max(0, 3 * d - 4) + 1)},
            nf_dims=self.nf_dims(method),
            nf_method=method,
        )

    def verdict(self, mv=None, report: SyzygyReport | None = None) -> FreenessVerdict:
        rep = report or self.report()
        d = self.d
        if mv is not None and mv.d != d:
            raise InvalidInput(f"multiplicity vector is for d={mv.d}, polynomial has degree {d}")
        profile = tuple(rep.nf_dims[k] for k in sorted(rep.nf_dims))
        nf_max = max(profile, default=0)
        mdr = rep.mdr
        if nf_max == 0:
            kind, exps = Kind.FREE, ExponentPair(mdr, d - 1 - mdr, Kind.FREE)
        elif nf_max == 1:
            kind, exps = Kind.NEARLY_FREE, ExponentPair(mdr, d - mdr, Kind.NEARLY_FREE)
        else:
            kind, exps = Kind.NEITHER, None
        tau = rep.tau_alg
        targets = {
            "free": tjurina_target(d, mdr, Kind.FREE) if mdr <= d else None,
            "nearly_free": tjurina_target(d, mdr, Kind.NEARLY_FREE) if mdr <= d else None,
        }
        hit = None
        if kind is Kind.FREE:
            hit = tau == targets["free"]
        elif kind is Kind.NEARLY_FREE:
            hit = tau == targets["nearly_free"]
        else:
            hit = tau in targets.values()
        evidence = {
            "mdr": mdr,
            "mdr_certified": rep.mdr_certified,
            "tau_alg": tau,
            "tau_targets": targets,
            "tau_target_hit": hit,
            "nf_profile": profile,
            "nf_method": rep.nf_method,
        }
        if mv is not None:
            from .invariants import tjurina_combinatorial

            evidence["tau_comb"] = tjurina_combinatorial(mv)
            if evidence["tau_comb"] != tau:
                raise InternalInconsistency(
                    f"algebraic Tjurina number {tau} differs from combinatorial {evidence['tau_comb']}"
                )
        if kind is not Kind.NEITHER and not hit:
            raise InternalInconsistency(f"{kind} with mdr {mdr} but tau {tau} misses its target")
        return FreenessVerdict(kind, exps, evidence)


def _expand(exps: np.ndarray, info, p: int) -> np.ndarray:
    """Local expansions of monomials around a point, truncated below order ``s``.

    Row r holds the coefficients of the dehomogenised monomial exps[r] in the
    basis u^a v^b (a + b < s) of shifts of the two non-chart coordinates.
    """
    (i1, i2), (c1, c2), loc = info["others"], info["vals"], info["loc"]
    e1, e2 = exps[:, i1], exps[:, i2]
    top = int(exps.max()) if exps.size else 0
    binom = _binom_mod(top, p)
    pw1, pw2 = _powers(c1, top, p), _powers(c2, top, p)
    out = np.zeros((len(exps), len(loc)), dtype=np.int64)
    for j, (a, b) in enumerate(loc):
        ok = (e1 >= a) & (e2 >= b)
        if not ok.any():
            continue
        r = np.nonzero(ok)[0]
        t1 = binom[e1[r], a] * pw1[e1[r] - a] % p
        t2 = binom[e2[r], b] * pw2[e2[r] - b] % p
        out[r, j] = t1 * t2 % p
    return out


@lru_cache(maxsize=64)
def _binom_mod(n: int, p: int) -> np.ndarray:
    t = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(n + 1):
        for j in range(i + 1):
            t[i, j] = comb(i, j) % p
    return t


def _powers(c: int, n: int, p: int) -> np.ndarray:
    out = np.empty(n + 1, dtype=np.int64)
    v = 1
    for i in range(n + 1):
        out[i] = v
        v = v * c % p
    return out


# convenience wrappers mirroring the engine methods


def _engine(obj) -> JacobianEngine:
    return obj if isinstance(obj, JacobianEngine) else JacobianEngine(obj)


def ar_dimension(f, m: int) -> int:
    return _engine(f).ar_dimension(m)


def mdr(f) -> int:
    return _engine(f).mdr()


def jf_hilbert(f, k: int) -> int:
    return _engine(f).jf_hilbert(k)


def tau_algebraic(f) -> int:
    return _engine(f).tau_algebraic()


def nf_dims(f, method: str | None = None, N: int | None = None) -> dict[int, int]:
    e = _engine(f)
    if method is None:
        method = "local" if e.arrangement is not None else "power"
    return e.nf_dims(method, N)


def verdict(f, mv=None) -> FreenessVerdict:
    e = _engine(f)
    if mv is None and e.arrangement is not None:
        mv = e.arrangement.incidence.multiplicity_vector()
    return e.verdict(mv)
