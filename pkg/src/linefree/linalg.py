"""Exact rank computations.

Two routes are provided.  :func:`rank_bareiss` is fraction-free elimination
over the integers and serves as the reference.  The fast route reduces modulo
word-sized primes (:func:`rank_mod`, :func:`modular_rank`); a modular rank is
always a lower bound for the rational rank, and :func:`lift_kernel` turns a
modular kernel into exact rational vectors (CRT plus rational reconstruction,
then verified by exact multiplication), which supplies the matching upper
bound when a certificate is wanted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

import numpy as np

from . import kernels
from .errors import CertificationFailed

log = logging.getLogger(__name__)

# largest primes below 2**31 that are 1 mod 3, so cube roots of unity exist
PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483563, 2147483497, 2147483353,
    2147483323, 2147483269, 2147483179, 2147483137, 2147483077, 2147483059,
)

_INT64_SAFE = 1 << 62


def as_int_matrix(rows) -> np.ndarray:
    """Integer matrix as int64 when the entries allow it, object dtype otherwise."""
    a = np.array(rows, dtype=object)
    if a.ndim != 2:
        a = a.reshape(len(rows), -1)
    if a.size == 0:
        return np.zeros(a.shape, dtype=np.int64)
    big = max(abs(int(v)) for v in a.flat)
    if big < _INT64_SAFE:
        return a.astype(np.int64)
    return a


def reduce_mod(a: np.ndarray, p: int) -> np.ndarray:
    if a.dtype == object:
        return np.ascontiguousarray(np.mod(a, p).astype(np.int64))
    return np.ascontiguousarray(np.mod(a, p), dtype=np.int64)


def rank_mod(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    m = reduce_mod(a, p)
    return len(kernels.rref_mod(m, p, False))


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m = reduce_mod(a, p)
    piv = kernels.rref_mod(m, p, True) if m.size else []
    return m[: len(piv)], list(piv)


@dataclass(frozen=True)
class ModularRank:
    rank: int
    per_prime: tuple[int, ...]

    @property
    def agreed(self) -> bool:
        return len(set(self.per_prime)) == 1


def modular_rank(a: np.ndarray, primes: Sequence[int] = PRIMES[:2]) -> ModularRank:
    """Maximum of the ranks modulo ``primes``; a certified lower bound."""
    ranks = tuple(rank_mod(a, p) for p in primes)
    if len(set(ranks)) > 1:
        log.info("modular ranks disagree: %s", ranks)
    return ModularRank(max(ranks), ranks)


def rank_bareiss(rows) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m or not m[0]:
        return 0
    # clear denominators row by row
    a = []
    for row in m:
        den = lcm(*(v.denominator for v in row))
        a.append([int(v * den) for v in row])
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][col]
        for r in range(rank + 1, nrows):
            f = a[r][col]
            row_r, row_p = a[r], a[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (pv * row_r[c] - f * row_p[c]) // prev
            row_r[col] = 0
        prev = pv
        rank += 1
    return rank


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Fraction ``n/d`` with ``n = a*d mod m`` and ``|n|, d <= sqrt(m/2)``."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _crt(r1: np.ndarray, m1: int, r2: np.ndarray, m2: int) -> np.ndarray:
    inv = pow(m1, -1, m2)
    out = np.empty(r1.shape, dtype=object)
    for idx, (a, b) in enumerate(zip(r1.flat, r2.flat)):
        a = int(a)
        t = ((int(b) - a) * inv) % m2
        out.flat[idx] = a + m1 * t
    return out


def _exact_times(a: np.ndarray, v: list[Fraction]) -> list:
    den = lcm(*(x.denominator for x in v)) if v else 1
    w = np.array([int(x * den) for x in v], dtype=object)
    return list(a.astype(object).dot(w))


def lift_kernel(a: np.ndarray, max_primes: int = len(PRIMES)) -> list[list[Fraction]]:
    """Exact basis of the right kernel of the integer matrix ``a``.

    The basis is the reduced one (identity on the free columns).  Raises
    :class:`CertificationFailed` when ``max_primes`` primes do not suffice.
    """
    nrows, ncols = a.shape
    best_key = None
    acc, modulus = None, 1
    for count, p in enumerate(PRIMES[:max_primes], start=1):
        r, piv = rref_mod(a, p)
        key = (-len(piv), piv)
        if best_key is None or key < best_key:
            best_key, acc, modulus = key, None, 1
        elif key != best_key:
            continue  # unlucky prime
        free = [c for c in range(ncols) if c not in set(piv)]
        block = r[:, free] if free else np.zeros((len(piv), 0), dtype=np.int64)
        acc = block.astype(object) if acc is None else _crt(acc, modulus, block, p)
        modulus *= p
        if count < 2 and max_primes > 1:
            continue
        basis = _try_reconstruct(acc, modulus, piv, free, ncols)
        if basis is None:
            continue
        if all(not any(_exact_times(a, v)) for v in basis):
            return basis
    raise CertificationFailed(f"kernel of a {nrows}x{ncols} matrix not lifted with {max_primes} primes")


def _try_reconstruct(acc, modulus, piv, free, ncols):
    basis = []
    for k, fc in enumerate(free):
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(piv):
            q = rational_reconstruct(-int(acc[i, k]), modulus)
            if q is None:
                return None
            v[pc] = q
        basis.append(v)
    return basis


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    certified: bool
    side: str  # "full", "right-kernel", "left-kernel" or "none"


def certified_rank(a: np.ndarray, max_primes: int = 6) -> RankCertificate:
    """Rank with an exact certificate when the smaller kernel can be lifted."""
    nrows, ncols = a.shape
    r = modular_rank(a).rank
    if r == min(nrows, ncols):
        return RankCertificate(r, True, "full")
    try:
        if ncols - r <= nrows - r:
            k = lift_kernel(a, max_primes)
            side = "right-kernel"
        else:
            k = lift_kernel(np.ascontiguousarray(a.T), max_primes)
            side = "left-kernel"
    except CertificationFailed:
        return RankCertificate(r, False, "none")
    dim = nrows if side == "left-kernel" else ncols
    if dim - len(k) != r:
        return RankCertificate(r, False, "none")
    return RankCertificate(r, True, side)
