"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``."""

from __future__ import annotations

import numpy as np


def rref_mod(a: np.ndarray, p: int, full: bool = True) -> list[int]:
    nrows, ncols = a.shape
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(a[rank:, col])
        if nz.size == 0:
            continue
        r = rank + int(nz[0])
        if r != rank:
            a[[rank, r]] = a[[r, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        if inv != 1:
            a[rank, col:] = (a[rank, col:] * inv) % p
        start = 0 if full else rank + 1
        factors = a[start:, col].copy()
        if full:
            factors[rank] = 0
        rows = np.flatnonzero(factors)
        if rows.size:
            prow = a[rank, col:]
            a[start + rows, col:] = (a[start + rows, col:] + (p - factors[rows])[:, None] * prow) % p
        pivots.append(col)
        rank += 1
    return pivots


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(a.shape[1]):
        col = a[:, t]
        if not col.any():
            continue
        out = (out + col[:, None] * b[t][None, :]) % p
    return out


def enumerate_box(coef: np.ndarray, rhs: np.ndarray, ub: np.ndarray,
                  prefix: np.ndarray, limit: int = -1) -> np.ndarray:
    m, n = coef.shape
    coef_l = [[int(v) for v in row] for row in coef]
    rhs_l = [int(v) for v in rhs]
    ub_l = [int(v) for v in ub]
    smin = [[0] * (n + 1) for _ in range(m)]
    smax = [[0] * (n + 1) for _ in range(m)]
    for r in range(m):
        for j in range(n - 1, -1, -1):
            c = coef_l[r][j] * ub_l[j]
            smin[r][j] = smin[r][j + 1] + min(c, 0)
            smax[r][j] = smax[r][j + 1] + max(c, 0)
    cols = [[r for r in range(m) if coef_l[r][j]] for j in range(n)]
    partial = [0] * m
    val = [0] * n
    out: list[list[int]] = []

    for j, v in enumerate(int(x) for x in prefix):
        if v < 0 or v > ub_l[j]:
            return np.empty((0, n), dtype=np.int64)
        val[j] = v
        for r in cols[j]:
            partial[r] += coef_l[r][j] * v

    def dfs(j: int) -> None:
        if j == n:
            if partial == rhs_l:
                if 0 <= limit <= len(out):
                    raise OverflowError("solution limit exceeded")
                out.append(val.copy())
            return
        lo, hi = 0, ub_l[j]
        for r in cols[j]:
            c = coef_l[r][j]
            rest = rhs_l[r] - partial[r]
            a = rest - smax[r][j + 1]
            b = rest - smin[r][j + 1]
            if c > 0:
                a, b = -((-a) // c), b // c
            else:
                a, b = -((-b) // c), a // c
            lo = max(lo, a)
            hi = min(hi, b)
            if lo > hi:
                return
        rows = cols[j]
        for x in range(lo, hi + 1):
            val[j] = x
            for r in rows:
                partial[r] += coef_l[r][j] * x
            dfs(j + 1)
            for r in rows:
                partial[r] -= coef_l[r][j] * x

    dfs(len(prefix))
    return np.array(out, dtype=np.int64).reshape(len(out), n)
