# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: modular row reduction and bounded integer enumeration.

Every function here has a pure-Python twin in ``_fallback.py`` with the same
signature and the same results; ``kernels.py`` picks one at import time.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, realloc, free

ctypedef long long i64

cnp.import_array()


cdef inline i64 _inv_mod(i64 a, i64 p) nogil:
    cdef i64 t = 0, nt = 1, r = p, nr = a % p, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def rref_mod(i64[:, ::1] a, i64 p, bint full=True):
    """Row-reduce ``a`` in place modulo ``p`` and return the pivot columns.

    Entries must already lie in ``[0, p)`` and ``p < 2**31``.  With
    ``full=False`` only the rows below each pivot are cleared, which is
    enough for the rank.
    """
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t rank = 0, col, r, i, j
    cdef i64 inv, f, nf, tmp
    pivots = []
    with nogil:
        for col in range(ncols):
            if rank == nrows:
                break
            r = rank
            while r < nrows and a[r, col] == 0:
                r += 1
            if r == nrows:
                continue
            if r != rank:
                for j in range(col, ncols):
                    tmp = a[r, j]
                    a[r, j] = a[rank, j]
                    a[rank, j] = tmp
            inv = _inv_mod(a[rank, col], p)
            if inv != 1:
                for j in range(col, ncols):
                    a[rank, j] = (a[rank, j] * inv) % p
            for i in range(0 if full else rank + 1, nrows):
                if i == rank:
                    continue
                f = a[i, col]
                if f == 0:
                    continue
                nf = p - f
                for j in range(col, ncols):
                    if a[rank, j] != 0:
                        a[i, j] = (a[i, j] + nf * a[rank, j]) % p
            with gil:
                pivots.append(col)
            rank += 1
    return pivots


def matmul_mod(i64[:, ::1] a, i64[:, ::1] b, i64 p):
    """Return ``a @ b mod p`` for entries in ``[0, p)``, ``p < 2**31``."""
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], m = b.shape[1]
    cdef Py_ssize_t i, j, t
    cdef i64 s, x
    out = np.zeros((n, m), dtype=np.int64)
    cdef i64[:, ::1] o = out
    with nogil:
        for i in range(n):
            for t in range(k):
                x = a[i, t]
                if x == 0:
                    continue
                for j in range(m):
                    o[i, j] = (o[i, j] + x * b[t, j]) % p
    return out


cdef struct _Search:
    Py_ssize_t m, n
    i64* coef      # m x n, row-major
    i64* rhs       # m
    i64* ub        # n
    i64* smin      # m x (n + 1): min contribution of columns >= j
    i64* smax
    i64* partial   # m
    i64* val       # n
    i64* out
    Py_ssize_t out_len, out_cap
    Py_ssize_t limit
    int overflow


cdef inline i64 _floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a // b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline i64 _ceildiv(i64 a, i64 b) nogil:
    return -_floordiv(-a, b)


cdef int _emit(_Search* s) nogil:
    cdef Py_ssize_t j
    cdef i64* grown
    if s.limit >= 0 and s.out_len >= s.limit:
        s.overflow = 1
        return 1
    if s.out_len == s.out_cap:
        s.out_cap = s.out_cap * 2 + 16
        grown = <i64*> realloc(s.out, s.out_cap * s.n * sizeof(i64))
        if grown == NULL:
            s.overflow = 2
            return 1
        s.out = grown
    for j in range(s.n):
        s.out[s.out_len * s.n + j] = s.val[j]
    s.out_len += 1
    return 0


cdef int _dfs(_Search* s, Py_ssize_t j) nogil:
    cdef Py_ssize_t r
    cdef i64 lo, hi, c, rest, a, b, x
    cdef Py_ssize_t m = s.m, n = s.n
    if j == n:
        for r in range(m):
            if s.partial[r] != s.rhs[r]:
                return 0
        return _emit(s)
    lo = 0
    hi = s.ub[j]
    for r in range(m):
        c = s.coef[r * n + j]
        if c == 0:
            continue
        rest = s.rhs[r] - s.partial[r]
        # need rest - c*x in [smin, smax] of the columns after j
        a = rest - s.smax[r * (n + 1) + j + 1]
        b = rest - s.smin[r * (n + 1) + j + 1]
        if c > 0:
            a = _ceildiv(a, c)
            b = _floordiv(b, c)
        else:
            x = _ceildiv(b, c)
            b = _floordiv(a, c)
            a = x
        if a > lo:
            lo = a
        if b < hi:
            hi = b
        if lo > hi:
            return 0
    x = lo
    while x <= hi:
        s.val[j] = x
        for r in range(m):
            s.partial[r] += s.coef[r * n + j] * x
        if _dfs(s, j + 1):
            for r in range(m):
                s.partial[r] -= s.coef[r * n + j] * x
            return 1
        for r in range(m):
            s.partial[r] -= s.coef[r * n + j] * x
        x += 1
    return 0


def enumerate_box(i64[:, ::1] coef, i64[::1] rhs, i64[::1] ub,
                  i64[::1] prefix, Py_ssize_t limit=-1):
    """All nonnegative integer ``x <= ub`` with ``coef @ x == rhs``.

    ``prefix`` fixes the leading coordinates.  Solutions come out in
    lexicographic order as an ``(k, n)`` int64 array.  ``limit`` caps the
    count (``-1`` for none); exceeding it raises ``OverflowError``.
    """
    cdef _Search s
    cdef Py_ssize_t m = coef.shape[0], n = coef.shape[1]
    cdef Py_ssize_t r, j, np_ = prefix.shape[0]
    cdef i64 c, lo_c, hi_c
    cdef int feasible = 1
    s.m = m
    s.n = n
    s.limit = limit
    s.overflow = 0
    s.out_len = 0
    s.out_cap = 0
    s.out = NULL
    s.coef = <i64*> malloc((m * n + 1) * sizeof(i64))
    s.rhs = <i64*> malloc((m + 1) * sizeof(i64))
    s.ub = <i64*> malloc((n + 1) * sizeof(i64))
    s.smin = <i64*> malloc((m * (n + 1) + 1) * sizeof(i64))
    s.smax = <i64*> malloc((m * (n + 1) + 1) * sizeof(i64))
    s.partial = <i64*> malloc((m + 1) * sizeof(i64))
    s.val = <i64*> malloc((n + 1) * sizeof(i64))
    try:
        for r in range(m):
            s.rhs[r] = rhs[r]
            s.partial[r] = 0
            for j in range(n):
                s.coef[r * n + j] = coef[r, j]
            s.smin[r * (n + 1) + n] = 0
            s.smax[r * (n + 1) + n] = 0
            for j in range(n - 1, -1, -1):
                c = coef[r, j] * ub[j]
                lo_c = c if c < 0 else 0
                hi_c = c if c > 0 else 0
                s.smin[r * (n + 1) + j] = s.smin[r * (n + 1) + j + 1] + lo_c
                s.smax[r * (n + 1) + j] = s.smax[r * (n + 1) + j + 1] + hi_c
        for j in range(n):
            s.ub[j] = ub[j]
        for j in range(np_):
            if prefix[j] < 0 or prefix[j] > ub[j]:
                feasible = 0
            s.val[j] = prefix[j]
            for r in range(m):
                s.partial[r] += s.coef[r * n + j] * prefix[j]
        if feasible:
            with nogil:
                _dfs(&s, np_)
        if s.overflow == 1:
            raise OverflowError("solution limit exceeded")
        if s.overflow == 2:
            raise MemoryError()
        out = np.empty((s.out_len, n), dtype=np.int64)
        for r in range(s.out_len):
            for j in range(n):
                out[r, j] = s.out[r * n + j]
        return out
    finally:
        free(s.coef)
        free(s.rhs)
        free(s.ub)
        free(s.smin)
        free(s.smax)
        free(s.partial)
        free(s.val)
        if s.out != NULL:
            free(s.out)
