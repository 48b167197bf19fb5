from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from linefree import _fallback, kernels
from linefree.linalg import PRIMES

compiled = pytest.importorskip("linefree._kernels")

P = PRIMES[0]
small_p = st.sampled_from([7, 13, 31, P])


@st.composite
def matrices(draw, max_side=12):
    r = draw(st.integers(1, max_side))
    c = draw(st.integers(1, max_side))
    p = draw(small_p)
    a = draw(hnp.arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return a, p


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@given(matrices(), st.booleans())
def test_rref_agrees(case, full):
    a, p = case
    x, y = a.copy(), a.copy()
    assert compiled.rref_mod(x, p, full) == _fallback.rref_mod(y, p, full)
    assert np.array_equal(x, y)


@given(matrices())
def test_matmul_agrees(case):
    a, p = case
    b = (a.T * 3 + 1) % p
    b = np.ascontiguousarray(b)
    expect = (a.astype(object) @ b.astype(object)) % p
    assert np.array_equal(compiled.matmul_mod(a, b, p), expect.astype(np.int64))
    assert np.array_equal(_fallback.matmul_mod(a, b, p), expect.astype(np.int64))


def test_matmul_no_overflow_near_2_31():
    a = np.full((3, 40), P - 1, dtype=np.int64)
    b = np.full((40, 2), P - 1, dtype=np.int64)
    assert np.all(compiled.matmul_mod(a, b, P) == 40 % P)


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 10_000))
def test_enumerate_box_agrees(n, m, seed):
    rng = np.random.default_rng(seed)
    coef = np.ascontiguousarray(rng.integers(-3, 4, size=(m, n)).astype(np.int64))
    ub = np.ascontiguousarray(rng.integers(0, 5, size=n).astype(np.int64))
    x = np.array([rng.integers(0, u + 1) for u in ub], dtype=np.int64)
    rhs = np.ascontiguousarray(coef @ x)
    empty = np.zeros(0, dtype=np.int64)
    a = compiled.enumerate_box(coef, rhs, ub, empty, -1)
    b = _fallback.enumerate_box(coef, rhs, ub, empty, -1)
    key = lambda arr: sorted(map(tuple, arr.tolist()))  # noqa: E731
    assert key(a) == key(b)
    assert tuple(x.tolist()) in key(a)
