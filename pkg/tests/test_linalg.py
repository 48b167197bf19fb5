from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from linefree.linalg import (
    PRIMES,
    certified_rank,
    lift_kernel,
    modular_rank,
    rank_bareiss,
    rational_reconstruct,
)

ints = st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5), min_size=1, max_size=7)


def _low_rank(seed, r, c, k):
    rng = np.random.default_rng(seed)
    return rng.integers(-5, 6, size=(r, k)) @ rng.integers(-5, 6, size=(k, c))


@given(ints)
def test_modular_rank_matches_bareiss(rows):
    a = np.array(rows, dtype=np.int64)
    assert modular_rank(a).rank == rank_bareiss(rows)


@settings(max_examples=30)
@given(st.integers(0, 1000), st.integers(1, 4))
def test_low_rank_products(seed, k):
    a = _low_rank(seed, 8, 9, k)
    r = rank_bareiss(a.tolist())
    assert r <= k
    assert modular_rank(a).rank == r
    cert = certified_rank(a)
    assert cert.rank == r and cert.certified


def test_modular_rank_is_lower_bound_when_prime_divides():
    p = PRIMES[0]
    a = np.array([[1, 0], [0, p]], dtype=np.int64)
    mr = modular_rank(a, primes=[p])
    assert mr.rank == 1 <= rank_bareiss(a.tolist()) == 2


@given(st.integers(-1000, 1000), st.integers(1, 1000))
def test_rational_reconstruct(n, d):
    m = PRIMES[0] * PRIMES[1]
    x = Fraction(n, d)
    if x.denominator % PRIMES[0] == 0:
        return
    residue = x.numerator * pow(x.denominator, -1, m) % m
    assert rational_reconstruct(residue, m) == x


@settings(max_examples=30)
@given(st.integers(0, 1000))
def test_lifted_kernel_is_exact(seed):
    a = _low_rank(seed, 5, 7, 3)
    basis = lift_kernel(a)
    r = rank_bareiss(a.tolist())
    assert len(basis) == 7 - r
    for v in basis:
        assert all(sum(Fraction(int(x)) * y for x, y in zip(row, v)) == 0 for row in a)
