from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linefree import corpus
from linefree.arrangement import Arrangement
from linefree.errors import IdenticalLines
from linefree.invariants import (
    CharPoly,
    ExponentPair,
    Kind,
    char_poly,
    char_poly_mobius,
    exponent_candidates,
    exponents_from_chi,
    hirzebruch_check,
    multiplicity_bounds_check,
    tjurina_combinatorial,
    tjurina_target,
)


@pytest.mark.parametrize("name", list(corpus.full_corpus()))
def test_char_poly_matches_mobius(full_corpus, name):
    inc = full_corpus[name].incidence
    assert char_poly(inc) == char_poly_mobius(inc)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_mobius_small(d):
    inc = corpus.pencil(d).incidence if d >= 2 else Arrangement.from_coeffs([(1, 0, 0)]).incidence
    assert char_poly(inc) == char_poly_mobius(inc)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=2, max_size=8, unique=True))
def test_mobius_random(rows):
    rows = [r for r in rows if any(r)]
    try:
        arr = Arrangement.from_coeffs(rows)
    except (IdenticalLines, ValueError):
        return
    assert char_poly(arr) == char_poly_mobius(arr.incidence)


def test_g13_values():
    mv = corpus.grid13().incidence.multiplicity_vector()
    assert char_poly(mv) == CharPoly(12, 36)
    assert str(char_poly(mv)) == "t^2 - 12t + 36"
    assert tjurina_combinatorial(mv) == 108
    assert tjurina_target(13, 6, Kind.FREE) == 108


def test_a1_tau():
    assert tjurina_combinatorial(corpus.a1()) == 26
    assert tjurina_target(7, 3, Kind.NEARLY_FREE) == 26


def test_exponent_pair_chi():
    assert ExponentPair(6, 6).chi() == CharPoly(12, 36)
    assert ExponentPair(3, 4, Kind.NEARLY_FREE).chi() == CharPoly(6, 10)
    with pytest.raises(ValueError):
        ExponentPair(4, 3)


def test_nearly_free_candidates_share_chi():
    cp = ExponentPair(5, 7, Kind.NEARLY_FREE).chi()
    cands = exponent_candidates(cp, Kind.NEARLY_FREE)
    assert {(e.d1, e.d2) for e in cands} == {(5, 7), (6, 6)}
    assert exponents_from_chi(cp, Kind.NEARLY_FREE) == ExponentPair(6, 6, Kind.NEARLY_FREE)
    assert exponents_from_chi(CharPoly(3, 3), Kind.FREE) is None


def test_hirzebruch():
    assert hirzebruch_check(corpus.pencil(5)).status == "NotApplicable"
    h = hirzebruch_check(corpus.grid13())
    assert h.status == "Satisfied" and h.slack == Fraction(17)


def test_bounds():
    b = multiplicity_bounds_check(13, 6, 3)
    assert not b.cor17 and not b.prop13
    b = multiplicity_bounds_check(13, 6, 4)
    assert b.prop13 and not b.cor17
