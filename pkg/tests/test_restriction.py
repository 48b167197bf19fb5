from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from linefree import corpus
from linefree.errors import Inconsistent, NoIntegerDecomposition
from linefree.invariants import ExponentPair, Kind
from linefree.restriction import (
    Multiarrangement2,
    exponents_2multi,
    nearly_free_sufficiency,
    refined_line_conditions,
    structural_checks,
    two_of_three,
    yoshinaga_flag,
    ziegler,
)


def test_single_heavy_point():
    ex = exponents_2multi(Multiarrangement2((6, 6)))
    assert ex.value == (6, 6) and ex.case_used == "I"


def test_all_double():
    ex = exponents_2multi(Multiarrangement2((2, 2, 2, 2)))
    assert ex.value == (4, 4) and ex.case_used == "III"


def test_many_simple_points():
    ex = exponents_2multi(Multiarrangement2((1, 1, 1, 1, 2)))
    assert ex.value == (2, 4) and "II" in ex.cases


def test_undetermined():
    ex = exponents_2multi(Multiarrangement2((3, 3, 3, 2)))
    assert not ex.determined and str(ex) == "Undetermined"


def test_nonpositive_rejected():
    with pytest.raises(ValueError):
        Multiarrangement2((2, 0))


@given(st.lists(st.integers(1, 6), min_size=1, max_size=8))
def test_determined_exponents_sum(mults):
    ex = exponents_2multi(Multiarrangement2(tuple(mults)))
    if ex.determined:
        assert sum(ex.value) == sum(mults)
        assert ex.value[0] <= ex.value[1]


@pytest.mark.parametrize("name", list(corpus.full_corpus()))
def test_ziegler_total(full_corpus, name):
    arr = full_corpus[name]
    for h in range(arr.d):
        assert ziegler(arr, h).m == arr.d - 1


@pytest.mark.parametrize("name", list(corpus.full_corpus()))
def test_free_members_match_restriction(verdicts, full_corpus, name):
    _, v = verdicts[name]
    if v.kind is not Kind.FREE:
        pytest.skip("not free")
    arr = full_corpus[name]
    for h in yoshinaga_flag(arr):
        ex = exponents_2multi(ziegler(arr, h))
        assert ex.value == (v.exponents.d1, v.exponents.d2)


def test_grid_restriction():
    arr = corpus.grid13()
    assert any(exponents_2multi(ziegler(arr, h)).value == (6, 6) for h in range(13))


def test_two_of_three_derives_missing():
    f = two_of_three(ExponentPair(3, 4, Kind.FREE), ExponentPair(3, 4, Kind.NEARLY_FREE), None, 3, 4)
    assert f.derived == "restriction_count" and f.restriction_count == 3
    f = two_of_three(None, ExponentPair(3, 4, Kind.NEARLY_FREE), 3, 3, 4)
    assert f.derived == "a_free" and f.a_free


def test_two_of_three_rejects():
    with pytest.raises(Inconsistent):
        two_of_three(ExponentPair(3, 4, Kind.FREE), None, 4, 3, 4)
    with pytest.raises(Inconsistent):
        two_of_three(ExponentPair(3, 4, Kind.FREE), None, None, 3, 4)
    with pytest.raises(Inconsistent):
        two_of_three(None, None, 3, 4, 3)


def test_nearly_free_sufficiency_a1():
    res = nearly_free_sufficiency(corpus.a1())
    assert res.applicable
    assert (res.a, res.b) == (3, 3)


def test_nearly_free_sufficiency_not_split():
    with pytest.raises(NoIntegerDecomposition):
        nearly_free_sufficiency(corpus.generic(5))


def test_refined_line_conditions():
    out = refined_line_conditions([6, 7, 5], 6, 6)
    assert out["i"] == [0, 1] and out["ii"] == [] and out["iii"] == []
    out = refined_line_conditions([4, 7], 4, 7)
    assert out["iii"] == [1]


def test_structural_checks_a1():
    sc = structural_checks(corpus.a1(), Kind.NEARLY_FREE, 3, 4)
    assert sc.max_points_ok and sc.has_d2_plus_1_line and sc.triple_line
    # deleting the 5-point line leaves a free arrangement
    assert sc.addition and sc.addition_line in sc.lines_d2_plus_1


def test_structural_checks_incidence_only():
    sc = structural_checks(corpus.a1().incidence, "NearlyFree", 3, 4)
    assert sc.addition is None
