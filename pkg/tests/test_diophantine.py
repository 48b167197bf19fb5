from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from linefree import diophantine as dio
from linefree.errors import InconsistentTable, InvalidInput, ParseError, Unbounded, UnknownName
from linefree.invariants import Kind

INFEASIBLE = ["sys11", "sys12_I", "sys12_II", "sys14"]


@pytest.mark.parametrize("name", INFEASIBLE)
def test_named_systems_are_empty(name):
    sols = dio.enumerate_nonneg(dio.predefined(name))
    assert sols.empty and sols.complete


def test_literal_sys14_row_is_also_empty():
    lit = dio.predefined("sys14", strict=True)
    assert lit.row_set() != dio.predefined("sys14").row_set()
    assert dio.enumerate_nonneg(lit).empty


@pytest.mark.parametrize("name", dio.SYSTEM_NAMES)
def test_builder_reproduces_transcription(name):
    assert dio.builder_equivalent(name).row_set() == dio.predefined(name).row_set()


@pytest.mark.parametrize("name", sorted(dio.LEMMA_PROPERTIES))
def test_lemma_properties(name):
    sols = dio.enumerate_nonneg(dio.predefined(name))
    assert sols.complete
    for label, pred in dio.LEMMA_PROPERTIES[name]:
        res = dio.assert_property(sols, pred)
        assert res.holds, (label, res.counterexample)
        assert res.checked == len(sols)


def test_lemma_solution_sets_nonempty():
    counts = {n: len(dio.enumerate_nonneg(dio.predefined(n))) for n in dio.LEMMA_PROPERTIES}
    assert counts["lemma33_n5_0"] > 0 and counts["lemma33_n5_1"] > 0


def test_unknown_system():
    with pytest.raises(UnknownName):
        dio.predefined("sys99")


def _random_system(rng: random.Random) -> dio.LinearSystem:
    n = rng.randint(1, 5)
    names = [f"x{i}" for i in range(n)]
    bounds = {v: rng.randint(0, 8) for v in names}
    rows = []
    for _ in range(rng.randint(0, 3)):
        co = {v: rng.randint(-3, 3) for v in names}
        # pick a right-hand side hit by some grid point half of the time
        if rng.random() < 0.5:
            pt = {v: rng.randint(0, bounds[v]) for v in names}
            rhs = sum(co[v] * pt[v] for v in names)
        else:
            rhs = rng.randint(-10, 10)
        rows.append((co, rhs))
    return dio.LinearSystem.from_rows(names, rows, bounds)


def test_enumerator_matches_grid_on_50_random_systems():
    rng = random.Random(20261017)
    for _ in range(50):
        s = _random_system(rng)
        assert dio.enumerate_nonneg(s).solutions == dio.naive_grid(s).solutions


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_enumerator_matches_grid_property(seed):
    s = _random_system(random.Random(seed))
    assert dio.enumerate_nonneg(s).solutions == dio.naive_grid(s).solutions


def test_threads_agree():
    s = dio.predefined("lemma33_n5_1")
    assert dio.enumerate_nonneg(s, threads=4).solutions == dio.enumerate_nonneg(s, threads=1).solutions


def test_threads_from_env(monkeypatch):
    monkeypatch.setenv(dio.THREADS_ENV, "3")
    assert dio.thread_count() == 3
    monkeypatch.setenv(dio.THREADS_ENV, "many")
    assert dio.thread_count() == 1


def test_limit_overflow():
    s = dio.LinearSystem.from_rows(["x", "y"], [], {"x": 5, "y": 5})
    with pytest.raises(OverflowError):
        dio.enumerate_nonneg(s, limit=10)


def test_bounds_derived_from_nonneg_rows():
    s = dio.LinearSystem.from_rows(["x", "y"], [({"x": 2, "y": 3}, 12)])
    assert dio.enumerate_nonneg(s).as_dicts() == [{"x": 0, "y": 4}, {"x": 3, "y": 2}, {"x": 6, "y": 0}]


def test_unbounded():
    s = dio.LinearSystem.from_rows(["x", "y"], [({"x": 1, "y": -1}, 0)])
    with pytest.raises(Unbounded):
        dio.enumerate_nonneg(s)


def test_inconsistent_rows_short_circuit():
    s = dio.LinearSystem.from_rows(["x"], [({"x": 1}, 1), ({"x": 2}, 3)], {"x": 4})
    res = dio.enumerate_nonneg(s)
    assert res.empty and res.complete


def test_system_validation():
    with pytest.raises(InvalidInput):
        dio.LinearSystem.from_rows(["x"], [({"y": 1}, 0)])
    with pytest.raises(InvalidInput):
        dio.LinearSystem(("x", "x"), (), (None, None))


def test_json_round_trip(tmp_path):
    s = dio.predefined("sys14")
    again = dio.LinearSystem.from_json(json.loads(json.dumps(s.to_json())))
    assert again == s
    p = tmp_path / "s.json"
    p.write_text(json.dumps(s.to_json()))
    assert dio.load_system_file(p) == s


def test_bad_system_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"vars": ["x"],\n "eqs": [}')
    with pytest.raises(ParseError) as exc:
        dio.load_system_file(p)
    assert exc.value.line == 2


def test_type_table_validation():
    table = dio.LineTypeTable.of({"p": {3: 2, 2: 1}})
    with pytest.raises(InconsistentTable):
        table.validate(7)
    table.validate(6)
    with pytest.raises(InconsistentTable):
        dio.build_system(6, (2, 2), Kind.FREE, table)


def test_build_system_small_free_case():
    table = dio.LineTypeTable.of({"p": {3: 2, 2: 1}, "q": {2: 5}})
    s = dio.build_system(6, (2, 3), Kind.FREE, table)
    # the only solution is the shape of the complete quadrilateral
    assert dio.enumerate_nonneg(s).as_dicts() == [{"n2": 3, "n3": 4, "p": 6, "q": 0}]


def test_table_rendering():
    s = dio.LinearSystem.from_rows(["x", "yy"], [({"x": 1, "yy": 1}, 1)], {"x": 1, "yy": 1})
    text = dio.enumerate_nonneg(s).table()
    assert text.splitlines()[0].split() == ["x", "yy"]
    assert "x" in str(s)
