from __future__ import annotations

import json

import pytest

from linefree import corpus, io
from linefree.arrangement import Arrangement, IncidenceStructure
from linefree.errors import ParseError
from linefree.isomorphism import apply_mapping, lattice_isomorphic


def test_a1_a2_not_isomorphic():
    assert not lattice_isomorphic(corpus.a1(), corpus.a2())


def test_a1_parameter_change_isomorphic():
    res = lattice_isomorphic(corpus.a1(a=2), corpus.a1(a=3))
    assert res.isomorphic and sorted(res.mapping) == list(range(7))


def test_relabelled_grid_isomorphic():
    inc = corpus.grid13().incidence
    perm = [(5 * i + 3) % 13 for i in range(13)]
    other = apply_mapping(inc, perm)
    res = lattice_isomorphic(inc, other)
    assert res.isomorphic
    assert apply_mapping(inc, res.mapping).rich == other.rich


def test_different_sizes():
    assert not lattice_isomorphic(corpus.pencil(4), corpus.pencil(5))
    assert not lattice_isomorphic(corpus.generic(4), corpus.near_pencil(4))


def test_split_point_breaks_isomorphism():
    split = corpus.ceva3_split()
    assert split.d == 9
    assert not lattice_isomorphic(split, corpus.ceva3())


@pytest.mark.parametrize("name", list(corpus.full_corpus()))
def test_arrangement_text_round_trip(full_corpus, name):
    arr = full_corpus[name]
    again = io.parse(io.format_arrangement(arr))
    assert isinstance(again, Arrangement)
    assert again.incidence.multiplicity_vector() == arr.incidence.multiplicity_vector()
    assert lattice_isomorphic(again, arr)


@pytest.mark.parametrize("name", list(corpus.full_corpus()))
def test_json_round_trips(full_corpus, name):
    arr = full_corpus[name]
    again = io.parse(json.dumps(io.arrangement_json(arr)))
    assert lattice_isomorphic(again, arr)
    inc = io.parse(json.dumps(io.incidence_json(arr.incidence)))
    assert isinstance(inc, IncidenceStructure) and inc.rich == arr.incidence.rich
    assert io.parse(io.format_incidence(arr.incidence)).rich == arr.incidence.rich


def test_comments_and_blank_lines():
    arr = io.parse("# triangle\n1 0 0\n\n0 1 0  # y\n0 0 1\n")
    assert arr.d == 3


def test_eisenstein_and_rational_coefficients():
    arr = io.parse("1 -w 0\n1/2 1+2w 3\n0 0 1\n")
    assert arr.d == 3


def _parse_error(text):
    with pytest.raises(ParseError) as exc:
        io.parse(text)
    return exc.value


def test_bad_coefficient_position():
    err = _parse_error("1 0 0\n0 1 zz\n")
    assert (err.line, err.column) == (2, 5)


def test_wrong_arity_position():
    err = _parse_error("1 0 0\n0 1 0 7\n")
    assert (err.line, err.column) == (2, 7)
    err = _parse_error("1 0\n")
    assert err.line == 1


def test_identical_lines_are_parse_errors():
    _parse_error("1 0 0\n2 0 0\n0 1 0\n")


def test_incidence_errors():
    err = _parse_error("d=4\n0 1 x\n")
    assert (err.line, err.column) == (2, 5)
    _parse_error("d=3\n0 1 2\n0 1 2\n")
    _parse_error("")


def test_json_errors():
    err = _parse_error('{"lines": [[1, 0, 0],\n [0, 1 0]]}')
    assert err.line == 2
    _parse_error('{"foo": 1}')


def test_load(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text(io.format_arrangement(corpus.triangle()))
    assert io.load(p).d == 3
