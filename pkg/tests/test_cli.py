from __future__ import annotations

import json

import pytest

from linefree import corpus, io
from linefree.cli import load_input, main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_load_input_names():
    assert load_input("grid13").d == 13
    assert load_input("pencil5").d == 5
    assert load_input("A1(a=3)").d == 7


def test_iso(capsys):
    code, out, _ = _run(capsys, "iso", "A1", "A2")
    assert code == 0 and json.loads(out)["isomorphic"] is False
    code, out, _ = _run(capsys, "iso", "A1(a=2)", "A1(a=3)")
    assert json.loads(out)["isomorphic"] is True


@pytest.mark.parametrize("name", ["sys11", "sys12_I", "sys12_II", "sys14"])
def test_systems_solve_empty(capsys, name):
    code, out, _ = _run(capsys, "systems", "solve", name)
    data = json.loads(out)
    assert code == 0 and data["count"] == 0 and data["complete"] is True


def test_systems_list_and_text(capsys):
    code, out, _ = _run(capsys, "systems", "list")
    assert code == 0 and "sys14" in out
    code, out, _ = _run(capsys, "systems", "solve", "lemma33_n5_3", "--text")
    assert "solutions (complete: True)" in out
    code, out, _ = _run(capsys, "systems", "solve", "sys14", "--strict-transcription")
    assert json.loads(out)["count"] == 0


def test_systems_solve_file(tmp_path, capsys):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"vars": ["x", "y"], "eqs": [{"coeffs": {"x": 1, "y": 1}, "rhs": 2}]}))
    code, out, _ = _run(capsys, "--threads", "2", "systems", "solve-file", str(p))
    assert code == 0 and json.loads(out)["count"] == 3


def test_analyze_incidence_file(tmp_path, capsys):
    p = tmp_path / "a2.inc"
    p.write_text(io.format_incidence(corpus.a2().incidence))
    code, out, _ = _run(capsys, "analyze", str(p))
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "requires realization"
    code, out, _ = _run(capsys, "analyze", str(p), "--text")
    assert "requires realization" in out


def test_analyze_is_deterministic(capsys):
    _, a, _ = _run(capsys, "analyze", "A1")
    _, b, _ = _run(capsys, "analyze", "A1")
    assert a == b and json.loads(a)["verdict"]["kind"] == "NearlyFree"


def test_certify_and_replay(tmp_path, capsys):
    code, out, _ = _run(capsys, "certify", "nfree12", "A1")
    assert code == 0
    p = tmp_path / "c.json"
    p.write_text(out)
    code, out, _ = _run(capsys, "certify", "replay", str(p))
    assert code == 0 and json.loads(out)["ok"] is True
    data = json.loads(p.read_text())
    data["rule_chain"][0]["premises"][0]["value"] = []
    p.write_text(json.dumps(data))
    code, out, _ = _run(capsys, "certify", "replay", str(p))
    assert code == 3 and json.loads(out)["ok"] is False


def test_restrict(capsys):
    code, out, _ = _run(capsys, "restrict", "grid13", "--line", "0")
    data = json.loads(out)
    assert code == 0 and sum(data["multiplicities"]) == 12


def test_parse_error_exit(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1 0 0\n0 1 zz\n")
    code, _, err = _run(capsys, "analyze", str(p))
    assert code == 2 and "line 2" in err and "column 5" in err


def test_unknown_name_exit(capsys):
    code, _, err = _run(capsys, "analyze", "nosuchthing")
    assert code == 2


def test_other_error_exit(capsys):
    code, _, err = _run(capsys, "certify", "terao13", "A1")
    assert code == 1 and "NotThirteen" in err
    code, _, _ = _run(capsys, "restrict", "A1", "--line", "40")
    assert code == 1
