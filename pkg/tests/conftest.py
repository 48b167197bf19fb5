from __future__ import annotations

import sys

import pytest

from linefree import corpus
from linefree.syzygy import JacobianEngine


@pytest.fixture(scope="session")
def full_corpus():
    return corpus.full_corpus()


@pytest.fixture(scope="session")
def verdicts(full_corpus):
    out = {}
    for name, arr in full_corpus.items():
        eng = JacobianEngine(arr)
        rep = eng.report()
        out[name] = (rep, eng.verdict(arr.incidence.multiplicity_vector(), rep))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, note) in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {note}")
