"""Executable certificates for the combinatorial decision trees.

A certificate names the branch of a decision tree that fired for a lattice,
the claim it supports and the chain of rules applied.  Each rule carries its
premises as ``(name, args, value)`` records.  :meth:`Certificate.replay`
re-evaluates every premise from the subject stored in the certificate, so a
certificate can be checked without trusting the process that produced it.

Theorems imported from the literature are named axioms: only their
hypotheses are checked here.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .arrangement import TYPES_13, Arrangement, IncidenceStructure, line_profile
from .diophantine import (
    LEMMA_PROPERTIES,
    TYPES_11,
    TYPES_12_I,
    TYPES_12_II,
    TYPES_14,
    assert_property,
    enumerate_nonneg,
    predefined,
)
from .errors import (
    BranchHypothesisUnverifiable,
    InternalInconsistency,
    InvalidInput,
    NotFourteen,
    NotThirteen,
    TooManyLines,
)
from .invariants import (
    ExponentPair,
    Kind,
    char_poly,
    exponent_candidates,
    hirzebruch_check,
    multiplicity_bounds_check,
    tjurina_combinatorial,
)
from .io import arrangement_json, incidence_json, parse_json

CERT_SCHEMA = "linefree.certificate/1"

COMBINATORIAL = "freeness is combinatorial for this lattice class"
NO_FREE = "no free member in this class"
IF_FREE_ALL_FREE = "if some member is free then all are"
NF_COMBINATORIAL = "near freeness is combinatorial for this lattice class"
NO_NEARLY_FREE = "no nearly free member in this class"
ALL_NEARLY_FREE = "every member of this class is nearly free"

# rule id -> the statement the rule relies on
RULES: dict[str, str] = {
    "chi-free-shape": "a free arrangement with exponents (d1,d2) has chi = (t-d1)(t-d2)",
    "chi-nearly-free-shape": "a nearly free arrangement with exponents (d1,d2) has chi = (t-d1)(t-d2+1)+1",
    "max-mult-free": "a free arrangement with m(A) >= d1 forces every lattice-isomorphic arrangement to be free",
    "small-d1-free": "freeness is combinatorial for free arrangements with d1 <= 5",
    "mult-lower-bound": "a free or nearly free arrangement satisfies m(A) >= 2d/(d1+2)",
    "rich-line-free": "a line with at least 7 multiple points makes freeness combinatorial here",
    "triple-line-free": "a line carrying only triple points has a Ziegler restriction of known exponents, "
                        "so freeness is combinatorial",
    "short-line-free": "with chi a perfect square, a line with at most 4 multiple points leaves only free or "
                       "nearly free (d1-1,d2+1) members; m(A) = d1-1 then rules out the nearly free ones",
    "line-types-13": "in the remaining case every line is of one of the types a0 to l",
    "six-point-lines": "a free 13-line arrangement in the remaining case has two 6-point lines "
                       "meeting in a point of multiplicity at least 3",
    "lemma-systems": "the counting systems for 13 free lines force enough 6-point lines",
    "deletion-to-nearly-free": "deleting a line with d2 multiple points from a free (d1,d2) arrangement "
                               "gives a nearly free (d1,d2) one, and conversely",
    "restriction-nearly-free": "a line with the right number of points forces the lattice-isomorphic "
                               "arrangement with chi = (t-d1)(t-d2+1)+1 to be nearly free",
    "same-tau-same-exponents": "lattice-isomorphic nearly free curves share exponents",
    "fewer-than-four-lines": "nearly free arrangements have at least 4 lines",
    "generic-lattice": "generic arrangements are nearly free for 4 lines and never for 5 or more",
    "max-mult-nearly-free": "a nearly free arrangement with m(A) >= d1 forces every lattice-isomorphic "
                            "arrangement to be nearly free",
    "small-arrangements": "near freeness is combinatorial for at most 7 lines (addition of a line with "
                          "d2+1 points to a free arrangement)",
    "max-line-points": "every line of a nearly free arrangement has at most d2+1 multiple points",
    "d2-plus-one-line": "a nearly free arrangement with a line of d2+1 multiple points stays nearly free "
                        "in its lattice class (freeness being combinatorial below 14 lines)",
    "balanced-line": "nearly free with d1 = d2 and a line of d1 or d1+1 points is combinatorial",
    "unbalanced-line": "nearly free with d1 < d2 != d1+3 and a line of d1+1 or d2 points is combinatorial",
    "gap-three-line": "nearly free with d2 = d1+3 and a line of d2 points is combinatorial",
    "triple-line-nearly-free": "2d+1 lines nearly free (d,d+1) with a line of exactly d triple points "
                               "is combinatorial",
    "short-line-nearly-free": "a line with at most 4 multiple points makes near freeness combinatorial",
    "line-types": "in the remaining case every line has one of the listed profiles",
    "system-infeasible": "the counting system of the remaining case has no nonnegative integer solution",
    "small-d1-14": "14 free lines: exponents other than (6,7) are covered by the small d1 result",
    "six-point-line-14": "14 free lines (6,7) with a 6-point line: deleting it leaves 13 nearly free lines, "
                         "so freeness follows when near freeness is combinatorial for 13 lines",
    "realization": "the supplied realization was analysed algebraically",
}


def _inc(obj) -> IncidenceStructure:
    return obj.incidence if isinstance(obj, Arrangement) else obj


def _norm(value):
    return json.loads(json.dumps(value, sort_keys=True))


def lattice_digest(inc: IncidenceStructure) -> str:
    payload = json.dumps(incidence_json(inc), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


# -- premise evaluators ------------------------------------------------------


@dataclass
class _Subject:
    inc: IncidenceStructure
    realization: Optional[Arrangement] = None
    cache: dict = field(default_factory=dict)

    def n_h(self) -> list[int]:
        if "n_h" not in self.cache:
            self.cache["n_h"] = [line_profile(self.inc, h).n_H for h in range(self.inc.d)]
        return self.cache["n_h"]

    def profile(self, h: int) -> dict[int, int]:
        return line_profile(self.inc, h).as_dict()


EVALUATORS: dict[str, Callable[..., Any]] = {}


def evaluator(name: str):
    def deco(fn):
        EVALUATORS[name] = fn
        return fn

    return deco


@evaluator("d")
def _ev_d(s: _Subject):
    return s.inc.d


@evaluator("max_multiplicity")
def _ev_m(s: _Subject):
    return s.inc.max_multiplicity


@evaluator("n_k")
def _ev_nk(s: _Subject, k: int):
    return s.inc.multiplicity_vector()[k]


@evaluator("char_poly")
def _ev_chi(s: _Subject):
    cp = char_poly(s.inc.multiplicity_vector())
    return [cp.b1, cp.b2]


@evaluator("exponent_candidates")
def _ev_cands(s: _Subject, kind: str):
    cp = char_poly(s.inc.multiplicity_vector())
    return [[e.d1, e.d2] for e in exponent_candidates(cp, kind)]


@evaluator("bounds_check")
def _ev_bounds(s: _Subject, d1: int):
    b = multiplicity_bounds_check(s.inc.d, d1, max(2, s.inc.max_multiplicity))
    return {"m_ge_d1": b.cor17, "m_ge_2d_over_d1_plus_2": b.prop13}


@evaluator("lines_with_points")
def _ev_lines(s: _Subject, lo: int = 0, hi: int | None = None):
    hi = s.inc.d if hi is None else hi
    return [h for h, n in enumerate(s.n_h()) if lo <= n <= hi]


@evaluator("lines_with_sizes")
def _ev_lines_sizes(s: _Subject, sizes: list):
    return [h for h, n in enumerate(s.n_h()) if n in sizes]


@evaluator("line_points")
def _ev_line_points(s: _Subject, h: int):
    return s.n_h()[h]


@evaluator("lines_with_profile")
def _ev_lines_profile(s: _Subject, profile: dict):
    want = {int(k): int(v) for k, v in profile.items()}
    return [h for h in range(s.inc.d) if s.profile(h) == want]


@evaluator("untyped_lines")
def _ev_untyped(s: _Subject, table: str):
    rows = list(TYPE_TABLES[table].values())
    return [h for h in range(s.inc.d) if s.profile(h) not in rows]


@evaluator("point_multiplicity")
def _ev_point(s: _Subject, h1: int, h2: int):
    return len(s.inc.points[s.inc.pair_point[h1][h2]])


@evaluator("six_point_pair")
def _ev_pair(s: _Subject):
    """First pair (H, H') of 6-point lines, H' still 6-point after deleting H,
    meeting in a point of multiplicity >= 3."""
    six = [h for h, n in enumerate(s.n_h()) if n == 6]
    for i, h in enumerate(six):
        for h2 in six[i + 1:]:
            if len(s.inc.points[s.inc.pair_point[h][h2]]) >= 3:
                return [h, h2]
    return None


@evaluator("after_delete")
def _ev_after_delete(s: _Subject, h: int):
    b = s.inc.delete(h)
    mv = b.multiplicity_vector()
    cp = char_poly(mv)
    return {"d": b.d, "char_poly": [cp.b1, cp.b2], "tau": tjurina_combinatorial(mv)}


@evaluator("line_points_after_delete")
def _ev_points_after(s: _Subject, h: int, h2: int):
    b = s.inc.delete(h)
    return line_profile(b, h2 - (h2 > h)).n_H


@evaluator("generic")
def _ev_generic(s: _Subject):
    return s.inc.max_multiplicity <= 2


@evaluator("system")
def _ev_system(s: _Subject, name: str):
    sols = enumerate_nonneg(predefined(name))
    return {"solutions": len(sols), "complete": sols.complete}


@evaluator("lemma_properties")
def _ev_lemma(s: _Subject, name: str):
    sols = enumerate_nonneg(predefined(name))
    return {"solutions": len(sols),
            "all_hold": all(assert_property(sols, p).holds for _, p in LEMMA_PROPERTIES[name])}


@evaluator("verdict")
def _ev_verdict(s: _Subject):
    if s.realization is None:
        raise InvalidInput("this premise needs a realization")
    if "verdict" not in s.cache:
        from .syzygy import JacobianEngine

        arr = s.realization
        s.cache["verdict"] = JacobianEngine(arr).verdict(arr.incidence.multiplicity_vector())
    v = s.cache["verdict"]
    exps = None if v.exponents is None else [v.exponents.d1, v.exponents.d2]
    return {"kind": v.kind.value, "exponents": exps, "mdr": v.evidence["mdr"]}


TYPE_TABLES = {"13": TYPES_13, "11": TYPES_11, "12_I": TYPES_12_I, "12_II": TYPES_12_II, "14": TYPES_14}


# -- certificate types ---------------------------------------------------------


@dataclass(frozen=True)
class Premise:
    name: str
    args: dict
    value: Any

    def to_json(self) -> dict:
        return {"name": self.name, "args": self.args, "value": self.value}


@dataclass(frozen=True)
class Rule:
    """One node of the decision path; ``fired`` is False when its hypothesis failed."""

    rule_id: str
    anchor: str
    premises: tuple[Premise, ...]
    fired: bool = True

    def to_json(self) -> dict:
        return {"rule": self.rule_id, "anchor": self.anchor, "fired": self.fired,
                "premises": [p.to_json() for p in self.premises]}


@dataclass(frozen=True)
class ReplayReport:
    ok: bool
    checked: int
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Certificate:
    procedure: str
    subject: dict
    branch: str
    claim: str
    rule_chain: tuple[Rule, ...]
    conditional_on: Optional[str] = None
    details: dict = field(default_factory=dict)

    @property
    def premises(self) -> list[Premise]:
        return [p for r in self.rule_chain for p in r.premises]

    def to_json(self) -> dict:
        return {
            "schema": CERT_SCHEMA,
            "procedure": self.procedure,
            "subject": self.subject,
            "branch": self.branch,
            "claim": self.claim,
            "conditional_on": self.conditional_on,
            "rule_chain": [r.to_json() for r in self.rule_chain],
            "details": self.details,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        rules = tuple(
            Rule(r["rule"], r["anchor"],
                 tuple(Premise(p["name"], p["args"], p["value"]) for p in r["premises"]),
                 r.get("fired", True))
            for r in data["rule_chain"]
        )
        return cls(data["procedure"], data["subject"], data["branch"], data["claim"], rules,
                   data.get("conditional_on"), data.get("details", {}))

    def subject_objects(self) -> tuple[IncidenceStructure, Optional[Arrangement]]:
        lat = self.subject["incidence"]
        inc = IncidenceStructure.from_points(lat["d"], lat["points"])
        real = self.subject.get("realization")
        arr = parse_json(json.dumps(real)) if real else None
        return inc, arr

    def replay(self) -> ReplayReport:
        """Recompute every premise from the stored subject."""
        inc, arr = self.subject_objects()
        failures = []
        if lattice_digest(inc) != self.subject["digest"]:
            failures.append("subject digest mismatch")
        if arr is not None and arr.incidence != inc:
            failures.append("realization does not have the stated lattice")
        subj = _Subject(inc, arr)
        count = 0
        for rule in self.rule_chain:
            if rule.rule_id not in RULES:
                failures.append(f"unknown rule {rule.rule_id}")
            for p in rule.premises:
                count += 1
                fn = EVALUATORS.get(p.name)
                if fn is None:
                    failures.append(f"{rule.rule_id}: unknown premise {p.name}")
                    continue
                got = _norm(fn(subj, **p.args))
                if got != _norm(p.value):
                    failures.append(f"{rule.rule_id}: {p.name}({p.args}) = {got}, recorded {p.value}")
        return ReplayReport(not failures, count, tuple(failures))


class _Builder:
    def __init__(self, procedure: str, inc: IncidenceStructure, realization: Optional[Arrangement]):
        if realization is not None and realization.incidence != inc:
            raise InvalidInput("the realization does not have the given lattice")
        self.procedure = procedure
        self.subj = _Subject(inc, realization)
        self.chain: list[Rule] = []
        self._open: list[Premise] = []

    def check(self, premise: str, /, **args):
        value = _norm(EVALUATORS[premise](self.subj, **args))
        self._open.append(Premise(premise, _norm(args), value))
        return value

    def rule(self, rule_id: str, fired: bool = True) -> bool:
        self.chain.append(Rule(rule_id, RULES[rule_id], tuple(self._open), fired))
        self._open = []
        return fired

    def finish(self, branch: str, claim: str, conditional_on: str | None = None, **details) -> Certificate:
        if self._open:
            raise AssertionError("premises checked but not attached to a rule")
        inc = self.subj.inc
        subject = {"d": inc.d, "digest": lattice_digest(inc), "incidence": incidence_json(inc),
                   "realization": None}
        if self.subj.realization is not None:
            subject["realization"] = arrangement_json(self.subj.realization)
        return Certificate(self.procedure, subject, branch, claim, tuple(self.chain), conditional_on,
                           _norm(details))


def _cross_check_free(b: _Builder, claim: str, exps: Optional[list[int]]) -> None:
    """With a realization, the algebraic verdict must not contradict the claim."""
    if b.subj.realization is None:
        return
    v = b.check("verdict")
    b.rule("realization")
    if v["kind"] == Kind.FREE.value:
        if claim == NO_FREE:
            raise InternalInconsistency(f"realization is free but the lattice branch says {claim!r}")
        if exps is not None and v["exponents"] != exps:
            raise InternalInconsistency(f"realization has exponents {v['exponents']}, chi gives {exps}")


# -- 13 lines -------------------------------------------------------------------


def _free_outcome(branch, claim, exps, cond=None, **details):
    return branch, claim, exps, cond, details


def certify_terao_13(inc, realization: Arrangement | None = None) -> Certificate:
    """Decide which case of the 13-line freeness argument applies to a lattice."""
    if isinstance(inc, Arrangement) and realization is None:
        realization = inc
    inc = _inc(inc)
    if inc.d != 13:
        raise NotThirteen(f"expected 13 lines, got {inc.d}")
    b = _Builder("terao13", inc, realization)
    branch, claim, exps, cond, details = _terao13_tree(b)
    _cross_check_free(b, claim, exps)
    return b.finish(branch, claim, cond, **details)


def _terao13_tree(b: _Builder):
    cands = b.check("exponent_candidates", kind="Free")
    if not b.rule("chi-free-shape", bool(cands)):
        return _free_outcome("chi-not-free-shape", NO_FREE, None)
    d1, d2 = cands[0]
    exps = [d1, d2]
    m = b.check("max_multiplicity")
    bounds = b.check("bounds_check", d1=d1)
    if b.rule("max-mult-free", bounds["m_ge_d1"]):
        return _free_outcome("m-ge-d1", COMBINATORIAL, exps, m=m, exponents=exps)
    b.check("exponent_candidates", kind="Free")
    if b.rule("small-d1-free", d1 <= 5):
        return _free_outcome("d1-le-5", COMBINATORIAL, exps, exponents=exps)
    # from here on the exponents are (6,6)
    b.check("bounds_check", d1=d1)
    if b.rule("mult-lower-bound", not bounds["m_ge_2d_over_d1_plus_2"]):
        return _free_outcome("m-le-3", NO_FREE, exps, m=m)
    rich = b.check("lines_with_points", lo=7)
    if b.rule("rich-line-free", bool(rich)):
        return _free_outcome("line-ge-7-points", COMBINATORIAL, exps, line=rich[0])
    triple = b.check("lines_with_profile", profile={3: 6})
    if b.rule("triple-line-free", bool(triple)):
        return _free_outcome("six-triple-line", COMBINATORIAL, exps, line=triple[0])
    b.check("max_multiplicity")
    short = b.check("lines_with_points", hi=4)
    if b.rule("short-line-free", m == 5 and bool(short)):
        return _free_outcome("short-line-m5", COMBINATORIAL, exps, line=short[0])
    # residual case: d1 = 6, m in {4, 5}, every line with at most 6 points
    untyped = b.check("untyped_lines", table="13")
    if not b.rule("line-types-13", not untyped):
        raise BranchHypothesisUnverifiable(
            f"lines {untyped} have profiles outside the types a0 to l; no branch applies"
        )
    n5 = b.check("n_k", k=5)
    if n5 > 3:
        raise BranchHypothesisUnverifiable(f"{n5} quintuple points: no counting system covers this case")
    lemma = b.check("lemma_properties", name=f"lemma33_n5_{n5}")
    if not b.rule("lemma-systems", lemma["all_hold"]):
        raise InternalInconsistency(f"lemma33_n5_{n5} solutions violate the expected properties")
    pair = b.check("six_point_pair")
    b.rule("six-point-lines", pair is not None)
    if pair is None:
        # contrapositive: a free member would exhibit such a pair
        return _free_outcome("residual", NO_FREE, exps, pair=None)
    h, h2 = pair
    six = b.check("line_points", h=h)
    after = b.check("after_delete", h=h)
    # B = A minus H: 12 lines with the nearly free (6,6) polynomial (t-6)(t-5)+1
    nf_chi = ExponentPair(d1, d2, Kind.NEARLY_FREE).chi()
    ok = six == d2 and after["char_poly"] == [nf_chi.b1, nf_chi.b2]
    if not b.rule("deletion-to-nearly-free", ok):
        raise BranchHypothesisUnverifiable(f"deleting line {h} does not give the nearly free shape")
    still = b.check("line_points_after_delete", h=h, h2=h2)
    mult = b.check("point_multiplicity", h1=h, h2=h2)
    if not b.rule("restriction-nearly-free", still == 6 and mult >= 3):
        raise BranchHypothesisUnverifiable(f"line {h2} loses a point when line {h} is deleted")
    b.check("after_delete", h=h)
    b.rule("same-tau-same-exponents")
    b.check("line_points", h=h)
    b.rule("deletion-to-nearly-free")
    return _free_outcome("residual", IF_FREE_ALL_FREE, exps, "some member of the class is free",
                         pair=[h, h2], common_point_multiplicity=mult)


# -- at most 12 lines, near freeness -----------------------------------------


def certify_nearly_free_le12(inc, realization: Arrangement | None = None) -> Certificate:
    """Near freeness up to 12 lines; every candidate exponent pair gets its own branch."""
    if isinstance(inc, Arrangement) and realization is None:
        realization = inc
    inc = _inc(inc)
    if inc.d > 12:
        raise TooManyLines(f"expected at most 12 lines, got {inc.d}")
    b = _Builder("nfree12", inc, realization)
    d = inc.d
    cands = b.check("exponent_candidates", kind="NearlyFree")
    if not b.rule("chi-nearly-free-shape", bool(cands)):
        return _nf_finish(b, "chi-not-nearly-free-shape", NO_NEARLY_FREE, {})
    b.check("d")
    if b.rule("fewer-than-four-lines", d < 4):
        return _nf_finish(b, "fewer-than-four-lines", NO_NEARLY_FREE, {})
    b.check("d")
    if b.rule("generic-lattice", b.check("generic")):
        claim = ALL_NEARLY_FREE if d == 4 else NO_NEARLY_FREE
        return _nf_finish(b, "generic", claim, {})
    outcomes = {}
    for d1, d2 in cands:
        outcomes[f"{d1},{d2}"] = _nf_branch(b, d, d1, d2)
    if all(o[1] == NO_NEARLY_FREE for o in outcomes.values()):
        claim = NO_NEARLY_FREE
    else:
        claim = NF_COMBINATORIAL
    branch = "; ".join(f"({k}) {o[0]}" for k, o in outcomes.items())
    details = {"candidates": {k: {"branch": o[0], "claim": o[1]} for k, o in outcomes.items()}}
    return _nf_finish(b, branch, claim, details)


def _nf_finish(b: _Builder, branch: str, claim: str, details: dict) -> Certificate:
    if b.subj.realization is not None:
        v = b.check("verdict")
        b.rule("realization")
        if v["kind"] == Kind.NEARLY_FREE.value and claim == NO_NEARLY_FREE:
            raise InternalInconsistency(f"realization is nearly free but the lattice branch says {claim!r}")
        if v["kind"] != Kind.NEARLY_FREE.value and claim == ALL_NEARLY_FREE:
            raise InternalInconsistency(f"realization is {v['kind']} but the lattice branch says {claim!r}")
    return b.finish(branch, claim, None, **details)


def _nf_branch(b: _Builder, d: int, d1: int, d2: int) -> tuple[str, str]:
    bounds = b.check("bounds_check", d1=d1)
    if b.rule("max-mult-nearly-free", bounds["m_ge_d1"]):
        return "m-ge-d1", NF_COMBINATORIAL
    b.check("bounds_check", d1=d1)
    if b.rule("mult-lower-bound", not bounds["m_ge_2d_over_d1_plus_2"]):
        return "mult-lower-bound-fails", NO_NEARLY_FREE
    b.check("d")
    if b.rule("small-arrangements", d <= 7):
        return "at-most-7-lines", NF_COMBINATORIAL
    over = b.check("lines_with_points", lo=d2 + 2)
    if b.rule("max-line-points", bool(over)):
        return "line-exceeds-d2+1", NO_NEARLY_FREE
    top = b.check("lines_with_sizes", sizes=[d2 + 1])
    if b.rule("d2-plus-one-line", bool(top)):
        return "d2+1-line", NF_COMBINATORIAL
    if d1 == d2:
        rid, sizes = "balanced-line", [d1, d1 + 1]
    elif d1 + 3 != d2:
        rid, sizes = "unbalanced-line", [d1 + 1, d2]
    else:
        rid, sizes = "gap-three-line", [d2]
    if b.rule(rid, bool(b.check("lines_with_sizes", sizes=sizes))):
        return rid, NF_COMBINATORIAL
    if d == 2 * d1 + 1 and d2 == d1 + 1:
        lines = b.check("lines_with_profile", profile={3: d1})
        if b.rule("triple-line-nearly-free", bool(lines)):
            return "triple-line", NF_COMBINATORIAL
    short = b.check("lines_with_points", hi=4)
    if b.rule("short-line-nearly-free", bool(short)):
        return "short-line", NF_COMBINATORIAL
    system = {(11, 5, 6): ("sys11", "11"), (12, 5, 7): ("sys12_I", "12_I"),
              (12, 6, 6): ("sys12_II", "12_II")}.get((d, d1, d2))
    if system is None:
        raise BranchHypothesisUnverifiable(f"{d} lines with candidate exponents ({d1},{d2}): no branch applies")
    name, table = system
    untyped = b.check("untyped_lines", table=table)
    if not b.rule("line-types", not untyped):
        raise BranchHypothesisUnverifiable(f"lines {untyped} have profiles outside the {name} types")
    res = b.check("system", name=name)
    if not b.rule("system-infeasible", res["solutions"] == 0 and res["complete"]):
        raise BranchHypothesisUnverifiable(f"{name} has solutions; the vacuity argument does not apply")
    return f"{name}-infeasible", NO_NEARLY_FREE


# -- 14 lines -------------------------------------------------------------------

NF13 = "near freeness is combinatorial for 13 lines"


def reduce_terao_14(inc, realization: Arrangement | None = None) -> Certificate:
    """Reduce freeness for 14 lines to near freeness for 13 lines."""
    if isinstance(inc, Arrangement) and realization is None:
        realization = inc
    inc = _inc(inc)
    if inc.d != 14:
        raise NotFourteen(f"expected 14 lines, got {inc.d}")
    b = _Builder("reduce14", inc, realization)
    branch, claim, exps, cond, details = _reduce14_tree(b)
    _cross_check_free(b, claim, exps)
    return b.finish(branch, claim, cond, **details)


def _reduce14_tree(b: _Builder):
    cands = b.check("exponent_candidates", kind="Free")
    if not b.rule("chi-free-shape", bool(cands)):
        return _free_outcome("chi-not-free-shape", NO_FREE, None)
    d1, d2 = cands[0]
    exps = [d1, d2]
    bounds = b.check("bounds_check", d1=d1)
    if b.rule("max-mult-free", bounds["m_ge_d1"]):
        return _free_outcome("m-ge-d1", COMBINATORIAL, exps, exponents=exps)
    b.check("exponent_candidates", kind="Free")
    if b.rule("small-d1-14", exps != [6, 7]):
        return _free_outcome("exponents-not-6-7", COMBINATORIAL, exps, exponents=exps)
    b.check("bounds_check", d1=d1)
    if b.rule("mult-lower-bound", not bounds["m_ge_2d_over_d1_plus_2"]):
        return _free_outcome("mult-lower-bound-fails", NO_FREE, exps)
    # chi is not a perfect square here, so a short line settles freeness
    short = b.check("lines_with_points", hi=4)
    if b.rule("short-line-free", bool(short)):
        return _free_outcome("short-line", COMBINATORIAL, exps, line=short[0])
    rich = b.check("lines_with_points", lo=7)
    if b.rule("rich-line-free", bool(rich)):
        return _free_outcome("line-ge-7-points", COMBINATORIAL, exps, line=rich[0])
    # residual: m in {4, 5}, every line with 5 or 6 points
    res = b.check("system", name="sys14")
    if not b.rule("system-infeasible", res["solutions"] == 0 and res["complete"]):
        raise BranchHypothesisUnverifiable("sys14 has solutions; a 6-point line is not guaranteed")
    six = b.check("lines_with_sizes", sizes=[6])
    if b.rule("six-point-line-14", bool(six)):
        return _free_outcome("residual", COMBINATORIAL, exps, NF13, line=six[0])
    untyped = b.check("untyped_lines", table="14")
    if not b.rule("line-types", not untyped):
        raise BranchHypothesisUnverifiable(f"lines {untyped} have profiles outside the sys14 types")
    return _free_outcome("residual", NO_FREE, exps, line=None)


# -- full report ---------------------------------------------------------------

REPORT_SCHEMA = "linefree.report/1"
NEEDS_REALIZATION = "requires realization"


def _frac(x) -> str | int:
    if x is None:
        return None
    return str(x) if getattr(x, "denominator", 1) != 1 else int(x)


def applicable_certificates(inc, realization: Arrangement | None = None) -> dict:
    inc = _inc(inc)
    out = {}
    procs = []
    if inc.d == 13:
        procs.append(("terao13", certify_terao_13))
    if inc.d <= 12:
        procs.append(("nfree12", certify_nearly_free_le12))
    if inc.d == 14:
        procs.append(("reduce14", reduce_terao_14))
    for name, fn in procs:
        try:
            out[name] = fn(inc, realization).to_json()
        except BranchHypothesisUnverifiable as exc:
            out[name] = {"error": "BranchHypothesisUnverifiable", "message": str(exc)}
    return out


def analyze(obj) -> dict:
    """JSON-ready report for an Arrangement or an IncidenceStructure."""
    from .restriction import exponents_2multi, ziegler
    from .arrangement import classify_profile_13

    realization = obj if isinstance(obj, Arrangement) else None
    inc = _inc(obj)
    mv = inc.multiplicity_vector()
    cp = char_poly(mv)
    hz = hirzebruch_check(mv)
    lines = []
    for h in range(inc.d):
        prof = line_profile(inc, h)
        z = ziegler(inc, h)
        ze = exponents_2multi(z)
        lines.append({
            "line": h,
            "n_H": prof.n_H,
            "profile": {str(k): v for k, v in prof.counts},
            "type13": classify_profile_13(prof) if inc.d == 13 else None,
            "ziegler": {"multiplicities": list(z.mults),
                        "exponents": list(ze.value) if ze.value else None,
                        "case": ze.case_used},
        })
    report = {
        "schema": REPORT_SCHEMA,
        "d": inc.d,
        "n_k": {str(k): v for k, v in mv.counts},
        "max_multiplicity": inc.max_multiplicity,
        "lines": lines,
        "char_poly": {"b1": cp.b1, "b2": cp.b2, "text": str(cp),
                      "roots": list(cp.integer_roots()) if cp.integer_roots() else None},
        "tau_comb": tjurina_combinatorial(mv),
        "hirzebruch": {"status": hz.status, "slack": _frac(hz.slack)},
        "incidence": incidence_json(inc),
    }
    if realization is None:
        for key in ("realization", "mdr", "ar_dims", "tau_alg", "nf_dims", "verdict"):
            report[key] = NEEDS_REALIZATION
    else:
        from .syzygy import JacobianEngine

        eng = JacobianEngine(realization)
        rep = eng.report()
        v = eng.verdict(mv, rep)
        report["realization"] = arrangement_json(realization)
        report["mdr"] = rep.mdr
        report["ar_dims"] = {str(k): n for k, n in sorted(rep.ar_dims.items())}
        report["tau_alg"] = rep.tau_alg
        report["nf_dims"] = {str(k): n for k, n in sorted(rep.nf_dims.items())}
        report["verdict"] = {
            "kind": v.kind.value,
            "exponents": [v.exponents.d1, v.exponents.d2] if v.exponents else None,
            "mdr_certified": rep.mdr_certified,
        }
    report["certificates"] = applicable_certificates(inc, realization)
    return _norm(report)


def format_report(report: dict) -> str:
    """Plain-text rendering of :func:`analyze` output."""
    out = [f"d = {report['d']}"]
    out.append("n_k: " + ", ".join(f"n{k}={v}" for k, v in report["n_k"].items()))
    out.append(f"m(A) = {report['max_multiplicity']}")
    out.append(f"chi = {report['char_poly']['text']}")
    out.append(f"tau (combinatorial) = {report['tau_comb']}")
    hz = report["hirzebruch"]
    out.append(f"Hirzebruch: {hz['status']}" + (f" (slack {hz['slack']})" if hz["slack"] is not None else ""))
    for ln in report["lines"]:
        prof = " ".join(f"{k}^{v}" for k, v in ln["profile"].items())
        z = ln["ziegler"]
        ze = "undetermined" if z["exponents"] is None else f"({z['exponents'][0]},{z['exponents'][1]}) case {z['case']}"
        tag = f" type {ln['type13']}" if ln["type13"] else ""
        out.append(f"  H{ln['line']}: n_H={ln['n_H']} [{prof}]{tag}; Ziegler {ze}")
    v = report["verdict"]
    if v == NEEDS_REALIZATION:
        out.append(f"mdr, tau_alg, N(f), verdict: {NEEDS_REALIZATION}")
    else:
        exps = "" if v["exponents"] is None else f" ({v['exponents'][0]},{v['exponents'][1]})"
        out.append(f"mdr = {report['mdr']}, tau_alg = {report['tau_alg']}")
        out.append("nf_dims: " + " ".join(f"{k}:{n}" for k, n in report["nf_dims"].items() if n))
        out.append(f"verdict: {v['kind']}{exps}")
    for name, cert in report["certificates"].items():
        if "error" in cert:
            out.append(f"certificate {name}: {cert['error']}: {cert['message']}")
        else:
            cond = f" [conditional on: {cert['conditional_on']}]" if cert["conditional_on"] else ""
            out.append(f"certificate {name}: branch {cert['branch']}: {cert['claim']}{cond}")
    return "\n".join(out) + "\n"
