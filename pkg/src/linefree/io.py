"""Reading and writing arrangements and incidence structures.

Arrangement text: one line ``a b c`` per projective line, coefficients as
integers, ``p/q`` rationals or Eisenstein numbers like ``-w`` or ``1+2w``.
Incidence text: ``d=<n>`` first, then one point per line as 0-based line
indices.  ``#`` starts a comment.  Both also come as JSON:
``{"lines": [[a, b, c], ...]}`` and ``{"d": n, "points": [[i, j, k], ...]}``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .arrangement import Arrangement, IncidenceStructure
from .errors import InvalidInput, ParseError
from .numbers import format_scalar, parse_scalar


def _strip(line: str) -> str:
    return line.split("#", 1)[0]


def _tokens(line: str):
    for m in re.finditer(r"\S+", line):
        yield m.group(), m.start() + 1


def parse_arrangement_text(text: str) -> Arrangement:
    rows, where = [], []
    for ln, raw in enumerate(text.splitlines(), start=1):
        toks = list(_tokens(_strip(raw)))
        if not toks:
            continue
        if len(toks) != 3:
            col = toks[3][1] if len(toks) > 3 else len(raw.rstrip()) + 1
            raise ParseError(f"expected 3 coefficients, found {len(toks)}", ln, col)
        vals = []
        for tok, col in toks:
            try:
                vals.append(parse_scalar(tok))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad coefficient {tok!r}", ln, col) from None
        rows.append(tuple(vals))
        where.append(ln)
    if not rows:
        raise ParseError("no lines given", 1, 1)
    try:
        return Arrangement.from_coeffs(rows)
    except InvalidInput as exc:
        raise ParseError(str(exc)) from None


def parse_incidence_text(text: str) -> IncidenceStructure:
    d = None
    points = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = _strip(raw)
        if not body.strip():
            continue
        if d is None:
            m = re.fullmatch(r"\s*d\s*=\s*(\d+)\s*", body)
            if not m:
                raise ParseError("first line must be d=<n>", ln, 1)
            d = int(m.group(1))
            continue
        pt = []
        for tok, col in _tokens(body):
            if not tok.isdigit():
                raise ParseError(f"bad line index {tok!r}", ln, col)
            pt.append(int(tok))
        points.append(pt)
    if d is None:
        raise ParseError("missing d=<n> header", 1, 1)
    try:
        return IncidenceStructure.from_points(d, points)
    except InvalidInput as exc:
        raise ParseError(str(exc)) from None


def parse_json(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    try:
        if "lines" in data:
            rows = [tuple(parse_scalar(str(v)) for v in row) for row in data["lines"]]
            return Arrangement.from_coeffs(rows)
        if "d" in data:
            return IncidenceStructure.from_points(int(data["d"]), data.get("points", []))
    except (TypeError, ValueError, InvalidInput) as exc:
        raise ParseError(str(exc)) from None
    raise ParseError('expected a "lines" or "d" key')


def parse(text: str):
    """Arrangement or IncidenceStructure, detected from the content."""
    s = text.lstrip()
    if s.startswith("{"):
        return parse_json(text)
    first = next((ln for ln in (_strip(x).strip() for x in text.splitlines()) if ln), "")
    if first.startswith("d"):
        return parse_incidence_text(text)
    return parse_arrangement_text(text)


def load(path):
    return parse(Path(path).read_text())


def format_arrangement(arr: Arrangement) -> str:
    return "\n".join(" ".join(format_scalar(c) for c in l.coeffs) for l in arr.lines) + "\n"


def format_incidence(inc: IncidenceStructure, expanded: bool = False) -> str:
    pts = inc.points if expanded else inc.rich
    return f"d={inc.d}\n" + "".join(" ".join(map(str, p)) + "\n" for p in pts)


def arrangement_json(arr: Arrangement) -> dict:
    return {"lines": [[format_scalar(c) for c in l.coeffs] for l in arr.lines]}


def incidence_json(inc: IncidenceStructure) -> dict:
    return {"d": inc.d, "points": [list(p) for p in inc.rich]}
