"""Command line interface.

Exit codes: 0 report produced, 1 other error, 2 parse error, 3 internal
inconsistency.  Arrangement arguments are file paths or corpus names such as
``grid13``, ``A1`` or ``A1(a=3)``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import certify, corpus, diophantine, io
from .arrangement import Arrangement
from .errors import InternalInconsistency, LinefreeError, ParseError
from .isomorphism import lattice_isomorphic
from .restriction import exponents_2multi, ziegler

_NAMED = re.compile(r"^(?P<name>[A-Za-z_][A-Za-z0-9_]*?)(?P<d>\d*)(?:\((?P<args>[^)]*)\))?$")


def load_input(spec: str):
    """A file path, or a corpus name: ``grid13``, ``ceva3``, ``pencil5``, ``A1(a=3)``."""
    path = Path(spec)
    if path.exists():
        return io.load(path)
    m = _NAMED.match(spec)
    if m:
        name, digits, args = m.group("name"), m.group("d"), m.group("args")
        kwargs = {}
        if args:
            for part in args.split(","):
                k, _, v = part.partition("=")
                kwargs[k.strip()] = v.strip()
        families = {"pencil": corpus.pencil, "near_pencil": corpus.near_pencil, "generic": corpus.generic}
        if name in families and digits:
            return families[name](int(digits))
        full = name + digits
        if full in corpus.NAMED:
            return corpus.NAMED[full](**kwargs)
    raise ParseError(f"no such file or corpus name: {spec}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def cmd_analyze(args) -> int:
    report = certify.analyze(load_input(args.file))
    if args.text:
        sys.stdout.write(certify.format_report(report))
    else:
        print(_dump(report))
    return 0


def cmd_certify(args) -> int:
    if args.procedure == "replay":
        cert = certify.Certificate.from_json(json.loads(Path(args.file).read_text()))
        rep = cert.replay()
        print(_dump({"ok": rep.ok, "checked": rep.checked, "failures": list(rep.failures)}))
        return 0 if rep.ok else 3
    obj = load_input(args.file)
    fn = {"terao13": certify.certify_terao_13, "nfree12": certify.certify_nearly_free_le12,
          "reduce14": certify.reduce_terao_14}[args.procedure]
    realization = obj if isinstance(obj, Arrangement) else None
    print(fn(obj, realization).dumps())
    return 0


def cmd_systems(args) -> int:
    if args.action == "list":
        for name in diophantine.SYSTEM_NAMES:
            print(f"{name:14s} {diophantine.SYSTEM_INFO[name]}")
        return 0
    if args.action == "solve":
        if not args.target:
            raise ParseError("systems solve needs a system name")
        system = diophantine.predefined(args.target, strict=args.strict_transcription)
    else:
        if not args.target:
            raise ParseError("systems solve-file needs a path")
        system = diophantine.load_system_file(args.target)
    sols = diophantine.enumerate_nonneg(system)
    if args.text:
        print(f"{len(sols)} solutions (complete: {sols.complete})")
        if len(sols):
            print(sols.table())
    else:
        print(_dump({"system": args.target, "count": len(sols), **sols.to_json()}))
    return 0


def cmd_restrict(args) -> int:
    obj = load_input(args.file)
    z = ziegler(obj, args.line)
    ex = exponents_2multi(z)
    print(_dump({"line": args.line, "multiplicities": list(z.mults),
                 "exponents": list(ex.value) if ex.value else None,
                 "case": ex.case_used, "cases": list(ex.cases)}))
    return 0


def cmd_iso(args) -> int:
    res = lattice_isomorphic(load_input(args.file1), load_input(args.file2))
    print(_dump({"isomorphic": res.isomorphic,
                 "mapping": list(res.mapping) if res.mapping else None}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="linefree", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, help=f"worker threads (also {diophantine.THREADS_ENV})")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full report for an arrangement or incidence file")
    a.add_argument("file")
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--text", action="store_true", help="plain text output")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("certify", help="decision-tree certificates")
    c.add_argument("procedure", choices=["terao13", "nfree12", "reduce14", "replay"])
    c.add_argument("file")
    c.set_defaults(func=cmd_certify)

    s = sub.add_parser("systems", help="the named counting systems")
    s.add_argument("action", choices=["list", "solve", "solve-file"])
    s.add_argument("target", nargs="?")
    s.add_argument("--strict-transcription", action="store_true",
                   help="use the sys14 quintuple row exactly as printed")
    s.add_argument("--text", action="store_true", help="aligned table instead of JSON")
    s.set_defaults(func=cmd_systems)

    r = sub.add_parser("restrict", help="Ziegler restriction to one line")
    r.add_argument("file")
    r.add_argument("--line", type=int, required=True)
    r.set_defaults(func=cmd_restrict)

    i = sub.add_parser("iso", help="lattice isomorphism test")
    i.add_argument("file1")
    i.add_argument("file2")
    i.set_defaults(func=cmd_iso)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads:
        os.environ[diophantine.THREADS_ENV] = str(args.threads)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except (LinefreeError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
