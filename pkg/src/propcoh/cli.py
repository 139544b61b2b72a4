"""Command line interface: ``propcoh check|laws|omega|demo``.

Exit status is 0 when every assertion passes, 1 when any fails, and 2 on
parse, validation or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .demos import DEMOS, demo_cmd
from .errors import PropCohError
from .fincat import BUILTIN_BASES, builtin_base
from .harness import laws_harness
from .model import parse_model, run_assertions
from .topos import sieves_on


def omega_table(cat):
    return [{"object": o, "count": len(ss), "sieves": [list(s.members) for s in ss]}
            for o in cat.objects for ss in [sieves_on(cat, o)]]


def omega_cmd(base=None, cat=None, as_json=False):
    """Per-object sieve counts and members of omega."""
    if cat is None:
        cat = builtin_base(base)
    table = omega_table(cat)
    if as_json:
        return json.dumps({"base": base, "objects": table}, indent=2) + "\n"
    lines = []
    for row in table:
        members = ", ".join("{" + ",".join(s) + "}" for s in row["sieves"])
        lines.append(f"{row['object']}: {row['count']}  [{members}]")
    return "\n".join(lines) + "\n"


def _emit(report, as_json, out):
    out.write(report.to_json() if as_json else report.to_text())


def _check(args, out, err):
    try:
        text = Path(args.file).read_text(encoding="utf-8")
        model = parse_model(text)
        report = run_assertions(model)
    except (OSError, UnicodeDecodeError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except PropCohError as exc:
        err.write(f"error: {args.file}: {type(exc).__name__}: {exc}\n")
        return 2
    _emit(report, args.json, out)
    return 0 if report.ok else 1


def _laws(args, out, err):
    if args.cases < 1:
        err.write("error: --cases must be at least 1\n")
        return 2
    report = laws_harness(args.base, args.cases, args.seed)
    _emit(report, args.json, out)
    return 0 if report.ok else 1


def _omega(args, out, err):
    try:
        if args.file:
            cat = parse_model(Path(args.file).read_text(encoding="utf-8")).env.cat
            out.write(omega_cmd(args.file, cat=cat, as_json=args.json))
        else:
            out.write(omega_cmd(args.base, as_json=args.json))
    except (OSError, PropCohError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    return 0


def _demo(args, out, err):
    try:
        text, report = demo_cmd(args.name)
    except PropCohError as exc:
        err.write(f"error: {exc}\n")
        return 2
    if args.json:
        _emit(report, True, out)
    else:
        out.write(text)
        _emit(report, False, out)
    return 0 if report.ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="propcoh",
        description="Check a universe of propositions interpreted by the "
                    "subobject classifier of a finite presheaf topos.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the assertions of a model file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_check)

    p = sub.add_parser("laws", help="randomized law harness")
    p.add_argument("--base", choices=BUILTIN_BASES, required=True)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_laws)

    p = sub.add_parser("omega", help="print the sieves making up omega")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--base")
    g.add_argument("--file", help="take the base category from a model file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_omega)

    p = sub.add_parser("demo", help="run a canned construction")
    p.add_argument("name", help=" | ".join(DEMOS))
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_demo)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    return args.run(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
