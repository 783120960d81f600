"""symindex command line.

    symindex analyze PATH | catalog:NAME   full symmetry analysis
    symindex check PATH | catalog:NAME     structural validation and metric flags only
    symindex catalog list                  named spaces with expected values
    symindex catalog analyze NAME          analysis plus diff against expected values
    symindex catalog export NAME           print a space description for NAME

Exit codes: 0 ok, 2 input or validation error, 3 numerical instability,
4 expected-value mismatch under --strict.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import spacefile
from .catalog import get_entry, named_catalog
from .errors import NotALieAlgebra, NumericalError, ValidationError
from .homogeneous import u_identity_residual
from .kostant import naturally_reductive_residual
from .lie import jacobi_residual
from .linalg import DEFAULT_TOL
from .report import analyze, fmt, with_expected

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_MISMATCH = 0, 2, 3, 4


def _build(target, tol):
    """Return ``(space, catalog entry or None)`` for a path or ``catalog:NAME``."""
    if target.startswith("catalog:"):
        entry = get_entry(target.split(":", 1)[1])
        return entry.build(tol=tol), entry
    return spacefile.load(target, tol=tol), None


def _emit(data, text, args):
    print(json.dumps(data, indent=2) if args.format == "json" else text)


def _strict_failure(report):
    return bool(report.diff) or (report.status != "EXACT" and bool(report.expected))


def _run_analysis(space, entry, args):
    report = analyze(space, invariant_fields=args.invariant_fields, seed=args.seed, tol=args.tolerance)
    if entry is not None:
        report = with_expected(report, entry.expected)
    _emit(report.to_dict(), report.to_text(), args)
    if args.strict and _strict_failure(report):
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_analyze(args):
    space, entry = _build(args.target, args.tolerance)
    return _run_analysis(space, entry, args)


def cmd_check(args):
    try:
        space, _ = _build(args.target, args.tolerance)
    except NotALieAlgebra as exc:
        data = {"valid": False, "error": type(exc).__name__, "message": str(exc),
                "triple": list(exc.triple) if exc.triple else None}
        _emit(data, f"INVALID {type(exc).__name__}: {exc}", args)
        return EXIT_INPUT
    data = {
        "valid": True,
        "name": space.name,
        "dim_g": space.dim_g,
        "dim_h": space.dim_h,
        "dim_m": space.dim_m,
        "checks": {"jacobi": fmt(jacobi_residual(space.g)),
                   "u_identity": fmt(u_identity_residual(space)),
                   "naturally_reductive_defect": fmt(naturally_reductive_residual(space))},
        "flags": {"normal": space.flags.normal, "naturally_reductive": space.flags.naturally_reductive},
        "fix_dim": space.fix.dim,
    }
    text = "\n".join([
        f"valid            {space.name or '<unnamed>'}",
        f"dimensions       g {space.dim_g}, h {space.dim_h}, M {space.dim_m}",
        f"jacobi           {data['checks']['jacobi']}",
        f"metric           normal={space.flags.normal} naturally_reductive={space.flags.naturally_reductive}",
        f"fixed vectors    {space.fix.dim}",
    ])
    _emit(data, text, args)
    return EXIT_OK


def cmd_catalog(args):
    if args.action == "list":
        entries = named_catalog()
        data = [{"name": e.name, "description": e.description, "optional": e.optional,
                 "expected": {k: {"value": v.value, "provenance": v.provenance} for k, v in sorted(e.expected.items())}}
                for e in entries]
        lines = []
        for e in entries:
            exp = ", ".join(f"{k}={v.value} [{v.provenance}]" for k, v in sorted(e.expected.items()))
            lines.append(f"{e.name:<15} {e.description}{' (optional)' if e.optional else ''}\n{'':<15} {exp}")
        _emit(data, "\n".join(lines), args)
        return EXIT_OK
    if not args.name:
        print(f"error: catalog {args.action} needs an entry name", file=sys.stderr)
        return EXIT_INPUT
    entry = get_entry(args.name)
    space = entry.build(tol=args.tolerance)
    if args.action == "export":
        print(spacefile.dumps(space))
        return EXIT_OK
    return _run_analysis(space, entry, args)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOL, help="rank/kernel threshold (default 1e-8)")
    common.add_argument("--invariant-fields", choices=("auto", "on", "off"), default="auto",
                        help="include G-invariant fields as candidates (auto: only if naturally reductive)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--strict", action="store_true",
                        help="exit 4 on expected-value mismatch or a LOWER_BOUND index with expectations")

    parser = argparse.ArgumentParser(prog="symindex", description="Index and leaf of symmetry of homogeneous spaces")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="full symmetry analysis")
    p.add_argument("target", help="space-description file or catalog:NAME")
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("check", parents=[common], help="structural validation only")
    p.add_argument("target")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("catalog", parents=[common], help="named example spaces")
    p.add_argument("action", choices=("list", "analyze", "export"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
