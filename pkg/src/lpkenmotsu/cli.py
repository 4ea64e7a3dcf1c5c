"""Command-line interface.

Exit status: 0 when every requested check passes, 1 when at least one fails,
2 for unusable input (unreadable file, malformed or invalid document, bad
arguments).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import BadDimension, InputError, LPKError, SigmaZero
from .exact import parse_rational
from .report import (
    SECTIONS,
    _use_color,
    corollary_rows,
    render_text,
    run_report,
    structured,
    theorems_obj,
    theorems_text,
)
from .soliton import SolitonField, SolitonParams
from .spec_io import builtin_example, parse_spec, serialize

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(LPKError):
    pass


def rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpkenmotsu",
        description="Exact verification of LP-Kenmotsu frames and Ricci-Yamabe solitons.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_spec(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("spec", help="fixture document (JSON); '-' reads stdin")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        return p

    with_spec("validate", help_="structure axioms and LP-Kenmotsu identities")
    with_spec("connection", help_="Levi-Civita connection table")
    with_spec("curvature", help_="Riemann tensor and its symmetries")
    with_spec("ricci", help_="Ricci tensor, scalar curvature, curvature identities")
    with_spec("classify", help_="Einstein / nu-Einstein classification")

    p = with_spec("soliton", help_="Ricci-Yamabe soliton residual")
    p.add_argument("--sigma", type=rational_arg)
    p.add_argument("--rho", type=rational_arg)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--lambda", dest="lam", type=rational_arg)
    group.add_argument("--solve", action="store_true", help="solve Lambda from the zeta contraction")
    p.add_argument("--field", help="'zeta', 'gradient-constant' or comma-separated rationals")

    p = with_spec("gradient", help_="gradient soliton with constant potential")
    p.add_argument("--sigma", type=rational_arg, required=True)
    p.add_argument("--rho", type=rational_arg, required=True)
    p.add_argument("--lambda", dest="lam", type=rational_arg)

    p = sub.add_parser("theorems", help="closed-form Lambda formulas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=rational_arg, required=True)
    p.add_argument("--rho", type=rational_arg, required=True)
    p.add_argument("--r", type=rational_arg, help="scalar curvature for the gradient formulas (default n(n-1))")
    p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("corollaries", help="corollary table with discrepancy flags")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("example", help="write the built-in fixture for odd n >= 3")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", type=Path)

    p = with_spec("report", help_="full report")
    p.add_argument("--sections", help=f"comma-separated subset of {','.join(SECTIONS)}")
    return parser


def read_spec(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text)


def parse_field(text: str, n: int) -> SolitonField:
    if text == SolitonField.ZETA:
        return SolitonField.zeta()
    if text == SolitonField.GRADIENT_CONSTANT:
        return SolitonField.gradient_constant()
    try:
        vec = [parse_rational(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--field: {exc}") from None
    if len(vec) != n:
        raise UsageError(f"--field has {len(vec)} components, expected {n}")
    return SolitonField.explicit(vec)


def soliton_inputs(args, doc):
    s = doc.soliton
    if args.sigma is None and args.rho is None:
        if s is None:
            raise UsageError("no soliton block in the document; pass --sigma and --rho")
        sigma, rho, lam = s.sigma, s.rho, s.lam
        fld = s.soliton_field()
    elif args.sigma is None or args.rho is None:
        raise UsageError("--sigma and --rho go together")
    else:
        sigma, rho, lam = args.sigma, args.rho, None
        fld = s.soliton_field() if s is not None else SolitonField.zeta()
    if getattr(args, "lam", None) is not None:
        lam = args.lam
    if getattr(args, "solve", False):
        lam = None
    if getattr(args, "field", None):
        fld = parse_field(args.field, doc.dimension)
    return SolitonParams(sigma, rho, lam), fld


SPEC_SECTIONS = {
    "validate": ("structure",),
    "connection": ("connection",),
    "curvature": ("curvature",),
    "ricci": ("ricci",),
    "classify": ("classification",),
    "soliton": ("soliton",),
    "gradient": ("soliton",),
    "report": SECTIONS,
}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    color = _use_color(stdout)
    cmd = args.command

    if cmd == "example":
        doc = builtin_example(args.n)
        text = serialize(doc)
        if args.out:
            args.out.write_text(text, encoding="utf-8")
        else:
            stdout.write(text)
        return EXIT_PASS

    if cmd in ("theorems", "corollaries"):
        if args.n < 3:
            raise BadDimension(f"n = {args.n} < 3")
        if cmd == "theorems":
            obj = theorems_obj(args.n, args.sigma, args.rho, args.r)
        else:
            obj = {"passed": True, "n": args.n, "corollaries": corollary_rows(args.n)}
        if args.format == "structured":
            stdout.write(structured({"tool": {"name": "lpkenmotsu", "version": __version__},
                                     "command": cmd, "result": obj, "verdict": True}))
        else:
            stdout.write("\n".join(theorems_text(obj)) + "\n")
        return EXIT_PASS

    doc = read_spec(args.spec)
    sections = SPEC_SECTIONS[cmd]
    params = fld = None
    if cmd == "soliton":
        params, fld = soliton_inputs(args, doc)
    elif cmd == "gradient":
        params, fld = SolitonParams(args.sigma, args.rho, args.lam), SolitonField.gradient_constant()
    elif cmd == "report" and args.sections:
        sections = [x.strip() for x in args.sections.split(",")]
        unknown = [x for x in sections if x not in SECTIONS]
        if unknown:
            raise UsageError(f"unknown section {unknown[0]!r}")
    report = run_report(doc, sections, params=params, soliton_field=fld)
    if args.format == "structured":
        stdout.write(structured(report))
    else:
        stdout.write(render_text(report, color=color))
    return EXIT_PASS if report["verdict"] else EXIT_FAIL


def main(argv=None) -> int:
    try:
        return run(argv)
    except (InputError, UsageError, BadDimension, SigmaZero, ValueError) as exc:
        print(f"lpkenmotsu: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
