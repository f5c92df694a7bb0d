"""Command line interface.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
3 numerical or internal failure.  The default tolerance for numerical
checks can be set through the CURVEGKZ_TOL environment variable.
"""

import argparse
import os
import sys
from fractions import Fraction

from .curve import CurveMatrix
from .errors import (
    LogObstructionError,
    MatrixValidationError,
    PolarLineError,
    QuadratureError,
    SeriesDenominatorError,
)
from .figure import build_svg
from .report import (
    SCHEMA,
    analyze_report,
    cohomology_report,
    solve_report,
    to_json,
    verify_report,
)
from .toric import ORDER_NAMES


def _parse_matrix(text):
    try:
        values = [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError as err:
        raise MatrixValidationError("parse", f"matrix entries must be integers: {err}")
    return CurveMatrix(values)


def _parse_beta(text):
    parts = [t for t in text.replace(" ", "").split(",") if t != ""]
    if len(parts) != 2:
        raise ValueError(f"beta must have two components, got {text!r}")
    return (Fraction(parts[0]), Fraction(parts[1]))


def _default_tol():
    raw = os.environ.get("CURVEGKZ_TOL")
    if raw is None:
        return 1e-8
    return float(raw)


def _build_parser():
    p = argparse.ArgumentParser(
        prog="curvegkz",
        description="Exact and numerical analysis of two-row hypergeometric systems on monomial curves.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-A", "--matrix", required=True, help="comma separated exponents, e.g. 0,1,3,4")
        sp.add_argument("--output", help="write to this path instead of stdout")

    sp = sub.add_parser("analyze", help="curve invariants, lines, exceptional parameters")
    common(sp)
    sp.add_argument("--window", type=int, default=8)
    sp.add_argument("--format", choices=["json"], default="json")

    sp = sub.add_parser("solve", help="solution basis at a parameter point")
    common(sp)
    sp.add_argument("-b", "--beta", required=True, help="comma separated rationals, e.g. 1/2,1")
    sp.add_argument("--order", choices=list(ORDER_NAMES), default="d1-first")
    sp.add_argument("--bound", type=int, default=None, help="series truncation bound")
    sp.add_argument("--format", choices=["json"], default="json")

    sp = sub.add_parser("verify", help="run exact and numerical checks at a parameter point")
    common(sp)
    sp.add_argument("-b", "--beta", required=True)
    sp.add_argument("--order", choices=list(ORDER_NAMES), default="d1-first")
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=["json"], default="json")

    sp = sub.add_parser("cohomology", help="graded local cohomology support and generators")
    common(sp)
    sp.add_argument("--format", choices=["json"], default="json")

    sp = sub.add_parser("figure", help="parameter plane portrait")
    common(sp)
    sp.add_argument("--window", type=int, default=5)
    sp.add_argument("--format", choices=["svg", "json"], default="svg")

    return p


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        A = _parse_matrix(args.matrix)
        if args.command == "analyze":
            payload = to_json(analyze_report(A, window=args.window))
        elif args.command == "solve":
            beta = _parse_beta(args.beta)
            payload = to_json(solve_report(A, beta, order=args.order, bound=args.bound))
        elif args.command == "verify":
            beta = _parse_beta(args.beta)
            tol = args.tol if args.tol is not None else _default_tol()
            report = verify_report(A, beta, tol=tol, seed=args.seed, order=args.order)
            payload = to_json(report)
        elif args.command == "cohomology":
            payload = to_json(cohomology_report(A))
        elif args.command == "figure":
            svg = build_svg(A, window=args.window)
            if args.format == "json":
                payload = to_json({"schema": SCHEMA, "command": "figure", "svg": svg})
            else:
                payload = svg
        else:  # pragma: no cover - argparse enforces the choices
            parser.error(f"unknown command {args.command}")
    except MatrixValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (
        QuadratureError,
        PolarLineError,
        SeriesDenominatorError,
        LogObstructionError,
        ArithmeticError,
        AssertionError,
    ) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)

    if args.command == "verify" and report["status"] != "pass":
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
