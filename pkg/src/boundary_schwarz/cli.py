"""Command-line interface.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .boundary import find_boundary_fixed_points, julia_inequality_check
from .bounds import BoundsReport, bounds_report, boundary_derivative_at_one, verify_equality_conditions
from .errors import NoConvergence, SchwarzError
from .harness import FuzzConfig, fuzz_campaign, map_to_spec, parse_map_spec
from .holo_maps import derivative, evaluate, make_extremal, unit

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
JULIA_TOL = 1e-10

CSV_COLUMNS = ["c_re", "c_im", "d0_re", "d0_im", "actual", "uho", "osserman", "frolova",
               "strong", "eq3", "eq5", "eq2"]


class InputError(Exception):
    pass


def _pair(text: str) -> tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    if not (math.isfinite(x) and math.isfinite(y)):
        raise argparse.ArgumentTypeError("values must be finite")
    return x, y


def _complex_arg(text: str) -> complex:
    return complex(*_pair(text))


def _load_map(source: str):
    try:
        if source == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(source, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read map file: {exc}") from exc
    return parse_map_spec(data).realize()


def _c(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def report_to_json(rep: BoundsReport) -> dict:
    return {
        "c": _c(rep.c),
        "d0": _c(rep.d0),
        "actual": rep.actual,
        "bound_uho": rep.bound_uho,
        "bound_osserman": rep.bound_osserman,
        "bound_frolova": rep.bound_frolova,
        "bound_strong": rep.bound_strong,
        "gap_frolova": rep.gap_frolova,
        "gap_strong": rep.gap_strong,
        "gap_osserman": rep.gap_osserman,
        "equality_frolova": rep.equality_frolova,
        "equality_strong": rep.equality_strong,
        "equality_osserman": rep.equality_osserman,
        "extremal_params": None if rep.extremal_params is None else
        {"c": _c(rep.extremal_params[0]), "a": rep.extremal_params[1]},
    }


def report_to_csv(rep: BoundsReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    row = [rep.c.real, rep.c.imag, rep.d0.real, rep.d0.imag, rep.actual,
           "" if rep.bound_uho is None else rep.bound_uho,
           rep.bound_osserman, rep.bound_frolova, rep.bound_strong,
           rep.equality_frolova, rep.equality_strong, rep.equality_osserman]
    writer.writerow([repr(v) if isinstance(v, float) else str(v).lower() for v in row])
    return buf.getvalue()


def report_to_text(rep: BoundsReport) -> str:
    lines = [f"{key}: {value!r}" for key, value in report_to_json(rep).items()]
    return "\n".join(lines) + "\n"


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _bounds_ok(rep: BoundsReport, tol: float = 1e-9) -> bool:
    scale = max(1.0, rep.actual)
    return (rep.actual >= rep.bound_frolova - tol * scale
            and rep.bound_frolova >= rep.bound_strong - tol * scale
            and rep.bound_strong >= rep.bound_osserman - tol * scale)


def cmd_eval(args) -> int:
    _emit(_c(evaluate(_load_map(args.map), args.z)))
    return EXIT_OK


def cmd_derivative(args) -> int:
    _emit(_c(derivative(_load_map(args.map), args.z)))
    return EXIT_OK


def cmd_bounds(args) -> int:
    rep = bounds_report(_load_map(args.map))
    if args.format == "csv":
        sys.stdout.write(report_to_csv(rep))
    elif args.format == "text":
        sys.stdout.write(report_to_text(rep))
    else:
        _emit(report_to_json(rep))
    return EXIT_OK if _bounds_ok(rep) else EXIT_VIOLATION


def cmd_extremal(args) -> int:
    f = make_extremal(args.c, args.a)
    spec = map_to_spec(f).to_json()
    if not args.verify:
        _emit(spec)
        return EXIT_OK
    cond = verify_equality_conditions(args.c, args.a)
    _emit({"map": spec, "report": report_to_json(cond.report),
           "equality": {"eq3": cond.eq3, "eq5": cond.eq5, "eq2": cond.eq2}})
    return EXIT_OK if cond.eq3 else EXIT_VIOLATION


def cmd_julia(args) -> int:
    f = _load_map(args.map)
    xi, eta = unit(args.xi), unit(args.eta)
    if args.alpha is not None:
        alpha = args.alpha
    elif args.xi == 0.0 and args.eta == 0.0:
        alpha = boundary_derivative_at_one(f)
    else:
        raise InputError("--alpha is required unless xi = eta = 0")
    rep = julia_inequality_check(f, xi, eta, alpha, args.samples, args.seed)
    _emit({"alpha": alpha, "max_violation": rep.max_violation,
           "max_relative_violation": rep.max_relative_violation,
           "equality_everywhere": rep.equality_everywhere, "automorphism": rep.automorphism})
    return EXIT_OK if rep.max_relative_violation <= JULIA_TOL else EXIT_VIOLATION


def cmd_fixed_points(args) -> int:
    points = find_boundary_fixed_points(_load_map(args.map))
    _emit([{"theta": p.theta, "derivative": p.derivative.value, "class": p.classification.value}
           for p in points])
    return EXIT_OK


def cmd_lowner(args) -> int:
    from .lowner import lowner_check

    theta1, theta2 = args.arc
    arc = lowner_check(_load_map(args.map), theta1, theta2)
    _emit({"s": arc.s, "sigma": arc.sigma, "bound_quantitative": arc.bound_quantitative,
           "d0_modulus": arc.d0_modulus, "is_rotation": arc.is_rotation,
           "holds_quantitative": arc.holds_quantitative, "holds_lowner": arc.holds_lowner})
    return EXIT_OK if arc.holds_quantitative and arc.holds_lowner else EXIT_VIOLATION


def cmd_fuzz(args) -> int:
    config = FuzzConfig(count=args.count, max_degree=args.max_degree,
                        max_zero_modulus=args.max_zero_modulus, seed=args.seed, tolerance=args.tol)
    summary = fuzz_campaign(config)
    _emit(summary.to_json())
    return EXIT_OK if not summary.violations else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boundary-schwarz",
        description="Numerically certify boundary Schwarz lemma bounds for disk self-maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_map(p):
        p.add_argument("--map", required=True, help="JSON map spec file, or - for stdin")
        return p

    p = with_map(sub.add_parser("eval", help="evaluate a map"))
    p.add_argument("--z", type=_complex_arg, required=True, metavar="RE,IM")
    p.set_defaults(func=cmd_eval)

    p = with_map(sub.add_parser("derivative", help="evaluate the derivative of a map"))
    p.add_argument("--z", type=_complex_arg, required=True, metavar="RE,IM")
    p.set_defaults(func=cmd_derivative)

    p = with_map(sub.add_parser("bounds", help="f'(1) against all lower bounds"))
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("extremal", help="emit a member of the extremal family")
    p.add_argument("--c", type=_complex_arg, required=True, metavar="RE,IM")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_extremal)

    p = with_map(sub.add_parser("julia", help="sample the Julia inequality"))
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--xi", type=float, default=0.0, help="angle of xi")
    p.add_argument("--eta", type=float, default=0.0, help="angle of eta")
    p.add_argument("--alpha", type=float, default=None)
    p.set_defaults(func=cmd_julia)

    p = with_map(sub.add_parser("fixed-points", help="boundary fixed points of a Blaschke product"))
    p.set_defaults(func=cmd_fixed_points)

    p = with_map(sub.add_parser("lowner", help="arc-length expansion check"))
    p.add_argument("--arc", type=_pair, required=True, metavar="THETA1,THETA2")
    p.set_defaults(func=cmd_lowner)

    p = sub.add_parser("fuzz", help="randomized certification campaign")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--max-zero-modulus", type=float, default=0.9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (SchwarzError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
