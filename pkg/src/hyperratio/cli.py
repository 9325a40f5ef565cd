"""Command-line front end.

Exit codes: 0 verified, 1 certified violation, 2 bad input or failed
hypotheses, 3 precision exhausted or inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from hyperratio.errors import DomainError, HyperRatioError, PrecisionError, PreconditionError
from hyperratio.exp_sections import e_power_bounds, ramanujan_theta, ratio_f, ratio_g, remainder, section
from hyperratio.hyper_series import (
    HyperParams,
    Precision,
    SeriesValue,
    coeff,
    eval_pfq,
    pochhammer,
    term_ratio,
    to_rational,
)
from hyperratio.ratio_kernel import (
    DEFAULT_DEPTH,
    HYPOTHESES_FAIL,
    CoeffSeq,
    cauchy_product_coeffs,
    certify_coeff_monotone,
    prefix_ratio_monotone,
    theorem1_w,
    theorem1_w_ratio,
    theorem2_w,
    theorem2_w_ratio,
)
from hyperratio.turan_suite import (
    AbcParams,
    AbcVecParams,
    Target,
    check_theorem1_conditions,
    check_theorem2_conditions,
    default_grid,
    format_number,
    format_rational,
    grid_monotone_check,
    h_kummer,
    h_pfq,
    parse_grid,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3
PRECISION_ENV = "HYPERRATIO_PRECISION_BITS"
THETA_ESCALATIONS = 4


class InputError(Exception):
    pass


def rational_list(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(to_rational(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational list {text!r}: {exc}") from None


def rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}: {exc}") from None


def index_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        start = int(lo)
        stop = int(hi) if sep else start
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad index range {text!r}; use N or LO..HI") from None
    if start < 1 or stop < start:
        raise argparse.ArgumentTypeError(f"bad index range {text!r}")
    return range(start, stop + 1)


def default_bits() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return 128
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{PRECISION_ENV}={raw!r} is not an integer") from None


def _precision(args) -> Precision:
    try:
        return Precision(args.bits, args.target_rel_error)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _scalar(values: tuple[Fraction, ...], name: str) -> Fraction:
    if len(values) != 1:
        raise InputError(f"--{name} expects a single value, got {len(values)}")
    return values[0]


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name} is required here")


def _series_row(value: SeriesValue) -> dict:
    return {
        "value": format_number(value.value),
        "error_radius": format_number(value.error_radius, 6),
        "terms_used": value.terms_used,
    }


def cmd_eval(args, out) -> int:
    prec = _precision(args)
    fn = args.function
    if fn in ("1f1", "pfq", "h", "hpq"):
        _need(args, "a", "b")
    if fn in ("section", "remainder", "f", "g"):
        _need(args, "n")
    if fn == "1f1":
        value = eval_pfq(HyperParams((_scalar(args.a, "a"),), (_scalar(args.b, "b"),)), args.x, prec)
    elif fn == "pfq":
        value = eval_pfq(HyperParams(args.a, args.b), args.x, prec)
    elif fn == "section":
        value = section(args.n, args.x, prec)
    elif fn == "remainder":
        value = remainder(args.n, args.x, prec)
    elif fn == "f":
        value = ratio_f(args.n, args.x, prec)
    elif fn == "g":
        value = ratio_g(args.n, args.x, prec)
    elif fn == "h":
        _need(args, "c")
        params = AbcParams(_scalar(args.a, "a"), _scalar(args.b, "b"), _scalar(args.c, "c"))
        value = h_kummer(params, args.x, prec)
    else:
        _need(args, "c")
        value = h_pfq(AbcVecParams(args.a, args.b, args.c), args.x, prec)
    row = {"function": fn, "x": format_rational(args.x), **_series_row(value)}
    fmt = args.format or "plain"
    if fmt == "json":
        print(json.dumps(row, indent=2), file=out)
    elif fmt == "csv":
        _write_csv(out, list(row), [list(row.values())])
    else:
        width = max(len(k) for k in row)
        for key, val in row.items():
            print(f"{key:<{width}}  {val}", file=out)
    return EXIT_OK


def _write_csv(out, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    out.write(buf.getvalue())


def _plain_table(out, header, rows) -> None:
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) for i, h in enumerate(header)]
    print("  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip(), file=out)
    for r in rows:
        print("  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip(), file=out)


def cmd_sections(args, out) -> int:
    prec = _precision(args)
    grid = parse_grid(args.grid)
    header = ["x", "S_n", "R_n"] + (["f_n"] if args.n >= 1 else [])
    rows = []
    for x in grid:
        row = [format_rational(x),
               format_number(section(args.n, x, prec).value, 20),
               format_number(remainder(args.n, x, prec).value, 20)]
        if args.n >= 1:
            row.append(format_number(ratio_f(args.n, x, prec).value, 20))
        rows.append(row)
    _emit_table(args.format or "plain", out, header, rows)
    return EXIT_OK


def _emit_table(fmt, out, header, rows) -> None:
    if fmt == "json":
        print(json.dumps([dict(zip(header, r)) for r in rows], indent=2), file=out)
    elif fmt == "csv":
        _write_csv(out, header, rows)
    else:
        _plain_table(out, header, rows)


def cmd_theta(args, out) -> int:
    prec = _precision(args)
    rows, all_in = [], True
    for n in args.n:
        result, p = None, prec
        for _ in range(THETA_ESCALATIONS + 1):
            try:
                result = ramanujan_theta(n, p, literal_remainder=args.literal_remainder)
                break
            except PrecisionError:
                p = p.escalated()
        if result is None:
            raise PrecisionError(f"theta({n}) still straddles a bound after {THETA_ESCALATIONS} escalations")
        all_in = all_in and result.in_bounds
        rows.append([n, format_number(result.theta, 20), format_number(result.error_radius, 6),
                     str(result.in_bounds).lower()])
    if args.literal_remainder:
        print("warning: --literal-remainder uses R_{n-1}(n) as printed; this yields -theta(n) "
              "and cannot satisfy 1/3 < theta < 1/2", file=sys.stderr)
    _emit_table(args.format or "plain", out, ["n", "theta", "error_radius", "in_bounds"], rows)
    return EXIT_OK if all_in else EXIT_VIOLATION


def _verify_target(args) -> Target:
    if args.target in ("f", "g"):
        _need(args, "n")
        if args.n < 1:
            raise InputError("--n must be at least 1")
        return Target(args.target, n=args.n)
    _need(args, "a", "b", "c")
    if args.target == "h":
        return Target.h(_scalar(args.a, "a"), _scalar(args.b, "b"), _scalar(args.c, "c"))
    return Target.hpq(args.a, args.b, args.c)


def cmd_verify(args, out) -> int:
    prec = _precision(args)
    target = _verify_target(args)
    conditions = target.conditions()
    fmt = args.format or "json"
    if not conditions.passed and not args.force:
        print(conditions.format(), file=sys.stderr)
        print("hypotheses fail; rerun with --force to evaluate anyway", file=sys.stderr)
        if fmt == "json":
            print(json.dumps({"conditions": conditions.to_dict(), "report": None}, indent=2), file=out)
        return EXIT_INPUT
    if args.grid:
        grid = parse_grid(args.grid)
    else:
        x_max = args.x_max
        if x_max is None:
            x_max = Fraction(99, 100) if target.domain_limit is not None else Fraction(100)
        grid = default_grid(x_max, args.points, "log")
    report = grid_monotone_check(target, grid, prec)
    if fmt == "json":
        print(json.dumps({"conditions": conditions.to_dict(), "report": report.to_dict()}, indent=2), file=out)
    elif fmt == "csv":
        out.write(report.to_csv())
    else:
        print(conditions.format(), file=out)
        print(f"target            {report.target}", file=out)
        print(f"verdict           {report.verdict}", file=out)
        print(f"nondecreasing     {str(report.nondecreasing).lower()}", file=out)
        print(f"turan_holds       {str(report.turan_holds).lower()}", file=out)
        if report.ceiling is not None:
            print(f"below_ceiling     {str(report.ceiling_holds).lower()} ({format_rational(report.ceiling)})", file=out)
        print(f"worst_margin      {format_number(report.worst_margin, 12)}", file=out)
        print(f"turan_min         {format_number(report.turan_min, 12)}", file=out)
        if report.beyond_theorem_domain:
            print("note              grid extends beyond the stated theorem domain [0, 1)", file=out)
    if report.verdict == "violated":
        print("!!! CERTIFIED VIOLATION !!!", file=sys.stderr)
        for u, v in report.decreases:
            print(f"  decrease between x = {format_rational(u)} and x = {format_rational(v)}", file=sys.stderr)
        for x in report.turan_violations:
            print(f"  Turán bound fails at x = {format_rational(x)}", file=sys.stderr)
        for x in report.ceiling_violations:
            print(f"  value reaches the ceiling at x = {format_rational(x)}", file=sys.stderr)
        return EXIT_VIOLATION
    if report.verdict == "inconclusive":
        print("inconclusive after precision escalation", file=sys.stderr)
        return EXIT_PRECISION
    return EXIT_OK


def cmd_certify(args, out) -> int:
    try:
        cert = certify_coeff_monotone(args.a, args.b, args.c, args.N, unsafe=args.force)
    except PreconditionError as exc:
        message = str(exc)
        if message.startswith(HYPOTHESES_FAIL):
            message = HYPOTHESES_FAIL + "; rerun with --force to certify anyway"
        raise InputError(message) from None
    print(cert.to_json(), file=out)
    return EXIT_OK if cert.holds else EXIT_VIOLATION


def _exact_value(args):
    what = args.quantity
    if what == "pochhammer":
        _need(args, "z", "n")
        return pochhammer(args.z, args.n)
    if what == "coeff":
        _need(args, "a", "b", "n")
        return coeff(HyperParams(args.a, args.b), args.n)
    if what == "term-ratio":
        _need(args, "a", "b", "x", "n")
        return term_ratio(HyperParams(args.a, args.b), args.x, args.n)
    _need(args, "b", "c", "n", "k")
    scalar = len(args.b) == 1 and len(args.c) == 1
    if what == "w":
        if scalar:
            return theorem1_w(args.b[0], args.c[0], args.n, args.k)
        return theorem2_w(args.b, args.c, args.n, args.k)
    if scalar:
        return theorem1_w_ratio(args.b[0], args.c[0], args.n, args.k)
    return theorem2_w_ratio(args.b, args.c, args.n, args.k)


def cmd_exact(args, out) -> int:
    """Exact-rational helpers; prints ``p/q`` or a JSON document."""
    what = args.quantity
    if what in ("pochhammer", "coeff", "term-ratio", "w", "w-ratio"):
        print(str(_exact_value(args)), file=out)
        return EXIT_OK
    if what == "cauchy":
        _need(args, "a", "b", "N")
        left = CoeffSeq.hypergeometric(HyperParams(args.a, args.b))
        right = left
        if args.a2 is not None or args.b2 is not None:
            right = CoeffSeq.hypergeometric(HyperParams(args.a2 or args.a, args.b2 if args.b2 is not None else args.b))
        coeffs = cauchy_product_coeffs(left, right, args.N)
        print(json.dumps([str(v) for v in coeffs]), file=out)
        return EXIT_OK
    if what == "prefix":
        _need(args, "num", "den")
        if len(args.num) != len(args.den):
            raise InputError("--num and --den need the same length")
        cert = prefix_ratio_monotone(CoeffSeq.from_values(args.num), CoeffSeq.from_values(args.den),
                                     len(args.num) - 1)
        print(cert.to_json(), file=out)
        return EXIT_OK if cert.holds else EXIT_VIOLATION
    if what == "conditions":
        _need(args, "a", "b", "c")
        reports = []
        if len(args.a) == len(args.b) == len(args.c) == 1:
            reports.append(check_theorem1_conditions(AbcParams(args.a[0], args.b[0], args.c[0])))
        reports.append(check_theorem2_conditions(AbcVecParams(args.a, args.b, args.c)))
        print(json.dumps([r.to_dict() for r in reports], indent=2), file=out)
        return EXIT_OK if any(r.passed for r in reports) else EXIT_VIOLATION
    _need(args, "n")
    bounds = e_power_bounds(args.n, _precision(args))
    print(json.dumps({
        "n": bounds.n,
        "lower": str(bounds.lower),
        "upper": str(bounds.upper),
        "e_power": format_number(bounds.e_power.value),
        "verified": bounds.verified,
    }, indent=2), file=out)
    return EXIT_OK if bounds.verified else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bits", type=int, default=default_bits(),
                        help=f"working precision in bits (default 128, or ${PRECISION_ENV})")
    common.add_argument("--target-rel-error", type=rational, default=Fraction(1, 10**30),
                        help="relative truncation goal (default 1e-30)")
    common.add_argument("--format", choices=("json", "csv", "plain"), default=None)

    parser = argparse.ArgumentParser(prog="hyperratio", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate one function at one point")
    p.add_argument("function", choices=("1f1", "pfq", "section", "remainder", "f", "g", "h", "hpq"))
    p.add_argument("--a", type=rational_list)
    p.add_argument("--b", type=rational_list)
    p.add_argument("--c", type=rational_list)
    p.add_argument("--n", type=int)
    p.add_argument("--x", type=rational, required=True)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("sections", parents=[common], help="table of S_n, R_n and f_n on a grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", default="0:10:11", help="min:max:points[@log] or a list x1,x2,...")
    p.set_defaults(handler=cmd_sections)

    p = sub.add_parser("theta", parents=[common], help="Ramanujan's theta(n) with bound checks")
    p.add_argument("--n", type=index_range, required=True, help="N or LO..HI")
    p.add_argument("--literal-remainder", action="store_true",
                   help="use R_{n-1}(n) instead of the section S_{n-1}(n)")
    p.set_defaults(handler=cmd_theta)

    p = sub.add_parser("verify", parents=[common], help="grid check of monotonicity and Turán bounds")
    p.add_argument("--target", choices=("f", "g", "h", "hpq"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=rational_list)
    p.add_argument("--b", type=rational_list)
    p.add_argument("--c", type=rational_list)
    p.add_argument("--grid", help="min:max:points[@log] or a list x1,x2,...")
    p.add_argument("--x-max", type=rational)
    p.add_argument("--points", type=int, default=129)
    p.add_argument("--force", action="store_true", help="run even if hypotheses fail")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("certify", parents=[common], help="exact coefficient-ratio certificate")
    p.add_argument("--a", type=rational_list, required=True)
    p.add_argument("--b", type=rational_list, required=True)
    p.add_argument("--c", type=rational_list, required=True)
    p.add_argument("--N", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--force", action="store_true", help="certify even if hypotheses fail")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("exact", parents=[common], help="exact-rational building blocks")
    p.add_argument("quantity", choices=("pochhammer", "coeff", "term-ratio", "w", "w-ratio",
                                        "cauchy", "prefix", "conditions", "ebounds"))
    p.add_argument("--z", type=rational)
    p.add_argument("--a", type=rational_list)
    p.add_argument("--b", type=rational_list)
    p.add_argument("--c", type=rational_list)
    p.add_argument("--a2", type=rational_list, help="second factor of a Cauchy product")
    p.add_argument("--b2", type=rational_list, help="second factor of a Cauchy product")
    p.add_argument("--num", type=rational_list, help="explicit numerator sequence")
    p.add_argument("--den", type=rational_list, help="explicit denominator sequence")
    p.add_argument("--x", type=rational)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--N", type=int)
    p.set_defaults(handler=cmd_exact)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, out)
    except PrecisionError as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (InputError, DomainError, PreconditionError, HyperRatioError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
