"""Command-line tables for the overshoot, root, value-at-jump and asymptotic runs.

Every subcommand prints one row per requested n as CSV (default) or JSON.
Numbers are printed to ``--digits`` significant figures; identical
arguments give byte-identical output.

Exit status: 0 success, 2 usage error, 3 parameter outside its domain,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .errors import DomainError, NumericalError
from .critpoints import u_map
from .gibbsrun import (
    asymptotic_compare,
    conjecture_at_1,
    laguerre_critical_points,
    overshoot_table,
    sign_critical_point,
    triple_sum_limit,
    triple_sum_partial,
)
from .mpnum import RealMP, as_fraction
from .orthofam import FamilySpec

EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NUMERICAL = 4

OVERSHOOT_COLUMNS = [
    "family", "param", "n", "digits", "x_minus", "x_plus", "u_minus", "u_plus",
    "value_minus", "value_plus", "overshoot", "gamma_error",
]
ROOT_COLUMNS = ["family", "param", "n", "digits", "x_minus", "x_plus", "u_minus", "u_plus"]
CONJECTURE_COLUMNS = ["alpha", "n", "digits", "via", "value_at_1"]
TRIPLE_SUM_COLUMNS = ["J", "digits", "partial", "limit", "error"]
ASYMPTOTIC_COLUMNS = ["what", "param", "n", "x", "digits", "exact", "asymptotic", "rel_error"]

# options whose values may start with a minus sign, e.g. "--alpha -1/2"
_SIGNED_OPTIONS = ("--alpha", "--lambda", "--x")


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _n_list(text: str) -> list[int]:
    try:
        ns = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers: {text!r}")
    if not ns:
        raise argparse.ArgumentTypeError("the n list is empty")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise argparse.ArgumentTypeError(f"the n list must be strictly ascending: {text!r}")
    return ns


def _digits(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"digits must be an integer: {text!r}")
    if d < 15:
        raise argparse.ArgumentTypeError(f"digits must be at least 15, got {d}")
    return d


def _jobs(text: str) -> int:
    j = int(text)
    if j < 1:
        raise argparse.ArgumentTypeError("jobs must be >= 1")
    return j


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gibbspoly",
        description="Gibbs overshoot tables for orthogonal polynomial expansions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_n_list, required=True, help="comma-separated ascending degrees")
    common.add_argument("--digits", type=_digits, default=30, help="significant digits (>= 15)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", default=None, help="write to this file instead of stdout")

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", choices=["laguerre", "hermite", "gegenbauer"], default="laguerre")
    family.add_argument("--alpha", type=_rational, default=Fraction(0), help="Laguerre parameter")
    family.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(1, 2),
                        help="Gegenbauer parameter")

    p = sub.add_parser("overshoot", parents=[common, family],
                       help="overshoot at the critical points next to the jump")
    p.add_argument("--jobs", type=_jobs, default=1, help="worker processes")

    sub.add_parser("roots", parents=[common, family], help="critical points only")

    p = sub.add_parser("conjecture", parents=[common], help="Laguerre partial sum at x = 1")
    p.add_argument("--alpha", type=_rational, default=Fraction(0))
    p.add_argument("--via", choices=["direct_sum", "carlitz"], default="direct_sum")

    sub.add_parser("triple-sum", parents=[common],
                   help="partial sums of the alpha = 0 triple sum (--n gives J)")

    p = sub.add_parser("asymptotics", parents=[common],
                       help="relative error of the large-n approximations")
    p.add_argument("--what", required=True,
                   choices=["glp_sine", "hermite_sine", "dn_alpha", "final_derivative"])
    p.add_argument("--alpha", type=_rational, default=Fraction(-1, 2))
    p.add_argument("--x", type=_rational, default=Fraction(1, 2), help="evaluation point")
    return parser


def _join_signed(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _SIGNED_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _family_spec(args) -> FamilySpec:
    if args.family == "laguerre":
        return FamilySpec.laguerre(args.alpha)
    if args.family == "hermite":
        return FamilySpec.hermite()
    return FamilySpec.gegenbauer(args.lam)


def _num(v, digits: int) -> str:
    if v is None:
        return ""
    if isinstance(v, RealMP):
        return v.format(digits)
    return str(v)


def _root(r, digits: int) -> str:
    return "" if r is None else r.refined.format(digits)


def _overshoot_rows(args) -> tuple[list[str], list[dict]]:
    spec = _family_spec(args)
    d = args.digits
    rows = []
    for r in overshoot_table(spec, args.n, d, args.jobs):
        rows.append({
            "family": spec.family.value, "param": spec.param_label, "n": str(r.n), "digits": str(d),
            "x_minus": _root(r.x_minus, d), "x_plus": _root(r.x_plus, d),
            "u_minus": _num(r.u_minus, d), "u_plus": _num(r.u_plus, d),
            "value_minus": _num(r.value_minus, d), "value_plus": _num(r.value_plus, d),
            "overshoot": _num(r.overshoot, d), "gamma_error": _num(r.gamma_error, d),
        })
    return OVERSHOOT_COLUMNS, rows


def _roots_rows(args) -> tuple[list[str], list[dict]]:
    spec = _family_spec(args)
    d = args.digits
    rows = []
    for n in args.n:
        row = {"family": spec.family.value, "param": spec.param_label, "n": str(n), "digits": str(d)}
        if args.family == "laguerre":
            lo, hi = laguerre_critical_points(args.alpha, n, d)
            row.update({
                "x_minus": _root(lo, d), "x_plus": _root(hi, d),
                "u_minus": "" if lo is None else u_map(lo.refined, n, d).format(d),
                "u_plus": "" if hi is None else u_map(hi.refined, n, d).format(d),
            })
        else:
            r = sign_critical_point(spec, n, d)
            row.update({"x_minus": "", "x_plus": _root(r, d), "u_minus": "", "u_plus": ""})
        rows.append(row)
    return ROOT_COLUMNS, rows


def _conjecture_rows(args) -> tuple[list[str], list[dict]]:
    d = args.digits
    rows = []
    for n in args.n:
        r = conjecture_at_1(args.alpha, n, d, args.via)
        rows.append({"alpha": str(r.alpha), "n": str(n), "digits": str(d), "via": r.via,
                     "value_at_1": r.value_at_1.format(d)})
    return CONJECTURE_COLUMNS, rows


def _triple_sum_rows(args) -> tuple[list[str], list[dict]]:
    d = args.digits
    limit = triple_sum_limit(d)
    rows = []
    for J in args.n:
        s = triple_sum_partial(J, d)
        rows.append({"J": str(J), "digits": str(d), "partial": s.format(d), "limit": limit.format(d),
                     "error": abs(s - limit).format(d)})
    return TRIPLE_SUM_COLUMNS, rows


def _asymptotic_rows(args) -> tuple[list[str], list[dict]]:
    d = args.digits
    rows = []
    for n in args.n:
        if args.what == "hermite_sine":
            params, label, x = {"N": n, "x": args.x}, "", str(args.x)
        elif args.what == "dn_alpha":
            params, label, x = {"alpha": args.alpha, "n": n}, f"alpha={args.alpha}", ""
        else:
            params, label, x = {"alpha": args.alpha, "n": n, "x": args.x}, f"alpha={args.alpha}", str(args.x)
        rep = asymptotic_compare(args.what, params, d)
        rows.append({"what": args.what, "param": label, "n": str(n), "x": x, "digits": str(d),
                     "exact": rep.exact.format(d), "asymptotic": rep.asymptotic.format(d),
                     "rel_error": rep.rel_error.format(d)})
    return ASYMPTOTIC_COLUMNS, rows


_COMMANDS = {
    "overshoot": _overshoot_rows,
    "roots": _roots_rows,
    "conjecture": _conjecture_rows,
    "triple-sum": _triple_sum_rows,
    "asymptotics": _asymptotic_rows,
}


def render(columns: list[str], rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        data = [{c: (row.get(c) or None) for c in columns} for row in rows]
        return json.dumps(data, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: row.get(c, "") for c in columns})
    return buf.getvalue()


def run(args) -> str:
    columns, rows = _COMMANDS[args.command](args)
    return render(columns, rows, args.format)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_signed(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        text = run(args)
    except DomainError as exc:
        name = exc.parameter or "parameter"
        print(f"gibbspoly: domain error in {name}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"gibbspoly: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
