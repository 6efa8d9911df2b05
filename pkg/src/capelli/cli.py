"""Command-line interface: ``capelli compute|table|op|verify|rank-one-demo``.

Exit codes: 0 success, 1 an identity failed, 2 bad usage or a violated
precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from .errors import CapelliError, PreconditionError
from .interpolation import capelli_polynomial, p_table, q_polynomial
from .operators import OPERATOR_NAMES, operator_matrix
from .poly import MultiPoly, orbit_sum
from .rational import format_rational, parse_rational
from .roots import (
    CASES,
    RANK_ONE,
    build_datum,
    dominance_class,
    is_dominant_weight,
    normalize_case,
    rho_vector,
    virtual_dimension,
)
from .verify import SCHEMA, SuiteReport, run_suite, suite_names

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer vector: {text!r}") from None


def _add_datum_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--case", required=True, type=normalize_case_arg, help=f"one of {', '.join(CASES)}")
    p.add_argument("--n", type=int, default=None, help="dimension (forced to 1 for rank-one)")
    p.add_argument("--r", type=_rational, default=Fraction(0), help='rational "p/q" (ignored for rank-one)')
    p.add_argument("--s", type=_rational, required=True, help='rational "p/q"')


def normalize_case_arg(text: str) -> str:
    try:
        return normalize_case(text)
    except CapelliError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_output_args(p: argparse.ArgumentParser, formats=("json", "latex", "text")) -> None:
    p.add_argument("--format", choices=formats, default="json")
    p.add_argument("--output", default=None, help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="capelli", description="Exact Capelli interpolation polynomials")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute p_lambda and q_lambda")
    _add_datum_args(p)
    p.add_argument("--lambda", dest="lam", type=_weight, required=True, help='weight, e.g. "2,1,0"')
    p.add_argument("--kind", choices=("p", "q", "both"), default="both")
    _add_output_args(p)

    p = sub.add_parser("table", help="values p_mu(rho + lambda)")
    _add_datum_args(p)
    p.add_argument("--max-ell", type=int, default=3)
    _add_output_args(p, ("json", "text"))

    p = sub.add_parser("op", help="truncated operator matrix in the p-basis")
    _add_datum_args(p)
    p.add_argument("--which", choices=OPERATOR_NAMES, required=True)
    p.add_argument("--truncation", type=int, default=3)
    p.add_argument("--h", default=None, help='for D_of/m_of: "ell", "ell^k" or "orbit:2,0"')
    _add_output_args(p, ("json",))

    p = sub.add_parser("verify", help="run verification suites")
    _add_datum_args(p)
    p.add_argument("--suite", default="all")
    p.add_argument("--max-ell", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for --suite all")
    _add_output_args(p, ("json", "text"))

    p = sub.add_parser("rank-one-demo", help="rank-one closed forms and their check")
    p.add_argument("--s", type=_rational, required=True)
    p.add_argument("--max-ell", type=int, default=4)
    _add_output_args(p)
    return parser


def _datum_and_rho(args):
    n = args.n
    if args.case == RANK_ONE:
        if n not in (None, 1):
            raise UsageError("the rank-one case has n = 1")
        n = 1
    elif n is None:
        raise UsageError(f"--n is required for the {args.case} case")
    if n < 1:
        raise UsageError("--n must be positive")
    datum = build_datum(args.case, n)
    r = Fraction(0) if args.case == RANK_ONE else args.r
    return datum, rho_vector(datum, r, args.s)


def _header(command: str, datum, rho) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "case": datum.case,
        "n": datum.n,
        "r": format_rational(rho.r),
        "s": format_rational(rho.s),
    }


def _parse_h(text: str | None, datum) -> MultiPoly:
    if text is None:
        raise UsageError("--h is required for D_of and m_of")
    ell = datum.ell_poly()
    text = text.strip()
    if text == "ell":
        return ell
    if text.startswith("ell^"):
        try:
            k = int(text[4:])
        except ValueError:
            raise UsageError(f"bad power in --h {text!r}") from None
        if k < 0:
            raise UsageError("power must be >= 0")
        return ell ** k
    if text.startswith("orbit:"):
        exp = tuple(int(x) for x in text[6:].split(","))
        if len(exp) != datum.n or any(e < 0 for e in exp):
            raise UsageError(f"orbit exponent must have {datum.n} nonnegative entries")
        return orbit_sum(exp, datum.generators)
    raise UsageError(f"unrecognised --h {text!r}")


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def cmd_compute(args) -> int:
    datum, rho = _datum_and_rho(args)
    lam = args.lam
    if len(lam) != datum.n:
        raise UsageError(f"--lambda needs {datum.n} entries")
    if not is_dominant_weight(lam):
        raise UsageError(f"--lambda {lam} is not weakly decreasing and nonnegative")
    p = capelli_polynomial(datum, rho, lam)
    q = q_polynomial(datum, rho, lam) if args.kind in ("q", "both") else None
    flags = dominance_class(datum, rho)
    d = virtual_dimension(datum, rho, lam) if flags.strongly_dominant else None
    name = ",".join(map(str, lam))
    if args.format == "json":
        out = _header("compute", datum, rho)
        out.update({
            "lambda": list(lam),
            "ell": datum.ell_of(lam),
            "d_lambda": None if d is None else format_rational(d),
            "dominance": flags.as_dict(),
        })
        if args.kind in ("p", "both"):
            out["p"] = p.to_json()
        if q is not None:
            out["q"] = q.to_json()
        _emit(_dumps(out), args.output)
    elif args.format == "latex":
        lines = []
        if args.kind in ("p", "both"):
            lines.append(f"p_{{({name})}}(z) = {p.to_latex()}")
        if q is not None:
            lines.append(f"q_{{({name})}}(z) = {q.to_latex()}")
        _emit("\n".join(lines) + "\n", args.output)
    else:
        lines = [f"case={datum.case} n={datum.n} r={format_rational(rho.r)} s={format_rational(rho.s)}",
                 f"lambda=({name}) ell={datum.ell_of(lam)} d={'-' if d is None else format_rational(d)}"]
        if args.kind in ("p", "both"):
            lines.append(f"p = {p}")
        if q is not None:
            lines.append(f"q = {q}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_table(args) -> int:
    datum, rho = _datum_and_rho(args)
    if args.max_ell < 0:
        raise UsageError("--max-ell must be >= 0")
    table = p_table(datum, rho, args.max_ell)
    if args.format == "json":
        out = _header("table", datum, rho)
        out["max_ell"] = args.max_ell
        out.update(table.to_json())
        _emit(_dumps(out), args.output)
    else:
        labels = ["(" + ",".join(map(str, w)) + ")" for w in table.index]
        width = max(len(x) for x in labels + [format_rational(v) for row in table.values for v in row])
        lines = [" " * width + " | " + " ".join(x.rjust(width) for x in labels)]
        for label, row in zip(labels, table.values):
            lines.append(label.rjust(width) + " | " + " ".join(format_rational(v).rjust(width) for v in row))
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_op(args) -> int:
    datum, rho = _datum_and_rho(args)
    h = _parse_h(args.h, datum) if args.which in ("D_of", "m_of") else None
    matrix = operator_matrix(datum, rho, args.which, args.truncation, h)
    out = _header("op", datum, rho)
    out["truncation"] = args.truncation
    if h is not None:
        out["h"] = h.to_json()
    out.update(matrix.to_json())
    _emit(_dumps(out), args.output)
    return EXIT_OK


def _run_one(job) -> dict:
    name, case, n, r, s, max_ell = job
    datum = build_datum(case, n)
    return run_suite(name, datum, rho_vector(datum, r, s), max_ell).to_json()


def cmd_verify(args) -> int:
    datum, rho = _datum_and_rho(args)
    if args.max_ell < 0:
        raise UsageError("--max-ell must be >= 0")
    available = suite_names(datum)
    if args.suite == "all":
        names = available
    elif args.suite in available:
        names = [args.suite]
    else:
        raise UsageError(f"unknown suite {args.suite!r} for {datum.case}; choose from {', '.join(available)} or all")
    jobs = [(name, datum.case, datum.n, rho.r, rho.s, args.max_ell) for name in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(job) for job in jobs]
    passed = all(r["passed"] for r in reports)
    if args.format == "json":
        if len(reports) == 1 and args.suite != "all":
            out = reports[0]
        else:
            out = _header("verify", datum, rho)
            out.update({"max_ell": args.max_ell, "reports": reports, "passed": passed})
        _emit(_dumps(out), args.output)
    else:
        lines = []
        for r in reports:
            status = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{status} {r['suite']}: {r['checks']} checks, {len(r['failures'])} failures")
            for f in r["failures"][:5]:
                lines.append(f"    {f['check']} at {f['indices']}: residual {f['residual']}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_rank_one_demo(args) -> int:
    datum = build_datum(RANK_ONE, 1)
    rho = rho_vector(datum, 0, args.s)
    rows = []
    for lam in range(args.max_ell + 1):
        w = (lam,)
        rows.append((lam, capelli_polynomial(datum, rho, w), q_polynomial(datum, rho, w),
                     virtual_dimension(datum, rho, w)))
    report: SuiteReport = run_suite("rank_one_closed_forms", datum, rho, args.max_ell)
    if args.format == "json":
        out = _header("rank-one-demo", datum, rho)
        out.update({
            "max_ell": args.max_ell,
            "rows": [{"lambda": lam, "p": p.to_json(), "q": q.to_json(), "d": format_rational(d)}
                     for lam, p, q, d in rows],
            "report": report.to_json(),
        })
        _emit(_dumps(out), args.output)
    elif args.format == "latex":
        lines = [rf"p_{{{lam}}}(z) = {p.to_latex()},\quad q_{{{lam}}}(z) = {q.to_latex()},\quad "
                 rf"d_{{{lam}}} = {format_rational(d)}" for lam, p, q, d in rows]
        _emit("\n".join(lines) + "\n", args.output)
    else:
        lines = [f"rank one, s = {format_rational(rho.s)}"]
        for lam, p, q, d in rows:
            lines.append(f"lambda={lam}: p = {p}; q = {q}; d = {format_rational(d)}")
        lines.append(f"closed forms: {'PASS' if report.passed else 'FAIL'} ({report.checks} checks)")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "compute": cmd_compute,
    "table": cmd_table,
    "op": cmd_op,
    "verify": cmd_verify,
    "rank-one-demo": cmd_rank_one_demo,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"capelli: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"capelli: precondition violated ({exc.predicate}): {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapelliError as exc:
        print(f"capelli: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
