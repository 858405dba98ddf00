"""Command-line entry point.

    dualgmi solve  FILE [--assume-integer-value] [--verify-bounded] [--trace PATH]
                        [--max-iter N] [--max-pivots N]
    dualgmi lp     FILE
    dualgmi oracle FILE [--bounds PATH]
    dualgmi check  FILE
    dualgmi trace  FILE

Results go to stdout as JSON, every rational as an exact ``"p/q"`` string.
Traces are JSON lines.  Exit status: 0 optimal (or all checks passed),
2 infeasible, 3 limit reached, 1 on errors or failed checks.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import IO

from dualgmi import driver
from dualgmi.checks import run_check
from dualgmi.driver import IterationRecord, SolveReport
from dualgmi.exactnum import format_rational
from dualgmi.instance import ParseError, parse_bounds, parse_instance
from dualgmi.lexsimplex import PivotRecord
from dualgmi.oracle import BoundsUnavailable, oracle_solve
from dualgmi.reformulate import ValidationError

EXIT_CODES = {driver.OPTIMAL: 0, driver.INFEASIBLE: 2, driver.LIMIT_REACHED: 3}


def _q(value) -> str | None:
    return None if value is None else format_rational(value)


def _qs(values) -> list[str] | None:
    return None if values is None else [format_rational(v) for v in values]


def iteration_record(rec: IterationRecord) -> dict:
    """Flat record of one cut iteration; indices are rows of the lexicographic LP."""
    cut, d = rec.cut, rec.diagnostics
    fp = rec.first_pivot
    return {
        "kind": "cut",
        "t": rec.t,
        "i": rec.frac_index,
        "ybar": _qs(rec.ybar_before),
        "f": _q(cut.f),
        "floor_yi": str(cut.floor_yi),
        "r": _qs(cut.r),
        "column": _qs(cut.column),
        "cost": _q(cut.cost),
        "reduced_cost": _q(rec.reduced_cost),
        "alpha_i_r": _q(d.alpha_i_r),
        "alpha_integral": d.alpha_integral,
        "b1": _qs(d.b1),
        "b2": _qs(d.b2),
        "fbmi": _qs(d.fbmi),
        "z1": _q(d.z1),
        "z2": _q(d.z2),
        "slope": _q(d.slope) if d.slope is not None else "inf",
        "ystar": _q(d.ystar),
        "zstar": _q(d.zstar),
        "w1_beta": _qs(d.w1_beta),
        "w2_beta": _qs(d.w2_beta),
        "violation": _q(d.violation),
        "pivots": rec.pivots,
        "leaving_row": fp.leaving_row if fp else None,
        "delta": _q(fp.delta) if fp else None,
        "ybar_after_first_pivot": _qs(fp.ybar_after) if fp else None,
    }


def pivot_record(k: int, p: PivotRecord) -> dict:
    return {
        "kind": "pivot",
        "k": k,
        "entering": p.entering,
        "leaving_row": p.leaving_row,
        "leaving": p.leaving,
        "reduced_cost": _q(p.reduced_cost),
        "delta": _q(p.delta),
        "ybar": _qs(p.ybar),
    }


def report_dict(report: SolveReport, name: str | None = None) -> dict:
    out = {}
    if name is not None:
        out["name"] = name
    out.update({
        "status": report.status,
        "value": _q(report.value),
        "y": _qs(report.y),
        "iterations": len(report.iterations),
        "pivots": report.total_pivots,
    })
    if report.detail:
        out["detail"] = report.detail
    return out


def write_trace(report: SolveReport, stream: IO[str], pivots: bool = False) -> None:
    """One line per cut iteration, optionally interleaved with one per pivot."""
    lines = []
    # pivots before the first cut come from the initial solve
    k = report.total_pivots - sum(rec.pivots for rec in report.iterations)
    if pivots:
        lines += [pivot_record(j, report.pivot_log[j]) for j in range(k)]
    for rec in report.iterations:
        lines.append(iteration_record(rec))
        if pivots:
            lines += [pivot_record(j, report.pivot_log[j]) for j in range(k, k + rec.pivots)]
        k += rec.pivots
    lines.append({"kind": "result", **report_dict(report)})
    for line in lines:
        stream.write(json.dumps(line) + "\n")


def _emit(obj: dict) -> None:
    print(json.dumps(obj))


def cmd_solve(args) -> int:
    inf = parse_instance(args.file)
    report = driver.solve_instance(
        inf.inst,
        assume_integer_value=args.assume_integer_value or inf.assume_integer_value,
        verify_bounded=args.verify_bounded,
        max_iterations=args.max_iter,
        max_pivots=args.max_pivots,
    )
    if args.trace:
        with open(args.trace, "w") as fh:
            write_trace(report, fh, pivots=args.debug)
    _emit(report_dict(report, inf.name))
    return EXIT_CODES[report.status]


def cmd_trace(args) -> int:
    inf = parse_instance(args.file)
    report = driver.solve_instance(
        inf.inst,
        assume_integer_value=args.assume_integer_value or inf.assume_integer_value,
        max_iterations=args.max_iter,
        max_pivots=args.max_pivots,
    )
    write_trace(report, sys.stdout, pivots=True)
    return EXIT_CODES[report.status]


def cmd_lp(args) -> int:
    inf = parse_instance(args.file)
    res = driver.solve_relaxation(inf.inst)
    out = {} if inf.name is None else {"name": inf.name}
    out.update({"status": res.status, "value": _q(res.value), "y": _qs(res.y)})
    _emit(out)
    return EXIT_CODES[res.status]


def cmd_oracle(args) -> int:
    inf = parse_instance(args.file)
    bounds = inf.oracle_bounds
    if args.bounds:
        bounds = parse_bounds(json.loads(Path(args.bounds).read_text()), inf.inst.m)
    res = oracle_solve(inf.inst, bounds)
    out = {} if inf.name is None else {"name": inf.name}
    out.update({"status": res.status, "value": _q(res.value), "witness": _qs(res.witness),
                "assignments": res.assignments, "feasible_assignments": res.feasible_assignments})
    _emit(out)
    return EXIT_CODES[res.status]


def cmd_check(args) -> int:
    inf = parse_instance(args.file)
    results, _ = run_check(inf.inst, bounds=inf.oracle_bounds,
                           assume_integer_value=args.assume_integer_value or inf.assume_integer_value,
                           inject_bad_cut=args.inject_bad_cut)
    ok = True
    for res in results:
        print(f"{res.name}: {'pass' if res.passed else 'FAIL'} {res.detail}".rstrip())
        if not res.passed:
            ok = False
            if res.record is not None:
                print(json.dumps(iteration_record(res.record)))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualgmi", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log every pivot to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def limits(p):
        p.add_argument("--assume-integer-value", action="store_true",
                       help="assume the optimal value is integral when b is nonzero off int_set")
        p.add_argument("--max-iter", type=int, default=driver.DEFAULT_MAX_ITERATIONS)
        p.add_argument("--max-pivots", type=int, default=driver.DEFAULT_MAX_PIVOTS)

    p = sub.add_parser("solve", help="run the column-generation algorithm")
    p.add_argument("file")
    limits(p)
    p.add_argument("--verify-bounded", action="store_true",
                   help="reject instances whose relaxation is unbounded")
    p.add_argument("--trace", metavar="PATH", help="write cut records as JSON lines")
    p.add_argument("--debug", action="store_true", help="include pivot records in the trace")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trace", help="solve and stream cut and pivot records")
    p.add_argument("file")
    limits(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("lp", help="solve the continuous relaxation")
    p.add_argument("file")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("oracle", help="brute-force enumeration")
    p.add_argument("file")
    p.add_argument("--bounds", metavar="PATH", help='JSON object {"1": [lo, hi], ...}')
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check", help="solve and cross-check against the oracle")
    p.add_argument("file")
    p.add_argument("--assume-integer-value", action="store_true")
    p.add_argument("--inject-bad-cut", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        # long runs can produce rationals with very large numerators
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, ValidationError, BoundsUnavailable, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except driver.InvariantViolation as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        if exc.record is not None:
            print(json.dumps(iteration_record(exc.record)), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
