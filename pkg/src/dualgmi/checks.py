"""Cross-validation of a solver run against the brute-force oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping

from dualgmi import driver, gmicol
from dualgmi import exactnum as xn
from dualgmi.driver import IterationRecord, SolveReport
from dualgmi.oracle import OracleResult, feasible_points, oracle_solve
from dualgmi.reformulate import DualFormMIP, LexMIP


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    record: IterationRecord | None = None


def lifted_points(lexmip: LexMIP, y):
    """Points of the lexicographic problem above an original point ``y``.

    ``y0`` must be an integer not exceeding ``y'b``; the largest two such
    values are returned.
    """
    top = math.floor(xn.dot(y, lexmip.source.b))
    return [lexmip.lift(y, Fraction(top)), lexmip.lift(y, Fraction(top - 1))]


def first_cut_violation(report: SolveReport, points) -> tuple[IterationRecord, tuple] | None:
    for y in points:
        for yhat in lifted_points(report.lexmip, y):
            for rec in report.iterations:
                if not gmicol.cut_satisfied_at(rec.cut, yhat):
                    return rec, yhat
    return None


def corrupt_cut(record: IterationRecord) -> IterationRecord:
    """Negative control: tighten the cut until it cuts off its own source."""
    cut = record.cut
    return replace(record, cut=replace(cut, cost=cut.cost - 1000))


def run_check(inst: DualFormMIP, *, bounds: Mapping[int, tuple[int, int]] | None = None,
              assume_integer_value: bool = False, inject_bad_cut: bool = False,
              oracle: OracleResult | None = None) -> tuple[list[CheckResult], SolveReport]:
    report = driver.solve_instance(inst, assume_integer_value=assume_integer_value)
    if inject_bad_cut and report.iterations:
        report.iterations[0] = corrupt_cut(report.iterations[0])
    if oracle is None:
        oracle = oracle_solve(inst, bounds)
    results = []

    if report.status == driver.LIMIT_REACHED:
        results.append(CheckResult("value", False, f"solver hit a limit: {report.detail}"))
    elif report.status != oracle.status:
        results.append(CheckResult("value", False, f"solver {report.status}, oracle {oracle.status}"))
    elif report.status == driver.OPTIMAL and report.value != oracle.value:
        results.append(CheckResult("value", False, f"solver {report.value}, oracle {oracle.value}"))
    else:
        results.append(CheckResult("value", True, f"{report.status} {report.value if report.value is not None else ''}".strip()))

    points = list(feasible_points(inst, bounds))
    bad = first_cut_violation(report, points)
    if bad is None:
        results.append(CheckResult("cut-validity", True,
                                   f"{len(report.iterations)} cuts x {len(points)} points"))
    else:
        rec, yhat = bad
        results.append(CheckResult("cut-validity", False,
                                   f"cut {rec.t} violated at {[str(v) for v in yhat]}", rec))

    failures = []
    for rec in report.iterations:
        if rec.reduced_cost != (rec.cut.f - 1) * rec.cut.f:
            failures.append((rec, "reduced cost"))
        elif not driver.first_pivot_dichotomy_check(rec):
            failures.append((rec, "first-pivot dichotomy"))
    if not driver.lex_monotonicity_check(report):
        failures.append((None, "lexicographic decrease"))
    if len(set(report.basis_sizes)) > 1:
        failures.append((None, "basis size"))
    if failures:
        rec, what = failures[0]
        results.append(CheckResult("invariants", False, what, rec))
    else:
        results.append(CheckResult("invariants", True, f"{report.total_pivots} pivots"))
    return results, report
