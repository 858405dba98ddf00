"""Column-generation loop: cut columns plus the primal simplex, until integral.

Each round reads the dual solution of the lexicographic primal LP, picks the
smallest integer-constrained coordinate that is fractional, appends the
corresponding cut column (it always has negative reduced cost) and re-solves
from the current basis.  The basis never changes size.

Along the way the loop checks the exact identities the convergence argument
relies on and raises :class:`InvariantViolation` if one fails.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from dualgmi import exactnum as xn
from dualgmi import gmicol
from dualgmi import lexsimplex as lx
from dualgmi.exactnum import RatVector
from dualgmi.reformulate import (DualFormMIP, LexMIP, ValidationError, ValueIntegrality,
                                 check_value_integrality, extract, to_lex)

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
LIMIT_REACHED = "limit_reached"

DEFAULT_MAX_ITERATIONS = 10_000
DEFAULT_MAX_PIVOTS = 100_000

RChooser = Callable[[lx.SimplexState, int], Sequence[Fraction]]
ExtraColumns = Callable[[lx.SimplexState, "IterationRecord"], Iterable[tuple[Sequence, Fraction]]]


class InvariantViolation(AssertionError):
    def __init__(self, message: str, record: IterationRecord | None = None):
        super().__init__(message)
        self.record = record


@dataclass(frozen=True)
class FirstPivot:
    leaving_row: int
    delta: Fraction
    ybar_after: RatVector


@dataclass
class IterationRecord:
    t: int
    ybar_before: RatVector
    frac_index: int
    r: RatVector
    cut: gmicol.CutColumn
    diagnostics: gmicol.CutDiagnostics
    cut_column_index: int
    reduced_cost: Fraction
    h_col: RatVector
    pivots: int = 0
    first_pivot: FirstPivot | None = None
    basis_size: int = 0
    extra_columns: int = 0


@dataclass
class SolveReport:
    status: str
    lexmip: LexMIP
    value: Fraction | None = None
    y: RatVector | None = None
    yhat: RatVector | None = None
    iterations: list[IterationRecord] = field(default_factory=list)
    total_pivots: int = 0
    ybar_trace: list[RatVector] = field(default_factory=list)
    pivot_log: list[lx.PivotRecord] = field(default_factory=list)
    basis_sizes: list[int] = field(default_factory=list)
    state: lx.SimplexState | None = None
    detail: str = ""

    @property
    def cuts(self) -> list[gmicol.CutColumn]:
        return [rec.cut for rec in self.iterations]


def first_pivot_delta(f: Fraction, r_l: Fraction, h_li: Fraction) -> Fraction:
    """Dual step of the first pivot after appending a cut column."""
    return (f - 1) * f / (r_l - (f - 1) * h_li)


def first_fractional(ybar: Sequence[Fraction], int_count: int) -> int | None:
    for i in range(int_count):
        if xn.frac(ybar[i]) != 0:
            return i
    return None


def first_pivot_dichotomy_check(record: IterationRecord) -> bool:
    """After the first pivot either ybar[:i] lex-decreased or ybar[i] <= floor(old ybar[i])."""
    if record.first_pivot is None:
        return True
    i = record.frac_index
    before, after = record.ybar_before, record.first_pivot.ybar_after
    if i > 0 and xn.lex_compare(after[:i], before[:i]) == xn.Order.LESS:
        return True
    return after[i] <= xn.floor(before[i])


def lex_monotonicity_check(report: SolveReport | Sequence[RatVector]) -> bool:
    trace = report.ybar_trace if isinstance(report, SolveReport) else report
    return all(xn.lex_compare(b, a) == xn.Order.LESS for a, b in zip(trace, trace[1:]))


def _check(cond: bool, message: str, record: IterationRecord | None = None):
    if not cond:
        raise InvariantViolation(message, record)


def cut_loop(lexmip: LexMIP, *, max_iterations: int = DEFAULT_MAX_ITERATIONS,
               max_pivots: int = DEFAULT_MAX_PIVOTS, choose_r: RChooser | None = None,
               extra_columns: ExtraColumns | None = None, monitor: bool = True) -> SolveReport:
    report = SolveReport(INFEASIBLE, lexmip)
    m1 = lexmip.lp.m
    try:
        state = lx.phase1_start(lexmip.lp)
    except lx.InfeasibleLP as exc:
        report.detail = f"phase 1: {exc}"
        return report
    report.ybar_trace.append(state.ybar)

    def run_simplex(state: lx.SimplexState) -> lx.SolveResult:
        result = lx.solve(state, max_pivots=max_pivots - report.total_pivots)
        report.total_pivots += len(result.pivots)
        report.pivot_log.extend(result.pivots)
        report.ybar_trace.extend(p.ybar for p in result.pivots)
        report.basis_sizes.append(len(result.state.basis))
        return result

    result = run_simplex(state)
    t = 0
    while True:
        state = result.state
        report.state = state
        if result.status == "pivot_limit":
            report.status = LIMIT_REACHED
            report.detail = f"pivot limit {max_pivots} reached"
            return report
        if result.status == "unbounded":
            report.status = INFEASIBLE
            report.detail = f"primal unbounded along column {result.entering}"
            return report
        if monitor:
            _check(len(state.basis) == m1, "basis size changed")
            _check(lx.is_lex_feasible(state), "basis is not lex-feasible")

        i = first_fractional(state.ybar, lexmip.int_count)
        if i is None:
            report.status = OPTIMAL
            report.yhat = state.ybar
            report.value, report.y = extract(lexmip, state.ybar)
            objective = lexmip.source.objective(report.y)
            if report.value != objective:
                # only possible when an integral optimal value was assumed but is false
                raise ValidationError(
                    f"optimal value is not integral: integer y0 = {report.value} < y'b = {objective}; "
                    "the assume-integer-value hypothesis does not hold for this instance")
            if monitor:
                _verify_solution(report)
            return report
        if t >= max_iterations:
            report.status = LIMIT_REACHED
            report.detail = f"iteration limit {max_iterations} reached"
            return report

        t += 1
        h_col = state.h_col(i)
        r = xn.vector(choose_r(state, i)) if choose_r else gmicol.minimal_r(h_col)
        cut = gmicol.derive_cut(state, i, r, require_optimal=False)
        diag = gmicol.diagnostics(state, i, r, require_optimal=False)
        state = lx.append_column(state, cut.column, cut.cost)
        j = state.lp.n - 1
        record = IterationRecord(t, state.ybar, i, r, cut, diag, j, lx.reduced_cost(state, j), h_col,
                                 basis_size=len(state.basis))
        report.iterations.append(record)
        log.debug("iteration %d: cut on y[%d] = %s, f = %s", t, i, state.ybar[i], cut.f)
        if monitor:
            _check(record.reduced_cost == (cut.f - 1) * cut.f < 0,
                   "cut column reduced cost differs from (f-1)f", record)
            _check(gmicol.basis_image(cut, state) == xn.sub(r, xn.scale(cut.f - 1, h_col)),
                   "binv times cut column differs from r - (f-1) h_i", record)
        if extra_columns is not None:
            for col, cost in extra_columns(state, record):
                state = lx.append_column(state, col, cost)
                record.extra_columns += 1

        start = len(report.pivot_log)
        result = run_simplex(state)
        record.pivots = len(result.pivots)
        if result.pivots:
            p = report.pivot_log[start]
            record.first_pivot = FirstPivot(p.leaving_row, p.delta, p.ybar)
            if monitor and p.entering == j:
                expected = first_pivot_delta(cut.f, r[p.leaving_row], h_col[p.leaving_row])
                _check(p.delta == expected, f"first pivot step {p.delta} != {expected}", record)
            if monitor and record.extra_columns == 0:
                _check(first_pivot_dichotomy_check(record), "first-pivot dichotomy failed", record)
        if monitor:
            _check(lex_monotonicity_check(report.ybar_trace[-len(result.pivots) - 1:]),
                   "dual solution failed to decrease lexicographically", record)


def _verify_solution(report: SolveReport) -> None:
    inst = report.lexmip.source
    y = report.y
    _check(inst.is_feasible(y), "reported y violates y'A <= c'")
    _check(all(xn.is_integral(y[i]) for i in inst.int_set), "reported y is not integral on int_set")
    _check(report.value == inst.objective(y), "reported value differs from y'b")


def check_bounded(inst: DualFormMIP) -> list[tuple[Fraction, Fraction]] | None:
    """Per-coordinate ``(min, max)`` of y over the relaxation.

    Returns None when the relaxation is empty.  Raises ValidationError when
    some coordinate is unbounded.
    """
    bounds = []
    cols = inst.columns()
    for k in range(inst.m):
        e = xn.unit(inst.m, k)
        hi = lx.dual_maximize(cols, inst.c, e)
        if hi.status == "infeasible":
            return None
        lo = lx.dual_maximize(cols, inst.c, xn.scale(-1, e))
        if hi.status != "optimal" or lo.status != "optimal":
            raise ValidationError(f"continuous relaxation is unbounded in coordinate {k + 1}")
        bounds.append((-lo.value, hi.value))
    return bounds


def solve_instance(inst: DualFormMIP, *, assume_integer_value: bool = False,
                   verify_bounded: bool = False, **kwargs) -> SolveReport:
    """Reformulate and run :func:`cut_loop` after checking hypotheses."""
    if not assume_integer_value and check_value_integrality(inst) is not ValueIntegrality.SATISFIED:
        raise ValidationError(
            "optimal value not known to be integral: b_i must be 0 for every i outside int_set; "
            "pass assume_integer_value to assume it instead")
    if verify_bounded:
        check_bounded(inst)
    return cut_loop(to_lex(inst), **kwargs)


@dataclass
class RelaxationResult:
    status: str
    value: Fraction | None = None
    y: RatVector | None = None


def solve_relaxation(inst: DualFormMIP) -> RelaxationResult:
    """Lex-maximum solution of the continuous relaxation."""
    lexmip = to_lex(inst)
    try:
        state = lx.phase1_start(lexmip.lp)
    except lx.InfeasibleLP:
        return RelaxationResult(INFEASIBLE)
    result = lx.solve(state)
    if result.status != "optimal":
        return RelaxationResult(INFEASIBLE)
    value, y = extract(lexmip, result.state.ybar)
    return RelaxationResult(OPTIMAL, value, y)
