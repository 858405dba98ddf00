"""Exact primal simplex for ``min c'x, Ax = (eps^0, ..., eps^(m-1))', x >= 0``.

The right-hand side is a symbolic vector of powers of an infinitesimal
``eps`` and is never given a numeric value.  The value of the l-th basic
variable is ``binv[l] . (eps^0, ..., eps^(m-1))``, so a basis is feasible
for all small ``eps > 0`` exactly when every row of ``binv`` is
lexicographically positive.  The lexicographic ratio test keeps it that way
and makes every pivot strictly decrease the dual solution ``ybar`` in the
lexicographic order, which is why the method never cycles.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from dualgmi import exactnum as xn
from dualgmi.exactnum import RatMatrix, RatVector

log = logging.getLogger(__name__)

#: re-invert the basis from scratch every this many pivots (self-check only)
REINVERT_EVERY = 50


class InfeasibleLP(Exception):
    """No x >= 0 with Ax equal to the symbolic right-hand side."""


class Unbounded(Exception):
    """Ratio test found no positive entry in the entering direction."""

    def __init__(self, entering: int | None = None):
        super().__init__(f"unbounded along column {entering}")
        self.entering = entering


class SimplexInvariantError(AssertionError):
    """An exact identity the method relies on has failed."""


@dataclass(frozen=True)
class StandardFormLP:
    """Columns of ``A`` and their costs; the rhs is implicit."""

    columns: tuple[RatVector, ...]
    costs: RatVector
    m: int

    def __post_init__(self):
        if len(self.columns) != len(self.costs):
            raise ValueError("column count and cost count differ")
        for j, col in enumerate(self.columns):
            if len(col) != self.m:
                raise ValueError(f"column {j} has length {len(col)}, expected {self.m}")

    @classmethod
    def from_matrix(cls, A: Sequence[Sequence], c: Sequence) -> StandardFormLP:
        A = xn.matrix(A)
        m = len(A)
        return cls(xn.transpose(A) if A else (), xn.vector(c), m)

    @property
    def n(self) -> int:
        return len(self.columns)

    def matrix(self) -> RatMatrix:
        return xn.from_columns(self.columns)

    def with_column(self, a: Sequence, cost) -> StandardFormLP:
        return StandardFormLP(self.columns + (xn.vector(a),), self.costs + (Fraction(cost),), self.m)


@dataclass(frozen=True)
class SimplexState:
    lp: StandardFormLP
    basis: tuple[int, ...]
    binv: RatMatrix
    ybar: RatVector

    @property
    def m(self) -> int:
        return self.lp.m

    def basis_matrix(self) -> RatMatrix:
        return xn.from_columns([self.lp.columns[j] for j in self.basis])

    def basic_costs(self) -> RatVector:
        return tuple(self.lp.costs[j] for j in self.basis)

    def h_col(self, i: int) -> RatVector:
        """i-th column of the basis inverse."""
        return xn.column(self.binv, i)


@dataclass(frozen=True)
class PivotRecord:
    entering: int
    leaving_row: int
    leaving: int
    reduced_cost: Fraction
    d_l: Fraction
    delta: Fraction
    ybar_before: RatVector
    ybar: RatVector


@dataclass
class SolveResult:
    status: str  # "optimal" | "unbounded" | "pivot_limit"
    state: SimplexState
    pivots: list[PivotRecord] = field(default_factory=list)
    entering: int | None = None  # unbounded certificate


def make_state(lp: StandardFormLP, basis: Sequence[int], binv: RatMatrix | None = None) -> SimplexState:
    """Build a state for a given basis, inverting ``A_beta`` if needed."""
    basis = tuple(basis)
    if len(basis) != lp.m or len(set(basis)) != lp.m:
        raise ValueError(f"basis must list {lp.m} distinct columns, got {basis}")
    if binv is None:
        binv = xn.invert(xn.from_columns([lp.columns[j] for j in basis]))
    ybar = xn.vec_mat([lp.costs[j] for j in basis], binv)
    return SimplexState(lp, basis, binv, ybar)


def is_lex_feasible(state: SimplexState) -> bool:
    return all(xn.lex_positive(row) for row in state.binv)


def reduced_cost(state: SimplexState, j: int) -> Fraction:
    return state.lp.costs[j] - xn.dot(state.ybar, state.lp.columns[j])


def direction(state: SimplexState, j: int) -> RatVector:
    """``binv @ a_j``: the representation of column j in the current basis."""
    return xn.mat_vec(state.binv, state.lp.columns[j])


def lex_ratio_test(state: SimplexState, d: Sequence[Fraction]) -> int:
    """Row leaving the basis when moving along ``d``.

    Minimizes ``binv[l] / d[l]`` lexicographically over rows with
    ``d[l] > 0``.  Rows of ``binv`` are independent, so the minimizer is
    unique; a tie raises :class:`SimplexInvariantError`.
    """
    best: int | None = None
    best_ratio: RatVector | None = None
    tie = False
    for l, dl in enumerate(d):
        if dl <= 0:
            continue
        ratio = xn.scale(1 / dl, state.binv[l])
        if best is None:
            best, best_ratio, tie = l, ratio, False
            continue
        order = xn.lex_compare(ratio, best_ratio)
        if order == xn.Order.LESS:
            best, best_ratio, tie = l, ratio, False
        elif order == xn.Order.EQUAL:
            tie = True
    if best is None:
        raise Unbounded()
    if tie:
        raise SimplexInvariantError("lexicographic ratio test tie: basis inverse rows are dependent")
    return best


def pivot(state: SimplexState, entering: int, leaving_row: int, d: Sequence[Fraction] | None = None
          ) -> tuple[SimplexState, PivotRecord]:
    """Exchange ``basis[leaving_row]`` for column ``entering``.

    Returns the new state and a record holding the dual step
    ``delta = reduced_cost / d[l]`` with ``new ybar = ybar + delta * binv[l]``.
    """
    if d is None:
        d = direction(state, entering)
    dl = d[leaving_row]
    if dl <= 0:
        raise SimplexInvariantError(f"pivot element {dl} is not positive")
    cbar = reduced_cost(state, entering)
    delta = cbar / dl
    h_l = state.binv[leaving_row]

    new_l = xn.scale(1 / dl, h_l)
    binv = []
    for k, row in enumerate(state.binv):
        if k == leaving_row:
            binv.append(new_l)
        elif d[k]:
            binv.append(xn.sub(row, xn.scale(d[k], new_l)))
        else:
            binv.append(row)
    ybar = xn.add(state.ybar, xn.scale(delta, h_l))
    basis = list(state.basis)
    leaving = basis[leaving_row]
    basis[leaving_row] = entering

    new = SimplexState(state.lp, tuple(basis), tuple(binv), ybar)
    record = PivotRecord(entering, leaving_row, leaving, cbar, dl, delta, state.ybar, ybar)
    if log.isEnabledFor(logging.DEBUG):
        log.debug("pivot enter=%d leave_row=%d delta=%s ybar=%s", entering, leaving_row, delta,
                  [str(v) for v in ybar])
    return new, record


def choose_entering(state: SimplexState) -> int | None:
    """Most negative reduced cost, lowest index on ties; None if optimal."""
    best, best_cost = None, Fraction(0)
    basic = set(state.basis)
    for j in range(state.lp.n):
        if j in basic:
            continue
        cbar = reduced_cost(state, j)
        if cbar < best_cost:
            best, best_cost = j, cbar
    return best


def check_state(state: SimplexState) -> None:
    """Recompute the basis inverse and dual from scratch and compare."""
    binv = xn.invert(state.basis_matrix())
    if binv != state.binv:
        raise SimplexInvariantError("updated basis inverse disagrees with re-inversion")
    if xn.vec_mat(state.basic_costs(), binv) != state.ybar:
        raise SimplexInvariantError("ybar differs from c_beta' binv")
    if not is_lex_feasible(state):
        raise SimplexInvariantError("basis lost lexicographic feasibility")


def solve(state: SimplexState, max_pivots: int | None = None) -> SolveResult:
    """Run the primal simplex from a lex-feasible state."""
    pivots: list[PivotRecord] = []
    while True:
        j = choose_entering(state)
        if j is None:
            return SolveResult("optimal", state, pivots)
        if max_pivots is not None and len(pivots) >= max_pivots:
            return SolveResult("pivot_limit", state, pivots)
        d = direction(state, j)
        try:
            l = lex_ratio_test(state, d)
        except Unbounded:
            return SolveResult("unbounded", state, pivots, entering=j)
        state, rec = pivot(state, j, l, d)
        pivots.append(rec)
        if __debug__ and len(pivots) % REINVERT_EVERY == 0:
            check_state(state)


def append_column(state: SimplexState, a: Sequence, cost) -> SimplexState:
    """Add a column to the LP; the basis and its inverse are untouched."""
    if len(a) != state.m:
        raise ValueError(f"column has length {len(a)}, expected {state.m}")
    return SimplexState(state.lp.with_column(a, cost), state.basis, state.binv, state.ybar)


def phase1_start(lp: StandardFormLP) -> SimplexState:
    """Lex-feasible starting basis made of original columns only.

    One artificial identity column per row gives the lex-feasible start
    ``binv = I``; their total is then minimized.  Every basic variable has a
    lex-positive value, so an artificial still basic at the optimum means
    the perturbed system has no solution.
    """
    if lp.m < 1:
        raise ValueError("need at least one row")
    n, m = lp.n, lp.m
    aux = StandardFormLP(lp.columns + xn.identity(m),
                         (Fraction(0),) * n + (Fraction(1),) * m, m)
    start = make_state(aux, range(n, n + m), xn.identity(m))
    result = solve(start)
    if result.status != "optimal":
        raise SimplexInvariantError(f"phase 1 ended with status {result.status}")
    basis = result.state.basis
    if any(j >= n for j in basis):
        raise InfeasibleLP("no nonnegative combination of the columns reaches the eps right-hand side")
    return make_state(lp, basis, result.state.binv)


@dataclass
class DualLPResult:
    status: str  # "optimal" | "infeasible" | "infeasible_or_unbounded"
    y: RatVector | None = None
    value: Fraction | None = None


def dual_maximize(columns: Sequence[Sequence], costs: Sequence, objective: Sequence) -> DualLPResult:
    """Maximize ``g'y`` over ``{y : y'a_j <= c_j for all j}``.

    Ties in ``g'y`` are broken lexicographically in the other coordinates.  The primary
    objective is moved into the first coordinate via the substitution
    ``u = M y`` where ``M`` has ``g`` as its first row, so the symbolic
    right-hand side orders ``u`` the right way.

    ``infeasible_or_unbounded`` is returned when the primal side has no
    feasible point, which happens only if the columns do not positively
    span; the dual is then empty or unbounded.
    """
    g = xn.vector(objective)
    m = len(g)
    cols = [xn.vector(a) for a in columns]
    if any(g):
        k = next(idx for idx, v in enumerate(g) if v)
        M = (g,) + tuple(xn.unit(m, j) for j in range(m) if j != k)
    else:
        M = xn.identity(m)
    Minv = xn.invert(M)
    # y'a = u' (Minv' a)
    MinvT = xn.transpose(Minv)
    lp = StandardFormLP(tuple(xn.mat_vec(MinvT, a) for a in cols), xn.vector(costs), m)
    try:
        state = phase1_start(lp)
    except InfeasibleLP:
        return DualLPResult("infeasible_or_unbounded")
    result = solve(state)
    if result.status == "unbounded":
        return DualLPResult("infeasible")
    y = xn.mat_vec(Minv, result.state.ybar)
    return DualLPResult("optimal", y, xn.dot(g, y))
