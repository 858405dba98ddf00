"""Gomory mixed-integer cuts for the dual form, produced as primal columns.

Given an optimal basis ``beta`` with basis inverse ``H`` (columns ``h_i``)
and dual solution ``ybar`` whose i-th coordinate has fractional part
``f``, an integer vector ``r`` with ``r >= 0`` and ``r >= -h_i`` yields the
inequality

    y' (A_beta r - (f - 1) e_i)  <=  c_beta' r - (f - 1) floor(ybar_i)

valid for every y with ``y'A_beta <= c_beta'`` and ``y_i`` integral, and
violated by ``ybar``.  It is added to the primal LP as a new column with the
corresponding cost; that column prices out at ``(f - 1) f < 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from dualgmi import exactnum as xn
from dualgmi.exactnum import RatVector
from dualgmi.lexsimplex import SimplexState, reduced_cost


class CutError(ValueError):
    pass


class NotFractional(CutError):
    pass


class KappaViolated(CutError):
    pass


class NotOptimal(CutError):
    pass


class IdentityViolated(AssertionError):
    pass


@dataclass(frozen=True)
class CutColumn:
    i: int
    r: RatVector
    floor_yi: int
    f: Fraction
    column: RatVector
    cost: Fraction


@dataclass(frozen=True)
class CutDiagnostics:
    """Intermediate quantities of the two-variable derivation in (y_i, z).

    ``z`` stands for ``sum_{j != i} (alpha_j' r) y_j`` where ``alpha_j'`` is
    row j of ``A_beta``.  ``b1`` and ``b2`` are ``(coef_yi, coef_z, rhs)``
    of the two base inequalities.  ``slope`` is ``None`` when ``z1 == z2``.
    """

    i: int
    f: Fraction
    floor_yi: int
    alpha_i_r: Fraction
    alpha_integral: bool
    b1: tuple[Fraction, Fraction, Fraction]
    b2: tuple[Fraction, Fraction, Fraction]
    z1: Fraction
    z2: Fraction
    slope: Fraction | None
    ystar: Fraction
    zstar: Fraction
    w1_beta: RatVector
    w2_beta: RatVector
    violation: Fraction
    fbmi: tuple[Fraction, Fraction, Fraction]

    def fbmi_excess(self, yi, z) -> Fraction:
        """Left minus right side of the combined inequality at (yi, z)."""
        a, b, rhs = self.fbmi
        return a * yi + b * z - rhs


def minimal_r(h_col: Sequence[Fraction]) -> RatVector:
    """Componentwise least integer r with r >= 0 and r >= -h_col."""
    return tuple(Fraction(max(0, -xn.floor(h))) for h in h_col)


def validate_kappa(r: Sequence[Fraction], h_col: Sequence[Fraction]) -> bool:
    if len(r) != len(h_col):
        raise ValueError("length mismatch")
    return all(xn.is_integral(rk) and rk >= 0 and rk >= -hk for rk, hk in zip(r, h_col))


def _check_preconditions(state: SimplexState, i: int, r: Sequence[Fraction], require_optimal: bool):
    if not 0 <= i < state.m:
        raise IndexError(f"row {i} out of range")
    if require_optimal:
        for j in range(state.lp.n):
            if reduced_cost(state, j) < 0:
                raise NotOptimal(f"column {j} has negative reduced cost; basis is not optimal")
    if xn.frac(state.ybar[i]) == 0:
        raise NotFractional(f"ybar[{i}] = {state.ybar[i]} is integral")
    if not validate_kappa(r, state.h_col(i)):
        raise KappaViolated(f"r = {[str(x) for x in r]} fails r integral, r >= 0, r >= -h_i")


def derive_cut(state: SimplexState, i: int, r: Sequence | None = None, *,
               require_optimal: bool = True) -> CutColumn:
    """Cut column for fractional ``ybar[i]``; ``r`` defaults to the minimal one."""
    if r is None:
        r = minimal_r(state.h_col(i))
    r = xn.vector(r)
    _check_preconditions(state, i, r, require_optimal)
    yi = state.ybar[i]
    fl = xn.floor(yi)
    f = yi - fl
    A_r = xn.mat_vec(state.basis_matrix(), r)
    col = list(A_r)
    col[i] -= f - 1
    cost = xn.dot(state.basic_costs(), r) - (f - 1) * fl
    return CutColumn(i, r, fl, f, tuple(col), cost)


def reduced_cost_identity(cut: CutColumn, state: SimplexState) -> Fraction:
    """Reduced cost of the cut column; must equal ``(f - 1) f`` exactly."""
    value = cut.cost - xn.dot(state.ybar, cut.column)
    expected = (cut.f - 1) * cut.f
    if value != expected:
        raise IdentityViolated(f"reduced cost {value} != (f-1)f = {expected}")
    return value


def basis_image(cut: CutColumn, state: SimplexState) -> RatVector:
    """``binv @ column``, which should be ``r - (f - 1) h_i``."""
    return xn.mat_vec(state.binv, cut.column)


def diagnostics(state: SimplexState, i: int, r: Sequence | None = None, *,
                require_optimal: bool = True) -> CutDiagnostics:
    if r is None:
        r = minimal_r(state.h_col(i))
    r = xn.vector(r)
    _check_preconditions(state, i, r, require_optimal)
    ybar = state.ybar
    yi = ybar[i]
    fl = xn.floor(yi)
    f = yi - fl
    A_r = xn.mat_vec(state.basis_matrix(), r)  # entry j is alpha_j' r
    alpha = A_r[i]
    y_A_r = xn.dot(ybar, A_r)  # ybar' A_beta r == c_beta' r
    one = Fraction(1)

    z1 = yi + y_A_r - (1 + alpha) * (fl + 1)
    z2 = y_A_r - alpha * fl
    gap = z1 - z2
    zstar = sum((A_r[j] * ybar[j] for j in range(state.m) if j != i), Fraction(0))
    return CutDiagnostics(
        i=i,
        f=f,
        floor_yi=fl,
        alpha_i_r=alpha,
        alpha_integral=xn.is_integral(alpha),
        b1=(1 + alpha, one, yi + y_A_r),
        b2=(alpha, one, y_A_r),
        z1=z1,
        z2=z2,
        slope=(1 / gap) if gap else None,
        ystar=yi,
        zstar=zstar,
        w1_beta=xn.add(state.h_col(i), r),
        w2_beta=r,
        violation=-(f - 1) * f,
        fbmi=((1 + alpha) - f, one, y_A_r - (f - 1) * fl),
    )


def cut_satisfied_at(cut: CutColumn, y: Sequence[Fraction]) -> bool:
    if len(y) != len(cut.column):
        raise ValueError("length mismatch")
    return xn.dot(y, cut.column) <= cut.cost
