"""Brute-force mixed-integer oracle for small bounded instances.

Every integer assignment of the integer-constrained coordinates inside a box
is tried; the continuous coordinates are then optimized by an exact LP.
Nothing here touches the cut machinery, so its answers can be used to check
the column-generation solver.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from dualgmi import exactnum as xn
from dualgmi import lexsimplex as lx
from dualgmi.exactnum import RatVector
from dualgmi.reformulate import DualFormMIP


class BoundsUnavailable(ValueError):
    pass


@dataclass
class OracleResult:
    status: str  # "optimal" | "infeasible"
    value: Fraction | None = None
    witness: RatVector | None = None
    assignments: int = 0
    feasible_assignments: int = 0


def derive_bounds(inst: DualFormMIP) -> dict[int, tuple[int, int]] | None:
    """Integer box around the relaxation for each integer coordinate.

    The LP minimum and maximum of each coordinate are rounded outward.
    Returns None if the relaxation is empty.
    """
    cols = inst.columns()
    bounds = {}
    for i in sorted(inst.int_set):
        e = xn.unit(inst.m, i)
        hi = lx.dual_maximize(cols, inst.c, e)
        if hi.status == "infeasible":
            return None
        lo = lx.dual_maximize(cols, inst.c, xn.scale(-1, e))
        if hi.status != "optimal" or lo.status != "optimal":
            raise BoundsUnavailable(f"cannot bound coordinate {i + 1}: relaxation unbounded")
        bounds[i] = (math.floor(-lo.value), math.ceil(hi.value))
    return bounds


def _resolve_bounds(inst: DualFormMIP, bounds: Mapping[int, tuple[int, int]] | None):
    if bounds is not None and set(bounds) >= set(inst.int_set):
        return {i: bounds[i] for i in inst.int_set}
    derived = derive_bounds(inst)
    if derived is None:
        return None
    if bounds:
        derived.update({i: bounds[i] for i in inst.int_set if i in bounds})
    return derived


def _restricted(inst: DualFormMIP, fixed: Mapping[int, int]):
    """Columns and costs of the LP left after fixing the integer coordinates."""
    free = [k for k in range(inst.m) if k not in fixed]
    cols, costs = [], []
    for j, cj in enumerate(inst.c):
        costs.append(cj - sum((inst.A[i][j] * v for i, v in fixed.items()), Fraction(0)))
        cols.append(tuple(inst.A[k][j] for k in free))
    return free, cols, costs


def _assemble(inst: DualFormMIP, fixed: Mapping[int, int], free: Sequence[int], y_free) -> RatVector:
    y = [Fraction(0)] * inst.m
    for i, v in fixed.items():
        y[i] = Fraction(v)
    for k, v in zip(free, y_free):
        y[k] = v
    return tuple(y)


def complete(inst: DualFormMIP, fixed: Mapping[int, int], objective: Sequence[Fraction] | None = None
             ) -> RatVector | None:
    """Best continuous completion of an integer assignment, or None if infeasible.

    ``objective`` (full length m) defaults to ``b``.
    """
    g = inst.b if objective is None else objective
    free, cols, costs = _restricted(inst, fixed)
    if not free:
        return _assemble(inst, fixed, free, ()) if all(cj >= 0 for cj in costs) else None
    res = lx.dual_maximize(cols, costs, [g[k] for k in free])
    if res.status == "infeasible":
        return None
    if res.status != "optimal":
        raise BoundsUnavailable("continuous part is unbounded for a fixed integer assignment")
    return _assemble(inst, fixed, free, res.y)


def assignments(inst: DualFormMIP, bounds: Mapping[int, tuple[int, int]]) -> Iterator[dict[int, int]]:
    ints = sorted(inst.int_set)
    ranges = [range(bounds[i][0], bounds[i][1] + 1) for i in ints]
    for values in itertools.product(*ranges):
        yield dict(zip(ints, values))


def oracle_solve(inst: DualFormMIP, bounds: Mapping[int, tuple[int, int]] | None = None) -> OracleResult:
    box = _resolve_bounds(inst, bounds)
    result = OracleResult("infeasible")
    if box is None:
        return result
    for fixed in assignments(inst, box):
        result.assignments += 1
        y = complete(inst, fixed)
        if y is None:
            continue
        result.feasible_assignments += 1
        value = inst.objective(y)
        if result.value is None or value > result.value:
            result.status, result.value, result.witness = "optimal", value, y
    return result


def feasible_points(inst: DualFormMIP, bounds: Mapping[int, tuple[int, int]] | None = None
                    ) -> Iterator[RatVector]:
    """Mixed-integer feasible points: per feasible assignment, LP vertices of the slice.

    For each integer assignment with a feasible completion this yields the
    completion maximizing ``y'b`` and the completions maximizing and
    minimizing each continuous coordinate (duplicates dropped).
    """
    box = _resolve_bounds(inst, bounds)
    if box is None:
        return
    objectives = []
    for k in range(inst.m):
        if k not in inst.int_set:
            e = xn.unit(inst.m, k)
            objectives += [e, xn.scale(-1, e)]
    for fixed in assignments(inst, box):
        first = complete(inst, fixed)
        if first is None:
            continue
        seen = {first}
        yield first
        for g in objectives:
            y = complete(inst, fixed, g)
            if y is not None and y not in seen:
                seen.add(y)
                yield y
