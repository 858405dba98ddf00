"""From ``max y'b, y'A <= c', y_I integer`` to the lexicographic primal LP.

The integer coordinates are moved to the front, the objective becomes the
integer variable ``y0 <= y'b`` placed first, and the objective is then
``y0`` perturbed by ``eps^k y_k``.  The primal of that is the standard-form
LP with columns ``(1, -b)`` and ``(0, a_j)`` and costs ``(0, c)``.

Indices in this module are 0-based; ``int_set`` holds row indices of ``A``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from dualgmi import exactnum as xn
from dualgmi.exactnum import RatMatrix, RatVector
from dualgmi.lexsimplex import StandardFormLP


class ValidationError(ValueError):
    """The instance does not meet a hypothesis the method needs."""


class ValueIntegrality(enum.Enum):
    SATISFIED = "satisfied"
    UNVERIFIED = "unverified"


@dataclass(frozen=True)
class DualFormMIP:
    A: RatMatrix
    b: RatVector
    c: RatVector
    int_set: frozenset[int]

    def __post_init__(self):
        m, n = xn.shape(self.A)
        if m == 0:
            raise ValidationError("A has no rows")
        if len(self.b) != m:
            raise ValidationError(f"b has length {len(self.b)}, expected {m}")
        if len(self.c) != n:
            raise ValidationError(f"c has length {len(self.c)}, expected {n}")
        if not self.int_set:
            raise ValidationError("int_set must be nonempty")
        if not all(0 <= i < m for i in self.int_set):
            raise ValidationError(f"int_set {sorted(self.int_set)} not within rows 0..{m - 1}")
        for name, vals in (("A", (a for row in self.A for a in row)), ("b", self.b), ("c", self.c)):
            if not all(xn.is_integral(v) for v in vals):
                raise ValidationError(f"{name} must be integral")

    @classmethod
    def create(cls, A, b, c, int_set) -> DualFormMIP:
        return cls(xn.matrix(A), xn.vector(b), xn.vector(c), frozenset(int_set))

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.c)

    def columns(self) -> tuple[RatVector, ...]:
        return xn.transpose(self.A)

    def is_feasible(self, y: Sequence[Fraction]) -> bool:
        """Continuous feasibility ``y'A <= c'``."""
        return all(v <= cj for v, cj in zip(xn.vec_mat(y, self.A), self.c))

    def is_mixed_integer_feasible(self, y: Sequence[Fraction]) -> bool:
        return self.is_feasible(y) and all(xn.is_integral(y[i]) for i in self.int_set)

    def objective(self, y: Sequence[Fraction]) -> Fraction:
        return xn.dot(y, self.b)


@dataclass(frozen=True)
class LexMIP:
    lp: StandardFormLP
    int_count: int
    perm: tuple[int, ...]  # new row k (k >= 1 in the lp) is original row perm[k-1]
    source: DualFormMIP

    def lift(self, y: Sequence[Fraction], y0: Fraction | None = None) -> RatVector:
        """Map an original-space point to lp coordinates ``(y0, y_perm)``."""
        if y0 is None:
            y0 = xn.dot(y, self.source.b)
        return (Fraction(y0),) + tuple(Fraction(y[p]) for p in self.perm)


def permute_integers(inst: DualFormMIP) -> tuple[DualFormMIP, tuple[int, ...]]:
    """Stable reorder of the rows so integer coordinates come first."""
    ints = [i for i in range(inst.m) if i in inst.int_set]
    perm = tuple(ints + [i for i in range(inst.m) if i not in inst.int_set])
    permuted = DualFormMIP(
        tuple(inst.A[p] for p in perm),
        tuple(inst.b[p] for p in perm),
        inst.c,
        frozenset(range(len(ints))),
    )
    return permuted, perm


def check_value_integrality(inst: DualFormMIP) -> ValueIntegrality:
    """Satisfied when ``b_i = 0`` off the integer set, so ``y'b`` is integral."""
    if all(inst.b[i] == 0 for i in range(inst.m) if i not in inst.int_set):
        return ValueIntegrality.SATISFIED
    return ValueIntegrality.UNVERIFIED


def to_lex(inst: DualFormMIP) -> LexMIP:
    permuted, perm = permute_integers(inst)
    zero = Fraction(0)
    cols = [(Fraction(1),) + tuple(-v for v in permuted.b)]
    cols += [(zero,) + tuple(col) for col in permuted.columns()]
    lp = StandardFormLP(tuple(cols), (zero,) + permuted.c, inst.m + 1)
    return LexMIP(lp, 1 + len(inst.int_set), perm, inst)


def extract(lexmip: LexMIP, yhat: Sequence[Fraction]) -> tuple[Fraction, RatVector]:
    """Objective value and original-order y from an lp dual solution."""
    m = len(lexmip.perm)
    if len(yhat) != m + 1:
        raise ValidationError(f"expected {m + 1} coordinates, got {len(yhat)}")
    y = [Fraction(0)] * m
    for k, p in enumerate(lexmip.perm):
        y[p] = Fraction(yhat[k + 1])
    return Fraction(yhat[0]), tuple(y)
