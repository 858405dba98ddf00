"""Exact rational scalars, vectors and dense matrices.

Scalars are :class:`fractions.Fraction`, which is always normalized
(positive denominator, lowest terms) and backed by Python's unbounded
integers.  Vectors are tuples of fractions and matrices are row-major
tuples of such vectors; everything here returns fresh tuples so values
can be shared freely.
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]
RatMatrix = tuple  # tuple[RatVector, ...], row-major

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class SingularMatrixError(ArithmeticError):
    """Raised when an exact inverse does not exist."""


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def floor(q: Fraction) -> int:
    return math.floor(q)


def frac(q: Fraction) -> Fraction:
    """Fractional part ``q - floor(q)``, always in [0, 1)."""
    return q - math.floor(q)


def is_integral(q: Fraction) -> bool:
    return Fraction(q).denominator == 1


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"7"``, ``"-3/4"`` (or a plain int).  Decimals are rejected."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    match = _RATIONAL_RE.match(str(text))
    if match is None:
        raise ValueError(f"not a rational: {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def vector(values: Iterable) -> RatVector:
    return tuple(Fraction(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> RatMatrix:
    out = tuple(vector(row) for row in rows)
    if out and len({len(row) for row in out}) != 1:
        raise ValueError("matrix rows have different lengths")
    return out


def zeros(n: int) -> RatVector:
    return (ZERO,) * n


def unit(n: int, i: int) -> RatVector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def identity(n: int) -> RatMatrix:
    return tuple(unit(n, i) for i in range(n))


def shape(M: RatMatrix) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> RatVector:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> RatVector:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(s: Fraction, u: Sequence[Fraction]) -> RatVector:
    return tuple(s * a for a in u)


def transpose(M: RatMatrix) -> RatMatrix:
    return tuple(zip(*M))


def column(M: RatMatrix, j: int) -> RatVector:
    return tuple(row[j] for row in M)


def from_columns(cols: Sequence[Sequence[Fraction]]) -> RatMatrix:
    """Build the matrix whose j-th column is ``cols[j]``."""
    return tuple(tuple(Fraction(x) for x in row) for row in zip(*cols))


def mat_vec(M: RatMatrix, v: Sequence[Fraction]) -> RatVector:
    """``M @ v``."""
    return tuple(dot(row, v) for row in M)


def vec_mat(v: Sequence[Fraction], M: RatMatrix) -> RatVector:
    """``v' @ M``."""
    if len(v) != len(M):
        raise ValueError(f"length mismatch: {len(v)} vs {len(M)}")
    ncols = len(M[0]) if M else 0
    out = [ZERO] * ncols
    for vk, row in zip(v, M):
        if vk:
            for j, a in enumerate(row):
                if a:
                    out[j] += vk * a
    return tuple(out)


def mat_mul(L: RatMatrix, R: RatMatrix) -> RatMatrix:
    return tuple(vec_mat(row, R) for row in L)


def lex_compare(u: Sequence[Fraction], v: Sequence[Fraction]) -> Order:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    for a, b in zip(u, v):
        if a < b:
            return Order.LESS
        if a > b:
            return Order.GREATER
    return Order.EQUAL


def lex_positive(u: Sequence[Fraction]) -> bool:
    """True iff the first nonzero entry of ``u`` is positive."""
    for a in u:
        if a:
            return a > 0
    return False


def invert(M: RatMatrix) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination.

    The pivot in each column is the first nonzero entry at or below the
    diagonal, so the result is deterministic.
    """
    n, ncols = shape(M)
    if n != ncols:
        raise ValueError(f"cannot invert a {n}x{ncols} matrix")
    # augmented [M | I], mutated locally
    work = [list(map(Fraction, row)) + list(e) for row, e in zip(M, identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"matrix is singular (column {col})")
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
        pivot_row = work[col]
        p = pivot_row[col]
        if p != 1:
            pivot_row[:] = [x / p for x in pivot_row]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                row = work[r]
                row[:] = [x - factor * y for x, y in zip(row, pivot_row)]
    return tuple(tuple(row[n:]) for row in work)
