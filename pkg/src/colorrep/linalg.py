"""Exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction`` (or ``int``).  Rank uses fraction-free
(Bareiss) elimination on an integer rescaling; solving uses reduced row echelon
form over ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import InconsistentSystemError


def _integer_rows(m: Sequence[Sequence]) -> list:
    out = []
    for row in m:
        row = [Fraction(v) for v in row]
        scale = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * scale) for v in row])
    return out


def bareiss_rank(m: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free Gaussian elimination."""
    a = _integer_rows(m)
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][c]
        for r in range(rank + 1, rows):
            f = a[r][c]
            row_r, row_p = a[r], a[rank]
            for k in range(c, cols):
                row_r[k] = (p * row_r[k] - f * row_p[k]) // prev
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def rref(m: Sequence[Sequence], rhs: Sequence | None = None):
    """Reduced row echelon form; returns (rows, pivot_columns, rhs or None)."""
    a = [[Fraction(v) for v in row] for row in m]
    b = None if rhs is None else [Fraction(v) for v in rhs]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        if b is not None:
            b[r], b[pivot] = b[pivot], b[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        if b is not None:
            b[r] *= inv
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
                if b is not None:
                    b[i] -= f * b[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots, b


def rank(m: Sequence[Sequence]) -> int:
    return bareiss_rank(m)


def nullspace(m: Sequence[Sequence]) -> list:
    """A basis of {v : m v = 0}, one vector per free column."""
    if not m:
        return []
    a, pivots, _ = rref(m)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][f]
        basis.append(v)
    return basis


def solve_particular(m: Sequence[Sequence], rhs: Sequence) -> list:
    """Some solution of m v = rhs (free variables set to zero)."""
    a, pivots, b = rref(m, rhs)
    cols = len(a[0])
    for i in range(len(pivots), len(a)):
        if b[i] != 0:
            raise InconsistentSystemError("linear system has no solution")
    v = [Fraction(0)] * cols
    for i, pc in enumerate(pivots):
        v[pc] = b[i]
    return v


def solve_unique(m: Sequence[Sequence], rhs: Sequence):
    """The unique solution of m v = rhs, or None when the columns are dependent."""
    a, pivots, b = rref(m, rhs)
    cols = len(a[0])
    for i in range(len(pivots), len(a)):
        if b[i] != 0:
            raise InconsistentSystemError("linear system has no solution")
    if len(pivots) < cols:
        return None
    v = [Fraction(0)] * cols
    for i, pc in enumerate(pivots):
        v[pc] = b[i]
    return v


def matvec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v) if a), Fraction(0)) for row in m]


def transpose(m: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*m)]
