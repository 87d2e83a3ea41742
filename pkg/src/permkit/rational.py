"""Exact linear systems over the rationals (sparse Gauss-Jordan on Fractions)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

UNIQUE = "unique"
UNDERDETERMINED = "underdetermined"
INCONSISTENT = "inconsistent"


@dataclass
class Solution:
    """Solution set ``particular + span(kernel)``; empty when ``status == INCONSISTENT``."""

    status: str
    rank: int
    particular: list[Fraction] | None = None
    kernel: list[list[Fraction]] = field(default_factory=list)
    free: list[int] = field(default_factory=list)

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> Solution:
    """Solve ``matrix @ x = rhs`` exactly.

    The reduced row echelon form is computed with rows stored as
    ``{column: Fraction}`` so sparse covering systems stay sparse.  Free
    variables are zero in the particular solution, and kernel vector ``k``
    has a 1 in free column ``free[k]``.
    """
    m = len(matrix[0]) if matrix else 0
    if any(len(row) != m for row in matrix) or len(rhs) != len(matrix):
        raise ValueError("inconsistent dimensions")
    rows = []
    for row, b in zip(matrix, rhs):
        d = {j: Fraction(v) for j, v in enumerate(row) if v}
        if b:
            d[m] = Fraction(b)
        rows.append(d)

    pivots: list[int] = []
    top = 0
    for col in range(m):
        cands = [i for i in range(top, len(rows)) if col in rows[i]]
        if not cands:
            continue
        best = min(cands, key=lambda i: len(rows[i]))
        rows[top], rows[best] = rows[best], rows[top]
        prow = rows[top]
        inv = 1 / prow[col]
        for j in prow:
            prow[j] *= inv
        for i, row in enumerate(rows):
            if i == top:
                continue
            f = row.get(col)
            if f is None:
                continue
            for j, v in prow.items():
                nv = row.get(j, 0) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        pivots.append(col)
        top += 1
        if top == len(rows):
            break

    for row in rows[top:]:
        if row.get(m):
            return Solution(INCONSISTENT, rank=top)

    pivot_set = set(pivots)
    free = [j for j in range(m) if j not in pivot_set]
    x = [Fraction(0)] * m
    for i, col in enumerate(pivots):
        x[col] = rows[i].get(m, Fraction(0))
    kernel = []
    for f in free:
        k = [Fraction(0)] * m
        k[f] = Fraction(1)
        for i, col in enumerate(pivots):
            k[col] = -rows[i].get(f, Fraction(0))
        kernel.append(k)
    status = UNIQUE if not free else UNDERDETERMINED
    return Solution(status, rank=top, particular=x, kernel=kernel, free=free)


def matvec(matrix: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * xv for a, xv in zip(row, x) if a), Fraction(0)) for row in matrix]
