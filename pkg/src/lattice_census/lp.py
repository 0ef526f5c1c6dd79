"""Exact two-phase simplex over the rationals.

Small and dense: it exists to answer convex-hull membership questions with
no rounding. Bland's rule guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class _Tableau:
    def __init__(self, A: list[list[Fraction]], b: list[Fraction], basis: list[int]):
        self.A = A
        self.b = b
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        A, b = self.A, self.b
        piv = A[r][c]
        row = [v / piv for v in A[r]]
        A[r] = row
        b[r] = b[r] / piv
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                Ai = A[i]
                for j, v in enumerate(row):
                    if v:
                        Ai[j] -= f * v
                b[i] -= f * b[r]
        self.basis[r] = c

    def optimize(self, cost: list[Fraction], allowed: int) -> Fraction:
        """Maximize ``cost . x`` over columns ``< allowed``; returns the optimum.

        Raises ``ValueError`` when unbounded.
        """
        while True:
            # reduced cost of column j: cost_j - sum_i cost_{basis_i} A_ij
            cb = [cost[k] for k in self.basis]
            enter = None
            for j in range(allowed):
                if j in self.basis:
                    continue
                red = cost[j] - sum(cb[i] * self.A[i][j] for i in range(len(self.A)) if self.A[i][j])
                if red > 0:
                    enter = j
                    break
            if enter is None:
                return sum(cb[i] * self.b[i] for i in range(len(self.A)))
            leave = None
            best = None
            for i in range(len(self.A)):
                a = self.A[i][enter]
                if a > 0:
                    ratio = self.b[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                raise ValueError("unbounded")
            self.pivot(leave, enter)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, list[Fraction]] | None:
    """Maximize ``c . x`` subject to ``A x = b``, ``x >= 0``.

    Returns ``(optimum, x)`` or ``None`` when infeasible.
    """
    m, n = len(A), len(c)
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        rows.append(row + [Fraction(int(k == i)) for k in range(m)])
        rhs.append(bi)
    t = _Tableau(rows, rhs, [n + i for i in range(m)])
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    if t.optimize(phase1, n + m) < 0:
        return None
    # drive remaining artificials out of the basis where possible
    for r in range(m):
        if t.basis[r] >= n:
            for j in range(n):
                if t.A[r][j] != 0 and j not in t.basis:
                    t.pivot(r, j)
                    break
    keep = [r for r in range(m) if t.basis[r] < n]
    t = _Tableau([t.A[r] for r in keep], [t.b[r] for r in keep], [t.basis[r] for r in keep])
    cost = [Fraction(v) for v in c] + [Fraction(0)] * m
    opt = t.optimize(cost, n)
    x = [Fraction(0)] * n
    for r, j in enumerate(t.basis):
        x[j] = t.b[r]
    return opt, x


def feasible(A: Sequence[Sequence], b: Sequence) -> bool:
    return maximize([0] * len(A[0]), A, b) is not None
