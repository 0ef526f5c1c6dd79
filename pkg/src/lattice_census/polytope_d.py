"""Lattice polytopes in dimension d >= 3.

The family ``P(d, w, k) = conv{o, e_1..e_{d-1}, -j e_d (1 <= j <= w-d-1),
(1, ..., 1, k)}`` has exactly ``w`` lattice points for every ``k >= 1`` but
pairwise different volumes, so it yields infinitely many classes of fixed
cardinality.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp
from .errors import BudgetExceeded, InvalidInput, SplitConditionUnmet

PointD = tuple[int, ...]

DEFAULT_BUDGET = 10 ** 7


def default_budget() -> int:
    env = os.environ.get("LATTICE_CENSUS_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class LatticePolytopeD:
    dim: int
    vertices: tuple[PointD, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise InvalidInput("dimension must be >= 1")
        if any(len(v) != self.dim for v in self.vertices):
            raise InvalidInput("vertex of wrong dimension")
        if affine_rank(self.vertices) != self.dim:
            raise InvalidInput("vertices do not span the full dimension")

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices]}


def affine_rank(points: Sequence[PointD]) -> int:
    if not points:
        return -1
    base = points[0]
    rows = [[Fraction(p[i] - base[i]) for i in range(len(base))] for p in points[1:]]
    rank = 0
    cols = len(base)
    for c in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss)."""
    M = [list(row) for row in matrix]
    n = len(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def simplex_volume(vertices: Sequence[PointD]) -> Fraction:
    """Volume of a d-simplex given by its d + 1 vertices."""
    d = len(vertices[0])
    if len(vertices) != d + 1:
        raise InvalidInput(f"a {d}-simplex needs {d + 1} vertices")
    o = vertices[0]
    rows = [[v[i] - o[i] for i in range(d)] for v in vertices[1:]]
    return Fraction(abs(det(rows)), math.factorial(d))


def _unit(d: int, i: int, scale: int = 1) -> PointD:
    return tuple(scale if n == i else 0 for n in range(d))


def pdwk_vertices(d: int, w: int, k: int) -> LatticePolytopeD:
    if d < 3:
        raise InvalidInput(f"d must be >= 3, got {d}")
    if w < d + 1:
        raise InvalidInput(f"w must be >= d + 1 = {d + 1}, got {w}")
    if k < 1:
        raise InvalidInput(f"k must be >= 1, got {k}")
    verts = [tuple([0] * d)]
    verts += [_unit(d, i) for i in range(d - 1)]
    verts += [_unit(d, d - 1, -j) for j in range(1, w - d)]
    verts.append(tuple([1] * (d - 1) + [k]))
    return LatticePolytopeD(d, tuple(verts))


def split_threshold(d: int, w: int) -> int:
    """Smallest ``k`` for which ``P(d, w, k)`` is the union of its two simplices."""
    return max(1, (d - 2) * (w - d - 1))


def pdwk_volume(d: int, w: int, k: int) -> Fraction:
    """Volume as the sum of the apex simplex and the stack below the base.

    Below the base facet ``conv{e_1..e_{d-1}}`` the polytope is cut into
    ``w - d - 1`` unimodular slabs ``conv{e_1..e_{d-1}, -(j-1) e_d, -j e_d}``.
    """
    pdwk_vertices(d, w, k)  # validates parameters
    if k < split_threshold(d, w):
        raise SplitConditionUnmet(f"k={k} is below the split threshold {split_threshold(d, w)}")
    base = [_unit(d, i) for i in range(d - 1)]
    apex = tuple([1] * (d - 1) + [k])
    vol = simplex_volume([tuple([0] * d)] + base + [apex])
    for j in range(1, w - d):
        vol += simplex_volume(base + [_unit(d, d - 1, -(j - 1)), _unit(d, d - 1, -j)])
    closed = Fraction(k + w - d - 1, math.factorial(d))
    if vol != closed:
        raise AssertionError(f"split volume {vol} differs from {closed}")
    return vol


def _box(P: LatticePolytopeD) -> list[range]:
    return [range(min(v[i] for v in P.vertices), max(v[i] for v in P.vertices) + 1)
            for i in range(P.dim)]


def _box_cells(P: LatticePolytopeD) -> int:
    return math.prod(len(r) for r in _box(P))


def _membership_system(P: LatticePolytopeD, point: PointD):
    # sum lambda_i v_i = p, sum lambda_i = 1, lambda >= 0
    n = len(P.vertices)
    A = [[P.vertices[i][c] for i in range(n)] for c in range(P.dim)]
    A.append([1] * n)
    b = list(point) + [1]
    return A, b


def contains(P: LatticePolytopeD, point: PointD) -> bool:
    A, b = _membership_system(P, point)
    return lp.feasible(A, b)


def in_interior(P: LatticePolytopeD, point: PointD) -> bool:
    """Strict interior test: some convex combination has all weights positive."""
    n = len(P.vertices)
    A, b = _membership_system(P, point)
    # lambda_i = t + mu_i with t, mu >= 0; maximize t
    A2 = [row + [sum(row)] for row in A]
    res = lp.maximize([0] * n + [1], A2, b)
    return res is not None and res[0] > 0


def _scan(P: LatticePolytopeD, budget: int | None, interior: bool) -> int:
    limit = default_budget() if budget is None else budget
    cells = _box_cells(P)
    if cells > limit:
        raise BudgetExceeded(f"bounding box has {cells} cells, budget is {limit}")
    test = in_interior if interior else contains
    return sum(1 for p in itertools.product(*_box(P)) if test(P, p))


def lattice_count_d(P: LatticePolytopeD, budget: int | None = None) -> int:
    """``|P ∩ Z^d|`` by scanning the bounding box with exact membership tests."""
    return _scan(P, budget, interior=False)


def interior_count_d(P: LatticePolytopeD, budget: int | None = None) -> int:
    return _scan(P, budget, interior=True)


def has_interior_point(P: LatticePolytopeD, budget: int | None = None) -> bool:
    return interior_count_d(P, budget) > 0


@dataclass(frozen=True)
class Witness:
    polytope: LatticePolytopeD
    k: int
    volume: Fraction
    count: int | None  # None when the scan was over budget


def theorem4_witnesses(d: int, w: int, n: int, budget: int | None = None) -> list[Witness]:
    """``n`` members of the family with ``w`` lattice points and distinct volumes."""
    if n < 1:
        raise InvalidInput(f"n must be >= 1, got {n}")
    k0 = split_threshold(d, w)
    out = []
    for k in range(k0, k0 + n):
        P = pdwk_vertices(d, w, k)
        try:
            count = lattice_count_d(P, budget)
        except BudgetExceeded:
            count = None
        if count is not None and count != w:
            raise AssertionError(f"P({d},{w},{k}) has {count} lattice points, expected {w}")
        out.append(Witness(P, k, pdwk_volume(d, w, k), count))
    return out
