"""Explicit polygon families.

* :func:`lemma2_polygon` sweeps every doubled area between the triangle
  ``T_l = conv{o, (l,0), (0,l)}`` and the square ``S_l = [0,l]²``.
* :func:`build_m_tau` chains primitive vectors of a disk into a polygon.
* :func:`assemble_symmetric` and :func:`assemble_cardinality` glue these
  pieces into exponentially many pairwise distinct polygons of prescribed
  area (centrally symmetric) or prescribed lattice-point count.

Parameters ``tau2`` stand for the squared radius, which is always an integer.
"""

from __future__ import annotations

import itertools
from math import gcd
from dataclasses import dataclass, field
from typing import Iterator, Literal, Sequence

from .core import (
    Degenerate,
    LatticePolygon,
    Point,
    convex_hull,
    is_centrally_symmetric,
    lattice_points,
    max_collinear_run,
    pick_stats,
    primitive_vectors,
)
from .errors import AssemblyMismatch, Infeasible, InvalidInput

ChoiceVector = tuple[int, ...]

DEFAULT_CAP = 2 ** 16


# -- area sweep ---------------------------------------------------------------

def _lemma2_recipes(ell: int) -> Iterator[tuple[str, tuple[int, ...], list[Point]]]:
    """Vertex recipes in the order whose doubled areas run through ell² + ell .. 2 ell²."""
    l = ell
    for j in range(l):
        yield "P", (j,), [(0, 0), (0, l), (1, l), (1 + j, l - j), (l, 0)]
    for i in range(l - 1):
        for j in range(l - 1 - i):
            yield "H", (i, j), [(0, 0), (0, l), (i + 1, l), (2 + i + j, l - j), (l, i), (l, 0)]
        for j in range(1, l - 1 - i):
            yield "H'", (i, j), [(0, 0), (0, l), (i + 1, l), (l - j, 2 + i + j), (l, 2 + i), (l, 0)]


def lemma2_recipe(ell: int, k: int) -> tuple[str, tuple[int, ...]]:
    """Name and indices of the recipe used for ``lemma2_polygon(ell, k)``."""
    if ell < 2:
        raise InvalidInput(f"ell must be >= 2, got {ell}")
    if not ell <= k <= ell * ell:
        raise InvalidInput(f"k must lie in [{ell}, {ell * ell}], got {k}")
    name, idx, _ = next(itertools.islice(_lemma2_recipes(ell), k - ell, None))
    return name, idx


def lemma2_polygon(ell: int, k: int) -> LatticePolygon:
    """Polygon with ``T_ell ⊂ P ⊆ S_ell`` and doubled area ``ell² + k``.

    The k-th member of the sweep is taken in order; repeated vertices in a
    recipe (for instance the pentagon at ``j = 0``) collapse in the hull.
    """
    if ell < 2:
        raise InvalidInput(f"ell must be >= 2, got {ell}")
    if not ell <= k <= ell * ell:
        raise InvalidInput(f"k must lie in [{ell}, {ell * ell}], got {k}")
    _, _, verts = next(itertools.islice(_lemma2_recipes(ell), k - ell, None))
    P = convex_hull(verts)
    assert isinstance(P, LatticePolygon)
    if pick_stats(P).area2 != ell * ell + k:
        raise AssemblyMismatch(f"area sweep recipe for ell={ell}, k={k} has the wrong area")
    return P


def sandwiched(P: LatticePolygon, ell: int) -> bool:
    """``T_ell ⊂ P ⊆ S_ell``."""
    inside_square = all(0 <= x <= ell and 0 <= y <= ell for x, y in P.vertices)
    pts = set(lattice_points(P))
    return inside_square and {(0, 0), (ell, 0), (0, ell)} <= pts


# -- primitive-vector polygons ------------------------------------------------

def _chain(start: Point, steps: Sequence[Point]) -> list[Point]:
    pts = [start]
    for dx, dy in steps:
        x, y = pts[-1]
        pts.append((x + dx, y + dy))
    return pts


def quarter_sum(tau2: int) -> int:
    """The integer ``l`` with ``sum(Q_tau) = (-l, l)``."""
    q = primitive_vectors(tau2, "quarter")
    sx = sum(v[0] for v in q)
    sy = sum(v[1] for v in q)
    assert sx == -sy
    return sy


def m_tau_edges(tau2: int, mode: Literal["quarter", "half"]) -> list[Point]:
    """Edge vectors of the polygon, ccw from the origin; the last one closes it."""
    if tau2 < 2:
        raise InvalidInput(f"tau2 must be >= 2, got {tau2}")
    if mode == "quarter":
        q = primitive_vectors(tau2, "quarter")
        l = quarter_sum(tau2)
        return [(l, 0), *q, (0, -l)]
    if mode == "half":
        v = primitive_vectors(tau2, "half")
        sx = sum(p[0] for p in v)
        sy = sum(p[1] for p in v)
        return [*v, (-sx, -sy)]
    raise InvalidInput(f"unknown mode {mode!r}")


def build_m_tau(tau2: int, mode: Literal["quarter", "half"]) -> LatticePolygon:
    edges = m_tau_edges(tau2, mode)
    pts = _chain((0, 0), edges)
    if pts[-1] != (0, 0):
        raise AssemblyMismatch("edge vectors do not close")
    verts = pts[:-1]
    P = LatticePolygon(tuple(verts))  # validates strict convexity
    expected = len(primitive_vectors(tau2, mode)) + (2 if mode == "quarter" else 1)
    if len(P.vertices) != expected:
        raise AssemblyMismatch(f"expected {expected} vertices, got {len(P.vertices)}")
    short = edges[1:-1] if mode == "quarter" else edges[:-1]
    if any(gcd(x, y) != 1 for x, y in short):
        raise AssemblyMismatch("a short side is not primitive")
    return P


def doubled_side_points(tau2: int, mode: Literal["quarter", "half"]) -> list[tuple[Point, Point, Point]]:
    """Three lattice points ``(p0, p1, p2)`` on each short side of ``2 M_tau``.

    Quarter sides run anticlockwise from ``(2l, 0)`` to ``(0, 2l)``. Half
    sides run clockwise from the origin to ``(n, 0)``, with the polygon above
    the x-axis.
    """
    if mode == "quarter":
        l = quarter_sum(tau2)
        steps = primitive_vectors(tau2, "quarter")
        start: Point = (2 * l, 0)
    else:
        # descending angle traces the arc over the diameter [0, n]
        steps = list(reversed(primitive_vectors(tau2, "half")))
        start = (0, 0)
    sides = []
    p = start
    for dx, dy in steps:
        p1 = (p[0] + dx, p[1] + dy)
        p2 = (p[0] + 2 * dx, p[1] + 2 * dy)
        sides.append((p, p1, p2))
        p = p2
    return sides


def _choices(n: int, u: ChoiceVector | None, cap: int | None) -> list[ChoiceVector]:
    if u is not None:
        u = tuple(u)
        if len(u) != n or any(i not in (1, 2) for i in u):
            raise InvalidInput(f"choice vector must have length {n} over {{1, 2}}, got {u}")
        return [u]
    total = 2 ** n
    if cap is not None and total > cap:
        raise InvalidInput(f"{total} choice vectors exceed the cap {cap}; pass cap=None to enumerate all")
    return list(itertools.product((1, 2), repeat=n))


def _polygon(points) -> LatticePolygon:
    P = convex_hull(points)
    if isinstance(P, Degenerate):
        raise AssemblyMismatch("assembly collapsed to a degenerate hull")
    return P


@dataclass(frozen=True)
class AssemblyTrace:
    tau2: int
    target: int
    u: ChoiceVector
    j: int | None = None
    mu2: int | None = None  # twice the area excess; may be odd
    k: int | None = None
    ell: int | None = None
    n: int | None = None
    parts: dict[str, LatticePolygon] = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {"tau2": self.tau2, "target": self.target, "u": list(self.u)}
        for name in ("j", "mu2", "k", "ell", "n"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        out["parts"] = {name: {"vertices": len(P.vertices), "area2": pick_stats(P).area2,
                               "points": pick_stats(P).total}
                        for name, P in self.parts.items()}
        return out


# -- centrally symmetric assembly of prescribed area ----------------------------

def minimal_feasible_m(tau2: int) -> int:
    """Least ``m`` with ``v(2 M_tau) + v(triangle) + 5 l <= m / 4``."""
    l = quarter_sum(tau2)
    return 8 * pick_stats(build_m_tau(tau2, "quarter")).area2 + 8 * l * l + 20 * l


def assemble_symmetric(tau2: int, m: int, u: ChoiceVector) -> tuple[LatticePolygon, AssemblyTrace]:
    """Centrally symmetric polygon of doubled area ``m`` indexed by ``u``.

    Layout, bottom to top in the upper half: the rectangle
    ``[-2l, 2l] x [0, j]``, then on top of it the sweep polygon grown from
    ``conv{o, (0, 2l), (-2l, 0)}`` on the left and the corner-cut copy of
    ``2 M_tau`` on the right. The lower half is the point reflection.
    """
    if tau2 < 2:
        raise InvalidInput(f"tau2 must be >= 2, got {tau2}")
    if m % 2:
        raise InvalidInput(f"m must be even, got {m}")
    need = minimal_feasible_m(tau2)
    if m < need:
        raise Infeasible(f"m={m} is below the feasible minimum {need} for tau2={tau2}", need)
    l = quarter_sum(tau2)
    sides = doubled_side_points(tau2, "quarter")
    u = _choices(len(sides) - 1, u, None)[0]

    two_m = _polygon(_chain((0, 0), [(2 * x, 2 * y) for x, y in m_tau_edges(tau2, "quarter")])[:-1])
    pts1 = [(0, 0), sides[0][0]] + [sides[i][c] for i, c in enumerate(u)] + [sides[-1][2]]
    p1 = _polygon(pts1)
    a1 = pick_stats(p1).area2

    # doubled: m/2 - a1 - 4 l^2 = 4 j l * 2 + 2 mu, with l <= mu < 5 l
    excess2 = m // 2 - a1 - 4 * l * l
    j, mu2 = divmod(excess2 - 2 * l, 8 * l)
    mu2 += 2 * l
    if j < 1:
        raise AssemblyMismatch(f"padding height j={j} is not positive")
    L = 2 * l
    if mu2 > L * L:
        # only possible for l = 2, where 10 l - 1 exceeds (2 l)^2
        raise Infeasible(f"m={m}: sweep target {mu2} exceeds {L * L} for side {L}; "
                         f"this residue of m needs a larger tau2")
    sweep = lemma2_polygon(L, mu2)
    p2 = _polygon([(-x, y) for x, y in sweep.vertices])
    p3 = _polygon([(-L, 0), (L, 0), (L, j), (-L, j)])

    upper = list(p3.vertices)
    upper += [(x, y + j) for x, y in p2.vertices]
    upper += [(x, y + j) for x, y in p1.vertices]
    p4 = _polygon(upper)
    P = _polygon(upper + [(-x, -y) for x, y in upper])

    trace = AssemblyTrace(tau2, m, u, j=j, mu2=mu2,
                          parts={"2M": two_m, "P1": p1, "P2": p2, "P3": p3, "P4": p4})
    if not is_centrally_symmetric(P)[0]:
        raise AssemblyMismatch("assembled polygon is not centrally symmetric")
    if pick_stats(P).area2 != m:
        raise AssemblyMismatch(f"assembled polygon has doubled area {pick_stats(P).area2}, expected {m}")
    run = max_collinear_run(P)
    if run.length != 2 * (j + 2 * l) + 1:
        raise AssemblyMismatch(f"longest collinear run is {run.length}, expected {2 * (j + 2 * l) + 1}")
    return P, trace


def symmetric_family(tau2: int, m: int, cap: int | None = DEFAULT_CAP) -> list[tuple[LatticePolygon, AssemblyTrace]]:
    n = len(primitive_vectors(tau2, "quarter")) - 1
    return [assemble_symmetric(tau2, m, u) for u in _choices(n, None, cap)]


# -- assembly of prescribed lattice-point count -----------------------------------

def doubled_half_polygon(tau2: int) -> LatticePolygon:
    return _polygon([(2 * x, 2 * y) for x, y in build_m_tau(tau2, "half").vertices])


def minimal_feasible_w(tau2: int) -> int:
    return pick_stats(doubled_half_polygon(tau2)).total


def assemble_cardinality(tau2: int, w: int, u: ChoiceVector) -> tuple[LatticePolygon, AssemblyTrace]:
    """Polygon with exactly ``w`` lattice points indexed by ``u``.

    The corner-cut copy of ``2 M_tau`` sits above ``[0, n]`` on the x-axis;
    below it hang ``k`` full rows of ``n + 1`` points and a partial row of
    ``ell`` points starting at ``x = 0``.
    """
    if tau2 < 2:
        raise InvalidInput(f"tau2 must be >= 2, got {tau2}")
    need = minimal_feasible_w(tau2)
    if w < need:
        raise Infeasible(f"w={w} is below the feasible minimum {need} for tau2={tau2}", need)
    sides = doubled_side_points(tau2, "half")
    u = _choices(len(sides) - 1, u, None)[0]
    n = sides[-1][2][0]
    if sides[-1][2] != (n, 0):
        raise AssemblyMismatch("doubled edge sum is not horizontal")

    pts1 = [sides[0][0]] + [sides[i][c] for i, c in enumerate(u)] + [sides[-1][2]]
    p1 = _polygon(pts1)
    k, ell = divmod(w - pick_stats(p1).total, n + 1)

    block = [(0, -1), (n, -1), (0, -k), (n, -k)] if k else []
    if ell:
        block += [(0, -k - 1), (ell - 1, -k - 1)]
    P = _polygon(list(p1.vertices) + block)
    parts = {"2M": doubled_half_polygon(tau2), "P1": p1}
    padding = convex_hull(block) if block else None
    if isinstance(padding, LatticePolygon):
        parts["P2"] = padding
    trace = AssemblyTrace(tau2, w, u, k=k, ell=ell, n=n, parts=parts)
    total = pick_stats(P).total
    if total != w:
        raise AssemblyMismatch(f"assembled polygon has {total} lattice points, expected {w}")
    return P, trace


def cardinality_family(tau2: int, w: int, cap: int | None = DEFAULT_CAP) -> list[tuple[LatticePolygon, AssemblyTrace]]:
    n = len(primitive_vectors(tau2, "half")) - 1
    return [assemble_cardinality(tau2, w, u) for u in _choices(n, None, cap)]
