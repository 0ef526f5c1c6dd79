"""Unimodular affine equivalence of lattice polygons.

Two independent deciders live here: :func:`canonical_form`, which anchors
every directed edge on the positive x-axis and keeps the smallest image,
and :func:`equivalence_oracle`, which solves for the map edge pair by edge
pair. Tests play them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .core import (
    Degenerate,
    LatticePolygon,
    Point,
    _rotate_to_min,
    is_centrally_symmetric,
    lattice_points,
    max_collinear_run_of_points,
    pick_stats,
)
from .errors import InvalidInput


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b)``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


@dataclass(frozen=True)
class UnimodularAffineMap:
    """``p -> M p + t`` with ``M = [[a, b], [c, d]]`` and ``det M = ±1``."""

    a: int
    b: int
    c: int
    d: int
    tx: int = 0
    ty: int = 0

    def __post_init__(self) -> None:
        if abs(self.det) != 1:
            raise InvalidInput(f"matrix determinant is {self.det}, expected ±1")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "UnimodularAffineMap":
        return cls(1, 0, 0, 1)

    def __call__(self, p: Point) -> Point:
        x, y = p
        return (self.a * x + self.b * y + self.tx, self.c * x + self.d * y + self.ty)

    def __matmul__(self, other: "UnimodularAffineMap") -> "UnimodularAffineMap":
        """Composition ``self ∘ other``."""
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        tx, ty = self((other.tx, other.ty))
        return UnimodularAffineMap(a, b, c, d, tx, ty)

    def inverse(self) -> "UnimodularAffineMap":
        det = self.det
        a, b, c, d = self.d * det, -self.b * det, -self.c * det, self.a * det
        tx = -(a * self.tx + b * self.ty)
        ty = -(c * self.tx + d * self.ty)
        return UnimodularAffineMap(a, b, c, d, tx, ty)

    def to_json(self) -> dict:
        return {"matrix": [[self.a, self.b], [self.c, self.d]], "translation": [self.tx, self.ty]}


def apply(sigma: UnimodularAffineMap, P: LatticePolygon) -> LatticePolygon:
    image = [sigma(v) for v in P.vertices]
    if sigma.det < 0:
        image.reverse()
    return LatticePolygon._trusted(_rotate_to_min(image))


@dataclass(frozen=True)
class InvariantVector:
    run: int
    vertices: int
    interior: int
    area2: int
    total: int
    boundary: int
    symmetric: bool

    def as_tuple(self) -> tuple:
        return (self.run, self.vertices, self.interior, self.area2, self.total,
                self.boundary, self.symmetric)

    def to_json(self) -> dict:
        return {
            "run": self.run,
            "vertices": self.vertices,
            "interior": self.interior,
            "area2": self.area2,
            "total": self.total,
            "boundary": self.boundary,
            "symmetric": self.symmetric,
        }


def invariant_vector(P: LatticePolygon) -> InvariantVector:
    stats = pick_stats(P)
    run = max_collinear_run_of_points(lattice_points(P)).length
    return InvariantVector(
        run=run,
        vertices=len(P.vertices),
        interior=stats.interior,
        area2=stats.area2,
        total=stats.total,
        boundary=stats.boundary,
        symmetric=is_centrally_symmetric(P)[0],
    )


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Distinguished vertex sequence of an equivalence class; starts at the origin."""

    vertices: tuple[Point, ...]

    def polygon(self) -> LatticePolygon:
        return LatticePolygon._trusted(_rotate_to_min(self.vertices))

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}


def _edge_candidates(vs: tuple[Point, ...]) -> list[tuple[Point, ...]]:
    n = len(vs)
    out = []
    for i in range(n):
        ox, oy = vs[i]
        ex, ey = vs[(i + 1) % n]
        g = gcd(ex - ox, ey - oy)
        dx, dy = (ex - ox) // g, (ey - oy) // g
        _, p, q = _ext_gcd(dx, dy)
        # rows (p, q) and (-dy, dx): sends (dx, dy) to (1, 0), det = 1
        img = []
        for k in range(n):
            x, y = vs[(i + k) % n]
            x -= ox
            y -= oy
            img.append((p * x + q * y, dx * y - dy * x))
        top = min(img, key=lambda v: (-v[1], v[0]))
        shift = -(top[0] // top[1])
        out.append(tuple((x + shift * y, y) for x, y in img))
    return out


def canonical_key(vertices: tuple[Point, ...], proper_only: bool = False) -> tuple[Point, ...]:
    """Canonical vertex sequence of a normalized ccw vertex cycle."""
    best = min(_edge_candidates(vertices))
    if not proper_only:
        mirrored = _rotate_to_min([(-x, y) for x, y in reversed(vertices)])
        best = min(best, min(_edge_candidates(mirrored)))
    return best


def canonical_form(P: LatticePolygon | Degenerate, proper_only: bool = False) -> CanonicalForm:
    if not isinstance(P, LatticePolygon):
        raise InvalidInput("canonical form needs a two-dimensional polygon")
    return CanonicalForm(canonical_key(P.vertices, proper_only))


def _solve_linear(u1: Point, u2: Point, w1: Point, w2: Point) -> tuple[int, int, int, int] | None:
    """Integer M with M u1 = w1, M u2 = w2, or None if M is not integral."""
    det = u1[0] * u2[1] - u2[0] * u1[1]
    # M = W U^{-1}, U = [u1 u2] as columns
    inv = ((u2[1], -u2[0]), (-u1[1], u1[0]))  # times 1/det
    entries = []
    for row in ((w1[0], w2[0]), (w1[1], w2[1])):
        for col in range(2):
            num = row[0] * inv[0][col] + row[1] * inv[1][col]
            val = Fraction(num, det)
            if val.denominator != 1:
                return None
            entries.append(int(val))
    return entries[0], entries[1], entries[2], entries[3]


def equivalence_oracle(P: LatticePolygon, Q: LatticePolygon,
                       proper_only: bool = False) -> UnimodularAffineMap | None:
    """A unimodular affine map taking ``P`` onto ``Q``, or ``None`` if none exists.

    Any such map carries the vertex cycle of ``P`` onto that of ``Q``,
    preserving or reversing cyclic order, so it is pinned down by where one
    vertex and its two successors go. All such assignments are tried.
    """
    pv, qv = P.vertices, Q.vertices
    n = len(pv)
    if n != len(qv):
        return None
    target = set(qv)
    a0, a1, a2 = pv[0], pv[1], pv[2]
    u1 = (a1[0] - a0[0], a1[1] - a0[1])
    u2 = (a2[0] - a0[0], a2[1] - a0[1])
    orders = [qv] if proper_only else [qv, tuple(reversed(qv))]
    for seq in orders:
        for j in range(n):
            b0, b1, b2 = seq[j], seq[(j + 1) % n], seq[(j + 2) % n]
            w1 = (b1[0] - b0[0], b1[1] - b0[1])
            w2 = (b2[0] - b0[0], b2[1] - b0[1])
            m = _solve_linear(u1, u2, w1, w2)
            if m is None:
                continue
            a, b, c, d = m
            if abs(a * d - b * c) != 1:
                continue
            tx = b0[0] - (a * a0[0] + b * a0[1])
            ty = b0[1] - (c * a0[0] + d * a0[1])
            sigma = UnimodularAffineMap(a, b, c, d, tx, ty)
            if {sigma(v) for v in pv} == target:
                return sigma
    return None
