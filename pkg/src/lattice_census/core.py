"""Exact planar lattice geometry.

Points are plain ``(x, y)`` integer tuples. Every predicate uses integer
cross products; nothing here touches floating point.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Literal, Sequence, Union

from .errors import InvalidInput

Point = tuple[int, int]
Region = Literal["quarter", "half"]


def cross(o: Point, a: Point, b: Point) -> int:
    """Twice the signed area of triangle ``o, a, b`` (positive if left turn)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _rotate_to_min(vertices: Sequence[Point]) -> tuple[Point, ...]:
    i = min(range(len(vertices)), key=vertices.__getitem__)
    return tuple(vertices[i:]) + tuple(vertices[:i])


@dataclass(frozen=True)
class Degenerate:
    """Hull of dimension below two: a single point or a lattice segment."""

    kind: Literal["point", "segment"]
    endpoints: tuple[Point, ...]


@dataclass(frozen=True, order=True)
class LatticePolygon:
    """Convex lattice polygon with a normalized counterclockwise vertex cycle.

    The first vertex is the lexicographically smallest one, so two polygons
    are equal exactly when they are the same point set.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        vs = tuple((int(x), int(y)) for x, y in self.vertices)
        n = len(vs)
        if n < 3:
            raise InvalidInput(f"polygon needs at least 3 vertices, got {n}")
        for i in range(n):
            if cross(vs[i - 1], vs[i], vs[(i + 1) % n]) <= 0:
                raise InvalidInput(f"vertex cycle is not strictly convex and counterclockwise at {vs[i]}")
        if len(set(vs)) != n:
            raise InvalidInput("repeated vertex")
        object.__setattr__(self, "vertices", _rotate_to_min(vs))

    @classmethod
    def _trusted(cls, vertices: tuple[Point, ...]) -> "LatticePolygon":
        # caller guarantees a normalized, strictly convex ccw cycle
        obj = object.__new__(cls)
        object.__setattr__(obj, "vertices", vertices)
        return obj

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[Point, Point]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data: dict | str) -> "LatticePolygon":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(tuple(v) for v in data["vertices"]))


@dataclass(frozen=True)
class PickStats:
    area2: int
    boundary: int
    interior: int
    total: int


@dataclass(frozen=True)
class CollinearRun:
    """``length`` lattice points ``start + t*direction`` for ``t = 0..length-1``."""

    length: int
    start: Point
    direction: tuple[int, int]

    def points(self) -> list[Point]:
        dx, dy = self.direction
        return [(self.start[0] + t * dx, self.start[1] + t * dy) for t in range(self.length)]


def _hull_chain(pts: list[Point]) -> list[Point]:
    # Andrew's monotone chain on sorted distinct points; drops collinear points
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def hull_vertices(points: Iterable[Point]) -> list[Point]:
    """Extreme points in ccw order starting at the lexicographic minimum."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    return _hull_chain(pts)


def convex_hull(points: Iterable[Point]) -> Union[LatticePolygon, Degenerate]:
    pts = sorted(set((int(x), int(y)) for x, y in points))
    if not pts:
        raise InvalidInput("convex hull of an empty set")
    if len(pts) == 1:
        return Degenerate("point", (pts[0],))
    chain = _hull_chain(pts) if len(pts) > 2 else pts
    if len(chain) < 3:
        return Degenerate("segment", (pts[0], pts[-1]))
    return LatticePolygon._trusted(tuple(chain))


def area2_of(vertices: Sequence[Point]) -> int:
    n = len(vertices)
    s = 0
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s


def boundary_count(vertices: Sequence[Point]) -> int:
    n = len(vertices)
    b = 0
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        b += gcd(x1 - x0, y1 - y0)
    return b


def pick_stats(P: LatticePolygon) -> PickStats:
    area2 = area2_of(P.vertices)
    boundary = boundary_count(P.vertices)
    interior, rem = divmod(area2 - boundary + 2, 2)
    assert rem == 0 and interior >= 0, "Pick's identity violated"
    return PickStats(area2, boundary, interior, boundary + interior)


def row_extents(P: LatticePolygon) -> dict[int, tuple[int, int]]:
    """Integer x-interval of ``P`` on every row it meets, by direct scan."""
    vs = P.vertices
    ys = [v[1] for v in vs]
    rows: dict[int, tuple[int, int]] = {}
    for y in range(min(ys), max(ys) + 1):
        lo: Fraction | None = None
        hi: Fraction | None = None
        for (ax, ay), (bx, by) in P.edges():
            if min(ay, by) <= y <= max(ay, by):
                if ay == by:
                    cands = [Fraction(ax), Fraction(bx)]
                else:
                    cands = [ax + Fraction((y - ay) * (bx - ax), by - ay)]
                for x in cands:
                    lo = x if lo is None or x < lo else lo
                    hi = x if hi is None or x > hi else hi
        assert lo is not None and hi is not None
        left = -((-lo.numerator) // lo.denominator)
        right = hi.numerator // hi.denominator
        if left <= right:
            rows[y] = (left, right)
    return rows


def lattice_points(P: LatticePolygon) -> list[Point]:
    """All of ``P ∩ Z²``, sorted by row then column."""
    return [(x, y) for y, (l, r) in sorted(row_extents(P).items()) for x in range(l, r + 1)]


def _primitive(dx: int, dy: int) -> tuple[int, int]:
    g = gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def max_collinear_run_of_points(points: Sequence[Point]) -> CollinearRun:
    """Longest collinear subset of a hull-closed point set.

    For such sets the collinear points on a line are consecutive lattice
    points, so the run is described by a start point and a primitive step.
    """
    pts = sorted(set(points))
    if not pts:
        raise InvalidInput("empty point set")
    index = set(pts)

    def longest(d: tuple[int, int]) -> CollinearRun:
        dx, dy = d
        run = CollinearRun(1, pts[0], d)
        for p in pts:
            if (p[0] - dx, p[1] - dy) in index:
                continue
            n = 1
            c = (p[0] + dx, p[1] + dy)
            while c in index:
                n += 1
                c = (c[0] + dx, c[1] + dy)
            if n > run.length:
                run = CollinearRun(n, p, d)
        return run

    best = CollinearRun(1, pts[0], (1, 0))
    for d in ((1, 0), (0, 1)):
        r = longest(d)
        if r.length > best.length:
            best = r
    width = pts[-1][0] - pts[0][0]
    height = max(p[1] for p in pts) - min(p[1] for p in pts)
    # a run of length b along d spans (b - 1) d inside the bounding box
    a = 1
    while a * max(best.length - 1, 1) <= max(width, height):
        span = max(best.length - 1, 1)
        for d in _ring(a):
            if abs(d[0]) * span > width or abs(d[1]) * span > height:
                continue
            r = longest(d)
            if r.length > best.length or (r.length == best.length and
                                          (r.start, r.direction) < (best.start, best.direction)):
                best = r
        a += 1
    return best


def _ring(a: int) -> list[tuple[int, int]]:
    """Primitive directions (up to sign) with max-norm ``a``, excluding the axes."""
    out = []
    for b in range(1, a + 1):
        for dx, dy in ((a, b), (b, a), (a, -b), (b, -a)):
            if gcd(dx, dy) == 1 and (dx, dy) not in out:
                out.append((dx, dy))
    return out


def max_collinear_run(P: LatticePolygon) -> CollinearRun:
    return max_collinear_run_of_points(lattice_points(P))


def is_centrally_symmetric(P: LatticePolygon) -> tuple[bool, tuple[Fraction, Fraction] | None]:
    vs = P.vertices
    n = len(vs)
    if n % 2:
        return False, None
    h = n // 2
    sx, sy = vs[0][0] + vs[h][0], vs[0][1] + vs[h][1]
    for i in range(1, h):
        if vs[i][0] + vs[i + h][0] != sx or vs[i][1] + vs[i + h][1] != sy:
            return False, None
    return True, (Fraction(sx, 2), Fraction(sy, 2))


def symmetric_about_lattice_point(P: LatticePolygon) -> bool:
    """Central symmetry with an integral center, i.e. ``P - c = -(P - c)`` for some ``c`` in Z².

    This is the notion counted by the symmetric census: such polygons always
    contain their center, have an odd number of lattice points and an even
    doubled area. The unit square is symmetric but not about a lattice point.
    """
    ok, c = is_centrally_symmetric(P)
    return ok and c[0].denominator == 1 and c[1].denominator == 1


def hull_closed(points: Iterable[Point]) -> bool:
    """True iff the set is exactly the lattice-point set of its convex hull."""
    S = set((int(x), int(y)) for x, y in points)
    if not S:
        raise InvalidInput("empty point set")
    hull = convex_hull(S)
    if isinstance(hull, Degenerate):
        if hull.kind == "point":
            return True
        (ax, ay), (bx, by) = hull.endpoints
        return len(S) == gcd(bx - ax, by - ay) + 1
    return pick_stats(hull).total == len(S)


def _angle_cmp(a: Point, b: Point) -> int:
    # valid inside any open half-plane of directions
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


@functools.lru_cache(maxsize=None)
def _primitive_vectors(tau2: int, region: str) -> tuple[Point, ...]:
    r = isqrt(tau2)
    out = []
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if x * x + y * y > tau2 or gcd(x, y) != 1:
                continue
            if region == "quarter" and x <= 0 and y >= 0:
                out.append((x, y))
            elif region == "half" and x > 0:
                out.append((x, y))
    out.sort(key=functools.cmp_to_key(_angle_cmp))
    return tuple(out)


def primitive_vectors(tau2: int, region: Region) -> list[Point]:
    """Primitive vectors in the disk of squared radius ``tau2``, by polar angle.

    ``"quarter"`` keeps ``x <= 0, y >= 0``; ``"half"`` keeps ``x > 0``.
    """
    if tau2 < 1:
        raise InvalidInput(f"tau2 must be >= 1, got {tau2}")
    if region not in ("quarter", "half"):
        raise InvalidInput(f"unknown region {region!r}")
    return list(_primitive_vectors(tau2, region))


def rabinowitz_holds(P: LatticePolygon, m: int, stats: PickStats | None = None,
                     run: int | None = None) -> bool:
    """Check ``|P| >= m^2 + 1  =>  P has m + 1 collinear lattice points``."""
    if m < 1:
        raise InvalidInput("m must be >= 1")
    total = (stats or pick_stats(P)).total
    if total < m * m + 1:
        return True
    if run is None:
        run = max_collinear_run(P).length
    return run >= m + 1
