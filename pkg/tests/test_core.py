import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lattice_census.core import (
    CollinearRun,
    Degenerate,
    LatticePolygon,
    convex_hull,
    cross,
    hull_closed,
    is_centrally_symmetric,
    lattice_points,
    max_collinear_run,
    max_collinear_run_of_points,
    pick_stats,
    primitive_vectors,
    rabinowitz_holds,
)
from lattice_census.errors import InvalidInput

from conftest import point, polygons


def brute_points(P):
    """Bounding-box scan with a half-plane test per edge."""
    xs = [v[0] for v in P.vertices]
    ys = [v[1] for v in P.vertices]
    return sorted(
        (x, y)
        for x in range(min(xs), max(xs) + 1)
        for y in range(min(ys), max(ys) + 1)
        if all(cross(a, b, (x, y)) >= 0 for a, b in P.edges())
    )


def brute_run(points):
    """Group the other points by reduced direction from each base point."""
    pts = list(points)
    best = 1
    for p in pts:
        groups = Counter()
        for q in pts:
            if q != p:
                dx, dy = q[0] - p[0], q[1] - p[1]
                g = math.gcd(dx, dy)
                dx, dy = dx // g, dy // g
                if dx < 0 or (dx == 0 and dy < 0):
                    dx, dy = -dx, -dy
                groups[dx, dy] += 1
        if groups:
            best = max(best, max(groups.values()) + 1)
    return best


def test_hull_drops_collinear_and_interior_points():
    P = convex_hull([(0, 0), (2, 0), (1, 0), (0, 2), (1, 1), (2, 2), (0, 1)])
    assert P.vertices == ((0, 0), (2, 0), (2, 2), (0, 2))


def test_hull_degenerate_cases():
    assert convex_hull([(3, 4)]) == Degenerate("point", ((3, 4),))
    seg = convex_hull([(0, 0), (2, 2), (1, 1)])
    assert seg == Degenerate("segment", ((0, 0), (2, 2)))
    with pytest.raises(InvalidInput):
        convex_hull([])


def test_polygon_rejects_bad_cycles():
    with pytest.raises(InvalidInput):
        LatticePolygon(((0, 0), (0, 1), (1, 0)))  # clockwise
    with pytest.raises(InvalidInput):
        LatticePolygon(((0, 0), (1, 0), (2, 0), (0, 1)))  # collinear vertex
    with pytest.raises(InvalidInput):
        LatticePolygon(((0, 0), (1, 0)))


def test_polygon_json_roundtrip():
    P = LatticePolygon(((1, 0), (0, 1), (0, 0)))
    assert P.vertices[0] == (0, 0)
    assert LatticePolygon.from_json(P.to_json()) == P


def test_pick_examples():
    unit = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert pick_stats(unit) == pick_stats(unit).__class__(1, 3, 0, 3)
    sq = convex_hull([(0, 0), (2, 0), (2, 2), (0, 2)])
    s = pick_stats(sq)
    assert (s.area2, s.boundary, s.interior, s.total) == (8, 8, 1, 9)


@given(polygons())
def test_pick_agrees_with_scan(P):
    s = pick_stats(P)
    pts = brute_points(P)
    assert s.total == len(pts)
    assert lattice_points(P) == sorted(pts, key=lambda p: (p[1], p[0]))
    assert s.area2 == 2 * s.interior + s.boundary - 2
    on_edge = sum(1 for p in pts if any(cross(a, b, p) == 0 for a, b in P.edges()))
    assert s.boundary == on_edge


@given(st.lists(point, min_size=3, max_size=12))
def test_hull_idempotent(pts):
    H = convex_hull(pts)
    if isinstance(H, LatticePolygon):
        assert convex_hull(H.vertices) == H
        assert convex_hull(lattice_points(H)) == H
        assert all(all(cross(a, b, p) >= 0 for a, b in H.edges()) for p in pts)


def test_max_run_examples():
    assert max_collinear_run(convex_hull([(0, 0), (1, 0), (0, 1)])).length == 2
    assert max_collinear_run(convex_hull([(0, 0), (2, 0), (2, 2), (0, 2)])).length == 3
    diag = convex_hull([(0, 0), (4, 4), (4, 5)])
    run = max_collinear_run(diag)
    assert run.length == 5 and run.direction == (1, 1)
    assert run.points() == [(i, i) for i in range(5)]


@given(polygons(max_points=6))
def test_max_run_agrees_with_pairwise_count(P):
    pts = lattice_points(P)
    run = max_collinear_run_of_points(pts)
    assert run.length == brute_run(pts)
    assert set(run.points()) <= set(pts)


def test_central_symmetry():
    ok, c = is_centrally_symmetric(convex_hull([(0, 0), (3, 0), (3, 1), (0, 1)]))
    assert ok and c == (Fraction(3, 2), Fraction(1, 2))
    assert not is_centrally_symmetric(convex_hull([(0, 0), (1, 0), (0, 1)]))[0]


@given(polygons())
def test_symmetrization_is_symmetric(P):
    Q = convex_hull(list(P.vertices) + [(-x, -y) for x, y in P.vertices])
    ok, c = is_centrally_symmetric(Q)
    assert ok and c == (0, 0)


def test_hull_closed_examples():
    assert hull_closed([(0, 0), (1, 0), (0, 1)])
    assert not hull_closed([(0, 0), (2, 0), (0, 2)])
    assert hull_closed([(0, 0), (1, 1), (2, 2)])
    assert not hull_closed([(0, 0), (2, 2)])
    assert hull_closed([(5, 5)])


@given(polygons(), st.data())
def test_hull_closed_points_and_removals(P, data):
    pts = lattice_points(P)
    assert hull_closed(pts)
    interior = [p for p in pts if all(cross(a, b, p) > 0 for a, b in P.edges())]
    if interior:
        p = data.draw(st.sampled_from(interior))
        assert not hull_closed([q for q in pts if q != p])
    v = data.draw(st.sampled_from(P.vertices))
    assert hull_closed([q for q in pts if q != v])


def test_primitive_vectors_small():
    assert primitive_vectors(4, "quarter") == [(0, 1), (-1, 1), (-1, 0)]
    assert primitive_vectors(4, "half") == [(1, -1), (1, 0), (1, 1)]
    q = primitive_vectors(9, "quarter")
    assert (-1, 2) in q and (-2, 1) in q and (-2, 2) not in q


@pytest.mark.parametrize("tau2", [1, 2, 4, 5, 9, 10, 25, 50, 100])
def test_primitive_vectors_against_scan(tau2):
    r = math.isqrt(tau2)
    grid = [(x, y) for x in range(-r, r + 1) for y in range(-r, r + 1)
            if x * x + y * y <= tau2 and math.gcd(x, y) == 1]
    quarter = primitive_vectors(tau2, "quarter")
    half = primitive_vectors(tau2, "half")
    assert set(quarter) == {p for p in grid if p[0] <= 0 and p[1] >= 0}
    assert set(half) == {p for p in grid if p[0] > 0}
    # strictly increasing polar angle
    for seq in (quarter, half):
        angles = [math.atan2(y, x) for x, y in seq]
        assert angles == sorted(angles) and len(set(angles)) == len(angles)
    assert len(half) == 2 * len(quarter) - 3


def test_primitive_vectors_rejects():
    with pytest.raises(InvalidInput):
        primitive_vectors(0, "half")
    with pytest.raises(InvalidInput):
        primitive_vectors(4, "third")


def test_rabinowitz_examples():
    sq = convex_hull([(0, 0), (2, 0), (2, 2), (0, 2)])
    assert rabinowitz_holds(sq, 2)  # 9 >= 5 and run 3
    assert rabinowitz_holds(sq, 3)  # 9 < 10, vacuous
    fake = pick_stats(sq)
    assert not rabinowitz_holds(sq, 2, stats=fake, run=2)
    with pytest.raises(InvalidInput):
        rabinowitz_holds(sq, 0)


@given(polygons(), st.integers(1, 6))
def test_rabinowitz_random(P, m):
    assert rabinowitz_holds(P, m)


def test_collinear_run_points():
    assert CollinearRun(3, (1, 1), (2, -1)).points() == [(1, 1), (3, 0), (5, -1)]
