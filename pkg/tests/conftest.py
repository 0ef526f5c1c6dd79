import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lattice_census.core import LatticePolygon, convex_hull
from lattice_census.enumeration import clear_cache
from lattice_census.unimodular import UnimodularAffineMap

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")

coord = st.integers(-12, 12)
point = st.tuples(coord, coord)


@st.composite
def polygons(draw, min_points=3, max_points=9):
    pts = draw(st.lists(point, min_size=min_points, max_size=max_points, unique=True))
    P = convex_hull(pts)
    if not isinstance(P, LatticePolygon):
        # nudge a degenerate draw off its line
        x, y = pts[0]
        P = convex_hull(pts + [(x + 1, y + 2), (x - 2, y + 1)])
    return P


_GENERATORS = [
    UnimodularAffineMap(1, 1, 0, 1),
    UnimodularAffineMap(1, 0, 1, 1),
    UnimodularAffineMap(0, -1, 1, 0),
    UnimodularAffineMap(-1, 0, 0, 1),
]


@st.composite
def unimodular_maps(draw, max_word=8):
    word = draw(st.lists(st.sampled_from(_GENERATORS), max_size=max_word))
    sigma = UnimodularAffineMap(1, 0, 0, 1, draw(coord), draw(coord))
    for g in word:
        sigma = g @ sigma
    return sigma


@pytest.fixture
def fresh_cache():
    clear_cache()
    yield
    clear_cache()
