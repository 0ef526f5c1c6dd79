"""Census of convex lattice polygons by lattice-point count or by area.

The main enumerator places a longest collinear run of lattice points on the
x-axis and grows the polygon one row at a time above and below it. Every
generated set is hull-closed (``S = conv(S) ∩ Z²``); classes are merged by
canonical form, so the row bounds only need to be sound, not tight.

A second enumerator (``method="grow"``) uses the fact that
removing a vertex from a hull-closed set leaves a hull-closed set. It shares
nothing with the row search except the canonical form and serves as a
cross-check.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterable, Literal

from .core import (
    LatticePolygon,
    Point,
    area2_of,
    boundary_count,
    hull_vertices,
    lattice_points,
    max_collinear_run_of_points,
    pick_stats,
    symmetric_about_lattice_point,
)
from .errors import BudgetExceeded, InvalidInput
from .unimodular import CanonicalForm, _ext_gcd, canonical_key

log = logging.getLogger(__name__)

Mode = Literal["cardinality", "area"]


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


@dataclass(frozen=True, order=True)
class WorkItem:
    """One slice of the search: run length on the x-axis and point counts off it."""

    run: int
    above: int
    below: int


@dataclass(frozen=True)
class SearchRegion:
    """Static bounds for a work item.

    The run occupies ``x in [left, right]`` on row 0. Row heights above and
    below are capped by Pick's theorem applied to the triangle spanned by the
    run and the farthest row. Column bounds for the other rows depend on the
    rows ``±1`` chosen during the search and are computed on the fly.
    """

    left: int
    right: int
    max_above: int
    max_below: int


def work_items(w: int) -> list[WorkItem]:
    if w < 3:
        raise InvalidInput(f"w must be >= 3, got {w}")
    items = []
    for run in range(w - 1, _ceil_sqrt(w) - 1, -1):
        rest = w - run
        for below in range(rest // 2 + 1):
            items.append(WorkItem(run, rest - below, below))
    return items


def _height_cap(run: int, count: int) -> int:
    # triangle over the run with apex at height h holds <= run + count points:
    # (run - 1) h = 2A <= run + 2 count - 3
    if count == 0:
        return 0
    return min(count, (run + 2 * count - 3) // (run - 1))


def search_region(item: WorkItem) -> SearchRegion:
    left = -((item.run - 1) // 2)
    return SearchRegion(
        left=left,
        right=left + item.run - 1,
        max_above=_height_cap(item.run, item.above),
        max_below=_height_cap(item.run, item.below),
    )


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"search exceeded {self.limit} nodes")


def _closed(rows: dict[int, tuple[int, int]], count: int) -> bool:
    """Hull-closure test for a union of row intervals holding ``count`` points."""
    ends = []
    for y, (l, r) in rows.items():
        ends.append((l, y))
        ends.append((r, y))
    hv = hull_vertices(ends)
    area2 = area2_of(hv)
    b = boundary_count(hv)
    return (area2 - b + 2) // 2 + b == count


def _row_choices(lo_excl: int, hi_excl: int, max_len: int):
    for l in range(lo_excl + 1, hi_excl):
        for r in range(l, min(hi_excl - 1, l + max_len - 1) + 1):
            yield l, r


def _search_item(item: WorkItem, proper_only: bool, budget: _Budget) -> set[tuple[Point, ...]]:
    reg = search_region(item)
    run, a0, b0 = item.run, reg.left, reg.right
    found: set[tuple[Point, ...]] = set()
    rows: dict[int, tuple[int, int]] = {0: (a0, b0)}

    def leaf(count: int) -> None:
        pts = [(x, y) for y, (l, r) in rows.items() for x in range(l, r + 1)]
        if max_collinear_run_of_points(pts).length != run:
            return
        hv = tuple(hull_vertices(pts))
        found.add(canonical_key(hv, proper_only))

    def lower(y: int, remaining: int, count: int) -> None:
        # y >= 1 is the depth of the next row below the axis
        if remaining == 0:
            leaf(count)
            return
        if y > reg.max_below:
            return
        if y == 1:
            l1, r1 = rows[1]
            lo, hi = 2 * a0 - 2 - l1, 2 * b0 + 2 - r1
        else:
            lm, rm = rows[-1]
            lo, hi = a0 + y * (lm - 1 - a0), b0 + y * (rm + 1 - b0)
        for l, r in _row_choices(lo, hi, min(run, remaining)):
            budget.tick()
            n = r - l + 1
            rows[-y] = (l, r)
            if _closed(rows, count + n):
                lower(y + 1, remaining - n, count + n)
            del rows[-y]

    def upper(y: int, remaining: int, count: int) -> None:
        if remaining == 0:
            lower(1, item.below, count)
            return
        if y > reg.max_above:
            return
        if y == 1:
            # shear (x, y) -> (x + a y, y) fixes row 0 and centers row 1
            for n in range(1, min(run, remaining) + 1):
                budget.tick()
                l = -((n - 1) // 2)
                rows[1] = (l, l + n - 1)
                if _closed(rows, count + n):
                    upper(2, remaining - n, count + n)
                del rows[1]
            return
        l1, r1 = rows[1]
        lo, hi = a0 + y * (l1 - 1 - a0), b0 + y * (r1 + 1 - b0)
        for l, r in _row_choices(lo, hi, min(run, remaining)):
            budget.tick()
            n = r - l + 1
            rows[y] = (l, r)
            if _closed(rows, count + n):
                upper(y + 1, remaining - n, count + n)
            del rows[y]

    if item.above > 0:
        upper(1, item.above, run)
    return found


def search_work_item(item: WorkItem, proper_only: bool = False,
                     budget: int | None = None) -> set[tuple[Point, ...]]:
    """Canonical keys of every polygon realizing ``item``."""
    return _search_item(item, proper_only, _Budget(budget))


def _worker(args: tuple[WorkItem, bool, int | None]) -> set[tuple[Point, ...]]:
    item, proper_only, budget = args
    return search_work_item(item, proper_only, budget)


@dataclass(frozen=True)
class CensusResult:
    parameter: int
    mode: Mode
    symmetric_only: bool
    classes: tuple[CanonicalForm, ...] = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.classes)

    def polygons(self) -> list[LatticePolygon]:
        return [c.polygon() for c in self.classes]


_CACHE: dict[tuple, frozenset] = {}


def _resolve_jobs(jobs: int | None) -> int:
    if jobs is None or jobs <= 0:
        return os.cpu_count() or 1
    return jobs


def _cardinality_keys(w: int, jobs: int, proper_only: bool, budget: int | None,
                      method: str) -> frozenset:
    key = (w, proper_only, method)
    if key in _CACHE:
        return _CACHE[key]
    if method == "grow":
        keys = frozenset(_grow(w, proper_only))
    elif method == "rows":
        items = work_items(w)
        # the budget applies per work item so results do not depend on jobs
        if jobs == 1:
            parts = [search_work_item(it, proper_only, budget) for it in items]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_worker, [(it, proper_only, budget) for it in items]))
        keys = frozenset().union(*parts)
    else:
        raise InvalidInput(f"unknown method {method!r}")
    log.debug("w=%d: %d classes", w, len(keys))
    _CACHE[key] = keys
    return keys


def _sorted_forms(keys: Iterable[tuple[Point, ...]]) -> tuple[CanonicalForm, ...]:
    return tuple(CanonicalForm(k) for k in sorted(keys))


def _is_symmetric(key: tuple[Point, ...]) -> bool:
    return symmetric_about_lattice_point(CanonicalForm(key).polygon())


def enumerate_cardinality(w: int, *, symmetric_only: bool = False, jobs: int | None = 1,
                          proper_only: bool = False, budget: int | None = None,
                          method: str = "rows") -> CensusResult:
    """Representatives of every class of convex lattice polygons with ``w`` lattice points."""
    if w < 3:
        raise InvalidInput(f"w must be >= 3, got {w}")
    keys = _cardinality_keys(w, _resolve_jobs(jobs), proper_only, budget, method)
    if symmetric_only:
        keys = [k for k in keys if _is_symmetric(k)]
    return CensusResult(w, "cardinality", symmetric_only, _sorted_forms(keys))


def enumerate_area(m: int, *, symmetric_only: bool = False, jobs: int | None = 1,
                   proper_only: bool = False, budget: int | None = None,
                   method: str = "rows") -> CensusResult:
    """Representatives of every class of convex lattice polygons with doubled area ``m``."""
    if m < 1:
        raise InvalidInput(f"m must be >= 1, got {m}")
    keys: set = set()
    # Pick: w - 2 <= area2 <= 2w - 2
    for w in range(max(3, -(-m // 2) + 1), m + 3):
        for k in _cardinality_keys(w, _resolve_jobs(jobs), proper_only, budget, method):
            if area2_of(k) == m:
                keys.add(k)
    if symmetric_only:
        keys = {k for k in keys if _is_symmetric(k)}
    return CensusResult(m, "area", symmetric_only, _sorted_forms(keys))


def census_table(mode: Mode, lo: int, hi: int, symmetric_only: bool = False, *,
                 jobs: int | None = 1, proper_only: bool = False,
                 budget: int | None = None, method: str = "rows") -> list[CensusResult]:
    if mode not in ("cardinality", "area"):
        raise InvalidInput(f"unknown mode {mode!r}")
    if lo > hi:
        raise InvalidInput(f"empty range {lo}..{hi}")
    run = enumerate_cardinality if mode == "cardinality" else enumerate_area
    first = 3 if mode == "cardinality" else 1
    out = []
    for p in range(lo, hi + 1):
        if p < first:
            out.append(CensusResult(p, mode, symmetric_only, ()))
            continue
        out.append(run(p, symmetric_only=symmetric_only, jobs=jobs, proper_only=proper_only,
                       budget=budget, method=method))
    return out


def clear_cache() -> None:
    _CACHE.clear()


# -- growth enumerator -------------------------------------------------------

def _children(points: frozenset[Point], hv: list[Point], w: int) -> Iterable[tuple[Point, ...]]:
    """Hull vertex cycles of every hull-closed ``points ∪ {p}``.

    A new point ``p`` must sit at lattice distance exactly one beyond every
    edge it sees, so candidates lie on the lines parallel to each edge at
    distance one, within the strip where no other edge is violated by more.
    """
    n = len(hv)
    edges = []
    for i in range(n):
        a, b = hv[i], hv[(i + 1) % n]
        g = gcd(b[0] - a[0], b[1] - a[1])
        edges.append((a, ((b[0] - a[0]) // g, (b[1] - a[1]) // g)))
    seen: set[Point] = set()
    for a, (dx, dy) in edges:
        # base point at distance one to the right of the directed edge
        _, s, t = _ext_gcd(dx, dy)
        # (s, t) . (dx, dy) = 1  ->  (t, -s) has cross(d, .) = -1
        base = (a[0] + t, a[1] - s)
        lo, hi = None, None
        feasible = True
        for c, (ex, ey) in edges:
            # cross(e, base + k d - c) >= -1
            c0 = ex * (base[1] - c[1]) - ey * (base[0] - c[0])
            c1 = ex * dy - ey * dx
            if c1 == 0:
                if c0 < -1:
                    feasible = False
                    break
                continue
            if c1 > 0:
                bound = -((c0 + 1) // c1)  # ceil((-1 - c0) / c1)
                lo = bound if lo is None else max(lo, bound)
            else:
                bound = (c0 + 1) // (-c1)  # floor((-1 - c0) / c1)
                hi = bound if hi is None else min(hi, bound)
        if not feasible or lo is None or hi is None:
            continue
        for k in range(lo, hi + 1):
            p = (base[0] + k * dx, base[1] + k * dy)
            if p in seen or p in points:
                continue
            seen.add(p)
            nv = hull_vertices(hv + [p])
            if pick_stats(LatticePolygon._trusted(tuple(nv))).total == w:
                yield tuple(nv)


def _grow(w: int, proper_only: bool) -> set[tuple[Point, ...]]:
    # level 3: only the unit triangle
    level = {canonical_key(((0, 0), (1, 0), (0, 1)), proper_only)}
    for size in range(4, w + 1):
        nxt: set[tuple[Point, ...]] = set()
        # the segment of size-1 points gains exactly one class: conv{segment, (0, 1)}
        g = size - 2
        nxt.add(canonical_key(tuple(hull_vertices([(0, 0), (g, 0), (0, 1)])), proper_only))
        for key in level:
            P = CanonicalForm(key).polygon()
            pts = frozenset(lattice_points(P))
            for child in _children(pts, list(P.vertices), size):
                nxt.add(canonical_key(child, proper_only))
        level = nxt
    return level
