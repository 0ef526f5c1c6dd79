"""Acceptance criteria, one test each, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines appear even
without ``-s``.
"""

import math
import random
import subprocess
import sys
import time
from itertools import combinations

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from lattice_census.constructions import (
    cardinality_family,
    lemma2_polygon,
    minimal_feasible_m,
    sandwiched,
    symmetric_family,
)
from lattice_census.core import (
    is_centrally_symmetric,
    lattice_points,
    max_collinear_run,
    pick_stats,
    primitive_vectors,
    rabinowitz_holds,
)
from lattice_census.enumeration import clear_cache, enumerate_area, enumerate_cardinality
from lattice_census.polytope_d import (
    lattice_count_d,
    pdwk_vertices,
    pdwk_volume,
    split_threshold,
    theorem4_witnesses,
)
from lattice_census.unimodular import UnimodularAffineMap, apply, canonical_form, equivalence_oracle


def report(capsys, n, title, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    assert ok, detail


def test_01_area_census(capsys, fresh_cache):
    expected = [1, 2, 3, 7, 6, 13, 11]
    t0 = time.perf_counter()
    got = [enumerate_area(m).count for m in range(1, 8)]
    dt = time.perf_counter() - t0
    ok = got == expected and dt < 60
    report(capsys, 1, "v(2,m) for m=1..7", ok, f"got {got}, expected {expected}, {dt:.1f}s")


def test_02_cardinality_census(capsys, fresh_cache):
    expected = [1, 3, 6, 13, 21]
    t0 = time.perf_counter()
    got = [enumerate_cardinality(w).count for w in range(3, 8)]
    dt = time.perf_counter() - t0
    ok = got == expected and dt < 60
    report(capsys, 2, "kappa(2,w) for w=3..7", ok, f"got {got}, expected {expected}, {dt:.1f}s")


def test_03_parity_zeros(capsys):
    odd_area = {m: enumerate_area(m, symmetric_only=True).count for m in range(1, 16, 2)}
    even_card = {w: enumerate_cardinality(w, symmetric_only=True).count for w in range(4, 17, 2)}
    ok = not any(odd_area.values()) and not any(even_card.values())
    report(capsys, 3, "symmetric census parity zeros", ok,
           f"v* at odd m<=15: {list(odd_area.values())}; kappa* at even w<=16: {list(even_card.values())}")


def test_04_lemma2_sweep(capsys):
    t0 = time.perf_counter()
    problems = []
    for ell in range(2, 21):
        areas = set()
        for k in range(ell, ell * ell + 1):
            P = lemma2_polygon(ell, k)
            if not sandwiched(P, ell):
                problems.append((ell, k, "not sandwiched"))
            areas.add(pick_stats(P).area2)
        missing = {ell * ell + k for k in range(ell, ell * ell + 1)} - areas
        if missing:
            problems.append((ell, sorted(missing)))
    dt = time.perf_counter() - t0
    ok = not problems and dt < 10
    report(capsys, 4, "area sweep l=2..20", ok, f"{len(problems)} problems, {dt:.1f}s")


def test_05_primitive_density(capsys):
    tau2 = 400
    r = math.isqrt(tau2)
    scan = [(x, y) for x in range(-r, r + 1) for y in range(-r, r + 1)
            if x * x + y * y <= tau2 and math.gcd(x, y) == 1]
    q = sum(1 for x, y in scan if x <= 0 and y >= 0)
    v = sum(1 for x, y in scan if x > 0)
    assert q == len(primitive_vectors(tau2, "quarter")) and v == len(primitive_vectors(tau2, "half"))
    rq = q * (2 * math.pi / 3) / tau2
    rv = v * (math.pi / 3) / tau2
    ok = 0.85 <= rq <= 1.15 and 0.85 <= rv <= 1.15
    report(capsys, 5, "primitive vector density at tau2=400", ok,
           f"|Q|={q} ratio {rq:.4f}; |V|={v} ratio {rv:.4f}")


def _check_symmetric(tau2, m):
    family = symmetric_family(tau2, m)
    want = 2 ** (len(primitive_vectors(tau2, "quarter")) - 1)
    polys = [P for P, _ in family]
    good = all(is_centrally_symmetric(P)[0] and pick_stats(P).area2 == m for P in polys)
    distinct = len({canonical_form(P) for P in polys})
    return len(polys) == want and good and distinct == want, f"{len(polys)}/{want} outputs, {distinct} classes"


def test_06_symmetric_assembly(capsys):
    t0 = time.perf_counter()
    ok4, d4 = _check_symmetric(4, 128)
    dt = time.perf_counter() - t0
    m9 = minimal_feasible_m(9)
    ok9, d9 = _check_symmetric(9, m9)
    ok = ok4 and ok9 and dt < 5
    report(capsys, 6, "symmetric assembly", ok, f"tau2=4,m=128: {d4}, {dt:.2f}s; tau2=9,m={m9}: {d9}")


def test_07_cardinality_assembly(capsys):
    t0 = time.perf_counter()
    family = cardinality_family(4, 20)
    totals = {pick_stats(P).total for P, _ in family}
    classes = len({canonical_form(P) for P, _ in family})
    dt = time.perf_counter() - t0
    need = 2 ** (len(primitive_vectors(4, "half")) - 2)
    ok = totals == {20} and classes >= need and dt < 5
    report(capsys, 7, "cardinality assembly tau2=4, w=20", ok,
           f"sizes {sorted(totals)}, {classes} classes (need >= {need}), {dt:.2f}s")


def test_08_polytope_family(capsys):
    bad = []
    checked = 0
    for d in (3, 4, 5):
        for w in range(d + 1, d + 7):
            k0 = split_threshold(d, w)
            for k in range(k0, max(k0 + 2, 12) + 1):
                P = pdwk_vertices(d, w, k)
                vol = pdwk_volume(d, w, k)
                hull_vol = ConvexHull(np.array(P.vertices, dtype=float)).volume
                if lattice_count_d(P) != w or vol * math.factorial(d) != k + w - d - 1 \
                        or abs(hull_vol - float(vol)) > 1e-9:
                    bad.append((d, w, k))
                checked += 1
    ws = theorem4_witnesses(3, 5, 10)
    vols = [x.volume for x in ws]
    ok_w = len(set(vols)) == 10 and all(x.count == 5 for x in ws) and vols == sorted(vols)
    ok = not bad and ok_w
    report(capsys, 8, "P(d,w,k) counts and volumes", ok,
           f"{checked} instances, {len(bad)} bad; (3,5) witness volumes {[str(v) for v in vols]}")


def _random_map(rng):
    gens = [UnimodularAffineMap(1, 1, 0, 1), UnimodularAffineMap(1, 0, 1, 1),
            UnimodularAffineMap(0, -1, 1, 0), UnimodularAffineMap(-1, 0, 0, 1),
            UnimodularAffineMap(1, -1, 0, 1)]
    s = UnimodularAffineMap(1, 0, 0, 1, rng.randint(-20, 20), rng.randint(-20, 20))
    for _ in range(rng.randint(0, 10)):
        s = rng.choice(gens) @ s
    return s


def test_09_canonical_soundness(capsys):
    from lattice_census.core import LatticePolygon, convex_hull
    rng = random.Random(20240601)
    invariance_failures = 0
    n = 0
    while n < 1000:
        pts = [(rng.randint(-8, 8), rng.randint(-8, 8)) for _ in range(rng.randint(3, 9))]
        P = convex_hull(pts)
        if not isinstance(P, LatticePolygon):
            continue
        if canonical_form(apply(_random_map(rng), P)) != canonical_form(P):
            invariance_failures += 1
        n += 1
    reps = [P for w in range(3, 8) for P in enumerate_cardinality(w).polygons()]
    disagreements = 0
    pairs = 0
    for P, Q in combinations(reps, 2):
        pairs += 1
        same = canonical_form(P) == canonical_form(Q)
        if same != (equivalence_oracle(P, Q) is not None):
            disagreements += 1
    ok = invariance_failures == 0 and disagreements == 0
    report(capsys, 9, "canonical form soundness", ok,
           f"{invariance_failures}/1000 invariance failures, {disagreements}/{pairs} oracle disagreements")


def test_10_rabinowitz(capsys):
    violations = 0
    checked = 0
    for w in range(3, 13):
        for P in enumerate_cardinality(w).polygons():
            s = pick_stats(P)
            run = max_collinear_run(P).length
            m = 1
            while m * m + 1 <= s.total:
                checked += 1
                violations += not rabinowitz_holds(P, m, stats=s, run=run)
                m += 1
    report(capsys, 10, "collinear run bound for w<=12", violations == 0,
           f"{violations} violations over {checked} (polygon, m) pairs")


def _cli_bytes(tmp_path, jobs, mode, lo, hi):
    out = tmp_path / f"{mode}-{jobs}.csv"
    cat = tmp_path / f"{mode}-{jobs}.jsonl"
    subprocess.run([sys.executable, "-m", "lattice_census", "census", "--mode", mode,
                    "--min", str(lo), "--max", str(hi), "--jobs", str(jobs),
                    "--out", str(out), "--catalog", str(cat)], check=True, capture_output=True)
    return out.read_bytes() + b"\0" + cat.read_bytes()


def test_11_determinism(capsys, tmp_path):
    same = []
    for mode, lo, hi in (("cardinality", 3, 12), ("area", 1, 10)):
        same.append(_cli_bytes(tmp_path, 1, mode, lo, hi) == _cli_bytes(tmp_path, 8, mode, lo, hi))
    report(capsys, 11, "census bytes with --jobs 1 vs --jobs 8", all(same),
           f"cardinality identical={same[0]}, area identical={same[1]}")
