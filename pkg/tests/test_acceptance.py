"""Acceptance suite: one pass/fail line per numbered criterion.

Tolerances used throughout (pinned):
  - distance agreement with the Dijkstra oracle: 1e-9 relative
  - metric-invariant slack: 1e-9 absolute
  - coverage membership: radius * (1 + 1e-6)
  - region diameter checks: 2*delta * (1 + 1e-6)
  - interior path angles: >= pi - 1e-9
"""

import math
import time

import numpy as np
import pytest

from geopack import (
    VisibilityOracle,
    cover_neighborhood,
    cover_simplex,
    diametral_pair,
    gen_instance,
    geodesic_distance,
    kt_chain_check,
    max_packing_exact,
    min_cover_exact,
    pack_and_cover,
    shortest_path,
    validate_polygon,
    verify_cover,
    verify_packing,
)
from geopack.cli import main as cli_main
from geopack.oracles import DistanceMatrix, standard_candidates
from geopack.paths import geodesic_midpoint, paths_intersect, point_along

DIST_RTOL = 1e-9
INV_ATOL = 1e-9
COVER_EPS = 1e-6
TWO_PI = 2 * math.pi


def _report(num, ok, detail):
    line = f"[criterion {num}] {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    assert ok, line


def _instance_pool(base_seed, count, nv_range, np_range, quantiles):
    out = []
    for k in range(count):
        out.append(gen_instance(
            seed=base_seed + k,
            n_vertices=nv_range[k % len(nv_range)],
            n_points=np_range[k % len(np_range)],
            delta_mode=quantiles[k % len(quantiles)],
        ))
    return out


def test_criterion_1_pack_and_cover_certificate():
    t0 = time.time()
    instances = _instance_pool(
        0, 102,
        nv_range=(6, 10, 14, 18, 22, 26, 30),
        np_range=(8, 14, 20, 27, 33, 40),
        quantiles=(0.1, 0.3, 0.5),
    )
    worst_ratio = 0.0
    for inst in instances:
        cover, packing, _ = pack_and_cover(inst.polygon, inst.points, inst.delta)
        assert verify_cover(inst.polygon, inst.points, cover).ok
        assert verify_packing(inst.polygon, packing).ok
        assert len(cover.centers) <= 19 * len(packing.points)
        worst_ratio = max(worst_ratio, len(cover.centers) / len(packing.points))
    elapsed = time.time() - t0
    _report(1, elapsed < 300.0,
            f"{len(instances)} instances verified, worst |C|/|P| = "
            f"{worst_ratio:.2f} <= 19, {elapsed:.1f}s < 300s")


def test_criterion_2_three_ball_simplex_cover():
    rng = np.random.default_rng(2024)
    count = exact_checked = 0
    seed = 5000
    while count < 100:
        seed += 1
        n = int(rng.integers(2, 13))
        inst = gen_instance(seed=seed, n_vertices=int(rng.integers(5, 16)),
                            n_points=n, delta_mode=0.5)
        poly, pts = inst.polygon, inst.points
        _, _, diam = diametral_pair(poly, pts)
        if diam == 0.0:
            continue
        delta = diam / 2 * float(rng.choice([1.0, 1.1, 1.5]))
        cover = cover_simplex(poly, pts, delta)
        assert len(cover.centers) <= 3
        assert verify_cover(poly, pts, cover).ok
        if len(pts) <= 12:
            k_exact, _ = min_cover_exact(poly, pts, delta,
                                         standard_candidates(poly, pts))
            assert len(cover.centers) >= k_exact
            exact_checked += 1
        count += 1
    _report(2, True,
            f"{count} diam<=2delta instances covered with <=3 verified balls; "
            f"{exact_checked} compared against the exact candidate-set optimum")


def test_criterion_3_nineteen_ball_neighborhood():
    count = 0
    seed = 7000
    while count < 50:
        seed += 1
        inst = gen_instance(seed=seed, n_vertices=6 + seed % 18,
                            n_points=10 + seed % 31,
                            delta_mode=(0.1, 0.2)[seed % 2])
        poly, pts = inst.polygon, inst.points
        u, v, diam = diametral_pair(poly, pts)
        if diam <= 2 * inst.delta:
            continue
        cover, meta = cover_neighborhood(poly, pts, v, u, inst.delta)
        assert len(cover.centers) <= 19
        for side in meta["sides"]:
            assert side["balls"] <= 10
            for diam_bc in side["region_diams"].values():
                assert diam_bc <= 2 * inst.delta * (1 + COVER_EPS)
        # every point of B_{2delta}(v) is covered
        limit = inst.delta * (1 + COVER_EPS)
        for p in pts:
            if geodesic_distance(poly, v, p) <= 2 * inst.delta:
                assert min(geodesic_distance(poly, c, p)
                           for c in cover.centers) <= limit
        count += 1
    _report(3, True,
            f"{count} neighborhoods covered with <=19 balls, <=10 per side, "
            f"region diameters <= 2delta*(1+1e-6)")


def _interior_path_angle(poly, a, w, b):
    """Angle of the path a-w-b at w, measured through the polygon interior
    away from the boundary wedge at w."""
    n = len(poly.vertices)
    i = poly.vertices.index(w)
    prev_v = poly.vertices[(i - 1) % n]
    next_v = poly.vertices[(i + 1) % n]

    def ang(p):
        return math.atan2(p[1] - w[1], p[0] - w[0])

    e_out, e_in = ang(next_v), ang(prev_v)
    a1, a2 = ang(a), ang(b)

    def ccw(x, y):
        return (y - x) % TWO_PI

    # bisector of the exterior wedge (the CCW sector from e_in to e_out)
    beta = (e_in + ccw(e_in, e_out) / 2) % TWO_PI
    if ccw(a1, beta) < ccw(a1, a2):
        return TWO_PI - ccw(a1, a2)
    return ccw(a1, a2)


def test_criterion_4_geodesic_kernel_vs_oracle():
    rng = np.random.default_rng(4)
    pools = []
    for seed in range(10):
        inst = gen_instance(seed=seed + 400, n_vertices=8 + 2 * seed,
                            n_points=25, delta_mode=0.3)
        pools.append((inst.polygon, VisibilityOracle(inst.polygon), inst.points))
    queries = bends = 0
    while queries < 1000:
        poly, oracle, pts = pools[queries % len(pools)]
        i, j = rng.integers(0, len(pts), 2)
        if i == j:
            continue
        path = shortest_path(poly, pts[i], pts[j])
        ref = oracle.distance(pts[i], pts[j])
        assert math.isclose(path.length, ref, rel_tol=DIST_RTOL, abs_tol=DIST_RTOL)
        wp = path.waypoints
        for k in range(1, len(wp) - 1):
            idx = poly.vertices.index(wp[k])
            assert poly.reflex_flags[idx]
            angle = _interior_path_angle(poly, wp[k - 1], wp[k], wp[k + 1])
            assert angle >= math.pi - 1e-9
            bends += 1
        queries += 1
    _report(4, True,
            f"1000 distance queries within 1e-9 of the Dijkstra oracle; "
            f"{bends} interior waypoints all reflex with angle >= pi - 1e-9")


def _invariant_pools():
    pools = []
    for seed in range(12):
        inst = gen_instance(seed=seed + 860, n_vertices=6 + seed,
                            n_points=30, delta_mode=0.3)
        pools.append((inst.polygon, inst.points))
    return pools


def test_criterion_5_invariant_suite():
    pools = _invariant_pools()
    rng = np.random.default_rng(5)
    N = 10_000

    def pick(k, m=3):
        poly, pts = pools[k % len(pools)]
        idx = rng.integers(0, len(pts), m)
        return poly, [pts[i] for i in idx]

    # quadrangle condition: crossing geodesics [x,y], [u,v]
    checked = 0
    k = 0
    while checked < N:
        poly, (x, y, u, v) = pick(k, m=4)
        k += 1
        if paths_intersect(shortest_path(poly, x, y),
                           shortest_path(poly, u, v)) is None:
            continue
        lhs = max(geodesic_distance(poly, x, u) + geodesic_distance(poly, y, v),
                  geodesic_distance(poly, x, v) + geodesic_distance(poly, y, u))
        rhs = geodesic_distance(poly, x, y) + geodesic_distance(poly, u, v)
        assert lhs <= rhs + INV_ATOL
        checked += 1

    # ball-midpoint convexity
    for k in range(N):
        poly, (c, p, q) = pick(k)
        r = max(geodesic_distance(poly, c, p), geodesic_distance(poly, c, q))
        m = geodesic_midpoint(poly, p, q)
        assert geodesic_distance(poly, c, m) <= r + INV_ATOL

    # Busemann midpoint inequality
    for k in range(N):
        poly, (x, y, z) = pick(k)
        m1 = geodesic_midpoint(poly, x, y)
        m2 = geodesic_midpoint(poly, x, z)
        assert geodesic_distance(poly, m1, m2) <= (
            geodesic_distance(poly, y, z) / 2 + INV_ATOL)

    # Thales bound along geodesics
    for k in range(N):
        poly, (x, y, z) = pick(k)
        t = float(rng.uniform())
        path = shortest_path(poly, y, z)
        p = point_along(path, t * path.length)
        bound = ((1 - t) * geodesic_distance(poly, x, y)
                 + t * geodesic_distance(poly, x, z))
        assert geodesic_distance(poly, x, p) <= bound + INV_ATOL

    # perimeter monotonicity: side points of a triangle span a smaller one
    for k in range(N):
        poly, (x, y, z) = pick(k)
        ts = rng.uniform(size=3)
        sides = [(x, y), (y, z), (z, x)]
        inner = []
        for (a, b), t in zip(sides, ts):
            path = shortest_path(poly, a, b)
            inner.append(point_along(path, t * path.length))
        per_outer = sum(geodesic_distance(poly, a, b) for a, b in sides)
        p, q, r = inner
        per_inner = (geodesic_distance(poly, p, q)
                     + geodesic_distance(poly, q, r)
                     + geodesic_distance(poly, r, p))
        assert per_inner <= per_outer + INV_ATOL

    _report(5, True, f"5 x {N} invariant checks, zero violations beyond 1e-9")


def test_criterion_6_kolmogorov_tikhomirov_chain():
    count = 0
    seed = 9000
    while count < 50:
        seed += 1
        inst = gen_instance(seed=seed, n_vertices=5 + seed % 11,
                            n_points=3 + seed % 13,
                            delta_mode=(0.1, 0.3, 0.5)[seed % 3])
        report = kt_chain_check(inst.polygon, inst.points, inst.delta)
        assert report.nu <= report.theta <= report.rho_hat
        assert report.rho_hat <= report.nu_half
        count += 1
    _report(6, True,
            f"{count} instances: nu <= theta <= rho_hat <= nu at delta/2")


def test_criterion_7_boundary_semantics():
    poly = validate_polygon([(0, 0), (10, 0), (10, 10), (0, 10)])
    delta = 1.0
    D = DistanceMatrix.from_points(poly, [(1.0, 1.0), (3.0, 1.0)])
    nu, _, nu_open, _ = max_packing_exact(D, delta)
    _report(7, (nu, nu_open) == (1, 2),
            f"two points at exactly 2delta: nu = {nu} (expected 1), "
            f"nu-open = {nu_open} (expected 2)")


def test_criterion_8_determinism(tmp_path):
    blobs = []
    for run in range(2):
        ip = tmp_path / f"i{run}.json"
        cp = tmp_path / f"c{run}.json"
        assert cli_main(["gen", "--seed", "123", "--vertices", "14",
                         "--points", "18", "--delta-quantile", "0.3",
                         "-o", str(ip)]) == 0
        assert cli_main(["cover", "-i", str(ip), "-o", str(cp)]) == 0
        blobs.append((ip.read_bytes(), cp.read_bytes()))
    _report(8, blobs[0] == blobs[1],
            "fixed-seed instance and certificate files are byte-identical "
            "across runs")
