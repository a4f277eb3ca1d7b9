import itertools
import math

import numpy as np
import pytest

from geopack import (
    kt_chain_check,
    max_packing_exact,
    min_cover_exact,
    min_simplex_cover_exact,
    validate_polygon,
    verify_cover,
    verify_packing,
)
from geopack.errors import Infeasible, InstanceTooLarge
from geopack.oracles import (
    Cover,
    DistanceMatrix,
    Packing,
    delta_graph,
    standard_candidates,
)


def _euclid_matrix(points):
    n = len(points)
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            d[i, j] = math.dist(points[i], points[j])
    return DistanceMatrix.from_array(d)


def _brute_max_packing(D, delta, strict):
    """Independent enumeration over all subsets (n <= 12)."""
    best = 0
    for r in range(D.n, 0, -1):
        for sub in itertools.combinations(range(D.n), r):
            ok = all(
                (D.d[i, j] > 2 * delta if strict else D.d[i, j] >= 2 * delta)
                for i, j in itertools.combinations(sub, 2))
            if ok:
                return r
    return best


def _brute_min_simplex_cover(D, delta):
    """Independent search over set partitions (n <= 8)."""
    n = D.n

    def ok(cls):
        return all(D.d[i, j] <= 2 * delta for i, j in itertools.combinations(cls, 2))

    best = [n]

    def rec(i, classes):
        if len(classes) >= best[0]:
            return
        if i == n:
            best[0] = len(classes)
            return
        for c in classes:
            c.append(i)
            if ok(c):
                rec(i + 1, classes)
            c.pop()
        classes.append([i])
        rec(i + 1, classes)
        classes.pop()

    rec(0, [])
    return best[0]


def test_packing_matches_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(8):
        pts = [tuple(p) for p in rng.uniform(0, 10, size=(9, 2))]
        D = _euclid_matrix(pts)
        delta = float(rng.uniform(0.5, 3.0))
        nu, w, nu_open, w_open = max_packing_exact(D, delta)
        assert nu == _brute_max_packing(D, delta, strict=True)
        assert nu_open == _brute_max_packing(D, delta, strict=False)
        # witnesses actually are valid packings
        assert all(D.d[i, j] > 2 * delta for i, j in itertools.combinations(w, 2))


def test_simplex_cover_matches_brute_force():
    rng = np.random.default_rng(9)
    for _ in range(8):
        pts = [tuple(p) for p in rng.uniform(0, 8, size=(7, 2))]
        D = _euclid_matrix(pts)
        delta = float(rng.uniform(0.5, 3.0))
        theta, partition = min_simplex_cover_exact(D, delta)
        assert theta == _brute_min_simplex_cover(D, delta)
        got = sorted(i for cls in partition for i in cls)
        assert got == list(range(D.n))
        for cls in partition:
            assert all(D.d[i, j] <= 2 * delta for i, j in itertools.combinations(cls, 2))


def test_exact_threshold_semantics():
    # two points at geodesic distance exactly 2*delta
    sq = validate_polygon([(0, 0), (10, 0), (10, 10), (0, 10)])
    D = DistanceMatrix.from_points(sq, [(1, 1), (3, 1)])
    nu, _, nu_open, _ = max_packing_exact(D, 1.0)
    assert (nu, nu_open) == (1, 2)


def test_min_cover_exact_small(square):
    pts = [(1, 1), (2, 1), (8, 8)]
    k, cover = min_cover_exact(square, pts, 1.0, standard_candidates(square, pts))
    assert k == 2
    assert verify_cover(square, pts, cover).ok


def test_min_cover_matches_subset_enumeration(square):
    rng = np.random.default_rng(13)
    pts = [tuple(p) for p in rng.uniform(1, 9, size=(7, 2))]
    delta = 1.5
    cands = standard_candidates(square, pts)
    k, cover = min_cover_exact(square, pts, delta, cands)
    # brute force: smallest candidate subset that covers
    from geopack.paths import geodesic_distance
    limit = delta * (1 + 1e-6)
    masks = []
    for c in cands:
        m = 0
        for i, s in enumerate(pts):
            if geodesic_distance(square, c, s) <= limit:
                m |= 1 << i
        masks.append(m)
    full = (1 << len(pts)) - 1
    brute = None
    for r in range(1, len(pts) + 1):
        for sub in itertools.combinations(masks, r):
            u = 0
            for m in sub:
                u |= m
            if u == full:
                brute = r
                break
        if brute:
            break
    assert k == brute


def test_min_cover_infeasible(square):
    with pytest.raises(Infeasible):
        min_cover_exact(square, [(1, 1), (9, 9)], 0.5, [(5, 5)])


def test_caps_raise(square):
    pts = [(i * 0.2 + 0.1, 0.1) for i in range(41)]
    with pytest.raises(InstanceTooLarge):
        max_packing_exact(DistanceMatrix.from_points(square, pts), 0.01)
    with pytest.raises(InstanceTooLarge):
        min_simplex_cover_exact(DistanceMatrix.from_points(square, pts[:16]), 0.01)
    with pytest.raises(InstanceTooLarge):
        min_cover_exact(square, pts[:21], 0.01, pts[:21])


def test_verify_cover_and_packing(square):
    pts = [(1, 1), (2, 1)]
    good = Cover(radius=1.0, centers=[(1.5, 1.0)], assignment={})
    bad = Cover(radius=0.1, centers=[(1.5, 1.0)], assignment={})
    assert verify_cover(square, pts, good).ok
    rep = verify_cover(square, pts, bad)
    assert not rep.ok and rep.uncovered == [0, 1]
    assert verify_packing(square, Packing(radius=0.4, points=pts)).ok
    assert not verify_packing(square, Packing(radius=0.5, points=pts)).ok


def test_distance_matrix_validation():
    with pytest.raises(ValueError):
        DistanceMatrix.from_array(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError):
        DistanceMatrix.from_array(
            np.array([[0, 1, 3], [1, 0, 1], [3, 1, 0]], dtype=float),
            check_triangle=True)


def test_kt_chain_on_random_instances(instances_small):
    for inst in instances_small[:8]:
        if len(inst.points) > 15:
            continue
        rep = kt_chain_check(inst.polygon, inst.points, inst.delta)
        assert rep.nu <= rep.theta <= rep.rho_hat
        assert rep.chain_upper_ok
