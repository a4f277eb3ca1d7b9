"""Geodesic 1-center (minimax facility location) inside a simple polygon.

The eccentricity c -> max_i d(c, s_i) is convex along geodesics (balls are
convex), so iterative descent converges.  The solver combines the classic
pull-toward-the-farthest-point iteration with a Nelder-Mead polish; all covers
built on top of it are verified a posteriori, so the center only needs to be
accurate to the requested tolerance.
"""

import math

import numpy as np
from scipy.optimize import minimize

from ._geom import dist, midpoint as euclid_midpoint
from .errors import EmptySet
from .paths import geodesic_distance, geodesic_midpoint, point_along, shortest_path

ECC_RTOL = 1e-7  # additive center tolerance, relative to diam(S)


def eccentricity(poly, c, S):
    return max(geodesic_distance(poly, c, s) for s in S)


def _farthest(poly, c, S):
    best, best_d = S[0], -1.0
    for s in S:
        d = geodesic_distance(poly, c, s)
        if d > best_d:
            best, best_d = s, d
    return best, best_d


def _pull_iterations(poly, c, S, rounds):
    for k in range(rounds):
        f, d = _farthest(poly, c, S)
        if d == 0.0:
            return c
        path = shortest_path(poly, c, f)
        c = point_along(path, path.length / (k + 2.0))
    return c


def _nm_polish(poly, c, S, tol):
    from shapely.geometry import Point as ShapelyPoint

    big = 1e6 * (1.0 + max(abs(v) for p in poly.vertices for v in p))

    def fun(x):
        p = (float(x[0]), float(x[1]))
        if not poly.contains(p, eps=1e-12):
            return big + poly.shapely.distance(ShapelyPoint(p))
        return eccentricity(poly, p, S)

    res = minimize(
        fun,
        np.asarray(c),
        method="Nelder-Mead",
        options={"xatol": tol, "fatol": tol, "maxiter": 400, "disp": False},
    )
    p = (float(res.x[0]), float(res.x[1]))
    if poly.contains(p, eps=1e-12) and eccentricity(poly, p, S) < eccentricity(poly, c, S):
        return p
    return c


def _euclid_circumcenter(a, b, c):
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-14 * (abs(ax) + abs(bx) + abs(cx) + 1.0):
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    return (ux, uy)


def one_center_small(poly, pts, tol=None):
    """Fast minimax center of at most three points."""
    pts = list(dict.fromkeys(tuple(p) for p in pts))
    if not pts:
        raise EmptySet("one-center of an empty set")
    if len(pts) == 1:
        return pts[0], 0.0
    if len(pts) == 2:
        path = shortest_path(poly, pts[0], pts[1])
        return point_along(path, path.length * 0.5), path.length * 0.5

    a, b, c = pts
    sides = sorted(
        [(geodesic_distance(poly, a, b), a, b, c),
         (geodesic_distance(poly, b, c), b, c, a),
         (geodesic_distance(poly, c, a), c, a, b)],
        reverse=True,
    )
    dmax, p1, p2, p3 = sides[0]
    m = geodesic_midpoint(poly, p1, p2)
    r = dmax * 0.5
    d3 = geodesic_distance(poly, m, p3)
    if d3 <= r:
        return m, r

    # Fully mutually visible triple: the minimax circle is Euclidean as long
    # as the circumcenter sees all three points.
    straight = all(
        len(shortest_path(poly, u, v).waypoints) == 2
        for u, v in ((a, b), (b, c), (c, a))
    )
    if straight:
        cc = _euclid_circumcenter(a, b, c)
        if cc is not None and poly.contains(cc):
            dd = [geodesic_distance(poly, cc, p) for p in pts]
            ee = [dist(cc, p) for p in pts]
            if all(abs(x - y) <= 1e-9 for x, y in zip(dd, ee)):
                return cc, max(dd)

    return geodesic_one_center(poly, pts, tol=tol, _skip_small=True)


def geodesic_one_center(poly, S, tol=None, _skip_small=False):
    """Center minimizing the maximum geodesic distance to S, and its radius."""
    if not S:
        raise EmptySet("one-center of an empty set")
    pts = list(dict.fromkeys((float(p[0]), float(p[1])) for p in S))
    if len(pts) <= 3 and not _skip_small:
        return one_center_small(poly, pts, tol=tol)
    if len(pts) == 1:
        return pts[0], 0.0

    diam = max(
        geodesic_distance(poly, pts[i], pts[j])
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
    )
    if diam == 0.0:
        return pts[0], 0.0
    if tol is None:
        tol = ECC_RTOL * diam

    # Start from the best of the input points, then pull toward the farthest.
    c = min(pts, key=lambda p: eccentricity(poly, p, pts))
    c = _pull_iterations(poly, c, pts, rounds=60)
    c = _nm_polish(poly, c, pts, tol)
    return c, eccentricity(poly, c, pts)
