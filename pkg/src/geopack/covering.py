"""Constructive ball covers: 3-ball simplex covers, 19-ball neighborhood
covers, and the primal-dual pack-and-cover driver.

The construction follows the geometric recipe (critical triangles for sets of
small diameter; diametral-pair neighborhoods split by a chord into regions A,
B, C for the general case), but every produced cover is verified a
posteriori; a bounded exhaustive fallback rescues the rare numeric failures.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from shapely.geometry import Point as ShapelyPoint, Polygon as ShapelyPolygon

from ._geom import EPS_COVER, EPS_GEOM, dist
from .center import geodesic_one_center, one_center_small
from .chords import Side, chord_extension, side_of
from .errors import (
    CoverageFailure,
    DiameterTooLarge,
    EmptySet,
    NotASimplex,
    SideTooLong,
)
from .hull import relative_convex_hull
from .oracles import Cover, Packing, verify_cover
from .paths import (
    diametral_pair,
    geodesic_distance,
    geodesic_midpoint,
    paths_intersect,
    point_along,
    shortest_path,
)

DIAM_CHECK_RTOL = 1e-6  # runtime slack on the region-diameter claims


@dataclass
class CriticalTriangle:
    base: tuple          # (x, y, z)
    apexes: tuple        # (x', y', z')
    perimeter: float
    critical: bool


@dataclass
class NeighborhoodDecomposition:
    u: tuple
    v: tuple
    chord: object
    sides: list = field(default_factory=list)  # per-side dicts with w, x, x', labels


def _dedupe_points(S):
    return list(dict.fromkeys((float(p[0]), float(p[1])) for p in S))


def _snap_key(p, grid=EPS_GEOM):
    return (round(p[0] / grid), round(p[1] / grid))


def _dedupe_centers(centers):
    seen = {}
    for c in centers:
        seen.setdefault(_snap_key(c), c)
    return list(seen.values())


def _pair_diameter(poly, pts):
    best = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            best = max(best, geodesic_distance(poly, pts[i], pts[j]))
    return best


# ---------------------------------------------------------------------------
# Critical triangles (3-ball covers of small-diameter sets)
# ---------------------------------------------------------------------------

def _circle_circle(c1, c2, r):
    """Intersection points of two equal-radius circles, or []."""
    d = dist(c1, c2)
    if d == 0.0 or d > 2.0 * r:
        return []
    a = d / 2.0
    h2 = r * r - a * a
    h = math.sqrt(max(0.0, h2))
    mx = (c1[0] + c2[0]) / 2.0
    my = (c1[1] + c2[1]) / 2.0
    ux = (c2[0] - c1[0]) / d
    uy = (c2[1] - c1[1]) / d
    return [(mx - uy * h, my + ux * h), (mx + uy * h, my - ux * h)]


def _geodesic_triangle_region(poly, a, b, c):
    pts = []
    for u, v in ((a, b), (b, c), (c, a)):
        pts.extend(shortest_path(poly, u, v).waypoints[:-1])
    if len(pts) < 3:
        return None
    region = ShapelyPolygon(pts).buffer(0)
    return region if not region.is_empty else None


def _euclid_apexes(poly, delta, x, y, z):
    """Analytic apexes when the whole configuration is mutually visible."""
    if any(
        len(shortest_path(poly, u, v).waypoints) != 2
        for u, v in ((x, y), (y, z), (z, x))
    ):
        return None
    apexes = []
    for far, c1, c2 in ((x, y, z), (y, z, x), (z, x, y)):
        inter = _circle_circle(c1, c2, delta)
        if not inter:
            return None
        # The apex lies toward the triangle interior: nearest to the far vertex.
        apexes.append(min(inter, key=lambda p: dist(p, far)))
    for p in apexes:
        if not poly.contains(p):
            return None
    # The analytic picture only holds if the relevant geodesics are straight.
    for p, (c1, c2) in zip(apexes, ((y, z), (z, x), (x, y))):
        for c in (c1, c2):
            g = geodesic_distance(poly, p, c)
            if abs(g - dist(p, c)) > 1e-9:
                return None
    for i in range(3):
        for j in range(i + 1, 3):
            g = geodesic_distance(poly, apexes[i], apexes[j])
            if abs(g - dist(apexes[i], apexes[j])) > 1e-9:
                return None
    return tuple(apexes)


def _perimeter(poly, a, b, c):
    return (
        geodesic_distance(poly, a, b)
        + geodesic_distance(poly, b, c)
        + geodesic_distance(poly, c, a)
    )


def _minimize_apex(poly, delta, region, ball_centers, other1, other2, start, tol):
    """One block of the alternating minimization: move an apex inside its
    lens (triangle region intersected with two delta-balls)."""
    big = 1e6

    def penalty(p):
        pen = 0.0
        for bc in ball_centers:
            pen += max(0.0, geodesic_distance(poly, p, bc) - delta)
        if region is not None:
            pen += region.distance(ShapelyPoint(p))
        if not poly.contains(p):
            pen += big
        return pen

    def fun(x):
        p = (float(x[0]), float(x[1]))
        if not poly.contains(p, eps=1e-6):
            return big
        return (
            geodesic_distance(poly, p, other1)
            + geodesic_distance(poly, p, other2)
            + 1e3 * penalty(p)
        )

    res = minimize(
        fun,
        np.asarray(start),
        method="Nelder-Mead",
        options={"xatol": tol, "fatol": tol, "maxiter": 80, "disp": False},
    )
    p = (float(res.x[0]), float(res.x[1]))
    if fun(res.x) <= fun(np.asarray(start)):
        return p
    return start


def critical_triangle(poly, delta, x, y, z):
    """Minimum-perimeter apex triangle of the triplet, or the shared ball point."""
    x, y, z = ((float(p[0]), float(p[1])) for p in (x, y, z))
    limit = 2.0 * delta * (1.0 + EPS_COVER)
    for a, b in ((x, y), (y, z), (z, x)):
        if geodesic_distance(poly, a, b) > limit:
            raise NotASimplex("pairwise distance exceeds 2*delta")
    c, r = one_center_small(poly, [x, y, z])
    if r <= delta * (1.0 + EPS_COVER):
        return CriticalTriangle(base=(x, y, z), apexes=(c, c, c), perimeter=0.0, critical=False)

    apexes = _euclid_apexes(poly, delta, x, y, z)
    if apexes is None:
        apexes = _alternating_minimization(poly, delta, x, y, z)
    return CriticalTriangle(
        base=(x, y, z),
        apexes=apexes,
        perimeter=_perimeter(poly, *apexes),
        critical=True,
    )


def _alternating_minimization(poly, delta, x, y, z):
    region = _geodesic_triangle_region(poly, x, y, z)
    xs = geodesic_midpoint(poly, y, z)
    ys = geodesic_midpoint(poly, x, z)
    zs = geodesic_midpoint(poly, x, y)
    apexes = [xs, ys, zs]
    tol = max(1e-9, 1e-7 * delta)
    perim = _perimeter(poly, *apexes)
    for _ in range(200):
        apexes[0] = _minimize_apex(
            poly, delta, region, (y, z), apexes[1], apexes[2], apexes[0], tol
        )
        apexes[1] = _minimize_apex(
            poly, delta, region, (x, z), apexes[0], apexes[2], apexes[1], tol
        )
        apexes[2] = _minimize_apex(
            poly, delta, region, (x, y), apexes[0], apexes[1], apexes[2], tol
        )
        new_perim = _perimeter(poly, *apexes)
        if perim - new_perim < tol:
            perim = new_perim
            break
        perim = new_perim
    return tuple(apexes)


# ---------------------------------------------------------------------------
# 3-ball simplex cover
# ---------------------------------------------------------------------------

def _fallback_candidates(poly, S, include_triplets):
    cands = list(S)
    for i in range(len(S)):
        for j in range(i + 1, len(S)):
            cands.append(geodesic_midpoint(poly, S[i], S[j]))
    if include_triplets:
        for tri in itertools.combinations(S, 3):
            c, _ = one_center_small(poly, list(tri))
            cands.append(c)
    return _dedupe_points(cands)


def _exhaustive_small_cover(poly, S, delta, max_balls):
    """Smallest cover with at most max_balls candidate-centered balls, or None."""
    cands = _fallback_candidates(poly, S, include_triplets=len(S) <= 12)
    limit = delta * (1.0 + EPS_COVER)
    masks = []
    for c in cands:
        m = 0
        for i, s in enumerate(S):
            if geodesic_distance(poly, c, s) <= limit:
                m |= 1 << i
        masks.append(m)
    full = (1 << len(S)) - 1
    order = sorted(range(len(cands)), key=lambda k: -bin(masks[k]).count("1"))
    for k in range(1, max_balls + 1):
        for combo in itertools.combinations(order, k):
            u = 0
            for idx in combo:
                u |= masks[idx]
            if u == full:
                return [cands[idx] for idx in combo]
    return None


def cover_simplex(poly, S, delta):
    """Cover a set of geodesic diameter <= 2*delta with at most 3 balls."""
    pts = _dedupe_points(S)
    if not pts:
        raise EmptySet("cover_simplex of an empty set")
    if _pair_diameter(poly, pts) > 2.0 * delta * (1.0 + EPS_COVER):
        raise DiameterTooLarge("cover_simplex needs diam(S) <= 2*delta")

    centers = None
    c, r = geodesic_one_center(poly, pts)
    if r <= delta * (1.0 + EPS_COVER):
        centers = [c]
    elif len(pts) >= 3:
        centers = _best_critical_triplet_cover(poly, pts, delta)

    if centers is not None:
        cover = Cover(radius=delta, centers=_dedupe_centers(centers), assignment={})
        if verify_cover(poly, pts, cover).ok:
            _fill_assignment(poly, pts, cover)
            return cover

    fallback = _exhaustive_small_cover(poly, pts, delta, max_balls=3)
    if fallback is None:
        raise CoverageFailure("no 3-ball cover found over the standard candidates")
    cover = Cover(radius=delta, centers=_dedupe_centers(fallback), assignment={})
    report = verify_cover(poly, pts, cover)
    if not report.ok:
        raise CoverageFailure(f"fallback cover failed verification: {report.uncovered}")
    _fill_assignment(poly, pts, cover)
    return cover


def _best_critical_triplet_cover(poly, pts, delta):
    """Apexes of the critical triangle with the largest perimeter."""
    mids = {}

    def mid(i, j):
        key = (min(i, j), max(i, j))
        if key not in mids:
            mids[key] = geodesic_midpoint(poly, pts[key[0]], pts[key[1]])
        return mids[key]

    triplets = []
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        bound = _perimeter(poly, mid(j, k), mid(i, k), mid(i, j))
        triplets.append((bound, i, j, k))
    triplets.sort(reverse=True)

    best = None
    for bound, i, j, k in triplets:
        if best is not None and bound <= best.perimeter:
            break
        ct = critical_triangle(poly, delta, pts[i], pts[j], pts[k])
        if ct.critical and (best is None or ct.perimeter > best.perimeter):
            best = ct
    if best is None:
        return None
    return list(best.apexes)


def _fill_assignment(poly, pts, cover):
    limit = cover.radius * (1.0 + EPS_COVER)
    for i, s in enumerate(pts):
        dists = [geodesic_distance(poly, c, s) for c in cover.centers]
        k = int(np.argmin(dists))
        if dists[k] <= limit:
            cover.assignment[i] = k


# ---------------------------------------------------------------------------
# 19-ball neighborhood cover
# ---------------------------------------------------------------------------

def select_w(poly, S_side, u, v, delta):
    """Point of the side hull on the sphere of radius 2*delta around v that
    (approximately) maximizes the distance to u."""
    pts = _dedupe_points(S_side)
    path_uv = shortest_path(poly, u, v)
    if path_uv.length <= 2.0 * delta:
        raise DiameterTooLarge("select_w requires d(u, v) > 2*delta")
    x = point_along(path_uv, path_uv.length - 2.0 * delta)
    candidates = [x]
    for z in pts:
        path_vz = shortest_path(poly, v, z)
        if path_vz.length >= 2.0 * delta:
            candidates.append(point_along(path_vz, 2.0 * delta))
    if len(pts) >= 2:
        candidates.extend(_sphere_hull_intersections(poly, pts, v, delta))
    return max(candidates, key=lambda p: geodesic_distance(poly, u, p))


def _sphere_hull_intersections(poly, pts, v, delta, max_samples=4000):
    """Roots of d(v, .) = 2*delta along the hull-boundary polyline."""
    walk = relative_convex_hull(poly, pts)
    out = []
    step = delta / 100.0
    target = 2.0 * delta

    def f(p):
        return geodesic_distance(poly, v, p) - target

    budget = max_samples
    for i in range(len(walk) - 1):
        a, b = walk[i], walk[i + 1]
        seg_len = dist(a, b)
        if seg_len == 0.0:
            continue
        k = max(1, min(int(seg_len / step) + 1, budget))
        budget -= k
        ts = [j / k for j in range(k + 1)]
        vals = []
        for t in ts:
            p = (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)
            vals.append((t, f(p)))
        for (t0, f0), (t1, f1) in zip(vals, vals[1:]):
            if f0 == 0.0:
                out.append((a[0] + (b[0] - a[0]) * t0, a[1] + (b[1] - a[1]) * t0))
            elif f0 * f1 < 0.0:
                lo, hi = t0, t1
                flo = f0
                while (hi - lo) * seg_len > EPS_GEOM:
                    mid_t = (lo + hi) / 2.0
                    p = (a[0] + (b[0] - a[0]) * mid_t, a[1] + (b[1] - a[1]) * mid_t)
                    fm = f(p)
                    if flo * fm <= 0.0:
                        hi = mid_t
                    else:
                        lo, flo = mid_t, fm
                t = (lo + hi) / 2.0
                out.append((a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t))
        if budget <= 0:
            break
    return out


def classify_region(poly, u, v, w, x, x_prime, z):
    """Label a point of the side as 'A', 'B' or 'C'.

    B: the geodesic [u,z] crosses [v,w]; C: [z,v] crosses [u,w]; A otherwise.
    Intersections landing on z itself do not count (corners of A such as v
    would otherwise be mislabeled).
    """
    path_vw = shortest_path(poly, v, w)
    wit = paths_intersect(shortest_path(poly, u, z), path_vw)
    if wit is not None and dist(wit, z) > EPS_GEOM:
        return "B"
    wit = paths_intersect(shortest_path(poly, z, v), shortest_path(poly, u, w))
    if wit is not None and dist(wit, z) > EPS_GEOM:
        return "C"
    return "A"


def quad_cover(poly, x, x_prime, w, v, delta):
    """Midpoint centers (p, q, r, s) of the quadrilateral sides."""
    corners = [(x, x_prime), (x_prime, w), (w, v), (v, x)]
    centers = []
    for a, b in corners:
        path = shortest_path(poly, a, b)
        if path.length > 2.0 * delta * (1.0 + EPS_COVER):
            raise SideTooLong(f"quadrilateral side {a}-{b} longer than 2*delta")
        centers.append(point_along(path, path.length * 0.5))
    return tuple(centers)


def cover_neighborhood(poly, S, v, u, delta):
    """Cover B_{2*delta}(v) of the set S with at most 19 balls.

    (u, v) must be a diametral pair of S.  Returns (cover, meta) where meta
    records the per-side decomposition sizes.
    """
    pts = _dedupe_points(S)
    if not pts:
        raise EmptySet("cover_neighborhood of an empty set")
    u = (float(u[0]), float(u[1]))
    v = (float(v[0]), float(v[1]))
    meta = {"v": v, "u": u, "n_points": len(pts), "sides": []}

    d_uv = geodesic_distance(poly, u, v)
    if d_uv <= 2.0 * delta:
        cover = cover_simplex(poly, pts, delta)
        meta["mode"] = "simplex"
        meta["balls"] = len(cover.centers)
        return cover, meta
    meta["mode"] = "neighborhood"

    ball_pts = [p for p in pts if geodesic_distance(poly, v, p) <= 2.0 * delta]
    path_uv = shortest_path(poly, u, v)
    chord = chord_extension(poly, path_uv)
    side_pts = {Side.LEFT: [], Side.RIGHT: []}
    for p in pts:
        s = side_of(chord, p)
        if s is Side.ON:
            side_pts[Side.LEFT].append(p)
            side_pts[Side.RIGHT].append(p)
        else:
            side_pts[s].append(p)

    x = point_along(path_uv, path_uv.length - 2.0 * delta)
    t = 1.0 - 2.0 * delta / d_uv
    centers = []
    for side in (Side.LEFT, Side.RIGHT):
        side_all = side_pts[side]
        side0 = [p for p in side_all if p in ball_pts or p == v]
        if not side0:
            continue
        w = select_w(poly, side_all, u, v, delta)
        path_uw = shortest_path(poly, u, w)
        x_prime = point_along(path_uw, t * path_uw.length)
        labels = {"A": [], "B": [], "C": []}
        for z in side0:
            labels[classify_region(poly, u, v, w, x, x_prime, z)].append(z)

        side_centers = []
        region_diams = {}
        for key in ("B", "C"):
            if labels[key]:
                diam = _pair_diameter(poly, labels[key])
                region_diams[key] = diam
                if diam > 2.0 * delta * (1.0 + DIAM_CHECK_RTOL):
                    raise CoverageFailure(
                        f"region {key} diameter {diam} exceeds 2*delta={2*delta}"
                    )
                side_centers.extend(cover_simplex(poly, labels[key], delta).centers)
        side_centers.extend(quad_cover(poly, x, x_prime, w, v, delta))
        if len(side_centers) > 10:
            raise CoverageFailure("side uses more than 10 balls")
        meta["sides"].append(
            {
                "side": side.value,
                "w": w,
                "x": x,
                "x_prime": x_prime,
                "region_sizes": {k: len(vv) for k, vv in labels.items()},
                "region_diams": region_diams,
                "balls": len(side_centers),
            }
        )
        centers.extend(side_centers)

    centers = _dedupe_centers(centers)
    cover = Cover(radius=delta, centers=centers, assignment={})
    # Repair rare numeric misses while honoring the 19-ball budget.
    limit = delta * (1.0 + EPS_COVER)
    for p in ball_pts + [v]:
        if not centers or min(geodesic_distance(poly, c, p) for c in centers) > limit:
            if len(centers) >= 19:
                raise CoverageFailure("uncovered neighborhood point and no ball budget")
            centers.append(p)
            meta.setdefault("repairs", 0)
            meta["repairs"] += 1
    cover.centers = centers
    if len(cover.centers) > 19:
        raise CoverageFailure(f"neighborhood cover uses {len(cover.centers)} > 19 balls")
    meta["balls"] = len(cover.centers)
    _fill_assignment(poly, ball_pts, cover)
    return cover, meta


# ---------------------------------------------------------------------------
# Primal-dual driver
# ---------------------------------------------------------------------------

def pack_and_cover(poly, S, delta):
    """Simultaneously build a verified cover C of S and a packing P with
    |C| <= 19 |P|.  Returns (cover, packing, trace)."""
    pts = _dedupe_points(S)
    if not pts:
        raise EmptySet("pack_and_cover of an empty set")
    limit = delta * (1.0 + EPS_COVER)
    remaining = list(pts)
    all_centers = []
    packing_pts = []
    trace = []
    while remaining:
        u, v, _ = diametral_pair(poly, remaining)
        ncov, meta = cover_neighborhood(poly, remaining, v, u, delta)
        packing_pts.append(v)
        all_centers.extend(ncov.centers)
        nxt = [
            p
            for p in remaining
            if min(geodesic_distance(poly, c, p) for c in ncov.centers) > limit
        ]
        if len(nxt) >= len(remaining):
            raise CoverageFailure("no progress in pack_and_cover iteration")
        meta["covered"] = len(remaining) - len(nxt)
        trace.append(meta)
        remaining = nxt

    centers = _dedupe_centers(all_centers)
    cover = Cover(radius=delta, centers=centers, assignment={})
    _fill_assignment(poly, pts, cover)
    packing = Packing(radius=delta, points=packing_pts)
    return cover, packing, trace
