"""Geodesic shortest paths inside a simple polygon.

Paths are computed with the funnel (string-pulling) algorithm over the
triangulation sleeve between the two query points.  The resulting polylines
bend only at reflex vertices of the polygon.
"""

import math
from collections import deque
from dataclasses import dataclass, field

from ._geom import EPS_GEOM, cross, dist, lerp, on_segment, seg_intersect
from .errors import EmptySet, OutOfRange, PointOutsidePolygon

_LEN_RTOL = 1e-12


@dataclass(frozen=True)
class GeodesicPath:
    """A geodesic as an ordered polyline; interior bends are reflex vertices."""

    waypoints: tuple
    length: float = field(default=None)

    def __post_init__(self):
        if self.length is None:
            total = sum(
                dist(self.waypoints[i], self.waypoints[i + 1])
                for i in range(len(self.waypoints) - 1)
            )
            object.__setattr__(self, "length", total)

    @property
    def source(self):
        return self.waypoints[0]

    @property
    def target(self):
        return self.waypoints[-1]

    def reversed(self):
        return GeodesicPath(tuple(reversed(self.waypoints)), self.length)


def _dedupe(points):
    out = [points[0]]
    for p in points[1:]:
        if p != out[-1]:
            out.append(p)
    return out


class _FunnelStuck(RuntimeError):
    pass


def _funnel(portals, start, end):
    """Mikko Mononen's simple stupid funnel over (left, right) portals."""
    pts = [start]
    portals = [(start, start)] + portals + [(end, end)]
    apex = left = right = start
    apex_i = left_i = right_i = 0
    i = 1
    budget = 8 * len(portals) * len(portals) + 64
    while i < len(portals):
        budget -= 1
        if budget < 0:
            raise _FunnelStuck("funnel failed to converge on degenerate input")
        pl, pr = portals[i]
        # tighten the right side; an unchanged endpoint only refreshes its index
        if pr == right:
            right_i = i
        elif cross(apex, right, pr) >= 0.0:
            if apex == right or cross(apex, left, pr) < 0.0 or on_segment(pr, apex, left):
                right, right_i = pr, i
            else:
                pts.append(left)
                apex, apex_i = left, left_i
                left = right = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        # tighten the left side
        if pl == left:
            left_i = i
        elif cross(apex, left, pl) <= 0.0:
            if apex == left or cross(apex, right, pl) > 0.0 or on_segment(pl, apex, right):
                left, left_i = pl, i
            else:
                pts.append(right)
                apex, apex_i = right, right_i
                left = right = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        i += 1
    pts.append(end)
    return _dedupe(pts)


def _tri_sequence(poly, t_from, t_to):
    adjacency = poly.triangulation.dual_adjacency
    if t_from == t_to:
        return [t_from]
    parent = {t_from: None}
    queue = deque([t_from])
    while queue:
        t = queue.popleft()
        if t == t_to:
            break
        for nb in adjacency[t]:
            if nb not in parent:
                parent[nb] = t
                queue.append(nb)
    seq = []
    t = t_to
    while t is not None:
        seq.append(t)
        t = parent[t]
    seq.reverse()
    return seq


def _portal(poly, t_cur, t_next):
    """Shared diagonal of two adjacent triangles as a (left, right) pair.

    The edge is oriented so that crossing from t_cur into t_next keeps the
    left endpoint on the traveller's left.  For a CCW triangle the interior
    lies left of each directed edge, so for the CCW-ordered edge (a, b) of
    t_cur the crossing direction has b on the left.
    """
    verts = poly.vertices
    tri = poly.triangulation.triangles[t_cur]
    shared = set(tri) & set(poly.triangulation.triangles[t_next])
    for s in range(3):
        a, b = tri[s], tri[(s + 1) % 3]
        if a in shared and b in shared:
            return (verts[b], verts[a])
    raise AssertionError("adjacent triangles share no edge")


def _dijkstra_fallback(poly, p, q):
    from .visibility import VisibilityOracle

    oracle = getattr(poly, "_vis_fallback", None)
    if oracle is None:
        oracle = VisibilityOracle(poly)
        poly._vis_fallback = oracle
    chain, length = oracle.path(p, q)
    return GeodesicPath(tuple(chain), length)


def shortest_path(poly, p, q):
    """Unique geodesic between two points of the polygon."""
    p = (float(p[0]), float(p[1]))
    q = (float(q[0]), float(q[1]))
    if p == q:
        return GeodesicPath((p,), 0.0)

    key = (p, q) if p <= q else (q, p)
    cached = poly._path_cache.get(key)
    if cached is not None:
        return cached if key == (p, q) else cached.reversed()

    for pt in (p, q):
        if not poly.contains(pt):
            raise PointOutsidePolygon(f"{pt} is outside the polygon")
    tp = poly.locate_triangle(p)
    tq = poly.locate_triangle(q)
    if tp < 0 or tq < 0:
        raise PointOutsidePolygon("failed to locate point in the triangulation")

    if tp == tq:
        path = GeodesicPath((p, q))
    else:
        seq = _tri_sequence(poly, tp, tq)
        portals = [_portal(poly, seq[i], seq[i + 1]) for i in range(len(seq) - 1)]
        try:
            path = GeodesicPath(tuple(_funnel(portals, p, q)))
        except _FunnelStuck:
            path = _dijkstra_fallback(poly, p, q)

    poly._path_cache[key] = path if key == (p, q) else path.reversed()
    return path


def geodesic_distance(poly, p, q):
    return shortest_path(poly, p, q).length


def point_along(path, s):
    """Point at arclength s along the path (constant-speed parametrization)."""
    tol = max(EPS_GEOM, _LEN_RTOL * path.length)
    if s < -tol or s > path.length + tol:
        raise OutOfRange(f"arclength {s} not in [0, {path.length}]")
    s = min(max(s, 0.0), path.length)
    wp = path.waypoints
    if len(wp) == 1:
        return wp[0]
    acc = 0.0
    for i in range(len(wp) - 1):
        seg = dist(wp[i], wp[i + 1])
        if acc + seg >= s or i == len(wp) - 2:
            t = 0.0 if seg == 0.0 else (s - acc) / seg
            return lerp(wp[i], wp[i + 1], min(1.0, max(0.0, t)))
        acc += seg
    return wp[-1]


def geodesic_midpoint(poly, p, q):
    path = shortest_path(poly, p, q)
    return point_along(path, path.length * 0.5)


def paths_intersect(a, b):
    """A common point of the two polylines, or None."""
    wa, wb = a.waypoints, b.waypoints
    if len(wa) == 1:
        wa = (wa[0], wa[0])
    if len(wb) == 1:
        wb = (wb[0], wb[0])
    for i in range(len(wa) - 1):
        for j in range(len(wb) - 1):
            w = seg_intersect(wa[i], wa[i + 1], wb[j], wb[j + 1])
            if w is not None:
                return w
    return None


def diametral_pair(poly, S):
    """Pair of points of S at maximum geodesic distance (lexicographic ties)."""
    if not S:
        raise EmptySet("diametral_pair of an empty set")
    pts = [(float(p[0]), float(p[1])) for p in S]
    if len(pts) == 1:
        return pts[0], pts[0], 0.0
    best = (pts[0], pts[1], -math.inf)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = geodesic_distance(poly, pts[i], pts[j])
            if d > best[2]:
                best = (pts[i], pts[j], d)
    return best
