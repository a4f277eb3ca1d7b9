"""Relative (geodesic) convex hulls of point sets inside a simple polygon."""

from shapely.geometry import LineString, Point as ShapelyPoint, Polygon as ShapelyPolygon

from ._geom import EPS_GEOM, convex_hull, dist
from .errors import EmptySet
from .paths import geodesic_distance, shortest_path

_MAX_ROUNDS = 200


def _closed_walk(poly, anchors):
    """Closed polyline through consecutive geodesics between the anchors."""
    pts = []
    k = len(anchors)
    for i in range(k):
        seg = shortest_path(poly, anchors[i], anchors[(i + 1) % k]).waypoints
        pts.extend(seg[:-1])
    pts.append(pts[0])
    return pts


def _hull_region(walk):
    if len(walk) >= 4:
        region = ShapelyPolygon(walk).buffer(0)
        if not region.is_empty:
            return region
    return LineString(walk) if len(walk) >= 2 else ShapelyPoint(walk[0])


def relative_convex_hull(poly, S):
    """Boundary of the geodesic convex hull of S, as a closed polyline.

    The hull is grown by geodesic-edge insertion: start from the Euclidean
    hull ordering of S, join consecutive anchors by geodesics, and insert any
    point of S left outside the resulting closed curve until a fixed point is
    reached.  In a convex polygon this reduces to the Euclidean hull.
    """
    if not S:
        raise EmptySet("relative_convex_hull of an empty set")
    pts = []
    for p in S:
        q = (float(p[0]), float(p[1]))
        if q not in pts:
            pts.append(q)
    if len(pts) == 1:
        return [pts[0]]
    anchors = convex_hull(pts)
    if len(anchors) == 2:
        # Degenerate hull: the geodesic between the extreme pair, walked
        # there and back.
        fwd = shortest_path(poly, anchors[0], anchors[1]).waypoints
        return list(fwd) + list(reversed(fwd))[1:]

    anchors = list(anchors)
    for _ in range(_MAX_ROUNDS):
        walk = _closed_walk(poly, anchors)
        region = _hull_region(walk)
        worst, worst_d = None, EPS_GEOM
        for p in pts:
            if p in anchors:
                continue
            d = region.distance(ShapelyPoint(p))
            if d > worst_d:
                worst, worst_d = p, d
        if worst is None:
            return walk
        # Insert at the cyclically adjacent pair minimizing the detour.
        k = len(anchors)
        best_i, best_cost = 0, None
        for i in range(k):
            a, b = anchors[i], anchors[(i + 1) % k]
            cost = (
                geodesic_distance(poly, a, worst)
                + geodesic_distance(poly, worst, b)
                - geodesic_distance(poly, a, b)
            )
            if best_cost is None or cost < best_cost:
                best_i, best_cost = i, cost
        anchors.insert(best_i + 1, worst)
    return _closed_walk(poly, anchors)
