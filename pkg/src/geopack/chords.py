"""Geodesic chords: extending a geodesic through its endpoints to the boundary.

A chord splits the polygon into two faces; :func:`side_of` classifies points
by face.  Extension through a reflex vertex keeps the incoming direction when
possible and otherwise rotates minimally toward the interior (grazing along
the boundary edge).
"""

import enum
import math
from dataclasses import dataclass

from shapely.geometry import Point as ShapelyPoint, Polygon as ShapelyPolygon

from ._geom import EPS_GEOM, cross, dist, point_seg_dist, unit
from .paths import GeodesicPath


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    ON = "on"


@dataclass
class Chord:
    polyline: GeodesicPath   # full boundary-to-boundary polyline
    core: GeodesicPath       # the designated sub-geodesic it extends
    _face_left: object = None
    _face_right: object = None


def _scale(poly):
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    return max(max(xs) - min(xs), max(ys) - min(ys), 1.0)


def _ray_hit(poly, origin, d, t_min):
    """First boundary point hit by the ray origin + t*d with t > t_min.

    Returns (point, t, vertex_index_or_None).
    """
    verts = poly.vertices
    n = len(verts)
    best_t = math.inf
    best = None
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        ex, ey = b[0] - a[0], b[1] - a[1]
        denom = d[0] * ey - d[1] * ex
        if abs(denom) <= 1e-15 * max(1.0, abs(ex) + abs(ey)):
            # Ray parallel to the edge; if collinear, the hit is the nearest
            # endpoint lying ahead on the ray.
            if point_seg_dist(origin, a, b) <= EPS_GEOM or (
                abs(cross(a, b, origin)) <= EPS_GEOM * max(1.0, dist(a, b))
            ):
                for p in (a, b):
                    t = (p[0] - origin[0]) * d[0] + (p[1] - origin[1]) * d[1]
                    if t > t_min and t < best_t:
                        best_t, best = t, p
            continue
        t = ((a[0] - origin[0]) * ey - (a[1] - origin[1]) * ex) / denom
        s = ((a[0] - origin[0]) * d[1] - (a[1] - origin[1]) * d[0]) / denom
        if -1e-12 <= s <= 1.0 + 1e-12 and t > t_min and t < best_t:
            best_t = t
            best = (origin[0] + t * d[0], origin[1] + t * d[1])
    if best is None:
        return None
    # Snap to a vertex when the hit lands on one.
    vi = None
    for i, v in enumerate(verts):
        if dist(best, v) <= 1e-7 * _scale(poly):
            best, vi = v, i
            break
    return best, best_t, vi


def _locally_inside(poly, p, d, h):
    probe = (p[0] + d[0] * h, p[1] + d[1] * h)
    return poly.shapely.covers(ShapelyPoint(probe))


def _extend(poly, origin, direction):
    """Boundary-bound continuation of a geodesic from origin along direction."""
    verts = poly.vertices
    n = len(verts)
    scale = _scale(poly)
    h = 1e-7 * scale
    d = unit(direction)
    cur = origin
    out = []
    if poly.shapely.exterior.distance(ShapelyPoint(cur)) <= EPS_GEOM and not _locally_inside(
        poly, cur, d, h
    ):
        return out
    for _ in range(4 * n + 8):
        hit = _ray_hit(poly, cur, d, t_min=1e-9 * scale)
        if hit is None:
            break
        p, _, vi = hit
        out.append(p)
        if vi is None or not poly.reflex_flags[vi]:
            break
        cur = p
        if _locally_inside(poly, cur, d, h):
            continue
        # Rotate minimally toward the interior: graze along the boundary edge
        # whose direction is angularly closest to the incoming one.
        cands = [unit((verts[(vi - 1) % n][0] - cur[0], verts[(vi - 1) % n][1] - cur[1])),
                 unit((verts[(vi + 1) % n][0] - cur[0], verts[(vi + 1) % n][1] - cur[1]))]
        cands = [c for c in cands if _locally_inside(poly, cur, c, h)]
        if not cands:
            break
        d = max(cands, key=lambda c: c[0] * d[0] + c[1] * d[1])
    return out


def _boundary_param(poly, p):
    """Cyclic boundary position of p as edge_index + fraction along the edge."""
    verts = poly.vertices
    n = len(verts)
    best = (math.inf, 0.0)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        dd = point_seg_dist(p, a, b)
        if dd < best[0]:
            e = (b[0] - a[0], b[1] - a[1])
            denom = e[0] * e[0] + e[1] * e[1]
            t = 0.0 if denom == 0 else ((p[0] - a[0]) * e[0] + (p[1] - a[1]) * e[1]) / denom
            best = (dd, i + min(1.0, max(0.0, t)))
    return best[1] % n


def _face_ring(poly, chord_pts, s_from, s_to):
    """Ring made of the chord plus the CCW boundary walk from s_from to s_to."""
    n = len(poly.vertices)
    ring = list(chord_pts)
    span = (s_to - s_from) % n
    start = math.floor(s_from) + 1
    for k in range(n):
        m = (start + k) % n
        off = (m - s_from) % n
        if not (1e-12 < off < span - 1e-12):
            break
        ring.append(poly.vertices[int(m)])
    return ring


def chord_extension(poly, path):
    """Extend a positive-length geodesic through both endpoints to the boundary."""
    wp = path.waypoints
    if len(wp) < 2 or path.length <= 0.0:
        raise ValueError("chord extension needs a positive-length path")
    back = _extend(poly, wp[0], (wp[0][0] - wp[1][0], wp[0][1] - wp[1][1]))
    fwd = _extend(poly, wp[-1], (wp[-1][0] - wp[-2][0], wp[-1][1] - wp[-2][1]))
    pts = list(reversed(back)) + list(wp) + fwd
    dedup = [pts[0]]
    for p in pts[1:]:
        if dist(p, dedup[-1]) > 1e-12:
            dedup.append(p)
    polyline = GeodesicPath(tuple(dedup))
    chord = Chord(polyline=polyline, core=path)
    _build_faces(poly, chord)
    return chord


def _build_faces(poly, chord):
    pts = chord.polyline.waypoints
    s1 = _boundary_param(poly, pts[0])
    s2 = _boundary_param(poly, pts[-1])
    ring_a = _face_ring(poly, pts, s2, s1)            # chord start->end, walk end->start
    ring_b = _face_ring(poly, tuple(reversed(pts)), s1, s2)
    face_a = ShapelyPolygon(ring_a).buffer(0) if len(ring_a) >= 3 else ShapelyPolygon()
    face_b = ShapelyPolygon(ring_b).buffer(0) if len(ring_b) >= 3 else ShapelyPolygon()

    # Decide which face lies left of the chord direction.
    left_face, right_face = face_a, face_b
    scale = _scale(poly)
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        mid = ((a[0] + b[0]) * 0.5, (a[1] + b[1]) * 0.5)
        if poly.shapely.exterior.distance(ShapelyPoint(mid)) <= 1e-6 * scale:
            continue
        nleft = unit((-(b[1] - a[1]), b[0] - a[0]))
        for hh in (1e-7 * scale, 1e-9 * scale):
            probe = ShapelyPoint((mid[0] + nleft[0] * hh, mid[1] + nleft[1] * hh))
            da, db = face_a.distance(probe), face_b.distance(probe)
            if da != db:
                if db < da:
                    left_face, right_face = face_b, face_a
                break
        else:
            continue
        break
    chord._face_left = left_face
    chord._face_right = right_face


def side_of(chord, p, eps=EPS_GEOM):
    """Classify p as LEFT, RIGHT or ON relative to the chord."""
    wp = chord.polyline.waypoints
    dmin = min(point_seg_dist(p, wp[i], wp[i + 1]) for i in range(len(wp) - 1))
    if dmin <= eps:
        return Side.ON
    pt = ShapelyPoint(p)
    dl = chord._face_left.distance(pt)
    dr = chord._face_right.distance(pt)
    return Side.LEFT if dl <= dr else Side.RIGHT
