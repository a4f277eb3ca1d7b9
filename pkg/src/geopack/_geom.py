"""Low-level Euclidean primitives on (x, y) tuples.

Everything here is exact planar geometry; the geodesic layer builds on top.
Points are plain ``(float, float)`` tuples throughout the package.
"""

import math

# Absolute tolerance for point-on-segment / side-of tests; inputs are assumed
# to live at O(1)-O(1e3) coordinate scale.
EPS_GEOM = 1e-9

# Relative slack accepted when checking ball membership of constructed covers.
EPS_COVER = 1e-6


def cross(o, a, b):
    """Signed doubled area of triangle (o, a, b). Positive when b is left of o->a."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dot(o, a, b):
    return (a[0] - o[0]) * (b[0] - o[0]) + (a[1] - o[1]) * (b[1] - o[1])


def dist(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


def lerp(a, b, t):
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def midpoint(a, b):
    return ((a[0] + b[0]) * 0.5, (a[1] + b[1]) * 0.5)


def norm(v):
    return math.hypot(v[0], v[1])


def unit(v):
    n = math.hypot(v[0], v[1])
    if n == 0.0:
        raise ValueError("zero-length vector")
    return (v[0] / n, v[1] / n)


def signed_area(pts):
    """Shoelace area of a closed polygon given without the repeated last point."""
    s = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def point_seg_dist(p, a, b):
    """Distance from p to the closed segment [a, b]."""
    ab = (b[0] - a[0], b[1] - a[1])
    denom = ab[0] * ab[0] + ab[1] * ab[1]
    if denom == 0.0:
        return dist(p, a)
    t = ((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / denom
    t = min(1.0, max(0.0, t))
    return dist(p, (a[0] + ab[0] * t, a[1] + ab[1] * t))


def on_segment(p, a, b, eps=EPS_GEOM):
    return point_seg_dist(p, a, b) <= eps


def seg_intersect(p1, p2, p3, p4, eps=EPS_GEOM):
    """Intersection witness of closed segments [p1,p2] and [p3,p4], or None.

    Collinear overlaps return an arbitrary point of the overlap.
    """
    d1 = cross(p3, p4, p1)
    d2 = cross(p3, p4, p2)
    d3 = cross(p1, p2, p3)
    d4 = cross(p1, p2, p4)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        denom = (p2[0] - p1[0]) * (p4[1] - p3[1]) - (p2[1] - p1[1]) * (p4[0] - p3[0])
        t = ((p3[0] - p1[0]) * (p4[1] - p3[1]) - (p3[1] - p1[1]) * (p4[0] - p3[0])) / denom
        return lerp(p1, p2, t)
    # Touching / collinear cases, detected with tolerance.
    for p in (p1, p2):
        if on_segment(p, p3, p4, eps):
            return p
    for p in (p3, p4):
        if on_segment(p, p1, p2, eps):
            return p
    return None


def segments_properly_intersect(p1, p2, p3, p4):
    """True when the open segments cross at a single interior point."""
    d1 = cross(p3, p4, p1)
    d2 = cross(p3, p4, p2)
    d3 = cross(p1, p2, p3)
    d4 = cross(p1, p2, p4)
    return ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    )


def point_in_triangle(p, a, b, c, eps=EPS_GEOM):
    """Closed containment test; the triangle may be given in either orientation."""
    d1 = cross(a, b, p)
    d2 = cross(b, c, p)
    d3 = cross(c, a, p)
    has_neg = (d1 < -eps) or (d2 < -eps) or (d3 < -eps)
    has_pos = (d1 > eps) or (d2 > eps) or (d3 > eps)
    return not (has_neg and has_pos)


def angle_of(v):
    return math.atan2(v[1], v[0])


def ccw_angle(a, b):
    """Counter-clockwise angle from direction a to direction b, in [0, 2*pi)."""
    ang = math.atan2(b[1], b[0]) - math.atan2(a[1], a[0])
    if ang < 0.0:
        ang += 2.0 * math.pi
    return ang


def polyline_length(pts):
    return sum(dist(pts[i], pts[i + 1]) for i in range(len(pts) - 1))


def convex_hull(points):
    """Monotone-chain hull in CCW order, without the repeated first point."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]
