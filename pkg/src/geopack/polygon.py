"""Simple polygon representation, validation and ear-clipping triangulation."""

import math
from dataclasses import dataclass
from functools import cached_property

import shapely
from shapely.geometry import LineString, Point as ShapelyPoint, Polygon as ShapelyPolygon

from ._geom import (
    EPS_GEOM,
    cross,
    dist,
    point_in_triangle,
    segments_properly_intersect,
    signed_area,
)
from .errors import DegenerateArea, SelfIntersecting, TooFewVertices


@dataclass
class Triangulation:
    triangles: list          # list of (i, j, k) vertex-index triples, CCW
    dual_adjacency: dict     # triangle index -> list of adjacent triangle indices
    diagonals: dict          # frozenset({i, j}) of a shared edge -> (tri_a, tri_b)


class SimplePolygon:
    """A simple polygon stored as a CCW vertex loop.

    Construct through :func:`validate_polygon`; the constructor assumes the
    loop is already normalized and simple.  Derived structures (triangulation,
    shapely geometry, geodesic caches) are computed lazily and shared by all
    queries against the same polygon object.
    """

    def __init__(self, vertices):
        self.vertices = tuple((float(x), float(y)) for x, y in vertices)
        n = len(self.vertices)
        flags = []
        for i in range(n):
            a = self.vertices[(i - 1) % n]
            b = self.vertices[i]
            c = self.vertices[(i + 1) % n]
            flags.append(cross(a, b, c) < 0.0)
        self.reflex_flags = tuple(flags)
        # geodesic-path cache, keyed by canonical (p, q) tuples
        self._path_cache = {}

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"SimplePolygon({len(self.vertices)} vertices)"

    @cached_property
    def shapely(self):
        poly = ShapelyPolygon(self.vertices)
        shapely.prepare(poly)
        return poly

    @cached_property
    def area(self):
        return signed_area(self.vertices)

    def contains(self, p, eps=EPS_GEOM):
        """Closed containment with absolute tolerance eps."""
        pt = ShapelyPoint(p)
        if self.shapely.covers(pt):
            return True
        return self.shapely.distance(pt) <= eps

    def segment_inside(self, a, b, eps=EPS_GEOM):
        """True when the closed segment [a, b] stays inside the polygon."""
        if a == b:
            return self.contains(a, eps)
        line = LineString([a, b])
        if self.shapely.covers(line):
            return True
        # Tolerate grazing contact along the boundary.
        return line.difference(self.shapely.buffer(eps)).length <= eps

    @cached_property
    def triangulation(self):
        return triangulate(self)

    def locate_triangle(self, p, eps=EPS_GEOM):
        """Index of a triangle containing p, or -1."""
        tris = self.triangulation.triangles
        verts = self.vertices
        best = -1
        best_margin = -math.inf
        for t, (i, j, k) in enumerate(tris):
            a, b, c = verts[i], verts[j], verts[k]
            m = min(cross(a, b, p), cross(b, c, p), cross(c, a, p))
            if m > best_margin:
                best_margin = m
                best = t
        if best_margin >= -eps * max(1.0, abs(best_margin)):
            return best
        # Absolute fallback for points within eps of the boundary.
        i, j, k = tris[best]
        if point_in_triangle(p, verts[i], verts[j], verts[k], eps=1e-7):
            return best
        return -1


def validate_polygon(raw_vertices):
    """Normalize and validate a vertex loop into a :class:`SimplePolygon`.

    Normalization drops duplicate and collinear consecutive vertices and
    flips CW input to CCW.
    """
    pts = [(float(x), float(y)) for x, y in raw_vertices]
    for x, y in pts:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DegenerateArea("non-finite vertex coordinate")
    if len(pts) < 3:
        raise TooFewVertices(f"need >= 3 vertices, got {len(pts)}")

    # Drop consecutive duplicates (including a repeated closing vertex).
    dedup = []
    for p in pts:
        if not dedup or dist(p, dedup[-1]) > EPS_GEOM:
            dedup.append(p)
    if len(dedup) > 1 and dist(dedup[0], dedup[-1]) <= EPS_GEOM:
        dedup.pop()

    # Drop collinear straight-through vertices.
    changed = True
    while changed and len(dedup) > 3:
        changed = False
        n = len(dedup)
        for i in range(n):
            a, b, c = dedup[(i - 1) % n], dedup[i], dedup[(i + 1) % n]
            if abs(cross(a, b, c)) <= EPS_GEOM * max(1.0, dist(a, c)):
                del dedup[i]
                changed = True
                break

    if len(dedup) < 3:
        raise TooFewVertices("fewer than 3 vertices after normalization")

    area = signed_area(dedup)
    if abs(area) <= EPS_GEOM:
        raise DegenerateArea(f"polygon area {area} is degenerate")
    if area < 0:
        dedup.reverse()

    n = len(dedup)
    for i in range(n):
        a1, a2 = dedup[i], dedup[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            b1, b2 = dedup[j], dedup[(j + 1) % n]
            if segments_properly_intersect(a1, a2, b1, b2):
                raise SelfIntersecting(f"edges {i} and {j} cross")
    # Non-adjacent edges may still touch within tolerance; reject those too.
    if not ShapelyPolygon(dedup).is_valid:
        raise SelfIntersecting("boundary is not simple")

    return SimplePolygon(dedup)


def triangulate(poly):
    """Ear-clipping triangulation; returns n-2 CCW triangles and the dual tree."""
    verts = poly.vertices
    n = len(verts)
    idx = list(range(n))
    triangles = []

    def is_ear(prev, cur, nxt, remaining, strict_eps, contain_eps):
        a, b, c = verts[prev], verts[cur], verts[nxt]
        if cross(a, b, c) <= strict_eps:
            return False
        for m in remaining:
            if m in (prev, cur, nxt):
                continue
            # A vertex on the candidate diagonal must block the ear, so the
            # first pass tests closed containment.
            if point_in_triangle(verts[m], a, b, c, eps=contain_eps):
                return False
        return True

    while len(idx) > 3:
        clipped = False
        for strict_eps, contain_eps in ((EPS_GEOM, EPS_GEOM), (-EPS_GEOM, -EPS_GEOM)):
            for pos in range(len(idx)):
                prev = idx[pos - 1]
                cur = idx[pos]
                nxt = idx[(pos + 1) % len(idx)]
                if is_ear(prev, cur, nxt, idx, strict_eps, contain_eps):
                    triangles.append((prev, cur, nxt))
                    del idx[pos]
                    clipped = True
                    break
            if clipped:
                break
        if not clipped:
            raise DegenerateArea("ear clipping failed; polygon too degenerate")
    triangles.append((idx[0], idx[1], idx[2]))

    # Orient all triangles CCW (they should already be).
    tris = []
    for (i, j, k) in triangles:
        if cross(verts[i], verts[j], verts[k]) < 0:
            tris.append((i, k, j))
        else:
            tris.append((i, j, k))

    diagonals = {}
    edge_owner = {}
    adjacency = {t: [] for t in range(len(tris))}
    for t, (i, j, k) in enumerate(tris):
        for e in (frozenset((i, j)), frozenset((j, k)), frozenset((k, i))):
            if e in edge_owner:
                other = edge_owner[e]
                adjacency[t].append(other)
                adjacency[other].append(t)
                diagonals[e] = (other, t)
            else:
                edge_owner[e] = t
    return Triangulation(triangles=tris, dual_adjacency=adjacency, diagonals=diagonals)
