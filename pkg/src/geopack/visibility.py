"""Visibility-graph Dijkstra shortest paths.

Independent of the funnel kernel in :mod:`geopack.paths`; used as the
reference route for checking geodesic distances.
"""

import heapq
import math

import shapely
from shapely.geometry import LineString, Point as ShapelyPoint

from ._geom import dist
from .errors import PointOutsidePolygon


class VisibilityOracle:
    """Per-polygon visibility graph with cached vertex-vertex edges."""

    def __init__(self, poly):
        self.poly = poly
        self.verts = poly.vertices
        self._geom = shapely.geometry.Polygon(poly.vertices)
        shapely.prepare(self._geom)
        n = len(self.verts)
        self._vv = [[False] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                ok = self._visible(self.verts[i], self.verts[j])
                self._vv[i][j] = self._vv[j][i] = ok

    def _visible(self, a, b):
        if a == b:
            return True
        return self._geom.covers(LineString([a, b]))

    def path(self, p, q):
        p = (float(p[0]), float(p[1]))
        q = (float(q[0]), float(q[1]))
        for pt in (p, q):
            if not self._geom.covers(ShapelyPoint(pt)) and self._geom.distance(
                ShapelyPoint(pt)
            ) > 1e-9:
                raise PointOutsidePolygon(f"{pt} is outside the polygon")
        if p == q:
            return [p], 0.0
        if self._visible(p, q):
            return [p, q], dist(p, q)

        n = len(self.verts)
        nodes = [p, q] + list(self.verts)
        adj = [[] for _ in nodes]
        vis_p = [self._visible(p, v) for v in self.verts]
        vis_q = [self._visible(q, v) for v in self.verts]
        for i in range(n):
            if vis_p[i]:
                adj[0].append((i + 2, dist(p, self.verts[i])))
            if vis_q[i]:
                adj[i + 2].append((1, dist(q, self.verts[i])))
            for j in range(n):
                if i != j and self._vv[i][j]:
                    adj[i + 2].append((j + 2, dist(self.verts[i], self.verts[j])))

        dd = [math.inf] * len(nodes)
        prev = [-1] * len(nodes)
        dd[0] = 0.0
        heap = [(0.0, 0)]
        while heap:
            du, u = heapq.heappop(heap)
            if du > dd[u]:
                continue
            if u == 1:
                break
            for v, w in adj[u]:
                alt = du + w
                if alt < dd[v]:
                    dd[v] = alt
                    prev[v] = u
                    heapq.heappush(heap, (alt, v))
        if not math.isfinite(dd[1]):
            raise PointOutsidePolygon("no visibility path between query points")
        chain = []
        u = 1
        while u != -1:
            chain.append(nodes[u])
            u = prev[u]
        chain.reverse()
        return chain, dd[1]

    def distance(self, p, q):
        return self.path(p, q)[1]
