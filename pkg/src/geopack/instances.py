"""Instance and certificate files: schemas, (de)serialization, generation."""

import json
import math
from dataclasses import dataclass, field

import numpy as np
from shapely.geometry import Point as ShapelyPoint

from ._geom import segments_properly_intersect
from .errors import GenerationTimeout, GeopackError
from .paths import geodesic_distance
from .polygon import validate_polygon


@dataclass
class InstanceFile:
    polygon: object            # SimplePolygon
    points: list               # list of (x, y)
    delta: float
    seed: int | None = None

    def to_dict(self):
        d = {
            "polygon": {"vertices": [[x, y] for x, y in self.polygon.vertices]},
            "points": [[x, y] for x, y in self.points],
            "delta": self.delta,
        }
        if self.seed is not None:
            d["seed"] = self.seed
        return d

    @classmethod
    def from_dict(cls, d):
        poly = validate_polygon([tuple(v) for v in d["polygon"]["vertices"]])
        points = [(float(x), float(y)) for x, y in d["points"]]
        delta = float(d["delta"])
        if not (delta > 0):
            raise GeopackError("delta must be positive")
        for p in points:
            if not poly.contains(p, eps=1e-7):
                raise GeopackError(f"point {p} lies outside the polygon")
        return cls(polygon=poly, points=points, delta=delta, seed=d.get("seed"))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=None, separators=(",", ":"))
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class CertificateFile:
    radius: float
    centers: list
    assignment: dict
    packing_indices: list
    counts: dict
    ratio: float
    verified: dict
    trace: list = field(default_factory=list)

    def to_dict(self):
        return {
            "radius": self.radius,
            "cover": {
                "centers": [[x, y] for x, y in self.centers],
                "assignment": {str(k): v for k, v in sorted(self.assignment.items())},
            },
            "packing": list(self.packing_indices),
            "counts": self.counts,
            "ratio": self.ratio,
            "verified": self.verified,
            "trace": self.trace,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            radius=float(d["radius"]),
            centers=[(float(x), float(y)) for x, y in d["cover"]["centers"]],
            assignment={int(k): int(v) for k, v in d["cover"]["assignment"].items()},
            packing_indices=[int(i) for i in d["packing"]],
            counts=dict(d["counts"]),
            ratio=float(d["ratio"]),
            verified=dict(d["verified"]),
            trace=list(d.get("trace", [])),
        )

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=None, separators=(",", ":"))
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def save_points_csv(points, path):
    with open(path, "w") as fh:
        fh.write("x,y\n")
        for x, y in points:
            fh.write(f"{x!r},{y!r}\n")


def load_points_csv(path):
    pts = []
    with open(path) as fh:
        header = fh.readline()
        if header.strip() != "x,y":
            raise GeopackError("expected 'x,y' header")
        for line in fh:
            if line.strip():
                x, y = line.split(",")
                pts.append((float(x), float(y)))
    return pts


def _random_simple_polygon(rng, n_vertices, max_uncross=2000):
    """Random simple polygon: random points, then 2-opt uncrossing."""
    pts = [tuple(p) for p in rng.uniform(0.0, 10.0, size=(n_vertices, 2))]
    n = len(pts)
    for _ in range(max_uncross):
        crossed = False
        for i in range(n):
            a1, a2 = pts[i], pts[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                b1, b2 = pts[j], pts[(j + 1) % n]
                if segments_properly_intersect(a1, a2, b1, b2):
                    # reverse the tour between i+1 and j
                    lo, hi = i + 1, j
                    while lo < hi:
                        pts[lo], pts[hi] = pts[hi], pts[lo]
                        lo += 1
                        hi -= 1
                    crossed = True
                    break
            if crossed:
                break
        if not crossed:
            return pts
    return None


def gen_instance(seed, n_vertices, n_points, delta_mode, allow_empty=False):
    """Deterministic random instance: simple polygon, interior points, delta.

    delta_mode is the quantile (in (0, 1)) of the pairwise geodesic distances
    used as the ball radius.
    """
    if n_vertices < 3:
        raise GeopackError("need at least 3 polygon vertices")
    if n_points == 0 and not allow_empty:
        raise GeopackError("n_points = 0 requires allow_empty")
    q = float(delta_mode)
    if not (0.0 < q < 1.0):
        raise GeopackError("delta quantile must be in (0, 1)")

    rng = np.random.default_rng(seed)
    poly = None
    for _ in range(200):
        raw = _random_simple_polygon(rng, n_vertices)
        if raw is None:
            continue
        try:
            cand = validate_polygon(raw)
        except GeopackError:
            continue
        if cand.area > 1.0:
            poly = cand
            break
    if poly is None:
        raise GenerationTimeout("failed to generate a simple polygon")

    # Rejection-sample points in the bounding box.
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    points = []
    attempts = 0
    while len(points) < n_points:
        attempts += 1
        if attempts > 100000:
            raise GenerationTimeout("rejection sampling stalled")
        x = rng.uniform(min(xs), max(xs))
        y = rng.uniform(min(ys), max(ys))
        if poly.shapely.contains(ShapelyPoint((x, y))):
            points.append((float(x), float(y)))

    dists = [
        geodesic_distance(poly, points[i], points[j])
        for i in range(len(points))
        for j in range(i + 1, len(points))
    ]
    if dists and max(dists) > 0:
        delta = float(np.quantile(np.asarray(dists), q))
        if delta <= 0.0:
            delta = max(d for d in dists if d > 0) * 0.5
    else:
        span = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
        delta = 0.1 * span
    return InstanceFile(polygon=poly, points=points, delta=delta, seed=int(seed))
