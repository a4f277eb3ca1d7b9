"""Exact combinatorial oracles for packing/covering numbers on finite sets.

Everything here works on a distance matrix; the geometric layer supplies
geodesic distances.  The packing number is the clique number of the
complement of the 2-delta proximity graph; the simplex-covering number is its
chromatic number; ball covers are exact set covers over explicit candidate
center sets.
"""

import itertools
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from ._geom import EPS_COVER
from .center import one_center_small
from .errors import EmptySet, Infeasible, InstanceTooLarge
from .paths import geodesic_distance, geodesic_midpoint

MAX_PACKING_CAP = 40
MAX_SIMPLEX_CAP = 15
MAX_COVER_CAP = 20


@dataclass
class DistanceMatrix:
    n: int
    d: np.ndarray

    @classmethod
    def from_points(cls, poly, points):
        pts = [(float(p[0]), float(p[1])) for p in points]
        n = len(pts)
        d = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                d[i, j] = d[j, i] = geodesic_distance(poly, pts[i], pts[j])
        m = cls(n=n, d=d)
        m.validate(check_triangle=True)
        return m

    @classmethod
    def from_array(cls, d, check_triangle=False):
        d = np.asarray(d, dtype=float)
        m = cls(n=d.shape[0], d=d)
        m.validate(check_triangle=check_triangle)
        return m

    def validate(self, check_triangle=False):
        if self.d.shape != (self.n, self.n):
            raise ValueError("distance matrix shape mismatch")
        if not np.allclose(np.diag(self.d), 0.0, atol=0.0):
            raise ValueError("nonzero diagonal")
        if not np.array_equal(self.d, self.d.T):
            raise ValueError("matrix not exactly symmetric")
        if check_triangle:
            for k in range(self.n):
                slack = self.d - (self.d[:, [k]] + self.d[[k], :])
                if slack.max() > 1e-9:
                    raise ValueError(f"triangle inequality violated via {k}")


@dataclass
class DeltaGraph:
    n: int
    threshold: float
    strict: bool
    edges: list  # sorted (i, j) pairs with i < j

    def adjacency_masks(self):
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks


@dataclass
class CoverReport:
    ok: bool
    uncovered: list


@dataclass
class PackingReport:
    ok: bool
    violating_pair: tuple | None


@dataclass
class OracleReport:
    nu: int
    nu_open: int
    theta: int
    rho_hat: int
    nu_half: int
    nu_witness: list
    theta_witness: list
    rho_witness: list = field(default_factory=list)
    chain_core_ok: bool = True      # nu <= theta <= rho_hat (hard)
    chain_upper_ok: bool = True     # rho_hat <= nu_{delta/2} (reported)


@dataclass
class Cover:
    radius: float
    centers: list
    assignment: dict  # point index -> center index


@dataclass
class Packing:
    radius: float
    points: list


def delta_graph(D, threshold, strict=False):
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    edges = []
    for i in range(D.n):
        for j in range(i + 1, D.n):
            v = D.d[i, j]
            if (v < threshold) if strict else (v <= threshold):
                edges.append((i, j))
    return DeltaGraph(n=D.n, threshold=threshold, strict=strict, edges=edges)


def _max_independent_set(graph):
    """Exact maximum independent set of a DeltaGraph via complement clique."""
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    present = set(graph.edges)
    for i in range(graph.n):
        for j in range(i + 1, graph.n):
            if (i, j) not in present:
                g.add_edge(i, j)
    clique, _ = nx.max_weight_clique(g, weight=None)
    return sorted(clique)


def max_packing_exact(D, delta, cap=MAX_PACKING_CAP):
    """nu (pairwise d > 2*delta) and nu-open (pairwise d >= 2*delta), exact.

    Threshold comparisons use the computed doubles with no tolerance: the
    strict/non-strict split at exactly 2*delta is semantic.
    """
    if D.n > cap:
        raise InstanceTooLarge(f"n={D.n} exceeds packing cap {cap}")
    if D.n == 0:
        return 0, [], 0, []
    closed = _max_independent_set(delta_graph(D, 2.0 * delta, strict=False))
    open_ = _max_independent_set(delta_graph(D, 2.0 * delta, strict=True))
    return len(closed), closed, len(open_), open_


def min_simplex_cover_exact(D, delta, cap=MAX_SIMPLEX_CAP):
    """Minimum partition of the points into delta-simplices (diameter <= 2*delta).

    Equals the chromatic number of the complement of the 2*delta proximity
    graph, computed by iterative-deepening backtracking.
    """
    if D.n > cap:
        raise InstanceTooLarge(f"n={D.n} exceeds simplex-cover cap {cap}")
    if D.n == 0:
        return 0, []
    n = D.n
    # conflict[i][j]: i and j cannot share a simplex
    conflict = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and D.d[i, j] > 2.0 * delta:
                conflict[i] |= 1 << j
    order = sorted(range(n), key=lambda i: -bin(conflict[i]).count("1"))

    def try_k(k):
        classes = [0] * k  # bitmask of members per color class
        assign = [-1] * n

        def bt(pos):
            if pos == n:
                return True
            v = order[pos]
            used_new = False
            for c in range(k):
                if classes[c] == 0:
                    if used_new:
                        break
                    used_new = True
                if classes[c] & conflict[v]:
                    continue
                classes[c] |= 1 << v
                assign[v] = c
                if bt(pos + 1):
                    return True
                classes[c] &= ~(1 << v)
                assign[v] = -1
            return False

        if bt(0):
            return assign
        return None

    for k in range(1, n + 1):
        assign = try_k(k)
        if assign is not None:
            partition = [[] for _ in range(k)]
            for v, c in enumerate(assign):
                partition[c].append(v)
            partition = [sorted(cls) for cls in partition if cls]
            return len(partition), partition
    raise AssertionError("unreachable: n colors always suffice")


def _coverage_masks(poly, S, delta, candidates, eps=EPS_COVER):
    limit = delta * (1.0 + eps)
    masks = []
    for c in candidates:
        m = 0
        for i, s in enumerate(S):
            if geodesic_distance(poly, c, s) <= limit:
                m |= 1 << i
        masks.append(m)
    return masks


def _min_set_cover(masks, full):
    """Exact minimum set cover over bitmasks via backtracking."""
    masks = sorted(set(m for m in masks if m), key=lambda m: -bin(m).count("1"))
    best = [None, len(masks) + 1]

    def covers_of(bit):
        return [m for m in masks if m & bit]

    def bt(uncovered, chosen):
        if not uncovered:
            if len(chosen) < best[1]:
                best[0] = list(chosen)
                best[1] = len(chosen)
            return
        if len(chosen) + 1 >= best[1]:
            # even one more set cannot improve
            pass
        # lower bound: greedy count
        if len(chosen) >= best[1] - 1:
            return
        bit = uncovered & -uncovered
        for m in covers_of(bit):
            bt(uncovered & ~m, chosen + [m])

    bt(full, [])
    return best[0]


def min_cover_exact(poly, S, delta, candidates, cap=MAX_COVER_CAP):
    """Minimum number of delta-balls centered at the candidates covering S."""
    S = [(float(p[0]), float(p[1])) for p in S]
    if len(S) > cap:
        raise InstanceTooLarge(f"|S|={len(S)} exceeds set-cover cap {cap}")
    if not S:
        return 0, Cover(radius=delta, centers=[], assignment={})
    cands = list(dict.fromkeys((float(p[0]), float(p[1])) for p in candidates))
    masks = _coverage_masks(poly, S, delta, cands)
    full = (1 << len(S)) - 1
    union = 0
    for m in masks:
        union |= m
    if union != full:
        raise Infeasible("some point of S is not within delta of any candidate")
    chosen = _min_set_cover(masks, full)
    centers = []
    for m in chosen:
        centers.append(cands[masks.index(m)])
    cover = Cover(radius=delta, centers=centers, assignment={})
    _assign(poly, S, cover)
    return len(centers), cover


def _assign(poly, S, cover):
    limit = cover.radius * (1.0 + EPS_COVER)
    for i, s in enumerate(S):
        best, best_d = None, None
        for k, c in enumerate(cover.centers):
            d = geodesic_distance(poly, c, s)
            if best_d is None or d < best_d:
                best, best_d = k, d
        if best_d is not None and best_d <= limit:
            cover.assignment[i] = best


def verify_cover(poly, S, cover, eps=EPS_COVER):
    limit = cover.radius * (1.0 + eps)
    uncovered = []
    for i, s in enumerate(S):
        if not cover.centers:
            uncovered.append(i)
            continue
        if min(geodesic_distance(poly, c, s) for c in cover.centers) > limit:
            uncovered.append(i)
    centers_ok = all(poly.contains(c) for c in cover.centers)
    return CoverReport(ok=(not uncovered) and centers_ok, uncovered=uncovered)


def verify_packing(poly, packing):
    pts = packing.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if geodesic_distance(poly, pts[i], pts[j]) <= 2.0 * packing.radius:
                return PackingReport(ok=False, violating_pair=(i, j))
    return PackingReport(ok=True, violating_pair=None)


def standard_candidates(poly, S, max_triple_centers=True):
    """S, pairwise geodesic midpoints, and one-centers of all <=3-subsets."""
    pts = list(dict.fromkeys((float(p[0]), float(p[1])) for p in S))
    cands = list(pts)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            cands.append(geodesic_midpoint(poly, pts[i], pts[j]))
    if max_triple_centers:
        for tri in itertools.combinations(pts, 3):
            c, _ = one_center_small(poly, list(tri))
            cands.append(c)
    return list(dict.fromkeys(cands))


def kt_chain_check(poly, S, delta):
    """Kolmogorov-Tikhomirov chain on exact oracle values.

    nu <= theta <= rho_hat are hard assertions; rho_hat <= nu_{delta/2} is
    reported (it holds whenever the candidate set contains S, which it does).
    """
    S = [(float(p[0]), float(p[1])) for p in S]
    if not S:
        raise EmptySet("kt_chain_check of an empty set")
    D = DistanceMatrix.from_points(poly, S)
    nu, nu_w, nu_open, _ = max_packing_exact(D, delta)
    theta, theta_w = min_simplex_cover_exact(D, delta)
    cands = standard_candidates(poly, S)
    rho_hat, rho_cover = min_cover_exact(poly, S, delta, cands)
    nu_half, _, _, _ = max_packing_exact(D, delta / 2.0)
    report = OracleReport(
        nu=nu,
        nu_open=nu_open,
        theta=theta,
        rho_hat=rho_hat,
        nu_half=nu_half,
        nu_witness=nu_w,
        theta_witness=theta_w,
        rho_witness=rho_cover.centers,
        chain_core_ok=(nu <= theta <= rho_hat),
        chain_upper_ok=(rho_hat <= nu_half),
    )
    assert report.chain_core_ok, f"KT chain violated: nu={nu} theta={theta} rho_hat={rho_hat}"
    return report
