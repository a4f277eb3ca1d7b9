"""Geodesic ball packings and certified coverings in simple polygons."""

from ._geom import EPS_COVER, EPS_GEOM
from .center import geodesic_one_center
from .chords import Chord, Side, chord_extension, side_of
from .covering import (
    CriticalTriangle,
    cover_neighborhood,
    cover_simplex,
    critical_triangle,
    pack_and_cover,
    quad_cover,
    select_w,
    classify_region,
)
from .hull import relative_convex_hull
from .instances import CertificateFile, InstanceFile, gen_instance
from .oracles import (
    Cover,
    DeltaGraph,
    DistanceMatrix,
    OracleReport,
    Packing,
    delta_graph,
    kt_chain_check,
    max_packing_exact,
    min_cover_exact,
    min_simplex_cover_exact,
    verify_cover,
    verify_packing,
)
from .paths import (
    GeodesicPath,
    diametral_pair,
    geodesic_distance,
    geodesic_midpoint,
    paths_intersect,
    point_along,
    shortest_path,
)
from .polygon import SimplePolygon, Triangulation, triangulate, validate_polygon
from .visibility import VisibilityOracle

__all__ = [
    "EPS_COVER",
    "EPS_GEOM",
    "CertificateFile",
    "Chord",
    "Cover",
    "CriticalTriangle",
    "DeltaGraph",
    "DistanceMatrix",
    "GeodesicPath",
    "InstanceFile",
    "OracleReport",
    "Packing",
    "Side",
    "SimplePolygon",
    "Triangulation",
    "VisibilityOracle",
    "chord_extension",
    "classify_region",
    "cover_neighborhood",
    "cover_simplex",
    "critical_triangle",
    "delta_graph",
    "diametral_pair",
    "gen_instance",
    "geodesic_distance",
    "geodesic_midpoint",
    "geodesic_one_center",
    "kt_chain_check",
    "max_packing_exact",
    "min_cover_exact",
    "min_simplex_cover_exact",
    "pack_and_cover",
    "paths_intersect",
    "point_along",
    "quad_cover",
    "relative_convex_hull",
    "select_w",
    "shortest_path",
    "side_of",
    "triangulate",
    "validate_polygon",
    "verify_cover",
    "verify_packing",
]
