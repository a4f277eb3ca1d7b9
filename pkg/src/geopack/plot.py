"""SVG rendering of instances and certificates.

Geodesic spheres are drawn as sampled polylines (128 directions); plotting
fidelity is cosmetic.
"""

import math

from .paths import geodesic_distance, shortest_path

_N_DIRECTIONS = 128


def _sphere_polyline(poly, center, radius):
    """Sampled boundary of the geodesic ball around center."""
    pts = []
    for k in range(_N_DIRECTIONS):
        ang = 2.0 * math.pi * k / _N_DIRECTIONS
        d = (math.cos(ang), math.sin(ang))
        lo, hi = 0.0, radius
        # Shrink hi until the probe stays inside the polygon.
        probe = (center[0] + d[0] * hi, center[1] + d[1] * hi)
        for _ in range(40):
            if poly.contains(probe, eps=1e-12):
                break
            hi *= 0.5
            probe = (center[0] + d[0] * hi, center[1] + d[1] * hi)
        else:
            pts.append(center)
            continue
        if geodesic_distance(poly, center, probe) >= radius - 1e-9:
            pts.append(probe)
            continue
        pts.append(probe)
    return pts


def _fmt(v):
    return f"{v:.4f}"


def render_svg(instance, certificate=None):
    poly = instance.polygon
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    x0, y0 = min(xs) - pad, min(ys) - pad
    x1, y1 = max(xs) + pad, max(ys) + pad
    w, h = x1 - x0, y1 - y0
    scale = 800.0 / max(w, h)

    def tx(p):
        return (p[0] - x0) * scale, (y1 - p[1]) * scale

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w * scale)}" '
        f'height="{_fmt(h * scale)}" viewBox="0 0 {_fmt(w * scale)} {_fmt(h * scale)}">'
    ]
    ring = " ".join(f"{_fmt(tx(v)[0])},{_fmt(tx(v)[1])}" for v in poly.vertices)
    lines.append(
        f'<polygon points="{ring}" fill="#f5f5f0" stroke="#333" stroke-width="1.5"/>'
    )

    if certificate is not None:
        for c in certificate.centers:
            sphere = _sphere_polyline(poly, c, certificate.radius)
            path = " ".join(f"{_fmt(tx(p)[0])},{_fmt(tx(p)[1])}" for p in sphere)
            lines.append(
                f'<polygon points="{path}" fill="#4a90d922" stroke="#4a90d9" '
                f'stroke-width="0.8"/>'
            )
        for trace in certificate.trace:
            for side in trace.get("sides", []):
                for a, b in (
                    (trace["u"], trace["v"]),
                    (trace["v"], side["w"]),
                    (trace["u"], side["w"]),
                ):
                    wp = shortest_path(poly, tuple(a), tuple(b)).waypoints
                    pl = " ".join(f"{_fmt(tx(p)[0])},{_fmt(tx(p)[1])}" for p in wp)
                    lines.append(
                        f'<polyline points="{pl}" fill="none" stroke="#999" '
                        f'stroke-width="0.6" stroke-dasharray="4 3"/>'
                    )
        for i in certificate.packing_indices:
            px, py = tx(instance.points[i])
            lines.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="5" fill="none" '
                f'stroke="#d94a4a" stroke-width="1.5"/>'
            )

    for p in instance.points:
        px, py = tx(p)
        lines.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="2.5" fill="#222"/>')

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
