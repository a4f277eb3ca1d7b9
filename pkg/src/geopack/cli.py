"""Command-line front end: gen / cover / verify / oracle / plot.

Exit codes: 0 success or verified, 1 verification failure, 2 invalid input,
3 oracle size cap exceeded.
"""

import argparse
import json
import sys

from .covering import pack_and_cover
from .errors import GeopackError, InstanceTooLarge
from .instances import CertificateFile, InstanceFile, gen_instance
from .oracles import Cover, Packing, kt_chain_check, verify_cover, verify_packing
from .plot import render_svg

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_TOO_LARGE = 3


def _build_certificate(instance):
    cover, packing, trace = pack_and_cover(
        instance.polygon, instance.points, instance.delta
    )
    pts = list(dict.fromkeys((float(p[0]), float(p[1])) for p in instance.points))
    packing_indices = [instance.points.index(p) for p in packing.points]
    cov_ok = verify_cover(instance.polygon, pts, cover).ok
    pack_ok = verify_packing(instance.polygon, packing).ok
    ratio = len(cover.centers) / max(1, len(packing.points))
    return CertificateFile(
        radius=instance.delta,
        centers=cover.centers,
        assignment=cover.assignment,
        packing_indices=packing_indices,
        counts={"cover": len(cover.centers), "packing": len(packing.points)},
        ratio=ratio,
        verified={
            "cover": cov_ok,
            "packing": pack_ok,
            "ratio_le_19": len(cover.centers) <= 19 * len(packing.points),
        },
        trace=trace,
    )


def _verify_certificate(instance, cert):
    pts = list(dict.fromkeys((float(p[0]), float(p[1])) for p in instance.points))
    cover = Cover(radius=cert.radius, centers=cert.centers, assignment=cert.assignment)
    packing = Packing(
        radius=cert.radius, points=[instance.points[i] for i in cert.packing_indices]
    )
    cov = verify_cover(instance.polygon, pts, cover)
    pack = verify_packing(instance.polygon, packing)
    ratio_ok = len(cert.centers) <= 19 * max(1, len(cert.packing_indices))
    return cov.ok and pack.ok and ratio_ok, {
        "cover_ok": cov.ok,
        "uncovered": cov.uncovered,
        "packing_ok": pack.ok,
        "violating_pair": pack.violating_pair,
        "ratio_le_19": ratio_ok,
    }


def cmd_gen(args):
    inst = gen_instance(
        seed=args.seed,
        n_vertices=args.vertices,
        n_points=args.points,
        delta_mode=args.delta_quantile,
        allow_empty=args.allow_empty,
    )
    inst.save(args.output)
    return EXIT_OK


def cmd_cover(args):
    inst = InstanceFile.load(args.instance)
    cert = _build_certificate(inst)
    cert.save(args.output)
    return EXIT_OK if all(cert.verified.values()) else EXIT_VERIFY_FAILED


def cmd_verify(args):
    inst = InstanceFile.load(args.instance)
    cert = CertificateFile.load(args.certificate)
    ok, report = _verify_certificate(inst, cert)
    print(json.dumps(report))
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_oracle(args):
    inst = InstanceFile.load(args.instance)
    report = kt_chain_check(inst.polygon, inst.points, inst.delta)
    print(
        json.dumps(
            {
                "nu": report.nu,
                "nu_open": report.nu_open,
                "theta": report.theta,
                "rho_hat": report.rho_hat,
                "nu_half": report.nu_half,
                "chain_core_ok": report.chain_core_ok,
                "chain_upper_ok": report.chain_upper_ok,
            }
        )
    )
    return EXIT_OK


def cmd_plot(args):
    inst = InstanceFile.load(args.instance)
    cert = CertificateFile.load(args.certificate) if args.certificate else None
    svg = render_svg(inst, cert)
    with open(args.output, "w") as fh:
        fh.write(svg)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="geopack",
        description="Geodesic ball packings and certified coverings in simple polygons",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--delta-quantile", type=float, default=0.3)
    p.add_argument("--allow-empty", action="store_true")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cover", help="run pack-and-cover, emit a certificate")
    p.add_argument("-i", "--instance", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", help="verify a certificate against an instance")
    p.add_argument("-i", "--instance", required=True)
    p.add_argument("-c", "--certificate", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact packing/covering oracle chain")
    p.add_argument("-i", "--instance", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("plot", help="render instance (and certificate) to SVG")
    p.add_argument("-i", "--instance", required=True)
    p.add_argument("-c", "--certificate")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (GeopackError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
