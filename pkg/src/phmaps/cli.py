"""Command-line front end.

Exit codes: 0 = success/check passed, 1 = mathematically meaningful negative
(non-member, geometry violation, outside neighborhood), 2 = usage, parse, or
I/O errors. Reports go to stdout as "name=value" lines; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import catalog
from .classes import ClassParams, Family, membership
from .errors import NotMemberError, PhmapsError
from .exact import parse_scalar
from .geometry import (
    ALL_CHECKS,
    DiskGrid,
    distortion_envelope,
    evaluate,
    verify_geometry,
)
from .operators import convolve, integral_convolve, neighborhood_report
from .phmio import load_map, save_map, serialize_map
from .series import PolyharmonicMap

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _scalar_arg(text: str):
    try:
        return parse_scalar(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _grid_arg(text: str) -> tuple[int, int]:
    try:
        rings, _, rays = text.lower().partition("x")
        return int(rings), int(rays)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RINGSxRAYS, got {text!r}") from None


def _write_map(F: PolyharmonicMap, path: str | None) -> None:
    if path is None:
        sys.stdout.buffer.write(serialize_map(F))
    else:
        save_map(F, path)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phmaps",
        description="Construct, classify, combine, and geometrically verify "
        "polyharmonic mappings of the unit disk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="class membership report")
    p_check.add_argument("--class", dest="family", required=True, choices=["hs-lambda", "hs", "hc"])
    p_check.add_argument("--lambda", dest="lam", type=_scalar_arg, default=None)
    p_check.add_argument("--normalized", action="store_true")
    p_check.add_argument("file")

    for name in ("convolve", "iconvolve"):
        p_c = sub.add_parser(name, help=f"{'integral ' if name == 'iconvolve' else ''}convolution of two maps")
        p_c.add_argument("file1")
        p_c.add_argument("file2")
        p_c.add_argument("-o", "--output", default=None)

    p_nb = sub.add_parser("neighborhood", help="weighted coefficient distance vs. inclusion bound")
    p_nb.add_argument("file1")
    p_nb.add_argument("file2")
    p_nb.add_argument("--lambda", dest="lam", type=_scalar_arg, required=True)

    p_verify = sub.add_parser("verify", help="grid verification of geometric properties")
    p_verify.add_argument("file")
    p_verify.add_argument(
        "--suite",
        default="all",
        choices=["starlike", "convex", "jacobian", "injective", "distortion", "all"],
    )
    p_verify.add_argument("--grid", type=_grid_arg, default=None, metavar="RINGSxRAYS")
    p_verify.add_argument("--r", dest="radius", type=_scalar_arg, default=None,
                          help="outermost sampled radius (rational or decimal)")
    p_verify.add_argument("--lambda", dest="lam", type=_scalar_arg, default=None,
                          help="class parameter (required for the distortion suite)")
    p_verify.add_argument("--samples", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)

    p_render = sub.add_parser("render", help="SVG (and optional CSV) image of the mapped disk")
    p_render.add_argument("file")
    p_render.add_argument("-o", "--output", required=True)
    p_render.add_argument("--csv", default=None)
    p_render.add_argument("--rings", type=int, default=12)
    p_render.add_argument("--rays", type=int, default=24)
    p_render.add_argument("--rmax", type=float, default=0.98)
    p_render.add_argument("--samples", type=int, default=256)
    p_render.add_argument("--width", type=int, default=800)
    p_render.add_argument("--height", type=int, default=800)

    p_ext = sub.add_parser("extremal", help="boundary-tight single-slot map")
    p_ext.add_argument("--n", type=int, required=True)
    p_ext.add_argument("--k", type=int, default=1)
    p_ext.add_argument("--lambda", dest="lam", type=_scalar_arg, required=True)
    p_ext.add_argument("--kind", choices=["a", "b"], default="a")
    p_ext.add_argument("--phase", type=float, default=0.0)
    p_ext.add_argument("-p", type=int, default=None)
    p_ext.add_argument("-o", "--output", default=None)

    p_cat = sub.add_parser("catalog", help="write a named built-in map")
    p_cat.add_argument("name", choices=["identity", "f1", "f2", "half-plane"])
    p_cat.add_argument("-N", type=int, default=64, help="truncation degree for half-plane")
    p_cat.add_argument("-p", type=int, default=1, help="layer count for identity")
    p_cat.add_argument("-o", "--output", default=None)

    return parser


def _cmd_check(args) -> int:
    F = load_map(args.file)
    family = Family(args.family)
    if family is Family.HS_LAMBDA:
        if args.lam is None:
            print("error: --lambda is required for --class hs-lambda", file=sys.stderr)
            return EXIT_USAGE
        params = ClassParams(family, args.lam, args.normalized)
    else:
        params = ClassParams(family, 1 if family is Family.HC else 0, args.normalized)
    report = membership(F, params)
    print(report.to_kv())
    return EXIT_OK if report.member else EXIT_FAIL


def _cmd_convolution(args, integral: bool) -> int:
    F = load_map(args.file1)
    G = load_map(args.file2)
    out = integral_convolve(F, G) if integral else convolve(F, G)
    _write_map(out, args.output)
    return EXIT_OK


def _cmd_neighborhood(args) -> int:
    F = load_map(args.file1)
    G = load_map(args.file2)
    report = neighborhood_report(F, G, args.lam)
    print(report.to_kv())
    return EXIT_OK if report.inside else EXIT_FAIL


def _distortion_lines(F, lam, samples: int, seed: int) -> tuple[list[str], bool]:
    env = distortion_envelope(F, lam)
    rng = np.random.default_rng(seed)
    r = rng.uniform(0.0, 0.999, samples)
    theta = rng.uniform(0.0, 2.0 * np.pi, samples)
    mags = np.abs(evaluate(F, r * np.exp(1j * theta)))
    low_margin = float(np.min(mags - env.lower(r)))
    high_margin = float(np.min(env.upper(r) - mags))
    ok = low_margin >= -1e-12 and high_margin >= -1e-12
    lines = [
        f"distortion_branch={env.branch}",
        f"distortion_lower_margin={low_margin!r}",
        f"distortion_upper_margin={high_margin!r}",
        f"distortion_ok={'true' if ok else 'false'}",
    ]
    return lines, ok


def _cmd_verify(args) -> int:
    F = load_map(args.file)
    suite = args.suite
    grid_checks = {
        "starlike": ("starlike",),
        "convex": ("convex",),
        "jacobian": ("jacobian",),
        "injective": ("injective",),
        "distortion": (),
        "all": ALL_CHECKS,
    }[suite]

    rings, rays = args.grid if args.grid else (32, 256)
    if args.grid is None and suite == "convex":
        rings, rays = 8, 4096  # dense boundary sweep
    r_max = float(args.radius) if args.radius is not None else 0.995
    if not 0 < r_max < 1:
        print(f"error: --r must lie in (0,1), got {r_max}", file=sys.stderr)
        return EXIT_USAGE

    ok = True
    if grid_checks:
        report = verify_geometry(F, DiskGrid(rings=rings, rays=rays, r_max=r_max), grid_checks)
        print(report.to_kv())
        ok &= report.passed()
    if suite in ("distortion", "all") and (args.lam is not None or suite == "distortion"):
        if args.lam is None:
            print("error: --lambda is required for the distortion suite", file=sys.stderr)
            return EXIT_USAGE
        lines, d_ok = _distortion_lines(F, args.lam, args.samples, args.seed)
        print("\n".join(lines))
        ok &= d_ok
    print(f"suite_passed={'true' if ok else 'false'}")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_render(args) -> int:
    from .render import RenderSpec, render_csv, render_svg

    F = load_map(args.file)
    spec = RenderSpec(
        grid=DiskGrid(rings=args.rings, rays=args.rays, r_max=args.rmax),
        samples_per_curve=args.samples,
        width=args.width,
        height=args.height,
    )
    with open(args.output, "wb") as fh:
        fh.write(render_svg(F, spec))
    if args.csv:
        with open(args.csv, "wb") as fh:
            fh.write(render_csv(F, spec))
    return EXIT_OK


def _cmd_extremal(args) -> int:
    spec = catalog.ExtremalSpec(
        n=args.n,
        k=args.k,
        lam=args.lam,
        kind="analytic" if args.kind == "a" else "antianalytic",
        phase=args.phase,
    )
    _write_map(catalog.extremal_point(spec, args.p), args.output)
    return EXIT_OK


def _cmd_catalog(args) -> int:
    if args.name == "identity":
        F = catalog.identity_map(args.p)
    elif args.name == "f1":
        F = catalog.example_F1()
    elif args.name == "f2":
        F = catalog.example_F2()
    else:
        F = catalog.half_plane_map(args.N)
    _write_map(F, args.output)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "convolve":
            return _cmd_convolution(args, integral=False)
        if args.command == "iconvolve":
            return _cmd_convolution(args, integral=True)
        if args.command == "neighborhood":
            return _cmd_neighborhood(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "render":
            return _cmd_render(args)
        if args.command == "extremal":
            return _cmd_extremal(args)
        if args.command == "catalog":
            return _cmd_catalog(args)
        raise AssertionError(f"unhandled command {args.command}")
    except NotMemberError as e:
        print(f"not a member: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (PhmapsError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
