"""Batch command line: project / aps / stereo / tile / serve.

Exit codes: 0 success, 2 argument or validation error, 3 I/O error.
"""

import argparse
import sys

import numpy as np
from PIL import Image

from . import raster
from .elliptic import EllipticDomainError
from .projection import ProjectionDomainError
from .warp import ControlPointError, validate_controls


def _parse_controls(raw):
    parts = [p for p in raw.split(",") if p.strip()]
    if len(parts) != 8:
        raise ControlPointError(
            f"--controls needs 8 comma-separated degrees (lon,lat per point), got {len(parts)}")
    vals = [float(p) for p in parts]
    return validate_controls(list(zip(vals[0::2], vals[1::2])))


def _add_render_flags(p, with_controls=True):
    p.add_argument("--in", dest="inp", required=True, help="input equirectangular PNG/JPEG")
    p.add_argument("--out", dest="out", required=True, help="output PNG path")
    p.add_argument("--size", type=int, default=1024, help="output pixels per side")
    p.add_argument("--sampling", choices=raster.SAMPLINGS, default="nearest")
    p.add_argument("--fill", type=int, default=raster.DEFAULT_FILL,
                   help="pixel value for out-of-range fetches")
    p.add_argument("--naive", action="store_true",
                   help="build the lookup table without the symmetry fast path")
    p.add_argument("--stats", action="store_true",
                   help="print pixels / cn evaluations / milliseconds to stderr")
    if with_controls:
        p.add_argument("--controls", default=None,
                       help="8 degrees: lon1,lat1,...,lon4,lat4 (enables the warp)")
        p.add_argument("--kernel", default="linear",
                       choices=("linear", "catmull-rom", "hermite", "hermite-zero-slope"))


def build_parser():
    ap = argparse.ArgumentParser(prog="quincunx",
                                 description="Spherical panorama to conformal-square renderer")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="quincuncial-square render, optionally warped")
    _add_render_flags(p)

    p = sub.add_parser("aps", help="antipode-perimeter-square render")
    _add_render_flags(p, with_controls=False)
    p.add_argument("--variant", choices=("zenith", "nadir"), default="zenith")

    p = sub.add_parser("stereo", help="plain stereographic comparison render")
    _add_render_flags(p, with_controls=False)
    p.add_argument("--variant", choices=("zenith", "nadir"), default="nadir")
    p.add_argument("--crop-lat", type=float, default=85.0,
                   help="latitude reached at the output edge on the cropped side")

    p = sub.add_parser("tile", help="repeat a square render as a wallpaper")
    p.add_argument("--in", dest="inp", required=True, help="square render to repeat")
    p.add_argument("--out", dest="out", required=True)
    p.add_argument("--nx", type=int, default=2)
    p.add_argument("--ny", type=int, default=2)

    p = sub.add_parser("serve", help="run the interactive preview service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--ui", default=None, help="directory of built editor assets to serve at /ui")
    return ap


def _render_command(args, mode, controls=None, crop_lat=85.0, kernel="linear"):
    img = raster.load_image(args.inp)
    opts = raster.RenderOptions(size=args.size, mode=mode, sampling=args.sampling,
                                kernel=kernel, fast=not args.naive, fill=args.fill,
                                crop_lat=crop_lat)
    out, stats = raster.render_with_stats(img, opts, controls)
    raster.save_image(out, args.out)
    if args.stats:
        print(stats.line(), file=sys.stderr)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "project":
            controls = _parse_controls(args.controls) if args.controls else None
            mode = "warped-pq" if controls is not None else "pq"
            return _render_command(args, mode, controls, kernel=args.kernel)
        if args.command == "aps":
            return _render_command(args, f"aps-{args.variant}")
        if args.command == "stereo":
            return _render_command(args, f"stereographic-{args.variant}",
                                   crop_lat=args.crop_lat)
        if args.command == "tile":
            with Image.open(args.inp) as im:
                arr = np.asarray(im)
            tiled = raster.tile(arr, args.nx, args.ny)
            raster.save_image(tiled, args.out)
            return 0
        if args.command == "serve":
            from . import service

            service.run(host=args.host, port=args.port, static_dir=args.ui)
            return 0
    except raster.ImageFormatError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except (ControlPointError, raster.RenderOptionError,
            ProjectionDomainError, EllipticDomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    return 2


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
