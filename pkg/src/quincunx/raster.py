"""Equirectangular image model, sphere sampling, and the render pipeline.

Rendering is inverse-mapped: every output pixel looks up its sphere fetch
coordinate in a projection table, optionally warps it, and samples the
input panorama.  Tables are warp-independent, so interactive control-point
changes reuse a cached table.
"""

import time
from dataclasses import dataclass, replace
from io import BytesIO

import numpy as np
from PIL import Image, UnidentifiedImageError

from . import projection
from .warp import normalize_kernel, warp as warp_coords, wrap_degrees

MODES = (
    "pq",
    "warped-pq",
    "aps-zenith",
    "aps-nadir",
    "stereographic-zenith",
    "stereographic-nadir",
)
SAMPLINGS = ("nearest", "bilinear")

DEFAULT_FILL = 128


class ImageFormatError(ValueError):
    """Unreadable or unsupported image data."""


class AspectRatioError(ImageFormatError):
    """Panorama whose width is not exactly twice its height."""


class RenderOptionError(ValueError):
    """Inconsistent render option combination."""


@dataclass(frozen=True)
class EquirectImage:
    """A 2:1 spherical panorama, 8-bit gray or RGB, row 0 at lat +90."""

    pixels: np.ndarray

    def __post_init__(self):
        px = self.pixels
        if px.dtype != np.uint8:
            raise ImageFormatError(f"panorama must be uint8, got {px.dtype}")
        if px.ndim == 2:
            pass
        elif px.ndim == 3 and px.shape[2] == 3:
            pass
        else:
            raise ImageFormatError(f"panorama must be gray or RGB, shape {px.shape}")
        h, w = px.shape[:2]
        if h < 1 or w != 2 * h:
            raise AspectRatioError(
                f"panorama must have a 2:1 width:height ratio, got {w}x{h}")
        px.setflags(write=False)

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def channels(self):
        return 1 if self.pixels.ndim == 2 else 3


def load_image(path) -> EquirectImage:
    """Load a PNG/JPEG panorama, converting to 8-bit gray or RGB."""
    try:
        with Image.open(path) as im:
            if im.mode != "L":
                im = im.convert("RGB")
            arr = np.asarray(im, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise ImageFormatError(f"cannot decode image file {path!r}: {exc}") from exc
    return EquirectImage(arr.copy())


def equirect_from_bytes(data: bytes) -> EquirectImage:
    if not data:
        raise ImageFormatError("empty image body")
    return load_image(BytesIO(data))


def save_image(pixels, path):
    """Write a gray or RGB uint8 array as PNG (lossless round-trip)."""
    Image.fromarray(np.asarray(pixels, dtype=np.uint8)).save(path, format="PNG")


def encode_png(pixels) -> bytes:
    buf = BytesIO()
    Image.fromarray(np.asarray(pixels, dtype=np.uint8)).save(buf, format="PNG")
    return buf.getvalue()


def _round_half_away(x):
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def _sample_nearest_arrays(img: EquirectImage, lat, lon, fill):
    h, w = img.height, img.width
    lat = np.asarray(lat, dtype=float)
    lon = np.asarray(lon, dtype=float)
    col = _round_half_away((lon + 180.0) * (w - 1) / 360.0).astype(int)
    row = _round_half_away((90.0 - lat) * (h - 1) / 180.0).astype(int)
    ok = (lon >= -180.0) & (lon <= 180.0) & (lat >= -90.0) & (lat <= 90.0)
    col = np.clip(col, 0, w - 1)
    row = np.clip(row, 0, h - 1)
    out = img.pixels[row, col]
    if img.channels == 1:
        return np.where(ok, out, np.uint8(fill))
    return np.where(ok[..., None], out, np.uint8(fill))


def _sample_bilinear_arrays(img: EquirectImage, lat, lon, fill):
    h, w = img.height, img.width
    lat = np.asarray(lat, dtype=float)
    lon = np.asarray(lon, dtype=float)
    ok = (lat >= -90.0) & (lat <= 90.0) & np.isfinite(lon)
    # wrap so a fetch just past the dateline blends on the proper side
    lon_w = wrap_degrees(np.where(ok, lon, 0.0))
    x = (lon_w + 180.0) * (w - 1) / 360.0
    y = (90.0 - np.clip(lat, -90.0, 90.0)) * (h - 1) / 180.0
    x0 = np.clip(np.floor(x), 0, w - 2).astype(int)
    y0 = np.clip(np.floor(y), 0, h - 2).astype(int)
    fx = x - x0
    fy = y - y0
    px = img.pixels.astype(np.float64)
    if img.channels == 3:
        fx = fx[..., None]
        fy = fy[..., None]
    v00 = px[y0, x0]
    v01 = px[y0, x0 + 1]
    v10 = px[y0 + 1, x0]
    v11 = px[y0 + 1, x0 + 1]
    top = v00 * (1.0 - fx) + v01 * fx
    bot = v10 * (1.0 - fx) + v11 * fx
    val = top * (1.0 - fy) + bot * fy
    val = np.clip(_round_half_away(val), 0, 255).astype(np.uint8)
    if img.channels == 1:
        return np.where(ok, val, np.uint8(fill))
    return np.where(ok[..., None], val, np.uint8(fill))


def sample_nearest(img: EquirectImage, s, fill=DEFAULT_FILL):
    """Nearest-texel fetch at (lat, lon) degrees; out of range returns fill.

    Columns map the closed [-180, 180] span onto [0, width - 1] and rounding
    is half away from zero.
    """
    lat, lon = s
    out = _sample_nearest_arrays(img, lat, lon, fill)
    return out.item() if img.channels == 1 else out


def sample_bilinear(img: EquirectImage, s, fill=DEFAULT_FILL):
    """Bilinear fetch with dateline wraparound and latitude clamped at poles."""
    lat, lon = s
    out = _sample_bilinear_arrays(img, lat, lon, fill)
    return out.item() if img.channels == 1 else out


@dataclass(frozen=True)
class RenderOptions:
    size: int = 512
    mode: str = "pq"
    sampling: str = "nearest"
    kernel: str = "linear"
    fast: bool = True
    fill: int = DEFAULT_FILL
    crop_lat: float = 85.0

    def validated(self) -> "RenderOptions":
        if self.mode not in MODES:
            raise RenderOptionError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.sampling not in SAMPLINGS:
            raise RenderOptionError(
                f"unknown sampling {self.sampling!r}; expected one of {SAMPLINGS}")
        if not isinstance(self.size, int) or self.size < 2:
            raise RenderOptionError(f"output size must be an int >= 2, got {self.size!r}")
        if self.fast and self.mode in ("pq", "warped-pq") and self.size % 2:
            raise RenderOptionError(
                f"fast path requires an even size, got {self.size}; pass fast=False")
        if not 0 <= self.fill <= 255:
            raise RenderOptionError(f"fill must be an 8-bit value, got {self.fill!r}")
        kernel = normalize_kernel(self.kernel)
        return replace(self, kernel=kernel)


def build_table(opts: RenderOptions) -> projection.ProjectionTable:
    """Projection table for the requested mode; warp-independent."""
    opts = opts.validated()
    if opts.mode in ("pq", "warped-pq"):
        if opts.fast:
            return projection.fast_pq_table(opts.size)
        return projection.naive_pq_table(opts.size)
    if opts.mode == "aps-zenith":
        return projection.aps_table(opts.size, projection.APS_ZENITH)
    if opts.mode == "aps-nadir":
        return projection.aps_table(opts.size, projection.APS_NADIR)
    variant = projection.APS_ZENITH if opts.mode.endswith("zenith") else projection.APS_NADIR
    return projection.stereographic_table(opts.size, variant, opts.crop_lat)


def _fetch_controls(opts: RenderOptions, controls):
    """The control points actually applied to fetches, or None."""
    if opts.mode == "warped-pq":
        if controls is None:
            raise RenderOptionError("warped-pq rendering requires control points")
        return controls
    if opts.mode == "aps-zenith":
        return projection.aps_controls(projection.APS_ZENITH)
    if opts.mode == "aps-nadir":
        return projection.aps_controls(projection.APS_NADIR)
    return None


def render_from_table(img: EquirectImage, table: projection.ProjectionTable,
                      opts: RenderOptions, controls=None,
                      abort_check=None, chunk_rows=64):
    """Render using a prebuilt table; rows are processed in chunks so a
    cooperative abort_check() can cancel between chunks.  Returns the output
    pixel array, or None when aborted.  Chunking never changes the output:
    each row is computed independently.
    """
    opts = opts.validated()
    if table.size != opts.size:
        raise RenderOptionError(f"table size {table.size} != requested size {opts.size}")
    cp = _fetch_controls(opts, controls)
    kernel = opts.kernel if opts.mode == "warped-pq" else "linear"
    size = opts.size
    shape = (size, size) if img.channels == 1 else (size, size, 3)
    out = np.empty(shape, dtype=np.uint8)
    sampler = _sample_nearest_arrays if opts.sampling == "nearest" else _sample_bilinear_arrays
    for start in range(0, size, chunk_rows):
        if abort_check is not None and abort_check():
            return None
        stop = min(start + chunk_rows, size)
        lat = table.lat[start:stop]
        lon = table.lon[start:stop]
        if cp is not None:
            lat, lon = warp_coords(lat, lon, cp, kernel)
        out[start:stop] = sampler(img, lat, lon, opts.fill)
    return out


def render(img: EquirectImage, opts: RenderOptions, controls=None):
    """Full pipeline: build a fresh table, warp every fetch, sample."""
    opts = opts.validated()
    table = build_table(opts)
    return render_from_table(img, table, opts, controls)


@dataclass
class RenderStats:
    pixels: int = 0
    cn_points: int = 0
    millis: float = 0.0

    def line(self):
        return f"pixels={self.pixels} cn_points={self.cn_points} millis={self.millis:.1f}"


def render_with_stats(img: EquirectImage, opts: RenderOptions, controls=None):
    opts = opts.validated()
    t0 = time.perf_counter()
    table = build_table(opts)
    out = render_from_table(img, table, opts, controls)
    millis = (time.perf_counter() - t0) * 1000.0
    stats = RenderStats(pixels=opts.size * opts.size, cn_points=table.cn_points,
                        millis=millis)
    return out, stats


def tile(pixels, nx: int, ny: int):
    """Repeat a square render as a seamless wallpaper.

    Alternate copies are mirrored (columns flip horizontally, rows flip
    vertically): the square's own edges are folded meridians, so mirroring
    continues the map across every seam, whereas plain translation would
    butt the dateline edge against the prime-meridian edge.
    """
    px = np.asarray(pixels)
    if px.shape[0] != px.shape[1]:
        raise RenderOptionError(f"tiling needs a square image, got {px.shape[:2]}")
    if nx < 1 or ny < 1:
        raise RenderOptionError(f"tile counts must be >= 1, got {nx}x{ny}")
    rows = []
    for r in range(ny):
        row = []
        base = px[::-1] if r % 2 else px
        for c in range(nx):
            row.append(base[:, ::-1] if c % 2 else base)
        rows.append(np.concatenate(row, axis=1))
    return np.concatenate(rows, axis=0)


def prewarped_equirect(img: EquirectImage, cp, kernel="linear",
                       sampling="nearest", fill=DEFAULT_FILL) -> EquirectImage:
    """Materialize the warp as a new panorama of the same dimensions.

    Each output texel (lat, lon) fetches the source at warp(lat, lon), so
    running the unwarped pipeline on the result approximates the warped
    pipeline on the original.
    """
    h, w = img.height, img.width
    lon = -180.0 + 360.0 * np.arange(w) / (w - 1)
    lat = 90.0 - 180.0 * np.arange(h) / (h - 1)
    LON, LAT = np.meshgrid(lon, lat)
    wlat, wlon = warp_coords(LAT, LON, cp, kernel)
    sampler = _sample_nearest_arrays if sampling == "nearest" else _sample_bilinear_arrays
    return EquirectImage(sampler(img, wlat, wlon, fill))
