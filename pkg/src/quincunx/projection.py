"""Square-to-sphere mapping for conformal panorama squares.

The output square is rectified onto a stereographic disk with complex cn at
parameter 1/2 and then lifted to the sphere.  A full quincunx is assembled
from a central diamond (southern hemisphere) and four corner triangles
(northern hemisphere, mirrored).  Lookup tables are built either naively,
one complex-cn evaluation per pixel, or through the sixteenfold symmetry of
the quincunx, evaluating only a semi-quadrant of one hemisphere square.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .elliptic import cn_complex_parts, quarter_period
from .warp import ControlPoints, validate_controls, warp as apply_warp

M = 0.5
KE = quarter_period(M)

# |cn| below this is the exact square center; the point is snapped to the
# pole with canonical longitude 0 (atan2(0, 0) := 0).
_CENTER_SNAP = 1e-12
# Latitudes within this of zero are mathematically on the equator seam;
# snapping keeps the seam rows identical across build strategies.
_EQUATOR_SNAP_DEG = 1e-9

HEMISPHERE_SOUTH = "south"
HEMISPHERE_NORTH = "north"

APS_ZENITH = "zenith"
APS_NADIR = "nadir"

# Aligning the standalone square rotates the anchor meridians by 45 degrees.
_APS_LONS = (-135.0, -45.0, 45.0, 135.0)


class ProjectionDomainError(ValueError):
    """Coordinates outside the mapped domain."""


class InfinityError(ArithmeticError):
    """Stereographic image of the far pole: no finite plane point exists."""


class SphericalCoord(NamedTuple):
    lat: float
    lon: float


class StereoPoint(NamedTuple):
    x1: float
    y1: float


@dataclass(frozen=True)
class ProjectionTable:
    """Per-pixel sphere fetch coordinates for a square output.

    lat/lon are float64 degrees, south marks central-diamond (southern
    hemisphere) fetches, and cn_points counts how many complex-cn argument
    points the build evaluated.
    """

    size: int
    lat: np.ndarray
    lon: np.ndarray
    south: np.ndarray
    cn_points: int

    def __post_init__(self):
        for arr in (self.lat, self.lon, self.south):
            arr.setflags(write=False)


def wrap_lon(lon):
    """Wrap degrees into [-180, 180)."""
    return (np.asarray(lon, dtype=float) + 180.0) % 360.0 - 180.0


def inverse_stereographic(p) -> SphericalCoord:
    """Plane point -> (lat, lon) degrees; the disk origin is the south pole."""
    x1, y1 = p
    lon = math.degrees(math.atan2(y1, x1))
    lat = math.degrees(2.0 * math.atan2(math.hypot(x1, y1), 1.0) - math.pi / 2.0)
    return SphericalCoord(lat, float(wrap_lon(lon)))


def forward_stereographic(s) -> StereoPoint:
    """(lat, lon) degrees -> plane point with radius tan((lat + 90) / 2).

    The north pole has no finite image and raises InfinityError, which is
    what forces the crop in plain stereographic rendering.
    """
    lat, lon = s
    if lat >= 90.0:
        raise InfinityError(f"latitude {lat!r} maps to infinity")
    r = math.tan(math.radians((lat + 90.0) / 2.0))
    ang = math.radians(lon)
    return StereoPoint(r * math.cos(ang), r * math.sin(ang))


def _cnrectify_arrays(a, b):
    """Hemisphere-square coordinates -> (lat, lon) arrays in degrees.

    The square is scaled and tilted onto the rectangle [0, 2K] x [-K, K] of
    the cn argument plane; cn maps it onto the unit disk, which lifts to the
    southern hemisphere (center at lat -90, boundary on the equator).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    xpr = KE * (a - b) / 2.0 + KE
    ypr = KE * (a + b) / 2.0
    re, im, pole = cn_complex_parts(xpr, ypr, M)
    r = np.hypot(re, im)
    lon = np.degrees(np.arctan2(im, re))
    lat = np.degrees(2.0 * np.arctan2(r, 1.0) - math.pi / 2.0)
    center = r < _CENTER_SNAP
    lat = np.where(center, -90.0, lat)
    lon = np.where(center, 0.0, lon)
    # cn poles are the stereographic point at infinity: the opposite pole
    lat = np.where(pole, 90.0, lat)
    lon = np.where(pole, 0.0, lon)
    lat = np.where(np.abs(lat) <= _EQUATOR_SNAP_DEG, 0.0, lat)
    return lat, wrap_lon(lon)


def _check_square(x, y):
    if not (-1.0 <= x <= 1.0 and -1.0 <= y <= 1.0):
        raise ProjectionDomainError(f"({x!r}, {y!r}) outside the unit square")


def cnrectify(x: float, y: float) -> SphericalCoord:
    """Square coordinate -> southern-hemisphere fetch coordinate."""
    _check_square(x, y)
    lat, lon = _cnrectify_arrays(x, y)
    return SphericalCoord(float(lat), float(lon))


def _assemble_arrays(x, y):
    """Quincunx coordinates -> (south_mask, a, b) hemisphere-square coords.

    The central diamond |x| + |y| <= 1 un-tilts onto the full hemisphere
    square; corner triangles reflect into it (their latitude is mirrored by
    the caller).  Points exactly on the seam belong to the south fetch;
    both sides agree there.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    south = np.abs(x) + np.abs(y) <= 1.0
    sx = np.sign(x)
    sy = np.sign(y)
    xii = -x + sx
    yii = -y + sy
    signum = sx * sy
    a = np.where(south, x + y, signum * (xii + yii))
    b = np.where(south, y - x, signum * (xii - yii))
    return south, a, b


def pq_lookup(x: float, y: float):
    """Quincunx coordinate -> (hemisphere tag, SphericalCoord)."""
    _check_square(x, y)
    south, a, b = _assemble_arrays(x, y)
    lat, lon = _cnrectify_arrays(a, b)
    if bool(south):
        return HEMISPHERE_SOUTH, SphericalCoord(float(lat), float(lon))
    return HEMISPHERE_NORTH, SphericalCoord(float(-lat), float(lon))


def _pixel_axes(size):
    x = -1.0 + (2.0 * np.arange(size) + 1.0) / size
    y = 1.0 - (2.0 * np.arange(size) + 1.0) / size
    return x, y


def _pixel_grid(size):
    x, y = _pixel_axes(size)
    return np.meshgrid(x, y)


def _validate_size(size, minimum=2):
    if not isinstance(size, (int, np.integer)) or size < minimum:
        raise ProjectionDomainError(f"table size must be an int >= {minimum}, got {size!r}")


def naive_pq_table(size: int) -> ProjectionTable:
    """Reference table: one cn evaluation per output pixel, centers sampled."""
    _validate_size(size)
    X, Y = _pixel_grid(size)
    south, a, b = _assemble_arrays(X, Y)
    lat, lon = _cnrectify_arrays(a, b)
    lat = np.where(south, lat, -lat)
    return ProjectionTable(size, lat, lon, south, size * size)


def fast_pq_table(size: int) -> ProjectionTable:
    """Symmetry-accelerated table, entrywise matching naive_pq_table.

    Complex cn is evaluated only on the fundamental semi-quadrant of one
    hemisphere square; reflections and right-angle rotations fill the rest.
    Requires an even size: pixel centers then pair exactly under the
    reflections.
    """
    _validate_size(size)
    if size % 2:
        raise ProjectionDomainError(f"fast table requires an even size, got {size}")
    half = size // 2

    # Hemisphere-square sample points live on the lattice (2i/size, 2j/size)
    # with i + j odd.  Fundamental region: 0 <= j < i <= half.
    counts = np.arange(1, half + 1)
    iv = np.repeat(counts, counts)
    jv = np.concatenate([np.arange(k) for k in counts])
    odd = (iv + jv) % 2 == 1
    iv = iv[odd]
    jv = jv[odd]
    lat0, lon0 = _cnrectify_arrays(2.0 * iv / size, 2.0 * jv / size)

    dim = size + 1
    lat_t = np.zeros((dim, dim))
    lon_t = np.zeros((dim, dim))

    def put(it, jt, lonv):
        lat_t[it + half, jt + half] = lat0
        lon_t[it + half, jt + half] = wrap_lon(lonv)

    put(jv, iv, 180.0 - lon0)     # main-diagonal reflection
    put(-jv, -iv, -lon0)          # anti-diagonal reflection
    put(-iv, -jv, lon0 - 180.0)   # half-turn
    put(-iv, jv, -90.0 - lon0)    # vertical mirror
    put(iv, -jv, 90.0 - lon0)     # horizontal mirror
    put(-jv, iv, lon0 + 90.0)     # quarter-turn
    put(jv, -iv, lon0 - 90.0)     # three-quarter turn
    # identity written last so on-axis cells keep the directly computed value
    lat_t[iv + half, jv + half] = lat0
    lon_t[iv + half, jv + half] = lon0

    X, Y = _pixel_grid(size)
    south, a, b = _assemble_arrays(X, Y)
    it = np.rint(a * half).astype(int)
    jt = np.rint(b * half).astype(int)
    lat = lat_t[it + half, jt + half]
    lon = lon_t[it + half, jt + half]
    lat = np.where(south, lat, -lat)
    return ProjectionTable(size, lat, lon, south, int(iv.size))


def aps_controls(variant: str) -> ControlPoints:
    """Anchor set realizing the antipode-perimeter-square limit."""
    if variant == APS_ZENITH:
        lat = 90.0
    elif variant == APS_NADIR:
        lat = -90.0
    else:
        raise ProjectionDomainError(f"unknown APS variant {variant!r}")
    return validate_controls([(lon, lat) for lon in _APS_LONS])


def _aps_raw_arrays(x, y, variant):
    """Pre-warp fetch coordinates of the standalone hemisphere square.

    The zenith flavor keeps the southern square; for nadir the southern
    square degenerates to a single fetch point, so its mirror (the northern
    square) carries the content.
    """
    lat, lon = _cnrectify_arrays(x, y)
    if variant == APS_NADIR:
        lat = -lat
    return lat, lon


def aps_lookup(x: float, y: float, variant: str) -> SphericalCoord:
    """Square coordinate -> sphere fetch for the antipode-perimeter square.

    Equivalent to the warped quincunx with every anchor latitude at +90
    (zenith) or -90 (nadir), keeping only the central square with anchor
    meridians spun 45 degrees: the selected pole runs along the whole
    perimeter, its antipode sits at the center.
    """
    _check_square(x, y)
    controls = aps_controls(variant)
    lat, lon = _aps_raw_arrays(x, y, variant)
    w = apply_warp(float(lat), float(lon), controls)
    return SphericalCoord(w.lat, w.lon)


def aps_table(size: int, variant: str) -> ProjectionTable:
    """Pre-warp table for the standalone hemisphere square.

    Stores raw square-rectification coordinates; the render pipeline applies
    the limiting warp (aps_controls) on fetch, like any other warped render.
    """
    _validate_size(size)
    if variant not in (APS_ZENITH, APS_NADIR):
        raise ProjectionDomainError(f"unknown APS variant {variant!r}")
    X, Y = _pixel_grid(size)
    lat, lon = _aps_raw_arrays(X, Y, variant)
    south = np.full(lat.shape, variant == APS_ZENITH)
    return ProjectionTable(size, lat, lon, south, size * size)


def stereographic_table(size: int, variant: str, crop_lat: float = 85.0) -> ProjectionTable:
    """Plain stereographic fetch table with the far pole cropped.

    The inscribed circle of the output square reaches |lat| = crop_lat on
    the cropped side; corners reach slightly further but never the pole.
    variant selects which pole sits at the center.
    """
    _validate_size(size)
    if not 0.0 < crop_lat < 90.0:
        raise ProjectionDomainError(f"crop latitude must be in (0, 90), got {crop_lat!r}")
    if variant not in (APS_ZENITH, APS_NADIR):
        raise ProjectionDomainError(f"unknown stereographic variant {variant!r}")
    rmax = math.tan(math.radians((crop_lat + 90.0) / 2.0))
    X, Y = _pixel_grid(size)
    r = np.hypot(X, Y) * rmax
    lon = wrap_lon(np.degrees(np.arctan2(Y * rmax, X * rmax)))
    lat = np.degrees(2.0 * np.arctan2(r, 1.0) - math.pi / 2.0)
    if variant == APS_ZENITH:
        lat = -lat
    south = np.full(lat.shape, variant == APS_NADIR)
    return ProjectionTable(size, lat, lon, south, 0)
