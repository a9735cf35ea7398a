"""Four-point equator warping of spherical coordinates.

Given four user anchors on the sphere, longitudes are remapped quadrant by
quadrant, an equator-latitude curve is interpolated through the anchors, and
latitudes are blended between that curve and the poles.  All angles are in
degrees.  Every function accepts scalars or numpy arrays.
"""

from typing import NamedTuple

import numpy as np

QUADRANT_BOUNDS = (-180.0, -90.0, 0.0, 90.0, 180.0)

KERNELS = ("linear", "catmull-rom", "hermite-zero-slope")
_KERNEL_ALIASES = {
    "linear": "linear",
    "catmull-rom": "catmull-rom",
    "catmullrom": "catmull-rom",
    "hermite-zero-slope": "hermite-zero-slope",
    "hermite": "hermite-zero-slope",
}

# Practical spacing floor used by the interactive service / editor.
MIN_SEPARATION_DEG = 0.5


class ControlPointError(ValueError):
    """Control points that violate the ordering or range constraints."""


class WarpedCoord(NamedTuple):
    lat: float
    lon: float


class ControlPoints(NamedTuple):
    """Four (lon, lat) anchors, sorted ascending in longitude.

    The phantom fifth anchor closes the sphere: x5 = x1 + 360, y5 = y1.
    """

    lons: tuple
    lats: tuple

    @property
    def phantom_lon(self):
        return self.lons[0] + 360.0

    def knots(self):
        """Longitude/latitude knot arrays x0..x6 with periodic extension."""
        x = self.lons
        y = self.lats
        xs = np.array([x[3] - 360.0, x[0], x[1], x[2], x[3],
                       x[0] + 360.0, x[1] + 360.0])
        ys = np.array([y[3], y[0], y[1], y[2], y[3], y[0], y[1]])
        return xs, ys

    def flat(self):
        out = []
        for lon, lat in zip(self.lons, self.lats):
            out.extend((lon, lat))
        return out


IDENTITY_CONTROLS_RAW = ((-180.0, 0.0), (-90.0, 0.0), (0.0, 0.0), (90.0, 0.0))


def normalize_kernel(kernel: str) -> str:
    try:
        return _KERNEL_ALIASES[kernel.strip().lower()]
    except KeyError:
        raise ControlPointError(
            f"unknown kernel {kernel!r}; expected one of {KERNELS}") from None


def validate_controls(points, min_separation: float = 0.0) -> ControlPoints:
    """Sort four (lon, lat) pairs by longitude and enforce the constraints.

    Longitudes must be strictly increasing after sorting (equal longitudes
    make the warp ill-defined), each within [-180, 180], latitudes within
    [-90, 90].  min_separation > 0 additionally enforces a spacing floor,
    including across the wrap to the phantom point.
    """
    pts = [(float(lon), float(lat)) for lon, lat in points]
    if len(pts) != 4:
        raise ControlPointError(f"exactly four control points required, got {len(pts)}")
    for lon, lat in pts:
        if not -180.0 <= lon <= 180.0:
            raise ControlPointError(f"control longitude {lon!r} outside [-180, 180]")
        if not -90.0 <= lat <= 90.0:
            raise ControlPointError(f"control latitude {lat!r} outside [-90, 90]")
    pts.sort(key=lambda p: p[0])
    lons = [p[0] for p in pts]
    gaps = [lons[i + 1] - lons[i] for i in range(3)]
    gaps.append(lons[0] + 360.0 - lons[3])  # wrap gap to the phantom anchor
    if min(gaps) <= 0.0:
        raise ControlPointError(
            "control longitudes must be strictly increasing; "
            f"got duplicates in {lons}")
    if min_separation > 0.0 and min(gaps) < min_separation:
        raise ControlPointError(
            f"control longitudes closer than {min_separation} degrees: {lons}")
    return ControlPoints(tuple(lons), tuple(p[1] for p in pts))


def identity_controls() -> ControlPoints:
    """Anchors at the quadrant bounds with zero latitude: warp is identity."""
    return validate_controls(IDENTITY_CONTROLS_RAW)


def wrap_degrees(lon):
    """Wrap longitudes into [-180, 180)."""
    return (np.asarray(lon, dtype=float) + 180.0) % 360.0 - 180.0


def _quadrant(lon):
    lon = np.asarray(lon, dtype=float)
    q = np.floor((lon + 180.0) / 90.0).astype(int)
    return np.clip(q, 0, 3)  # closed upper bound keeps lon = 180 in quadrant 4


def _hermite(y0, d0, y1, d1, t):
    t2 = t * t
    t3 = t2 * t
    return (y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + d0 * (t3 - 2.0 * t2 + t)
            + y1 * (-2.0 * t3 + 3.0 * t2)
            + d1 * (t3 - t2))


def _hermite_monotone(y0, d0, y1, d1):
    """True when the cubic Hermite derivative stays > 0 on [0, 1]."""
    dy = y1 - y0
    # H'(t) = a t^2 + b t + c
    a = 3.0 * (d0 + d1) - 6.0 * dy
    b = 6.0 * dy - 4.0 * d0 - 2.0 * d1
    c = d0
    candidates = [c, a + b + c]
    if a != 0.0:
        tv = -b / (2.0 * a)
        if 0.0 < tv < 1.0:
            candidates.append(a * tv * tv + b * tv + c)
    return min(candidates) > 0.0


def _segment_params(cp: ControlPoints, kernel: str):
    """Per-quadrant interpolation setup shared by the longitude and
    equator steps: knot values and (for spline kernels) tangents."""
    xs, ys = cp.knots()
    kernel = normalize_kernel(kernel)
    # tangents at knots 1..5 (the four anchors plus the phantom)
    if kernel == "catmull-rom":
        # centered finite differences; the longitude curve has uniform
        # 90-degree spacing in the source angle, the latitude curve is
        # nonuniform in the warped longitude
        xt = np.array([(xs[i + 1] - xs[i - 1]) / 2.0 for i in range(1, 6)])
        yt = np.array([(ys[i + 1] - ys[i - 1]) / (xs[i + 1] - xs[i - 1])
                       for i in range(1, 6)])
    elif kernel == "hermite-zero-slope":
        xt = np.zeros(5)
        yt = np.zeros(5)
    else:
        xt = yt = None
    return xs, ys, xt, yt, kernel


def _lon_spline_usable(xs, xt, kernel):
    """Quadrants where the longitude spline stays strictly increasing.

    Falls back to linear wherever the spline derivative would touch zero;
    a zero-slope Hermite therefore always interpolates longitude linearly.
    """
    usable = np.zeros(4, dtype=bool)
    if kernel == "linear":
        return usable
    for q in range(4):
        usable[q] = _hermite_monotone(xs[q + 1], xt[q], xs[q + 2], xt[q + 1])
    return usable


def warp_longitude(lon, cp: ControlPoints, kernel: str = "linear"):
    """Step two: remap longitude through the anchors.

    Returns (lon_raw, quadrant) where quadrant is 1-based and lon_raw is the
    unwrapped value in [x_i, x_{i+1}] needed by the equator step; the final
    output is wrapped only at the end of warp().
    """
    lon_arr = np.asarray(lon, dtype=float)
    xs, ys, xt, yt, kernel = _segment_params(cp, kernel)
    q = _quadrant(lon_arr)
    lo = -180.0 + 90.0 * q
    t = (lon_arr - lo) / 90.0
    x0 = xs[q + 1]
    x1 = xs[q + 2]
    out = x0 + t * (x1 - x0)
    if kernel != "linear":
        usable = _lon_spline_usable(xs, xt, kernel)
        use = usable[q]
        if np.any(use):
            spl = _hermite(x0, xt[q], x1, xt[q + 1], t)
            out = np.where(use, spl, out)
    if np.ndim(lon) == 0:
        return float(out), int(q) + 1
    return out, q + 1


def equator_latitude(lon_warped, quadrant, cp: ControlPoints, kernel: str = "linear"):
    """Step three: equator latitude at the warped longitude.

    quadrant is the 1-based index returned by warp_longitude; lon_warped is
    the raw (unwrapped) value within [x_i, x_{i+1}].
    """
    lam = np.asarray(lon_warped, dtype=float)
    q = np.asarray(quadrant, dtype=int) - 1
    xs, ys, xt, yt, kernel = _segment_params(cp, kernel)
    x0 = xs[q + 1]
    x1 = xs[q + 2]
    y0 = ys[q + 1]
    y1 = ys[q + 2]
    s = (lam - x0) / (x1 - x0)
    if kernel == "linear":
        out = y0 + s * (y1 - y0)
    elif kernel == "hermite-zero-slope":
        out = y0 + (3.0 * s * s - 2.0 * s ** 3) * (y1 - y0)
    else:
        d0 = yt[q] * (x1 - x0)
        d1 = yt[q + 1] * (x1 - x0)
        # splines may overshoot; latitudes must stay within the poles
        out = np.clip(_hermite(y0, d0, y1, d1, s), -90.0, 90.0)
    if np.ndim(lon_warped) == 0 and np.ndim(quadrant) == 0:
        return float(out)
    return out


def warp_latitude(lat, eq_lat):
    """Step four: blend latitude between the warped equator and the poles.

    Southern points interpolate toward -90, northern toward +90; phi = 0
    lands exactly on the equator curve and the poles are fixed points.
    """
    lat_arr = np.asarray(lat, dtype=float)
    eq = np.asarray(eq_lat, dtype=float)
    ts = -lat_arr / 90.0
    south = (1.0 - ts) * eq - 90.0 * ts
    tn = lat_arr / 90.0
    north = (1.0 - tn) * eq + 90.0 * tn
    out = np.where(lat_arr < 0.0, south, north)
    if np.ndim(lat) == 0 and np.ndim(eq_lat) == 0:
        return float(out)
    return out


def warp(lat, lon, cp: ControlPoints, kernel: str = "linear"):
    """Full warp of (lat, lon) in degrees; output longitude in [-180, 180)."""
    lon_raw, quadrant = warp_longitude(lon, cp, kernel)
    eq = equator_latitude(lon_raw, quadrant, cp, kernel)
    lat_out = warp_latitude(lat, eq)
    lon_out = wrap_degrees(lon_raw)
    if np.ndim(lat) == 0 and np.ndim(lon) == 0:
        return WarpedCoord(float(lat_out), float(lon_out))
    return lat_out, lon_out


def equator_polyline(cp: ControlPoints, samples: int, kernel: str = "linear"):
    """Warped-equator samples for overlay display.

    Returns (points, dateline_lon, prime_meridian_lon) where points is an
    (samples, 2) array of (lon, lat) pairs traced over source longitudes
    uniform in [-180, 180).  The dateline marker is the first anchor, the
    prime-meridian marker the third.
    """
    if samples < 4:
        raise ControlPointError(f"samples must be >= 4, got {samples}")
    lam = -180.0 + 360.0 * np.arange(samples) / samples
    lat, lon = warp(np.zeros_like(lam), lam, cp, kernel)
    return np.column_stack([lon, lat]), cp.lons[0], cp.lons[2]
