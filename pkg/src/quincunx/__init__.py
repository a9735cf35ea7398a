"""Spherical panorama reprojection onto conformal squares.

Maps equirectangular panoramas to conformal quincuncial squares with a
user-steerable equator warp, a symmetry-accelerated lookup-table path, the
antipode-perimeter-square special case, plain stereographic comparison
renders, mirror-repeat wallpaper tiling, a batch CLI and a loopback preview
service for the interactive editor.
"""

from .elliptic import (
    EllipticDomainError,
    EllipticPoleError,
    EllipticTriple,
    cn_complex,
    ellipj_real,
    quarter_period,
)
from .projection import (
    APS_NADIR,
    APS_ZENITH,
    InfinityError,
    ProjectionDomainError,
    ProjectionTable,
    SphericalCoord,
    StereoPoint,
    aps_lookup,
    aps_table,
    cnrectify,
    fast_pq_table,
    forward_stereographic,
    inverse_stereographic,
    naive_pq_table,
    pq_lookup,
    stereographic_table,
)
from .raster import (
    AspectRatioError,
    EquirectImage,
    ImageFormatError,
    RenderOptionError,
    RenderOptions,
    load_image,
    render,
    render_with_stats,
    sample_bilinear,
    sample_nearest,
    save_image,
    tile,
)
from .warp import (
    ControlPointError,
    ControlPoints,
    WarpedCoord,
    equator_latitude,
    identity_controls,
    validate_controls,
    warp,
    warp_latitude,
    warp_longitude,
)

__version__ = "0.1.0"

__all__ = [
    "APS_NADIR",
    "APS_ZENITH",
    "AspectRatioError",
    "ControlPointError",
    "ControlPoints",
    "EllipticDomainError",
    "EllipticPoleError",
    "EllipticTriple",
    "EquirectImage",
    "ImageFormatError",
    "InfinityError",
    "ProjectionDomainError",
    "ProjectionTable",
    "RenderOptionError",
    "RenderOptions",
    "SphericalCoord",
    "StereoPoint",
    "WarpedCoord",
    "aps_lookup",
    "aps_table",
    "cn_complex",
    "cnrectify",
    "ellipj_real",
    "equator_latitude",
    "fast_pq_table",
    "forward_stereographic",
    "identity_controls",
    "inverse_stereographic",
    "load_image",
    "naive_pq_table",
    "pq_lookup",
    "quarter_period",
    "render",
    "render_with_stats",
    "sample_bilinear",
    "sample_nearest",
    "save_image",
    "stereographic_table",
    "tile",
    "validate_controls",
    "warp",
    "warp_latitude",
    "warp_longitude",
]
