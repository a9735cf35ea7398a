"""Loopback preview service backing the interactive control-point editor.

One panorama per process.  Projection tables are cached per size and mode
since they do not depend on the control points; renders are serialized and
cooperatively cancelled when a newer-generation request supersedes an
older one.
"""

import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse

from . import raster
from .warp import (MIN_SEPARATION_DEG, ControlPointError, equator_polyline,
                   validate_controls)

DEFAULT_PREVIEW_SIZE = 256


@dataclass
class Session:
    image: raster.EquirectImage | None = None
    tables: dict = field(default_factory=dict)
    table_builds: int = 0
    latest_generation: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)
    render_lock: threading.Lock = field(default_factory=threading.Lock)

    def table_for(self, opts: raster.RenderOptions):
        key = (opts.size, opts.mode, opts.fast, opts.crop_lat)
        with self.lock:
            table = self.tables.get(key)
        if table is not None:
            return table
        table = raster.build_table(opts)
        with self.lock:
            existing = self.tables.get(key)
            if existing is not None:
                return existing
            self.tables[key] = table
            self.table_builds += 1
        return table


def _parse_controls(raw: str, min_separation=MIN_SEPARATION_DEG):
    parts = [p for p in raw.split(",") if p.strip()]
    if len(parts) != 8:
        raise ControlPointError(
            f"controls must be 8 comma-separated degrees (lon,lat per point), got {len(parts)}")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise ControlPointError(f"controls must be numeric: {exc}") from exc
    pairs = list(zip(vals[0::2], vals[1::2]))
    return validate_controls(pairs, min_separation=min_separation)


def create_app(static_dir=None) -> FastAPI:
    app = FastAPI(title="quincunx preview service")
    session = Session()
    app.state.session = session
    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")

    @app.put("/panorama")
    async def put_panorama(request: Request):
        body = await request.body()
        try:
            image = raster.equirect_from_bytes(body)
        except raster.AspectRatioError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=422)
        except raster.ImageFormatError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=400)
        with session.lock:
            session.image = image
        return {"width": image.width, "height": image.height,
                "channels": image.channels}

    @app.get("/preview")
    def get_preview(
        controls: str = Query(None),
        size: int = Query(DEFAULT_PREVIEW_SIZE),
        mode: str = Query("pq"),
        kernel: str = Query("linear"),
        sampling: str = Query("nearest"),
        gen: int = Query(0),
    ):
        with session.lock:
            image = session.image
            if gen < session.latest_generation:
                return JSONResponse({"detail": "superseded", "cancelled": True},
                                    status_code=410)
            session.latest_generation = max(session.latest_generation, gen)
        if image is None:
            return JSONResponse({"detail": "no panorama loaded"}, status_code=409)
        try:
            cp = _parse_controls(controls) if controls is not None else None
            opts = raster.RenderOptions(size=size, mode=mode, kernel=kernel,
                                        sampling=sampling).validated()
            if opts.mode == "warped-pq" and cp is None:
                raise raster.RenderOptionError("warped-pq preview requires controls")
        except (ControlPointError, raster.RenderOptionError) as exc:
            return JSONResponse({"detail": str(exc)}, status_code=422)
        table = session.table_for(opts)

        def superseded():
            with session.lock:
                return session.latest_generation > gen

        with session.render_lock:
            out = raster.render_from_table(image, table, opts, cp,
                                           abort_check=superseded, chunk_rows=32)
        if out is None:
            return JSONResponse({"detail": "superseded", "cancelled": True},
                                status_code=410)
        return Response(content=raster.encode_png(out), media_type="image/png")

    @app.get("/equator")
    def get_equator(controls: str = Query(...), samples: int = Query(360),
                    kernel: str = Query("linear")):
        try:
            cp = _parse_controls(controls)
            points, _, _ = equator_polyline(cp, samples, kernel)
        except ControlPointError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=422)
        return JSONResponse([[float(lon), float(lat)] for lon, lat in points])

    return app


def run(host="127.0.0.1", port=8787, static_dir=None):
    """Serve the preview API on the loopback interface."""
    import uvicorn

    uvicorn.run(create_app(static_dir=static_dir), host=host, port=port)
