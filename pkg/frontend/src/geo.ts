/**
 * Pixel <-> degree conversion for an equirectangular panorama.
 *
 * Matches the renderer's sampling map: column 0 is longitude -180, column
 * width-1 is +180; row 0 is latitude +90, row height-1 is -90.
 */

export interface ImageSize {
  width: number;
  height: number;
}

export interface LonLat {
  lon: number;
  lat: number;
}

export interface Pixel {
  x: number;
  y: number;
}

export function pixelToDegrees(p: Pixel, size: ImageSize): LonLat {
  return {
    lon: (p.x * 360) / (size.width - 1) - 180,
    lat: 90 - (p.y * 180) / (size.height - 1),
  };
}

export function degreesToPixel(c: LonLat, size: ImageSize): Pixel {
  return {
    x: ((c.lon + 180) * (size.width - 1)) / 360,
    y: ((90 - c.lat) * (size.height - 1)) / 180,
  };
}

export function clampPixel(p: Pixel, size: ImageSize): Pixel {
  return {
    x: Math.min(Math.max(p.x, 0), size.width - 1),
    y: Math.min(Math.max(p.y, 0), size.height - 1),
  };
}

/** Wrap degrees into [-180, 180). */
export function wrapLon(lon: number): number {
  return ((((lon + 180) % 360) + 360) % 360) - 180;
}
