/**
 * Overlay drawing: the red warped-equator polyline, the blue dateline
 * marker at handle 1, the green prime-meridian marker at handle 3, and the
 * four drag handles.  Drawing goes through a minimal context interface so
 * the geometry is testable without a browser canvas.
 */

import { degreesToPixel, type ImageSize, type LonLat, type Pixel } from "./geo.js";
import type { ControlHandle } from "./editor.js";

export interface StrokeContext {
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
}

export const EQUATOR_COLOR = "#e03131";
export const DATELINE_COLOR = "#1c7ed6";
export const PRIME_MERIDIAN_COLOR = "#2f9e44";
export const HANDLE_COLOR = "#fab005";

/**
 * Split the polyline wherever it wraps across the +-180 seam so no stroke
 * runs the full image width.
 */
export function polylineSegments(points: LonLat[], size: ImageSize): Pixel[][] {
  const segments: Pixel[][] = [];
  let current: Pixel[] = [];
  let prevLon: number | null = null;
  for (const p of points) {
    if (prevLon !== null && Math.abs(p.lon - prevLon) > 180) {
      if (current.length > 1) segments.push(current);
      current = [];
    }
    current.push(degreesToPixel(p, size));
    prevLon = p.lon;
  }
  if (current.length > 1) segments.push(current);
  return segments;
}

export function drawOverlays(
  ctx: StrokeContext,
  points: LonLat[],
  handles: ControlHandle[],
  size: ImageSize,
): void {
  ctx.lineWidth = 2;
  ctx.strokeStyle = EQUATOR_COLOR;
  for (const segment of polylineSegments(points, size)) {
    ctx.beginPath();
    ctx.moveTo(segment[0].x, segment[0].y);
    for (const p of segment.slice(1)) ctx.lineTo(p.x, p.y);
    ctx.stroke();
  }
  const markers: Array<[ControlHandle | undefined, string]> = [
    [handles[0], DATELINE_COLOR],
    [handles[2], PRIME_MERIDIAN_COLOR],
  ];
  for (const [handle, color] of markers) {
    if (!handle) continue;
    const x = degreesToPixel({ lon: handle.degrees.lon, lat: 0 }, size).x;
    ctx.strokeStyle = color;
    ctx.beginPath();
    ctx.moveTo(x, 0);
    ctx.lineTo(x, size.height - 1);
    ctx.stroke();
  }
  ctx.fillStyle = HANDLE_COLOR;
  for (const h of handles) {
    ctx.beginPath();
    ctx.arc(h.pixel.x, h.pixel.y, 6, 0, 2 * Math.PI);
    ctx.fill();
  }
}
