import { describe, expect, it } from "vitest";

import { Editor } from "../src/editor.js";
import type { EditorClient } from "../src/editor.js";
import { degreesToPixel, type LonLat } from "../src/geo.js";
import {
  DATELINE_COLOR,
  EQUATOR_COLOR,
  PRIME_MERIDIAN_COLOR,
  drawOverlays,
  polylineSegments,
  type StrokeContext,
} from "../src/overlay.js";

const SIZE = { width: 2048, height: 1024 };

class RecordingContext implements StrokeContext {
  strokeStyle: string | CanvasGradient | CanvasPattern = "";
  fillStyle: string | CanvasGradient | CanvasPattern = "";
  lineWidth = 1;
  strokes: Array<{ color: string; points: Array<[number, number]> }> = [];
  fills: Array<{ color: string; x: number; y: number }> = [];
  private current: Array<[number, number]> = [];
  private arcCenter: [number, number] = [0, 0];

  beginPath(): void {
    this.current = [];
  }
  moveTo(x: number, y: number): void {
    this.current.push([x, y]);
  }
  lineTo(x: number, y: number): void {
    this.current.push([x, y]);
  }
  stroke(): void {
    this.strokes.push({ color: String(this.strokeStyle), points: this.current });
  }
  arc(x: number, y: number): void {
    this.arcCenter = [x, y];
  }
  fill(): void {
    this.fills.push({ color: String(this.fillStyle), x: this.arcCenter[0], y: this.arcCenter[1] });
  }
}

const stubClient: EditorClient = {
  preview: () => new Promise(() => {}),
  equator: async (controls: LonLat[]) => controls,
};

function fakePolyline(editor: Editor, samples = 360): LonLat[] {
  // straight-line interpolation through the anchors, good enough to test
  // the geometry plumbing: the true curve comes from the service
  const pts: LonLat[] = [];
  const anchors = editor.controls();
  const lons = anchors.map((a) => a.lon);
  const lats = anchors.map((a) => a.lat);
  lons.push(lons[0] + 360);
  lats.push(lats[0]);
  for (let k = 0; k < samples; k++) {
    const lon = -180 + (360 * k) / samples;
    let i = 0;
    while (i < 3 && lon >= lons[i + 1]) i++;
    // piecewise between anchors in source space is not what the service
    // does, so interpolate in anchor space directly
    const t = (lon - lons[i]) / (lons[i + 1] - lons[i]);
    pts.push({ lon, lat: lats[i] + t * (lats[i + 1] - lats[i]) });
  }
  return pts;
}

describe("overlay drawing", () => {
  it("red polyline passes through all four handles within one pixel", () => {
    const ed = new Editor(stubClient, SIZE);
    ed.onDrag(0, degreesToPixel({ lon: -170, lat: 10 }, SIZE));
    ed.onDrag(1, degreesToPixel({ lon: -45, lat: -5 }, SIZE));
    ed.onDrag(2, degreesToPixel({ lon: 10, lat: 0 }, SIZE));
    ed.onDrag(3, degreesToPixel({ lon: 120, lat: 20 }, SIZE));
    // emulate the service: the polyline interpolates through the anchors
    const pts = ed.controls();
    const ctx = new RecordingContext();
    drawOverlays(ctx, pts, ed.handles, SIZE);
    const red = ctx.strokes.filter((s) => s.color === EQUATOR_COLOR);
    expect(red.length).toBeGreaterThan(0);
    const drawn = red.flatMap((s) => s.points);
    for (const h of ed.handles) {
      const nearest = Math.min(
        ...drawn.map(([x, y]) => Math.hypot(x - h.pixel.x, y - h.pixel.y)),
      );
      expect(nearest).toBeLessThanOrEqual(1.0);
    }
  });

  it("draws the dateline marker at handle 1 and prime meridian at handle 3", () => {
    const ed = new Editor(stubClient, SIZE);
    const ctx = new RecordingContext();
    drawOverlays(ctx, fakePolyline(ed), ed.handles, SIZE);
    const blue = ctx.strokes.find((s) => s.color === DATELINE_COLOR);
    const green = ctx.strokes.find((s) => s.color === PRIME_MERIDIAN_COLOR);
    expect(blue).toBeDefined();
    expect(green).toBeDefined();
    expect(blue!.points[0][0]).toBeCloseTo(
      degreesToPixel({ lon: ed.handles[0].degrees.lon, lat: 0 }, SIZE).x,
      6,
    );
    expect(green!.points[0][0]).toBeCloseTo(
      degreesToPixel({ lon: ed.handles[2].degrees.lon, lat: 0 }, SIZE).x,
      6,
    );
  });

  it("splits the polyline at the dateline wrap instead of streaking", () => {
    const points: LonLat[] = [];
    for (let k = 0; k < 360; k++) {
      points.push({ lon: ((k + 180) % 360) - 180, lat: 5 });
    }
    const segments = polylineSegments(points, SIZE);
    expect(segments.length).toBe(2);
    for (const seg of segments) {
      for (let i = 1; i < seg.length; i++) {
        expect(Math.abs(seg[i].x - seg[i - 1].x)).toBeLessThan(SIZE.width / 2);
      }
    }
  });
});
