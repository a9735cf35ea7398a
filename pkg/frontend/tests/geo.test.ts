import { describe, expect, it } from "vitest";

import { clampPixel, degreesToPixel, pixelToDegrees, wrapLon } from "../src/geo.js";

const SIZE = { width: 2048, height: 1024 };

describe("pixel/degree conversion", () => {
  it("maps the image center to (0, 0) degrees", () => {
    const c = pixelToDegrees({ x: (SIZE.width - 1) / 2, y: (SIZE.height - 1) / 2 }, SIZE);
    expect(c.lon).toBeCloseTo(0, 9);
    expect(c.lat).toBeCloseTo(0, 9);
  });

  it("maps corners to the coordinate extremes", () => {
    expect(pixelToDegrees({ x: 0, y: 0 }, SIZE)).toEqual({ lon: -180, lat: 90 });
    const far = pixelToDegrees({ x: SIZE.width - 1, y: SIZE.height - 1 }, SIZE);
    expect(far.lon).toBe(180);
    expect(far.lat).toBe(-90);
  });

  it("round-trips within half a pixel", () => {
    for (let i = 0; i < 500; i++) {
      const p = { x: Math.random() * (SIZE.width - 1), y: Math.random() * (SIZE.height - 1) };
      const back = degreesToPixel(pixelToDegrees(p, SIZE), SIZE);
      expect(Math.abs(back.x - p.x)).toBeLessThan(0.5);
      expect(Math.abs(back.y - p.y)).toBeLessThan(0.5);
    }
  });

  it("clamps to the image bounds", () => {
    expect(clampPixel({ x: -5, y: 3000 }, SIZE)).toEqual({ x: 0, y: SIZE.height - 1 });
  });

  it("wraps longitudes into [-180, 180)", () => {
    expect(wrapLon(180)).toBe(-180);
    expect(wrapLon(-180)).toBe(-180);
    expect(wrapLon(190)).toBe(-170);
    expect(wrapLon(-541)).toBe(179);
  });
});
