/**
 * Client for the loopback preview service.
 *
 * Wire format: PUT /panorama (image bytes); GET /preview?controls=
 * l1,b1,l2,b2,l3,b3,l4,b4&size=N&mode=M&kernel=K&gen=G -> image/png;
 * GET /equator?controls=...&samples=N -> JSON array of [lon, lat] pairs.
 * Degrees everywhere.
 */

import type { LonLat } from "./geo.js";

export type Mode = "pq" | "warped-pq" | "aps-zenith" | "aps-nadir";
export type Kernel = "linear" | "catmull-rom" | "hermite-zero-slope";

export interface PanoramaInfo {
  width: number;
  height: number;
  channels: number;
}

export interface PreviewRequest {
  controls: LonLat[];
  size: number;
  mode: Mode;
  kernel: Kernel;
  gen: number;
}

export function controlsParam(controls: LonLat[]): string {
  return controls.map((c) => `${c.lon},${c.lat}`).join(",");
}

export interface PreviewResult {
  gen: number;
  blob: Blob;
}

export class ServiceClient {
  constructor(private baseUrl: string = "") {}

  async putPanorama(data: Blob | ArrayBuffer): Promise<PanoramaInfo> {
    const r = await fetch(`${this.baseUrl}/panorama`, { method: "PUT", body: data });
    if (!r.ok) throw new Error(`panorama upload failed: ${await r.text()}`);
    return (await r.json()) as PanoramaInfo;
  }

  async preview(req: PreviewRequest, signal?: AbortSignal): Promise<PreviewResult> {
    const params = new URLSearchParams({
      controls: controlsParam(req.controls),
      size: String(req.size),
      mode: req.mode,
      kernel: req.kernel,
      gen: String(req.gen),
    });
    const r = await fetch(`${this.baseUrl}/preview?${params}`, { signal });
    if (r.status === 410) throw new SupersededError(req.gen);
    if (!r.ok) throw new Error(`preview failed: ${await r.text()}`);
    return { gen: req.gen, blob: await r.blob() };
  }

  async equator(controls: LonLat[], samples: number, kernel: Kernel): Promise<LonLat[]> {
    const params = new URLSearchParams({
      controls: controlsParam(controls),
      samples: String(samples),
      kernel,
    });
    const r = await fetch(`${this.baseUrl}/equator?${params}`);
    if (!r.ok) throw new Error(`equator failed: ${await r.text()}`);
    const pairs = (await r.json()) as [number, number][];
    return pairs.map(([lon, lat]) => ({ lon, lat }));
  }
}

export class SupersededError extends Error {
  constructor(public gen: number) {
    super(`preview generation ${gen} superseded`);
  }
}
