/**
 * Editor state machine: four draggable handles over the panorama, a red
 * warped-equator overlay refreshed on every move, and a debounced preview
 * render keyed by a monotonically increasing generation.  Superseded
 * preview responses are abandoned so the shown frame never regresses.
 */

import type { Kernel, Mode, PreviewResult } from "./api.js";
import { debounce } from "./debounce.js";
import {
  clampPixel,
  degreesToPixel,
  pixelToDegrees,
  type ImageSize,
  type LonLat,
  type Pixel,
} from "./geo.js";
import { clampLongitude } from "./ordering.js";

export interface ControlHandle {
  /** 1-based anchor index; handle 1 is the dateline, handle 3 the prime meridian. */
  index: number;
  pixel: Pixel;
  degrees: LonLat;
}

export interface EditorClient {
  preview(req: {
    controls: LonLat[];
    size: number;
    mode: Mode;
    kernel: Kernel;
    gen: number;
  }): Promise<PreviewResult>;
  equator(controls: LonLat[], samples: number, kernel: Kernel): Promise<LonLat[]>;
}

export interface EditorOptions {
  debounceMs?: number;
  previewSize?: number;
  equatorSamples?: number;
}

const DEFAULT_CONTROL_LONS = [-135, -45, 45, 135];

export class Editor {
  readonly handles: ControlHandle[];
  imageSize: ImageSize;
  mode: Mode = "warped-pq";
  kernel: Kernel = "linear";
  overlay: LonLat[] = [];
  previewBlob: Blob | null = null;
  /** Generation of the newest preview actually shown. */
  shownGeneration = 0;
  /** Generation of the newest preview requested. */
  generation = 0;
  onOverlayChange: (() => void) | null = null;
  onPreviewChange: (() => void) | null = null;

  private readonly previewSize: number;
  private readonly equatorSamples: number;
  private readonly schedulePreview: (() => void) & { cancel(): void };
  private equatorSeq = 0;

  constructor(
    private client: EditorClient,
    imageSize: ImageSize,
    opts: EditorOptions = {},
  ) {
    this.imageSize = imageSize;
    this.previewSize = opts.previewSize ?? 256;
    this.equatorSamples = opts.equatorSamples ?? 360;
    this.schedulePreview = debounce(() => {
      void this.requestPreview();
    }, opts.debounceMs ?? 100);
    this.handles = DEFAULT_CONTROL_LONS.map((lon, i) => {
      const degrees = { lon, lat: 0 };
      return { index: i + 1, pixel: degreesToPixel(degrees, imageSize), degrees };
    });
  }

  controls(): LonLat[] {
    return this.handles.map((h) => ({ ...h.degrees }));
  }

  /**
   * Drag a handle (0-based array position) to a new pixel position.  The
   * position is clamped to the image and to the ordering constraint; the
   * equator overlay refreshes immediately, the preview after the debounce
   * window.  Crossing drags are clamped, never rejected.
   */
  onDrag(position: number, pixel: Pixel): ControlHandle {
    const h = this.handles[position];
    const inImage = clampPixel(pixel, this.imageSize);
    const proposed = pixelToDegrees(inImage, this.imageSize);
    const lon = clampLongitude(
      this.handles.map((x) => x.degrees.lon),
      position,
      proposed.lon,
    );
    h.degrees = { lon, lat: proposed.lat };
    h.pixel = degreesToPixel(h.degrees, this.imageSize);
    void this.requestEquator();
    this.schedulePreview();
    return h;
  }

  setMode(mode: Mode): void {
    this.mode = mode;
    void this.requestEquator();
    this.schedulePreview();
  }

  setKernel(kernel: Kernel): void {
    this.kernel = kernel;
    void this.requestEquator();
    this.schedulePreview();
  }

  /** Refresh the overlay; only the newest in-flight request may land. */
  async requestEquator(): Promise<void> {
    const seq = ++this.equatorSeq;
    try {
      const pts = await this.client.equator(
        this.controls(),
        this.equatorSamples,
        this.kernel,
      );
      if (seq === this.equatorSeq) {
        this.overlay = pts;
        this.onOverlayChange?.();
      }
    } catch {
      /* stale or failed overlay request: keep the previous polyline */
    }
  }

  /** Request a preview for the current state with a fresh generation. */
  async requestPreview(): Promise<void> {
    const gen = ++this.generation;
    try {
      const result = await this.client.preview({
        controls: this.controls(),
        size: this.previewSize,
        mode: this.mode,
        kernel: this.kernel,
        gen,
      });
      // never let an older response replace a newer frame
      if (result.gen > this.shownGeneration) {
        this.shownGeneration = result.gen;
        this.previewBlob = result.blob;
        this.onPreviewChange?.();
      }
    } catch {
      /* superseded or failed renders are simply dropped */
    }
  }

  dispose(): void {
    this.schedulePreview.cancel();
  }
}
