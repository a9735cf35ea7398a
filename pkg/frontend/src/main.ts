/**
 * Browser bootstrap: wires the editor to a canvas over the panorama, the
 * preview <img>, the mode/kernel selectors, and the file input.
 */

import { ServiceClient, type Kernel, type Mode } from "./api.js";
import { Editor } from "./editor.js";
import { drawOverlays } from "./overlay.js";

const HANDLE_HIT_RADIUS = 12;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

async function loadBitmap(blob: Blob): Promise<ImageBitmap> {
  return createImageBitmap(blob);
}

export async function start(): Promise<void> {
  const client = new ServiceClient("");
  const canvas = byId<HTMLCanvasElement>("pano-canvas");
  const previewImg = byId<HTMLImageElement>("preview");
  const fileInput = byId<HTMLInputElement>("pano-file");
  const modeSelect = byId<HTMLSelectElement>("mode");
  const kernelSelect = byId<HTMLSelectElement>("kernel");
  const status = byId<HTMLSpanElement>("status");

  let editor: Editor | null = null;
  let bitmap: ImageBitmap | null = null;
  let dragging = -1;

  function redraw(): void {
    if (!editor || !bitmap) return;
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    ctx.drawImage(bitmap, 0, 0, canvas.width, canvas.height);
    const scale = canvas.width / editor.imageSize.width;
    ctx.save();
    ctx.scale(scale, scale);
    drawOverlays(ctx, editor.overlay, editor.handles, editor.imageSize);
    ctx.restore();
  }

  function canvasToImage(ev: MouseEvent): { x: number; y: number } {
    if (!editor) return { x: 0, y: 0 };
    const rect = canvas.getBoundingClientRect();
    const sx = editor.imageSize.width / rect.width;
    const sy = editor.imageSize.height / rect.height;
    return { x: (ev.clientX - rect.left) * sx, y: (ev.clientY - rect.top) * sy };
  }

  fileInput.addEventListener("change", async () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    status.textContent = "uploading...";
    try {
      const info = await client.putPanorama(file);
      bitmap = await loadBitmap(file);
      const displayWidth = Math.min(1024, info.width);
      canvas.width = displayWidth;
      canvas.height = displayWidth / 2;
      editor?.dispose();
      editor = new Editor(client, { width: info.width, height: info.height });
      editor.onOverlayChange = redraw;
      editor.onPreviewChange = () => {
        if (editor?.previewBlob) {
          previewImg.src = URL.createObjectURL(editor.previewBlob);
        }
      };
      editor.mode = modeSelect.value as Mode;
      editor.kernel = kernelSelect.value as Kernel;
      await editor.requestEquator();
      await editor.requestPreview();
      redraw();
      status.textContent = `${info.width}x${info.height} loaded`;
    } catch (err) {
      status.textContent = String(err);
    }
  });

  modeSelect.addEventListener("change", () => editor?.setMode(modeSelect.value as Mode));
  kernelSelect.addEventListener("change", () =>
    editor?.setKernel(kernelSelect.value as Kernel),
  );

  canvas.addEventListener("mousedown", (ev) => {
    if (!editor) return;
    const p = canvasToImage(ev);
    const scale = canvas.width / editor.imageSize.width;
    dragging = editor.handles.findIndex(
      (h) => Math.hypot(h.pixel.x - p.x, h.pixel.y - p.y) * scale < HANDLE_HIT_RADIUS,
    );
  });
  canvas.addEventListener("mousemove", (ev) => {
    if (!editor || dragging < 0) return;
    editor.onDrag(dragging, canvasToImage(ev));
    redraw();
  });
  const endDrag = () => {
    dragging = -1;
  };
  canvas.addEventListener("mouseup", endDrag);
  canvas.addEventListener("mouseleave", endDrag);
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  void start();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", () => void start());
}
