// Canvas 2D stand-in for jsdom (which has no rasterizer): records strokes
// via RecordingSurface and accepts the handful of other calls we make.

import { RecordingSurface } from "./recordingSurface.js";

export class FakeContext extends RecordingSurface {
  fillStyle: string | CanvasGradient | CanvasPattern = "#000";

  clearRect(_x: number, _y: number, _w: number, _h: number): void {
    this.clear();
  }

  fillRect(_x: number, _y: number, _w: number, _h: number): void {}
}

/** Route getContext("2d") on specific canvases to FakeContext instances. */
export function installFakeCanvas(doc: Document): Map<string, FakeContext> {
  const contexts = new Map<string, FakeContext>();
  for (const canvas of Array.from(doc.querySelectorAll("canvas"))) {
    const ctx = new FakeContext();
    contexts.set(canvas.id, ctx);
    (canvas as HTMLCanvasElement).getContext = ((kind: string) =>
      kind === "2d" ? (ctx as unknown as CanvasRenderingContext2D) : null) as never;
  }
  return contexts;
}
