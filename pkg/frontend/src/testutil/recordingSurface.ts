// A canvas-context stand-in that records stroked paths, so rendering
// logic is testable without a real rasterizer.

import type { StrokeSurface } from "../overlay.js";

export interface RecordedPath {
  points: number[][];
  color: string;
  width: number;
  alpha: number;
  dash: number[];
}

export class RecordingSurface implements StrokeSurface {
  strokeStyle: string | CanvasGradient | CanvasPattern = "#000";
  lineWidth = 1;
  globalAlpha = 1;

  private dash: number[] = [];
  private currentPoints: number[][] = [];
  private stroked: RecordedPath[] = [];

  setLineDash(segments: number[]): void {
    this.dash = [...segments];
  }

  beginPath(): void {
    this.currentPoints = [];
  }

  moveTo(x: number, y: number): void {
    this.currentPoints.push([x, y]);
  }

  lineTo(x: number, y: number): void {
    this.currentPoints.push([x, y]);
  }

  stroke(): void {
    this.stroked.push({
      points: [...this.currentPoints],
      color: String(this.strokeStyle),
      width: this.lineWidth,
      alpha: this.globalAlpha,
      dash: [...this.dash],
    });
  }

  paths(): RecordedPath[] {
    return this.stroked;
  }

  clear(): void {
    this.stroked = [];
  }
}
