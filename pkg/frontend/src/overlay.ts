// Shadow-guidance overlay: drawing the ranked candidate polylines as
// dashed, semi-transparent curves and hit-testing clicks against them.

import type { Candidate } from "./types.js";

// the drawing surface subset we use; lets tests record calls
export interface StrokeSurface {
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  setLineDash(segments: number[]): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
}

export const GUIDANCE_COLORS = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4"];

export function guidanceColor(rank: number): string {
  return GUIDANCE_COLORS[(rank - 1) % GUIDANCE_COLORS.length];
}

export function drawPolyline(ctx: StrokeSurface, points: number[][]): void {
  if (points.length < 2) return;
  ctx.beginPath();
  ctx.moveTo(points[0][0], points[0][1]);
  for (let i = 1; i < points.length; i++) {
    ctx.lineTo(points[i][0], points[i][1]);
  }
  ctx.stroke();
}

/** Dashed, semi-transparent candidate overlays, rank order, hover emphasis. */
export function drawShadowGuidance(
  ctx: StrokeSurface,
  candidates: Candidate[],
  hoveredRank: number | null = null,
): void {
  const ordered = [...candidates].sort((a, b) => b.rank - a.rank); // best on top
  for (const candidate of ordered) {
    const hovered = candidate.rank === hoveredRank;
    ctx.setLineDash(hovered ? [] : [8, 6]);
    ctx.strokeStyle = guidanceColor(candidate.rank);
    ctx.globalAlpha = hovered ? 0.95 : 0.45;
    ctx.lineWidth = hovered ? 3.5 : 2;
    drawPolyline(ctx, candidate.polyline);
  }
  ctx.setLineDash([]);
  ctx.globalAlpha = 1;
}

export function drawUserStroke(ctx: StrokeSurface, points: number[][]): void {
  ctx.setLineDash([]);
  ctx.strokeStyle = "#111";
  ctx.globalAlpha = 1;
  ctx.lineWidth = 2.5;
  drawPolyline(ctx, points);
}

function pointToSegment(px: number, py: number, a: number[], b: number[]): number {
  const dx = b[0] - a[0];
  const dy = b[1] - a[1];
  const lengthSq = dx * dx + dy * dy;
  let t = 0;
  if (lengthSq > 0) {
    t = ((px - a[0]) * dx + (py - a[1]) * dy) / lengthSq;
    t = Math.max(0, Math.min(1, t));
  }
  return Math.hypot(px - (a[0] + t * dx), py - (a[1] + t * dy));
}

export function distanceToPolyline(x: number, y: number, points: number[][]): number {
  if (points.length === 0) return Infinity;
  if (points.length === 1) return Math.hypot(x - points[0][0], y - points[0][1]);
  let best = Infinity;
  for (let i = 1; i < points.length; i++) {
    best = Math.min(best, pointToSegment(x, y, points[i - 1], points[i]));
  }
  return best;
}

/**
 * Click-to-select hit test: the rank of the nearest candidate polyline
 * within the threshold, ties going to the better rank; null if none.
 */
export function hitTestCandidates(
  candidates: Candidate[],
  x: number,
  y: number,
  threshold = 12,
): number | null {
  let bestRank: number | null = null;
  let bestDistance = threshold;
  const ordered = [...candidates].sort((a, b) => a.rank - b.rank);
  for (const candidate of ordered) {
    const distance = distanceToPolyline(x, y, candidate.polyline);
    if (distance < bestDistance) {
      bestDistance = distance;
      bestRank = candidate.rank;
    }
  }
  return bestRank;
}
