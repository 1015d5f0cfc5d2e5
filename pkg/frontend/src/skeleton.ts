// Stick-figure rendering of the timeline payload. Positions arrive from
// the server already projected to canvas space; joints behind the camera
// come through as null and their bones are simply not drawn.

import type { StrokeSurface } from "./overlay.js";
import type { TimelineFrame, TimelinePayload } from "./types.js";

export interface Segment {
  from: number[];
  to: number[];
}

/** Bone segments of one frame, skipping roots and off-screen joints. */
export function frameSegments(
  frame: TimelineFrame,
  parents: (number | null)[],
): Segment[] {
  const canvas = frame.canvas;
  if (!canvas) return [];
  const segments: Segment[] = [];
  for (let j = 0; j < parents.length; j++) {
    const parent = parents[j];
    if (parent === null) continue;
    const from = canvas[parent];
    const to = canvas[j];
    if (from && to) segments.push({ from, to });
  }
  return segments;
}

/**
 * Draw every sampled frame; one (the highlighted index) opaque, the rest
 * semi-transparent, so the whole animation reads at a glance.
 */
export function drawTimeline(
  ctx: StrokeSurface,
  payload: TimelinePayload,
  highlightIndex: number,
): void {
  ctx.setLineDash([]);
  payload.frames.forEach((frame, position) => {
    const highlighted = position === highlightIndex;
    ctx.strokeStyle = highlighted ? "#0b5db8" : "#9db4c8";
    ctx.globalAlpha = highlighted ? 1 : 0.3;
    ctx.lineWidth = highlighted ? 2.5 : 1.25;
    for (const segment of frameSegments(frame, payload.parents)) {
      ctx.beginPath();
      ctx.moveTo(segment.from[0], segment.from[1]);
      ctx.lineTo(segment.to[0], segment.to[1]);
      ctx.stroke();
    }
  });
  ctx.globalAlpha = 1;
}
