// Timeline scrubber state: one slider picks the frame interval k, the
// other picks which sampled skeleton is highlighted.

export interface TimelineControl {
  k: number;
  highlight: number; // position within the sampled frames
}

export const K_MIN = 1;
export const K_MAX = 50;

export function initialTimeline(k = 10): TimelineControl {
  return { k, highlight: 0 };
}

export function sampleCount(frameCount: number, k: number): number {
  if (frameCount <= 0 || k <= 0) return 0;
  return Math.floor((frameCount - 1) / k) + 1;
}

export function setInterval_(control: TimelineControl, k: number, frameCount: number): TimelineControl {
  const clamped = Math.min(K_MAX, Math.max(K_MIN, Math.round(k)));
  const samples = sampleCount(frameCount, clamped);
  return {
    k: clamped,
    highlight: Math.min(control.highlight, Math.max(0, samples - 1)),
  };
}

export function setHighlight(control: TimelineControl, position: number, frameCount: number): TimelineControl {
  const samples = sampleCount(frameCount, control.k);
  const clamped = Math.min(Math.max(0, Math.round(position)), Math.max(0, samples - 1));
  return { ...control, highlight: clamped };
}

/** The motion frame index the highlighted sample refers to. */
export function highlightedFrame(control: TimelineControl): number {
  return control.highlight * control.k;
}
