import { describe, expect, it } from "vitest";

import { frameSegments, drawTimeline } from "./skeleton.js";
import { RecordingSurface } from "./testutil/recordingSurface.js";
import type { TimelinePayload } from "./types.js";

const parents = [null, 0, 1, 0];

function payloadFixture(): TimelinePayload {
  const frame = (index: number, canvas: (number[] | null)[]): TimelinePayload["frames"][0] => ({
    index,
    positions: canvas.map(() => [0, 0, 0]),
    canvas,
  });
  return {
    k: 10,
    frame_count: 30,
    frame_time: 0.0083333,
    joints: ["Hips", "Spine", "Head", "Leg"],
    parents,
    viewport: [800, 600],
    frames: [
      frame(0, [[400, 300], [400, 260], [400, 220], [390, 360]]),
      frame(10, [[410, 300], [410, 260], [410, 220], [400, 360]]),
      frame(20, [[420, 300], [420, 260], null, [410, 360]]),
    ],
  };
}

describe("stick figure segments", () => {
  it("builds one segment per non-root joint", () => {
    const payload = payloadFixture();
    const segments = frameSegments(payload.frames[0], parents);
    expect(segments).toHaveLength(3);
    expect(segments[0]).toEqual({ from: [400, 300], to: [400, 260] });
  });

  it("skips bones whose joint fell behind the camera", () => {
    const payload = payloadFixture();
    expect(frameSegments(payload.frames[2], parents)).toHaveLength(2);
  });

  it("returns nothing when the frame has no projected positions", () => {
    const payload = payloadFixture();
    expect(frameSegments({ index: 0, positions: [] }, parents)).toEqual([]);
  });
});

describe("timeline rendering", () => {
  it("draws all sampled frames with exactly one highlighted", () => {
    const surface = new RecordingSurface();
    drawTimeline(surface, payloadFixture(), 1);
    const paths = surface.paths();
    expect(paths).toHaveLength(3 + 3 + 2);
    const opaque = paths.filter((p) => p.alpha === 1);
    const faint = paths.filter((p) => p.alpha < 1);
    expect(opaque).toHaveLength(3); // the highlighted frame's bones
    expect(faint).toHaveLength(5);
  });
});
