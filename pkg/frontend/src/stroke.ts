// Pointer-event stroke capture. Raw points go to the server untouched;
// resampling is server-side so there is exactly one implementation of it.

export interface PointerSample {
  offsetX: number;
  offsetY: number;
}

const MIN_POINTS = 2;
const MIN_LENGTH_PX = 4;

export class StrokeRecorder {
  private points: number[][] = [];
  private active = false;

  get isActive(): boolean {
    return this.active;
  }

  /** Points collected so far (live view for incremental drawing). */
  get current(): number[][] {
    return this.points;
  }

  begin(sample: PointerSample): void {
    this.active = true;
    this.points = [[sample.offsetX, sample.offsetY]];
  }

  extend(sample: PointerSample): void {
    if (!this.active) return;
    this.points.push([sample.offsetX, sample.offsetY]);
  }

  /**
   * Finish the stroke. Returns the raw point list, or null for a click
   * without a drag (too few samples or no spatial extent), which must not
   * produce a request.
   */
  finish(sample?: PointerSample): number[][] | null {
    if (!this.active) return null;
    if (sample) this.points.push([sample.offsetX, sample.offsetY]);
    this.active = false;
    const stroke = this.points;
    this.points = [];
    if (stroke.length < MIN_POINTS) return null;
    let length = 0;
    for (let i = 1; i < stroke.length; i++) {
      length += Math.hypot(stroke[i][0] - stroke[i - 1][0], stroke[i][1] - stroke[i - 1][1]);
    }
    return length >= MIN_LENGTH_PX ? stroke : null;
  }

  cancel(): void {
    this.active = false;
    this.points = [];
  }
}
