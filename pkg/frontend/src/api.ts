import type {
  CameraOp,
  CameraState,
  CompositionState,
  EntryMeta,
  SessionState,
  Stage,
  StrokeResponse,
  TimelinePayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

async function parseError(response: Response): Promise<never> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, detail);
}

/** Thin typed client over the design service; one method per endpoint. */
export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body ?? {}),
    });
  }

  createSession(dataset?: string): Promise<SessionState> {
    return this.post("/sessions", dataset ? { dataset } : {});
  }

  getSession(id: string): Promise<SessionState> {
    return this.request(`/sessions/${id}`);
  }

  listEntries(): Promise<EntryMeta[]> {
    return this.request("/dataset/entries");
  }

  submitStroke(
    id: string,
    points: number[][],
    stage: Stage,
    role?: string,
  ): Promise<StrokeResponse> {
    return this.post(`/sessions/${id}/stroke`, { points, stage, role });
  }

  selectCandidate(id: string, rank: number): Promise<CompositionState> {
    return this.post(`/sessions/${id}/select`, { rank });
  }

  setStage(id: string, stage: Stage): Promise<SessionState> {
    return this.post(`/sessions/${id}/stage`, { stage });
  }

  undo(id: string): Promise<SessionState> {
    return this.post(`/sessions/${id}/undo`);
  }

  updateCamera(id: string, action: CameraOp): Promise<CameraState> {
    return this.post(`/sessions/${id}/camera`, action);
  }

  timeline(id: string, k: number): Promise<TimelinePayload> {
    return this.request(`/sessions/${id}/timeline?k=${k}&projected=true`);
  }

  /** BVH text of the composed motion, as served for download. */
  async exportBvh(id: string): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/sessions/${id}/export`);
    if (!response.ok) await parseError(response);
    return response.text();
  }
}
