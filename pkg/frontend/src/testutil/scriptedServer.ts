// A miniature in-memory stand-in for the design service, just stateful
// enough to drive the UI through its flows in DOM tests. The real
// contract is exercised against the live server in flow.test.ts.

import type { Candidate, SessionState, Stage, TimelinePayload } from "../types.js";

interface Snapshot {
  stage: Stage;
  global: string | null;
  assignments: Record<string, { motion_id: string; joints: string[] }>;
  pending: Candidate[] | null;
  pendingRole: string | null;
}

function candidates(role: string, count = 5): Candidate[] {
  return Array.from({ length: count }, (_, i) => ({
    motion_id: `demo_${String(i).padStart(3, "0")}`,
    joint_role: role,
    similarity: (i + 1) * 12.5,
    rank: i + 1,
    polyline: [
      [120, 180 + i * 50],
      [400, 200 + i * 50],
      [680, 170 + i * 50],
    ],
  }));
}

export class ScriptedServer {
  stage: Stage = "global";
  global: string | null = null;
  assignments: Record<string, { motion_id: string; joints: string[] }> = {};
  pending: Candidate[] | null = null;
  pendingRole: string | null = null;
  undoStack: Snapshot[] = [];
  requests: { method: string; path: string; body?: unknown }[] = [];
  camera = {
    mode: "global" as Stage,
    eye: [120, 90, 120],
    target: [0, 10, 0],
    up: [0, 1, 0],
    viewport: [800, 600],
    orthographic: false,
    near: 0.001,
    fov_deg: 45,
  };

  private snapshot(): Snapshot {
    return {
      stage: this.stage,
      global: this.global,
      assignments: { ...this.assignments },
      pending: this.pending,
      pendingRole: this.pendingRole,
    };
  }

  private session(): SessionState {
    return {
      id: "s0001",
      dataset: "demo",
      stage: this.stage,
      camera: { ...this.camera, mode: this.stage },
      composition: { global: this.global, assignments: { ...this.assignments } },
      pending: this.pending,
      pending_role: this.pendingRole,
      history: [],
      undo_depth: this.undoStack.length,
    };
  }

  private timeline(k: number): TimelinePayload {
    const frames = [];
    for (let index = 0; index < 100; index += k) {
      frames.push({
        index,
        positions: [[0, 16, 0], [0, 18, 0], [0, 20, 0]],
        canvas: [[400, 320], [400, 300], [400, 280]] as (number[] | null)[],
      });
    }
    return {
      k,
      frame_count: 100,
      frame_time: 0.0083333,
      joints: ["Hips", "Spine", "Head"],
      parents: [null, 0, 1],
      viewport: [800, 600],
      frames,
    };
  }

  fetch = async (input: string | URL | Request, init?: RequestInit): Promise<Response> => {
    const url = new URL(String(input), "http://test");
    const path = url.pathname;
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.requests.push({ method, path, body });

    const json = (payload: unknown, status = 200) =>
      new Response(JSON.stringify(payload), { status });
    const reject = (status: number, detail: string) => json({ detail }, status);

    if (method === "POST" && path === "/sessions") return json(this.session(), 201);
    if (method === "GET" && path === "/sessions/s0001") return json(this.session());

    if (method === "POST" && path === "/sessions/s0001/stroke") {
      if (body.stage !== this.stage) return reject(409, "stage mismatch");
      if (body.stage === "local" && this.global === null) {
        return reject(409, "select a global motion before sketching limbs");
      }
      this.undoStack.push(this.snapshot());
      this.pending = candidates(body.stage === "local" ? body.role : "root");
      this.pendingRole = body.role ?? null;
      return json({
        candidates: this.pending,
        shadow: this.pending.map((c) => c.polyline),
      });
    }

    if (method === "POST" && path === "/sessions/s0001/select") {
      if (!this.pending) return reject(409, "no pending candidates");
      if (body.rank < 1 || body.rank > this.pending.length) {
        return reject(422, "rank out of range");
      }
      const chosen = this.pending[body.rank - 1];
      this.undoStack.push(this.snapshot());
      if (this.stage === "global") {
        this.global = chosen.motion_id;
      } else {
        this.assignments[this.pendingRole!] = {
          motion_id: chosen.motion_id,
          joints: [],
        };
      }
      return json({ global: this.global, assignments: { ...this.assignments } });
    }

    if (method === "POST" && path === "/sessions/s0001/stage") {
      if (body.stage === "local" && this.global === null) {
        return reject(409, "the local stage opens after a global motion is selected");
      }
      if (body.stage !== this.stage) {
        this.undoStack.push(this.snapshot());
        this.stage = body.stage;
        this.pending = null;
        this.pendingRole = null;
      }
      return json(this.session());
    }

    if (method === "POST" && path === "/sessions/s0001/undo") {
      const snap = this.undoStack.pop();
      if (!snap) return reject(409, "nothing to undo");
      this.stage = snap.stage;
      this.global = snap.global;
      this.assignments = snap.assignments;
      this.pending = snap.pending;
      this.pendingRole = snap.pendingRole;
      return json(this.session());
    }

    if (method === "POST" && path === "/sessions/s0001/camera") {
      return json({ ...this.camera, mode: this.stage });
    }

    if (method === "GET" && path === "/sessions/s0001/timeline") {
      if (this.global === null) return reject(409, "nothing selected yet");
      return json(this.timeline(Number(url.searchParams.get("k") ?? 10)));
    }

    if (method === "GET" && path === "/sessions/s0001/export") {
      if (this.global === null) return reject(409, "nothing selected to export");
      return new Response("HIERARCHY\nROOT Hips\n", { status: 200 });
    }

    return reject(404, `unhandled ${method} ${path}`);
  };
}
