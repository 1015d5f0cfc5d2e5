// DOM wiring for the design loop: sketch canvas over the stick-figure
// view, shadow-guidance overlay with click-to-select, stage toggle,
// camera controls, timeline scrubber, undo and export. All engine math
// (resampling, matching, composition, projection) happens server-side.

import { ApiClient, ApiError } from "./api.js";
import {
  drawShadowGuidance,
  drawUserStroke,
  hitTestCandidates,
  guidanceColor,
} from "./overlay.js";
import { drawTimeline } from "./skeleton.js";
import {
  applySession,
  canEnterLocal,
  canExport,
  canUndo,
  initialUiState,
  UiState,
} from "./state.js";
import { StrokeRecorder, PointerSample } from "./stroke.js";
import {
  highlightedFrame,
  initialTimeline,
  sampleCount,
  setHighlight,
  setInterval_,
  TimelineControl,
} from "./timeline.js";
import type { Candidate, LocalRole, SessionState, TimelinePayload } from "./types.js";

type Mode = "draw" | "camera";

interface App {
  state: UiState;
  candidates: Candidate[];
  hovered: number | null;
  timeline: TimelinePayload | null;
  control: TimelineControl;
  mode: Mode;
  role: LocalRole;
  busy: boolean;
  lastStroke: number[][];
}

function byId<T extends HTMLElement>(doc: Document, id: string): T {
  const element = doc.getElementById(id);
  if (!element) throw new Error(`missing element #${id}`);
  return element as T;
}

function samplePoint(event: { clientX: number; clientY: number }, element: HTMLElement): PointerSample {
  const rect = element.getBoundingClientRect();
  return { offsetX: event.clientX - rect.left, offsetY: event.clientY - rect.top };
}

export async function initApp(doc: Document, api: ApiClient): Promise<App> {
  const scene = byId<HTMLCanvasElement>(doc, "scene-canvas");
  const overlay = byId<HTMLCanvasElement>(doc, "overlay-canvas");
  const sceneCtx = scene.getContext("2d")!;
  const overlayCtx = overlay.getContext("2d")!;
  const status = byId<HTMLElement>(doc, "status");
  const candidateList = byId<HTMLUListElement>(doc, "candidates");
  const globalButton = byId<HTMLButtonElement>(doc, "stage-global");
  const localButton = byId<HTMLButtonElement>(doc, "stage-local");
  const roleSelect = byId<HTMLSelectElement>(doc, "role");
  const undoButton = byId<HTMLButtonElement>(doc, "undo");
  const exportButton = byId<HTMLButtonElement>(doc, "export");
  const modeDraw = byId<HTMLButtonElement>(doc, "mode-draw");
  const modeCamera = byId<HTMLButtonElement>(doc, "mode-camera");
  const zoomIn = byId<HTMLButtonElement>(doc, "zoom-in");
  const zoomOut = byId<HTMLButtonElement>(doc, "zoom-out");
  const radius = byId<HTMLInputElement>(doc, "radius");
  const kSlider = byId<HTMLInputElement>(doc, "k-slider");
  const frameSlider = byId<HTMLInputElement>(doc, "frame-slider");
  const frameLabel = byId<HTMLElement>(doc, "frame-label");

  const recorder = new StrokeRecorder();
  const app: App = {
    state: initialUiState(),
    candidates: [],
    hovered: null,
    timeline: null,
    control: initialTimeline(Number(kSlider.value) || 10),
    mode: "draw",
    role: "left_hand",
    busy: false,
    lastStroke: [],
  };

  function note(message: string): void {
    status.textContent = message;
  }

  function fail(error: unknown): void {
    note(error instanceof ApiError ? error.message : String(error));
  }

  function drawGround(): void {
    sceneCtx.clearRect(0, 0, scene.width, scene.height);
    sceneCtx.globalAlpha = 1;
    sceneCtx.fillStyle = "#c9ced4";
    for (let y = 20; y < scene.height; y += 28) {
      for (let x = 20; x < scene.width; x += 28) {
        sceneCtx.fillRect(x, y, 2, 2);
      }
    }
  }

  function renderScene(): void {
    drawGround();
    if (app.timeline) {
      drawTimeline(sceneCtx, app.timeline, app.control.highlight);
      frameLabel.textContent = `frame ${highlightedFrame(app.control)} / ${app.timeline.frame_count - 1}`;
    } else {
      frameLabel.textContent = "no motion selected";
    }
  }

  function renderOverlay(): void {
    overlayCtx.clearRect(0, 0, overlay.width, overlay.height);
    if (app.candidates.length > 0) {
      drawShadowGuidance(overlayCtx, app.candidates, app.hovered);
    }
    const live = recorder.isActive ? recorder.current : app.lastStroke;
    if (live.length > 1) drawUserStroke(overlayCtx, live);
  }

  function renderCandidateList(): void {
    candidateList.textContent = "";
    for (const candidate of app.candidates) {
      const item = doc.createElement("li");
      item.dataset.rank = String(candidate.rank);
      item.style.borderLeft = `6px solid ${guidanceColor(candidate.rank)}`;
      item.textContent =
        `#${candidate.rank} ${candidate.motion_id} ` +
        `(${candidate.similarity.toFixed(1)}px)`;
      item.addEventListener("click", () => void select(candidate.rank));
      candidateList.appendChild(item);
    }
  }

  function renderControls(): void {
    globalButton.classList.toggle("active", app.state.stage === "global");
    localButton.classList.toggle("active", app.state.stage === "local");
    localButton.disabled = app.state.stage === "global" && !canEnterLocal(app.state);
    undoButton.disabled = !canUndo(app.state);
    exportButton.disabled = !canExport(app.state);
    roleSelect.disabled = app.state.stage !== "local";
    radius.disabled = app.state.stage !== "local";
    modeDraw.classList.toggle("active", app.mode === "draw");
    modeCamera.classList.toggle("active", app.mode === "camera");
  }

  function renderAll(): void {
    renderScene();
    renderOverlay();
    renderCandidateList();
    renderControls();
  }

  async function refreshTimeline(): Promise<void> {
    if (!app.state.hasGlobal || !app.state.sessionId) {
      app.timeline = null;
      return;
    }
    app.timeline = await api.timeline(app.state.sessionId, app.control.k);
    const samples = sampleCount(app.timeline.frame_count, app.control.k);
    frameSlider.max = String(Math.max(0, samples - 1));
    app.control = setHighlight(app.control, Number(frameSlider.value), app.timeline.frame_count);
  }

  function applyServerSession(session: SessionState): void {
    app.state = applySession(app.state, session);
    app.candidates = app.state.pending;
  }

  async function submitStroke(points: number[][]): Promise<void> {
    if (!app.state.sessionId || app.busy) return;
    app.busy = true;
    try {
      const role = app.state.stage === "local" ? app.role : undefined;
      const response = await api.submitStroke(app.state.sessionId, points, app.state.stage, role);
      app.candidates = response.candidates;
      app.hovered = null;
      applyServerSession(await api.getSession(app.state.sessionId));
      app.candidates = response.candidates;
      note(`${response.candidates.length} candidates; click a dashed path or the list to select`);
      renderAll();
    } catch (error) {
      fail(error);
    } finally {
      app.busy = false;
    }
  }

  async function select(rank: number): Promise<void> {
    if (!app.state.sessionId) return;
    try {
      await api.selectCandidate(app.state.sessionId, rank);
      app.lastStroke = [];
      app.candidates = [];
      applyServerSession(await api.getSession(app.state.sessionId));
      app.candidates = [];
      await refreshTimeline();
      note(`selected rank ${rank}`);
      renderAll();
    } catch (error) {
      fail(error);
    }
  }

  async function setStage(stage: "global" | "local"): Promise<void> {
    if (!app.state.sessionId || app.state.stage === stage) return;
    try {
      applyServerSession(await api.setStage(app.state.sessionId, stage));
      app.candidates = [];
      app.lastStroke = [];
      await refreshTimeline();
      note(`${stage} stage`);
      renderAll();
    } catch (error) {
      fail(error);
    }
  }

  let cameraTimer: ReturnType<typeof setTimeout> | null = null;
  function cameraAction(action: Parameters<ApiClient["updateCamera"]>[1]): void {
    // debounced: the server reprojects, so stale guidance is cleared
    if (cameraTimer) clearTimeout(cameraTimer);
    cameraTimer = setTimeout(() => {
      void (async () => {
        if (!app.state.sessionId) return;
        try {
          await api.updateCamera(app.state.sessionId, action);
          app.candidates = [];
          app.lastStroke = [];
          await refreshTimeline();
          note("camera moved; draw a new stroke to refresh guidance");
          renderAll();
        } catch (error) {
          fail(error);
        }
      })();
    }, 120);
  }

  // --- pointer handling on the overlay canvas ---
  let orbitLast: PointerSample | null = null;

  overlay.addEventListener("pointerdown", (event) => {
    const sample = samplePoint(event as PointerEvent, overlay);
    if (app.mode === "draw") {
      recorder.begin(sample);
      renderOverlay();
    } else {
      orbitLast = sample;
    }
  });

  overlay.addEventListener("pointermove", (event) => {
    const sample = samplePoint(event as PointerEvent, overlay);
    if (app.mode === "draw" && recorder.isActive) {
      recorder.extend(sample);
      renderOverlay();
      return;
    }
    if (app.mode === "camera" && orbitLast && app.state.stage === "local") {
      const dAz = (sample.offsetX - orbitLast.offsetX) * 0.4;
      const dEl = (orbitLast.offsetY - sample.offsetY) * 0.4;
      orbitLast = sample;
      cameraAction({ op: "orbit", d_azimuth_deg: dAz, d_elevation_deg: dEl });
      return;
    }
    if (app.candidates.length > 0) {
      const hovered = hitTestCandidates(app.candidates, sample.offsetX, sample.offsetY);
      if (hovered !== app.hovered) {
        app.hovered = hovered;
        renderOverlay();
      }
    }
  });

  overlay.addEventListener("pointerup", (event) => {
    const sample = samplePoint(event as PointerEvent, overlay);
    if (app.mode === "camera") {
      orbitLast = null;
      return;
    }
    const stroke = recorder.finish(sample);
    if (stroke) {
      app.lastStroke = stroke;
      void submitStroke(stroke);
    } else if (app.candidates.length > 0) {
      // a plain click selects the polyline under the cursor
      const rank = hitTestCandidates(app.candidates, sample.offsetX, sample.offsetY);
      if (rank !== null) void select(rank);
    }
    renderOverlay();
  });

  overlay.addEventListener("pointerleave", () => {
    if (recorder.isActive) recorder.cancel();
    orbitLast = null;
    renderOverlay();
  });

  // --- toolbar ---
  globalButton.addEventListener("click", () => void setStage("global"));
  localButton.addEventListener("click", () => void setStage("local"));
  roleSelect.addEventListener("change", () => {
    app.role = roleSelect.value as LocalRole;
  });
  modeDraw.addEventListener("click", () => {
    app.mode = "draw";
    renderControls();
  });
  modeCamera.addEventListener("click", () => {
    app.mode = "camera";
    renderControls();
  });
  undoButton.addEventListener("click", () => {
    void (async () => {
      if (!app.state.sessionId) return;
      try {
        applyServerSession(await api.undo(app.state.sessionId));
        await refreshTimeline();
        note("undone");
        renderAll();
      } catch (error) {
        fail(error);
      }
    })();
  });
  exportButton.addEventListener("click", () => {
    void (async () => {
      if (!app.state.sessionId) return;
      try {
        const text = await api.exportBvh(app.state.sessionId);
        const blob = new Blob([text], { type: "text/plain" });
        const link = doc.createElement("a");
        link.href = URL.createObjectURL(blob);
        link.download = "designed.bvh";
        link.click();
        URL.revokeObjectURL(link.href);
        note("exported designed.bvh");
      } catch (error) {
        fail(error);
      }
    })();
  });

  const panButtons: Array<[string, [number, number, number]]> = [
    ["pan-left", [-10, 0, 0]],
    ["pan-right", [10, 0, 0]],
    ["pan-up", [0, 10, 0]],
    ["pan-down", [0, -10, 0]],
    ["pan-fwd", [0, 0, -10]],
    ["pan-back", [0, 0, 10]],
  ];
  for (const [id, delta] of panButtons) {
    byId<HTMLButtonElement>(doc, id).addEventListener("click", () =>
      cameraAction({ op: "pan", delta }),
    );
  }
  zoomIn.addEventListener("click", () => cameraAction({ op: "zoom", factor: 0.85 }));
  zoomOut.addEventListener("click", () => cameraAction({ op: "zoom", factor: 1.18 }));
  radius.addEventListener("change", () =>
    cameraAction({ op: "set_radius", radius: Number(radius.value) }),
  );

  kSlider.addEventListener("input", () => {
    void (async () => {
      const frameCount = app.timeline?.frame_count ?? 100;
      app.control = setInterval_(app.control, Number(kSlider.value), frameCount);
      try {
        await refreshTimeline();
        renderScene();
      } catch (error) {
        fail(error);
      }
    })();
  });
  frameSlider.addEventListener("input", () => {
    const frameCount = app.timeline?.frame_count ?? 100;
    app.control = setHighlight(app.control, Number(frameSlider.value), frameCount);
    renderScene();
  });

  // --- boot ---
  try {
    applyServerSession(await api.createSession());
    note("global stage: sketch the character's path on the ground");
  } catch (error) {
    fail(error);
  }
  renderAll();
  return app;
}
