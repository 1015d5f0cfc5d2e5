// Client-side mirror of the session state machine. The server is the
// source of truth; this only decides which controls are live, so the
// buttons can never request a transition the server would refuse.

import type { Candidate, LocalRole, SessionState, Stage } from "./types.js";

export interface UiState {
  sessionId: string | null;
  stage: Stage;
  hasGlobal: boolean;
  pending: Candidate[];
  pendingRole: LocalRole | null;
  undoDepth: number;
  assignments: Record<string, string>;
}

export function initialUiState(): UiState {
  return {
    sessionId: null,
    stage: "global",
    hasGlobal: false,
    pending: [],
    pendingRole: null,
    undoDepth: 0,
    assignments: {},
  };
}

/** Fold a server session payload into the UI mirror. */
export function applySession(state: UiState, session: SessionState): UiState {
  const assignments: Record<string, string> = {};
  for (const [role, a] of Object.entries(session.composition.assignments)) {
    assignments[role] = a.motion_id;
  }
  return {
    ...state,
    sessionId: session.id,
    stage: session.stage,
    hasGlobal: session.composition.global !== null,
    pending: session.pending ?? [],
    pendingRole: (session.pending_role as LocalRole | null) ?? null,
    undoDepth: session.undo_depth,
    assignments,
  };
}

/** The local stage only opens once a global motion is selected. */
export function canEnterLocal(state: UiState): boolean {
  return state.hasGlobal;
}

export function canSelect(state: UiState, rank: number): boolean {
  return rank >= 1 && rank <= state.pending.length;
}

export function canUndo(state: UiState): boolean {
  return state.undoDepth > 0;
}

export function canExport(state: UiState): boolean {
  return state.hasGlobal;
}

/** Which stage the toggle would switch to, or null if the switch is closed. */
export function stageToggleTarget(state: UiState): Stage | null {
  if (state.stage === "global") {
    return canEnterLocal(state) ? "local" : null;
  }
  return "global";
}

export function strokeRoleFor(state: UiState, role: LocalRole | null): LocalRole | undefined {
  return state.stage === "local" ? (role ?? "left_hand") : undefined;
}
