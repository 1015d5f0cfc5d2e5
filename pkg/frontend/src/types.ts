// Wire types of the design service. Mirrors the server's JSON schemas;
// the client never computes similarity, composition, or projections itself.

export type Stage = "global" | "local";
export type LocalRole = "head" | "left_hand" | "right_hand";

export interface CameraState {
  mode: Stage;
  eye: number[];
  target: number[];
  up: number[];
  viewport: number[];
  orthographic: boolean;
  near: number;
  fov_deg?: number;
  ortho_scale?: number;
  radius?: number;
  azimuth_deg?: number;
  elevation_deg?: number;
}

export interface Candidate {
  motion_id: string;
  joint_role: string;
  similarity: number;
  rank: number;
  polyline: number[][];
}

export interface StrokeResponse {
  candidates: Candidate[];
  shadow: number[][][];
}

export interface CompositionState {
  global: string | null;
  assignments: Record<string, { motion_id: string; joints: string[] }>;
}

export interface SessionState {
  id: string;
  dataset: string;
  stage: Stage;
  camera: CameraState;
  composition: CompositionState;
  pending: Candidate[] | null;
  pending_role: string | null;
  history: Record<string, unknown>[];
  undo_depth: number;
}

export interface TimelineFrame {
  index: number;
  positions: number[][];
  canvas?: (number[] | null)[];
}

export interface TimelinePayload {
  k: number;
  frame_count: number;
  frame_time: number;
  joints: string[];
  parents: (number | null)[];
  viewport: number[];
  frames: TimelineFrame[];
}

export interface EntryMeta {
  id: string;
  label: string;
  frames: number;
  source: string;
}

export type CameraOp =
  | { op: "pan"; delta: [number, number, number] }
  | { op: "zoom"; factor: number }
  | { op: "orbit"; d_azimuth_deg: number; d_elevation_deg: number }
  | { op: "set_radius"; radius: number };
