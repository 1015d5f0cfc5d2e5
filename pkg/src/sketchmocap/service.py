"""Session-oriented HTTP service for the two-stage design loop.

A session starts in the global stage with a default camera.  Submitting a
stroke runs retrieval under the session camera; selecting a candidate sets
the global motion (global stage) or grafts a limb (local stage).  The local
stage only opens once a global motion is selected; its orbit camera targets
the selected motion's root at the first frame.  Undo restores the exact
prior composition, stage, and pending candidates.

Sessions live in memory; the dataset index is shared immutable state and
each session's actions are serialized under a per-session lock.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .bvh import write_bvh
from .camera import (
    GLOBAL,
    LOCAL,
    Camera,
    action_from_json,
    default_global_camera,
    default_local_camera,
    projection_matrix,
    update_camera,
)
from .compose import CompositionState, make_assignment
from .dataset import DatasetIndex
from .errors import (
    CameraParameterError,
    DegenerateStrokeError,
    QueryError,
    SketchMocapError,
)
from .kinematics import character_height, fk_all_frames
from .retrieval import Candidate, RetrievalConfig, query, shadow_guidance
from .stroke import resample_stroke

DEFAULT_TIMELINE_STEP = 10


class CreateSessionRequest(BaseModel):
    dataset: Optional[str] = None


class StrokeRequest(BaseModel):
    points: list[list[float]]
    stage: str
    role: Optional[str] = None


class SelectRequest(BaseModel):
    rank: int


class StageRequest(BaseModel):
    stage: str


class CameraRequest(BaseModel):
    op: str
    delta: Optional[list[float]] = None
    factor: Optional[float] = None
    d_azimuth_deg: Optional[float] = None
    d_elevation_deg: Optional[float] = None
    radius: Optional[float] = None


@dataclass
class _Snapshot:
    stage: str
    composition: CompositionState
    pending: tuple[Candidate, ...] | None
    pending_role: str | None


@dataclass
class Session:
    id: str
    dataset_id: str
    stage: str = GLOBAL
    global_camera: Camera = field(default_factory=default_global_camera)
    local_camera: Camera | None = None
    composition: CompositionState = field(default_factory=CompositionState)
    pending: tuple[Candidate, ...] | None = None
    pending_role: str | None = None
    history: list[dict] = field(default_factory=list)
    undo_stack: list[_Snapshot] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def camera(self) -> Camera:
        if self.stage == LOCAL:
            return self.local_camera
        return self.global_camera

    def snapshot(self) -> _Snapshot:
        return _Snapshot(
            stage=self.stage,
            composition=self.composition,
            pending=self.pending,
            pending_role=self.pending_role,
        )

    def restore(self, snap: _Snapshot) -> None:
        self.stage = snap.stage
        self.composition = snap.composition
        self.pending = snap.pending
        self.pending_role = snap.pending_role

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "dataset": self.dataset_id,
            "stage": self.stage,
            "camera": self.camera.to_json(),
            "composition": self.composition.to_json(),
            "pending": [c.to_json() for c in self.pending] if self.pending else None,
            "pending_role": self.pending_role,
            "history": list(self.history),
            "undo_depth": len(self.undo_stack),
        }


def create_app(datasets: dict[str, DatasetIndex], ui_dir: str | None = None) -> FastAPI:
    """Build the service around one or more loaded dataset indexes.

    ``ui_dir`` optionally mounts a built browser client at /ui.
    """
    app = FastAPI(title="sketchmocap", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")
    sessions: dict[str, Session] = {}
    counter = itertools.count(1)
    registry_lock = threading.Lock()

    def get_session(session_id: str) -> Session:
        try:
            return sessions[session_id]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")

    def get_index(session: Session) -> DatasetIndex:
        return datasets[session.dataset_id]

    def local_camera_for(session: Session) -> Camera:
        """Orbit camera staring at the selected global motion's reference
        point (its root at the first frame), radius 3x character height."""
        index = get_index(session)
        entry = index.entry(session.composition.global_id)
        positions, _ = fk_all_frames(entry.motion)
        root_joint = entry.motion.skeleton.joint_index(
            index.roles.tracked["root"]
        )
        target = tuple(float(v) for v in positions[0, root_joint])
        return default_local_camera(
            target=target,
            height=character_height(positions[0]),
            viewport=session.global_camera.viewport,
        )

    @app.get("/datasets")
    def list_datasets():
        return [
            {"id": dataset_id, "entries": len(index), "frames": index.frame_count}
            for dataset_id, index in sorted(datasets.items())
        ]

    @app.get("/dataset/entries")
    def dataset_entries(dataset: Optional[str] = None):
        dataset_id = _resolve_dataset(dataset)
        index = datasets[dataset_id]
        return [
            {
                "id": e.id,
                "label": e.label,
                "frames": e.frame_count,
                "source": e.source,
            }
            for e in index.entries
        ]

    def _resolve_dataset(requested: Optional[str]) -> str:
        if requested is None:
            if len(datasets) == 1:
                return next(iter(datasets))
            raise HTTPException(
                status_code=422,
                detail="several datasets are loaded; specify one",
            )
        if requested not in datasets:
            raise HTTPException(status_code=404, detail=f"unknown dataset {requested!r}")
        return requested

    @app.post("/sessions", status_code=201)
    def create_session(request: CreateSessionRequest):
        dataset_id = _resolve_dataset(request.dataset)
        with registry_lock:
            session_id = f"s{next(counter):04d}"
            session = Session(id=session_id, dataset_id=dataset_id)
            sessions[session_id] = session
        return session.to_json()

    @app.get("/sessions/{session_id}")
    def get_session_state(session_id: str):
        return get_session(session_id).to_json()

    @app.post("/sessions/{session_id}/camera")
    def update_session_camera(session_id: str, request: CameraRequest):
        session = get_session(session_id)
        with session.lock:
            try:
                action = action_from_json(request.model_dump(exclude_none=True))
                updated = update_camera(session.camera, action)
            except (CameraParameterError, KeyError, SketchMocapError) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            if session.stage == LOCAL:
                session.local_camera = updated
            else:
                session.global_camera = updated
            return updated.to_json()

    @app.post("/sessions/{session_id}/stroke")
    def submit_stroke(session_id: str, request: StrokeRequest):
        session = get_session(session_id)
        with session.lock:
            if request.stage != session.stage:
                raise HTTPException(
                    status_code=409,
                    detail=f"session is in the {session.stage} stage, "
                           f"stroke was drawn for {request.stage}",
                )
            if request.stage == LOCAL:
                if session.composition.global_id is None:
                    raise HTTPException(
                        status_code=409,
                        detail="select a global motion before sketching limbs",
                    )
                if request.role is None:
                    raise HTTPException(
                        status_code=422, detail="local strokes need a target role"
                    )
            try:
                cfg = RetrievalConfig(
                    stage=request.stage,
                    role=request.role if request.stage == LOCAL else None,
                )
                stroke = resample_stroke(request.points, count=cfg.sample_count)
                candidates = query(stroke, session.camera, get_index(session), cfg)
            except DegenerateStrokeError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            except QueryError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            session.undo_stack.append(session.snapshot())
            session.pending = tuple(candidates)
            session.pending_role = request.role
            session.history.append({
                "action": "stroke",
                "stage": request.stage,
                "role": request.role,
                "points": len(request.points),
                "results": len(candidates),
            })
            return {
                "candidates": [c.to_json() for c in candidates],
                "shadow": [p.to_json() for p in shadow_guidance(candidates)],
            }

    @app.post("/sessions/{session_id}/select")
    def select_candidate(session_id: str, request: SelectRequest):
        session = get_session(session_id)
        with session.lock:
            if not session.pending:
                raise HTTPException(status_code=409, detail="no pending candidates")
            if not 1 <= request.rank <= len(session.pending):
                raise HTTPException(
                    status_code=422,
                    detail=f"rank {request.rank} outside 1..{len(session.pending)}",
                )
            chosen = session.pending[request.rank - 1]
            index = get_index(session)
            session.undo_stack.append(session.snapshot())
            if session.stage == GLOBAL:
                try:
                    candidate = session.composition.with_global(chosen.motion_id)
                    candidate.result(index)  # fail fast on incompatible grafts
                except SketchMocapError as exc:
                    session.undo_stack.pop()
                    raise HTTPException(status_code=409, detail=str(exc))
                session.composition = candidate
                session.local_camera = None  # re-derived from the new selection
            else:
                skeleton = index.entry(session.composition.global_id).motion.skeleton
                try:
                    assignment = make_assignment(
                        skeleton, session.pending_role, chosen.motion_id, index.roles
                    )
                    session.composition = session.composition.with_assignment(assignment)
                    session.composition.result(index)  # fail fast on bad grafts
                except SketchMocapError as exc:
                    session.undo_stack.pop()
                    raise HTTPException(status_code=409, detail=str(exc))
            session.history.append({
                "action": "select",
                "stage": session.stage,
                "rank": request.rank,
                "motion_id": chosen.motion_id,
            })
            return session.composition.to_json()

    @app.post("/sessions/{session_id}/stage")
    def switch_stage(session_id: str, request: StageRequest):
        session = get_session(session_id)
        with session.lock:
            if request.stage not in (GLOBAL, LOCAL):
                raise HTTPException(status_code=422, detail=f"unknown stage {request.stage!r}")
            if request.stage == LOCAL and session.composition.global_id is None:
                raise HTTPException(
                    status_code=409,
                    detail="the local stage opens after a global motion is selected",
                )
            if request.stage != session.stage:
                session.undo_stack.append(session.snapshot())
                session.stage = request.stage
                session.pending = None
                session.pending_role = None
                if request.stage == LOCAL and session.local_camera is None:
                    session.local_camera = local_camera_for(session)
                session.history.append({"action": "stage", "stage": request.stage})
            return session.to_json()

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        session = get_session(session_id)
        with session.lock:
            if not session.undo_stack:
                raise HTTPException(status_code=409, detail="nothing to undo")
            session.restore(session.undo_stack.pop())
            if session.stage == LOCAL and session.local_camera is None:
                session.local_camera = local_camera_for(session)
            session.history.append({"action": "undo"})
            return session.to_json()

    @app.get("/sessions/{session_id}/export")
    def export(session_id: str):
        session = get_session(session_id)
        with session.lock:
            if session.composition.global_id is None:
                raise HTTPException(status_code=409, detail="nothing selected to export")
            try:
                motion = session.composition.result(get_index(session))
            except SketchMocapError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            filename = f"{session.id}_{session.composition.global_id}.bvh"
            return Response(
                content=write_bvh(motion),
                media_type="text/plain",
                headers={"Content-Disposition": f'attachment; filename="{filename}"'},
            )

    @app.get("/sessions/{session_id}/timeline")
    def timeline(session_id: str, k: int = DEFAULT_TIMELINE_STEP, projected: bool = False):
        """World joint positions sampled every k frames; with ``projected``,
        each frame also carries canvas-space positions under the session
        camera (null where a joint falls behind the near plane), so clients
        never reimplement the projection."""
        session = get_session(session_id)
        with session.lock:
            if session.composition.global_id is None:
                raise HTTPException(status_code=409, detail="nothing selected yet")
            if k < 1:
                raise HTTPException(status_code=422, detail="k must be at least 1")
            try:
                motion = session.composition.result(get_index(session))
            except SketchMocapError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            positions, _ = fk_all_frames(motion)
            skeleton = motion.skeleton
            pmap = projection_matrix(session.camera) if projected else None
            frames = []
            for i in range(0, motion.frame_count, k):
                frame = {"index": i, "positions": positions[i].tolist()}
                if pmap is not None:
                    canvas, valid = pmap.apply(positions[i])
                    frame["canvas"] = [
                        [float(x), float(y)] if ok else None
                        for (x, y), ok in zip(canvas, valid)
                    ]
                frames.append(frame)
            return {
                "k": k,
                "frame_count": motion.frame_count,
                "frame_time": motion.frame_time,
                "joints": list(skeleton.joint_names()),
                "parents": [j.parent for j in skeleton.joints],
                "viewport": list(session.camera.viewport),
                "frames": frames,
            }

    return app


__all__ = ["create_app", "Session"]
