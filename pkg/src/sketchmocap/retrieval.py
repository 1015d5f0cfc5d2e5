"""Stroke-against-database matching and shadow guidance.

Each database entry contributes one stage-relevant trajectory: the root
path in the global stage, or the root-relative path of the chosen limb
(re-anchored at the camera target) in the local stage.  Entries are ranked
by the discrete Fréchet distance between the stroke and the projected
trajectory, in raw canvas pixels: screen position and size are signal, so
no normalization is applied before matching.
"""

from __future__ import annotations

from dataclasses import dataclass

from .camera import (
    GLOBAL,
    LOCAL,
    Camera,
    ProjectedPolyline,
    anchor_local_trajectory,
    project_trajectory,
)
from .dataset import LOCAL_ROLES, DatasetEntry, DatasetIndex
from .errors import ProjectionDegenerateError, QueryError
from .frechet import frechet_distance
from .stroke import DEFAULT_SAMPLE_COUNT, Stroke2D

DEFAULT_TOP_N = 5


@dataclass(frozen=True)
class RetrievalConfig:
    """Query parameters: result count, stroke sampling, stage, target role."""

    top_n: int = DEFAULT_TOP_N
    sample_count: int = DEFAULT_SAMPLE_COUNT
    stage: str = GLOBAL
    role: str | None = None

    def __post_init__(self):
        if self.top_n < 1:
            raise QueryError("top_n must be at least 1")
        if self.sample_count < 2:
            raise QueryError("sample_count must be at least 2")
        if self.stage not in (GLOBAL, LOCAL):
            raise QueryError(f"unknown stage {self.stage!r}")
        if self.stage == LOCAL:
            if self.role not in LOCAL_ROLES:
                raise QueryError(
                    f"local stage requires a target role from {LOCAL_ROLES}"
                )
        elif self.role is not None:
            raise QueryError("global stage does not take a target role")


@dataclass(frozen=True, eq=False)
class Candidate:
    """A ranked retrieval hit; similarity is Fréchet distance in pixels."""

    motion_id: str
    joint_role: str
    similarity: float
    polyline: ProjectedPolyline
    rank: int

    def to_json(self) -> dict:
        return {
            "motion_id": self.motion_id,
            "joint_role": self.joint_role,
            "similarity": self.similarity,
            "rank": self.rank,
            "polyline": self.polyline.to_json(),
        }


def stage_polyline(
    entry: DatasetEntry, camera: Camera, cfg: RetrievalConfig
) -> ProjectedPolyline:
    """Project the entry's stage-relevant trajectory for matching."""
    if cfg.stage == GLOBAL:
        traj, role = entry.trajectories["root"], "root"
    else:
        traj = anchor_local_trajectory(entry.local_trajectories[cfg.role], camera.target)
        role = cfg.role
    return project_trajectory(camera, traj, role=role)


def query(
    stroke: Stroke2D, camera: Camera, index: DatasetIndex, cfg: RetrievalConfig
) -> list[Candidate]:
    """Rank database entries against a stroke; best (lowest) distance first.

    Ties break lexicographically by entry id.  Entries whose trajectory
    degenerates under the camera are skipped, never fatal.  Returns at most
    cfg.top_n candidates with ranks 1..N.
    """
    if len(index) == 0:
        raise QueryError("dataset index is empty")
    if camera.mode != cfg.stage:
        raise QueryError(
            f"camera mode {camera.mode!r} does not match query stage {cfg.stage!r}"
        )
    scored = []
    for entry in index.entries:
        try:
            polyline = stage_polyline(entry, camera, cfg)
        except ProjectionDegenerateError:
            continue
        distance = frechet_distance(stroke.points, polyline.points)
        scored.append((distance, entry.id, polyline))
    if not scored:
        raise QueryError("every entry degenerated under the current camera")
    scored.sort(key=lambda item: (item[0], item[1]))
    return [
        Candidate(
            motion_id=entry_id,
            joint_role=polyline.joint_role,
            similarity=distance,
            polyline=polyline,
            rank=position + 1,
        )
        for position, (distance, entry_id, polyline) in enumerate(scored[: cfg.top_n])
    ]


def shadow_guidance(candidates: list[Candidate]) -> list[ProjectedPolyline]:
    """The candidate polylines in rank order, untouched, for overlay display."""
    if not candidates:
        raise QueryError("no candidates to build guidance from")
    return [c.polyline for c in sorted(candidates, key=lambda c: c.rank)]
