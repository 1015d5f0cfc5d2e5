"""Retrieval database construction and persistence.

Each entry is a motion trimmed to a fixed frame count whose root starts at
the world origin, split into a global component (the root/hip path) and
local components (head and hand paths relative to the per-frame root).
The index is persisted as a single self-describing JSON file; rebuilding
from an unchanged directory is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bvh import Joint, Motion, Skeleton, load_bvh
from .errors import DatasetBuildError, RoleMappingError, SketchMocapError, TrimError
from .kinematics import Trajectory3D, fk_all_frames

FORMAT_NAME = "sketchmocap-index"
FORMAT_VERSION = 1
DEFAULT_FRAME_COUNT = 100

TRACKED_ROLES = ("root", "head", "left_hand", "right_hand")
LOCAL_ROLES = ("head", "left_hand", "right_hand")


@dataclass(frozen=True)
class RoleMap:
    """Maps dataset joint roles to skeleton joint names.

    ``tracked`` names the joints whose trajectories are precomputed;
    ``anchors`` names the subtree roots used for limb grafting; ``labels``
    carries optional curator tags per entry id.
    """

    tracked: dict[str, str]
    anchors: dict[str, str]
    labels: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        missing = set(TRACKED_ROLES) - set(self.tracked)
        if missing:
            raise RoleMappingError(f"role map is missing tracked roles {sorted(missing)}")
        missing = set(LOCAL_ROLES) - set(self.anchors)
        if missing:
            raise RoleMappingError(f"role map is missing anchor roles {sorted(missing)}")

    def to_json(self) -> dict:
        return {
            "tracked": dict(self.tracked),
            "anchors": dict(self.anchors),
            "labels": dict(self.labels),
        }

    @classmethod
    def from_json(cls, payload: dict) -> "RoleMap":
        return cls(
            tracked=dict(payload["tracked"]),
            anchors=dict(payload["anchors"]),
            labels=dict(payload.get("labels", {})),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "RoleMap":
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True, eq=False)
class DatasetEntry:
    """One database motion: trimmed frames plus precomputed trajectories.

    ``trajectories`` holds world-space paths per tracked role;
    ``local_trajectories`` holds the root-relative paths of the local roles.
    """

    id: str
    source: str
    label: str
    motion: Motion
    trajectories: dict[str, Trajectory3D]
    local_trajectories: dict[str, Trajectory3D]

    @property
    def frame_count(self) -> int:
        return self.motion.frame_count


class DatasetIndex:
    """Ordered, immutable collection of entries plus the role mapping."""

    def __init__(
        self,
        entries: list[DatasetEntry],
        roles: RoleMap,
        frame_count: int,
        version: int = FORMAT_VERSION,
        skipped: list[dict] | None = None,
    ):
        ids = [e.id for e in entries]
        if len(set(ids)) != len(ids):
            raise DatasetBuildError("entry ids are not unique")
        for e in entries:
            if e.frame_count != frame_count:
                raise DatasetBuildError(
                    f"entry {e.id!r} has {e.frame_count} frames, index uses {frame_count}"
                )
        self.entries = tuple(entries)
        self.roles = roles
        self.frame_count = frame_count
        self.version = version
        self.skipped = tuple(skipped or [])
        self._by_id = {e.id: e for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, entry_id: str) -> DatasetEntry:
        try:
            return self._by_id[entry_id]
        except KeyError:
            raise KeyError(f"unknown entry {entry_id!r}") from None


def build_entry(
    motion: Motion,
    roles: RoleMap,
    start: int = 0,
    frame_count: int = DEFAULT_FRAME_COUNT,
    entry_id: str | None = None,
    source: str = "",
    label: str = "",
) -> DatasetEntry:
    """Trim, origin-normalize, and split one motion into a database entry.

    Frames [start, start+frame_count) are kept; the root position channels
    are shifted so the first kept frame's root world position is the origin.
    """
    if start < 0 or start + frame_count > motion.frame_count:
        raise TrimError(
            f"window [{start}, {start + frame_count}) out of range "
            f"for {motion.frame_count} frames"
        )
    skel = motion.skeleton
    for role, joint in roles.tracked.items():
        if joint not in skel.joint_names():
            raise RoleMappingError(f"role {role!r} maps to unknown joint {joint!r}")

    frames = np.array(motion.frames[start : start + frame_count])
    trimmed = motion.with_frames(frames, id=entry_id or motion.id)

    positions, _ = fk_all_frames(trimmed)
    root_index = skel.joint_index(roles.tracked["root"])
    shift = positions[0, root_index]  # tracked-root world position, first frame
    if np.any(shift != 0.0):
        for axis, column in zip((0, 1, 2), _position_columns_by_axis(skel)):
            frames[:, column] -= shift[axis]
        trimmed = motion.with_frames(frames, id=entry_id or motion.id)
        positions, _ = fk_all_frames(trimmed)

    entry_id = entry_id or motion.id
    trajectories = {}
    local = {}
    root_points = positions[:, root_index]
    for role, joint in roles.tracked.items():
        points = positions[:, skel.joint_index(joint)]
        trajectories[role] = Trajectory3D(motion_id=entry_id, joint=joint, points=points)
        if role != "root":
            local[role] = Trajectory3D(
                motion_id=entry_id, joint=joint, points=points - root_points
            )
    return DatasetEntry(
        id=entry_id,
        source=source,
        label=label or motion.label,
        motion=trimmed,
        trajectories=trajectories,
        local_trajectories=local,
    )


def _position_columns_by_axis(skel: Skeleton) -> tuple[int, int, int]:
    """Root position channel columns ordered (x, y, z)."""
    columns = {}
    start = skel.channel_slice(0).start
    for k, channel in enumerate(skel.joints[0].channels):
        if channel.endswith("position"):
            columns[channel[0]] = start + k
    return columns["X"], columns["Y"], columns["Z"]


def build_index(
    directory: str | Path,
    roles: RoleMap,
    frame_count: int = DEFAULT_FRAME_COUNT,
    start: int = 0,
    out: str | Path | None = None,
) -> DatasetIndex:
    """Build an index from every .bvh file in a directory.

    Files that fail to parse, are shorter than the window, or miss a tracked
    joint are recorded as skipped; the build continues.  Entry order is
    lexicographic by id.  Raises DatasetBuildError when nothing is usable.
    """
    directory = Path(directory)
    files = sorted(directory.glob("*.bvh"))
    if not files:
        raise DatasetBuildError(f"no .bvh files found in {directory}")
    entries, skipped = [], []
    for path in files:
        try:
            motion = load_bvh(path)
            entry = build_entry(
                motion,
                roles,
                start=start,
                frame_count=frame_count,
                entry_id=path.stem,
                source=str(path),
                label=roles.labels.get(path.stem, motion.label),
            )
            entries.append(entry)
        except (SketchMocapError, KeyError) as exc:
            skipped.append({"source": str(path), "reason": str(exc)})
    if not entries:
        raise DatasetBuildError(
            f"no usable motions in {directory}: "
            + "; ".join(s["reason"] for s in skipped)
        )
    entries.sort(key=lambda e: e.id)
    index = DatasetIndex(entries, roles, frame_count, skipped=skipped)
    if out is not None:
        save_index(index, out)
    return index


def _skeleton_to_json(skel: Skeleton) -> dict:
    return {
        "joints": [
            {
                "name": j.name,
                "parent": j.parent,
                "offset": j.offset.tolist(),
                "channels": list(j.channels),
                "end_site": None if j.end_site is None else j.end_site.tolist(),
            }
            for j in skel.joints
        ]
    }


def _skeleton_from_json(payload: dict) -> Skeleton:
    return Skeleton([
        Joint(
            name=j["name"],
            parent=j["parent"],
            offset=np.array(j["offset"], dtype=float),
            channels=tuple(j["channels"]),
            end_site=None if j["end_site"] is None else np.array(j["end_site"], dtype=float),
        )
        for j in payload["joints"]
    ])


def index_to_json(index: DatasetIndex) -> dict:
    entries = []
    for e in index.entries:
        entries.append({
            "id": e.id,
            "source": e.source,
            "label": e.label,
            "frame_time": e.motion.frame_time,
            "skeleton": _skeleton_to_json(e.motion.skeleton),
            "frames": e.motion.frames.tolist(),
            "trajectories": {r: t.points.tolist() for r, t in e.trajectories.items()},
            "local_trajectories": {
                r: t.points.tolist() for r, t in e.local_trajectories.items()
            },
        })
    return {
        "format": FORMAT_NAME,
        "version": index.version,
        "frame_count": index.frame_count,
        "roles": index.roles.to_json(),
        "entries": entries,
        "skipped": list(index.skipped),
    }


def index_from_json(payload: dict) -> DatasetIndex:
    if payload.get("format") != FORMAT_NAME:
        raise DatasetBuildError(f"not a {FORMAT_NAME} file")
    if payload.get("version") != FORMAT_VERSION:
        raise DatasetBuildError(f"unsupported index version {payload.get('version')!r}")
    roles = RoleMap.from_json(payload["roles"])
    entries = []
    for e in payload["entries"]:
        skel = _skeleton_from_json(e["skeleton"])
        motion = Motion(
            skel, e["frame_time"], np.array(e["frames"]), id=e["id"], label=e["label"]
        )
        trajectories = {
            role: Trajectory3D(
                motion_id=e["id"], joint=roles.tracked[role], points=np.array(pts)
            )
            for role, pts in e["trajectories"].items()
        }
        local = {
            role: Trajectory3D(
                motion_id=e["id"], joint=roles.tracked[role], points=np.array(pts)
            )
            for role, pts in e["local_trajectories"].items()
        }
        entries.append(DatasetEntry(
            id=e["id"],
            source=e["source"],
            label=e["label"],
            motion=motion,
            trajectories=trajectories,
            local_trajectories=local,
        ))
    return DatasetIndex(
        entries,
        roles,
        payload["frame_count"],
        version=payload["version"],
        skipped=payload.get("skipped", []),
    )


def save_index(index: DatasetIndex, path: str | Path) -> None:
    text = json.dumps(index_to_json(index), sort_keys=True, separators=(",", ":"))
    Path(path).write_text(text + "\n")


def load_index(path: str | Path) -> DatasetIndex:
    return index_from_json(json.loads(Path(path).read_text()))
