"""Forward kinematics: channel tables to world-space joint poses and paths.

Conventions: right-handed, Y-up, column vectors.  Each rotation channel is
an elementary rotation about its named axis (degrees); a joint's local
rotation is the product of its rotation channels in declared order, so
CHANNELS ... Zrotation Xrotation Yrotation means Rz @ Rx @ Ry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bvh import AXIS_INDEX, Motion


@dataclass(frozen=True, eq=False)
class Pose:
    """World positions (J,3) and world rotation matrices (J,3,3) for one frame."""

    positions: np.ndarray
    rotations: np.ndarray

    def validate(self, tol: float = 1e-6) -> None:
        if self.positions.shape[0] != self.rotations.shape[0]:
            raise ValueError("position count does not match rotation count")
        eye = np.eye(3)
        for r in self.rotations:
            if np.max(np.abs(r.T @ r - eye)) > tol:
                raise ValueError("rotation matrix is not orthonormal")


@dataclass(frozen=True, eq=False)
class Trajectory3D:
    """World-space path of one joint over all frames of a motion."""

    motion_id: str
    joint: str
    points: np.ndarray  # (F, 3)

    def __len__(self) -> int:
        return self.points.shape[0]


def _elementary_rotations(axis: str, degrees: np.ndarray) -> np.ndarray:
    """Stack of 3x3 rotations about a coordinate axis, one per angle."""
    rad = np.radians(degrees)
    c, s = np.cos(rad), np.sin(rad)
    n = degrees.shape[0]
    mats = np.zeros((n, 3, 3))
    if axis == "X":
        mats[:, 0, 0] = 1
        mats[:, 1, 1] = c
        mats[:, 1, 2] = -s
        mats[:, 2, 1] = s
        mats[:, 2, 2] = c
    elif axis == "Y":
        mats[:, 1, 1] = 1
        mats[:, 0, 0] = c
        mats[:, 0, 2] = s
        mats[:, 2, 0] = -s
        mats[:, 2, 2] = c
    elif axis == "Z":
        mats[:, 2, 2] = 1
        mats[:, 0, 0] = c
        mats[:, 0, 1] = -s
        mats[:, 1, 0] = s
        mats[:, 1, 1] = c
    else:
        raise ValueError(f"unknown rotation axis {axis!r}")
    return mats


def local_rotations(motion: Motion) -> np.ndarray:
    """Per-joint local rotation matrices for every frame, shape (F, J, 3, 3)."""
    skel = motion.skeleton
    n_frames = motion.frame_count
    out = np.broadcast_to(np.eye(3), (n_frames, len(skel), 3, 3)).copy()
    start = 0
    for j, joint in enumerate(skel.joints):
        rot = None
        for k, channel in enumerate(joint.channels):
            if not channel.endswith("rotation"):
                continue
            elem = _elementary_rotations(channel[0], motion.frames[:, start + k])
            rot = elem if rot is None else rot @ elem
        if rot is not None:
            out[:, j] = rot
        start += len(joint.channels)
    return out


def _root_translations(motion: Motion) -> np.ndarray:
    """Root position channels mapped to xyz, shape (F, 3)."""
    skel = motion.skeleton
    trans = np.zeros((motion.frame_count, 3))
    start = skel.channel_slice(0).start
    for k, channel in enumerate(skel.joints[0].channels):
        if channel.endswith("position"):
            trans[:, AXIS_INDEX[channel[0]]] = motion.frames[:, start + k]
    return trans


def fk_all_frames(motion: Motion) -> tuple[np.ndarray, np.ndarray]:
    """World positions (F,J,3) and rotations (F,J,3,3) for every frame.

    World rotation is parent world rotation times local rotation; world
    position is the parent position plus the parent rotation applied to the
    joint offset.  The root adds its translation channels to its offset.
    """
    skel = motion.skeleton
    local = local_rotations(motion)
    n_frames = motion.frame_count
    positions = np.empty((n_frames, len(skel), 3))
    rotations = np.empty((n_frames, len(skel), 3, 3))
    positions[:, 0] = skel.joints[0].offset + _root_translations(motion)
    rotations[:, 0] = local[:, 0]
    for j in range(1, len(skel)):
        p = skel.joints[j].parent
        rotations[:, j] = rotations[:, p] @ local[:, j]
        positions[:, j] = positions[:, p] + np.einsum(
            "fab,b->fa", rotations[:, p], skel.joints[j].offset
        )
    return positions, rotations


def forward_kinematics(motion: Motion, frame: int) -> Pose:
    """Pose of a single frame; raises IndexError when frame is out of range."""
    if not -motion.frame_count <= frame < motion.frame_count:
        raise IndexError(
            f"frame {frame} out of range for motion with {motion.frame_count} frames"
        )
    positions, rotations = fk_all_frames(motion)
    return Pose(positions=positions[frame], rotations=rotations[frame])


def joint_trajectory(motion: Motion, joint: str) -> Trajectory3D:
    """World positions of one joint across all frames (KeyError if unknown)."""
    index = motion.skeleton.joint_index(joint)
    positions, _ = fk_all_frames(motion)
    return Trajectory3D(motion_id=motion.id, joint=joint, points=positions[:, index])


def character_height(pose_positions: np.ndarray) -> float:
    """Vertical extent of a posed skeleton (end-site tips ignored)."""
    return float(pose_positions[:, 1].max() - pose_positions[:, 1].min())
