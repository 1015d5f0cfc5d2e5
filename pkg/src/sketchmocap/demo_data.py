"""Synthetic locomotion corpus for demos and desk-scale testing.

Generates BVH files on a fixed humanoid skeleton (CMU-style naming and
Z/X/Y channel order) with parameterized gait styles: straight/curved/zigzag
walks, runs, jump arcs, plus varied arm and head overlays so the local
retrieval stage has something to distinguish.  Everything is deterministic
in the entry index.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bvh import Joint, Motion, Skeleton, write_bvh

_ROT = ("Zrotation", "Xrotation", "Yrotation")
_ROOT_CHANNELS = ("Xposition", "Yposition", "Zposition") + _ROT

DEMO_ROLES = {
    "tracked": {
        "root": "Hips",
        "head": "Head",
        "left_hand": "LeftHand",
        "right_hand": "RightHand",
    },
    "anchors": {
        "head": "Neck",
        "left_hand": "LeftShoulder",
        "right_hand": "RightShoulder",
    },
}

_STYLES = ("walk", "fast_walk", "slow_walk", "turn_left", "turn_right",
           "zigzag", "circle", "run", "jump", "duck_walk")


def demo_skeleton() -> Skeleton:
    def j(name, parent, offset, root=False, end=None):
        return Joint(
            name=name,
            parent=parent,
            offset=np.array(offset, dtype=float),
            channels=_ROOT_CHANNELS if root else _ROT,
            end_site=None if end is None else np.array(end, dtype=float),
        )

    return Skeleton([
        j("Hips", None, (0, 0, 0), root=True),
        j("LeftUpLeg", 0, (1.8, -0.6, 0)),
        j("LeftLeg", 1, (0, -7.2, 0)),
        j("LeftFoot", 2, (0, -7.4, 0), end=(0, -1.0, 2.2)),
        j("RightUpLeg", 0, (-1.8, -0.6, 0)),
        j("RightLeg", 4, (0, -7.2, 0)),
        j("RightFoot", 5, (0, -7.4, 0), end=(0, -1.0, 2.2)),
        j("Spine", 0, (0, 2.2, 0)),
        j("Spine1", 7, (0, 2.4, 0)),
        j("Neck", 8, (0, 2.6, 0)),
        j("Head", 9, (0, 1.6, 0), end=(0, 1.8, 0)),
        j("LeftShoulder", 8, (1.2, 1.9, 0)),
        j("LeftArm", 11, (2.6, 0, 0)),
        j("LeftForeArm", 12, (2.8, 0, 0)),
        j("LeftHand", 13, (2.4, 0, 0), end=(0.9, 0, 0)),
        j("RightShoulder", 8, (-1.2, 1.9, 0)),
        j("RightArm", 15, (-2.6, 0, 0)),
        j("RightForeArm", 16, (-2.8, 0, 0)),
        j("RightHand", 17, (-2.4, 0, 0), end=(-0.9, 0, 0)),
    ])


def demo_motion(index: int, frames: int = 160, skeleton: Skeleton | None = None) -> Motion:
    """Deterministic synthetic motion number ``index`` (see _STYLES cycling)."""
    skel = skeleton or demo_skeleton()
    rng = np.random.default_rng(1000 + index)
    style = _STYLES[index % len(_STYLES)]

    speed = {"walk": 0.32, "fast_walk": 0.45, "slow_walk": 0.18, "run": 0.7,
             "jump": 0.25, "duck_walk": 0.15}.get(style, 0.3)
    speed *= 1.0 + 0.15 * rng.standard_normal()
    stride_hz = (2.2 if style == "run" else 1.4) * (1 + 0.1 * rng.standard_normal())
    turn_rate = 0.0
    if style == "turn_left":
        turn_rate = np.radians(0.8 + 0.4 * rng.random())
    elif style == "turn_right":
        turn_rate = -np.radians(0.8 + 0.4 * rng.random())
    elif style == "circle":
        turn_rate = np.radians(2.4) * (1 if index % 2 else -1)
    heading0 = rng.uniform(0, 2 * np.pi)
    hip_height = 9.0 if style == "duck_walk" else 16.2

    t = np.arange(frames)
    dt = 1.0 / 120.0
    phase = 2 * np.pi * stride_hz * t * dt

    heading = heading0 + turn_rate * t
    if style == "zigzag":
        heading = heading0 + np.radians(35) * np.sin(2 * np.pi * 0.25 * t * dt)
    step = speed * np.stack([np.sin(heading), np.cos(heading)], axis=1)
    xz = np.cumsum(step, axis=0)

    y = hip_height + 0.5 * np.sin(2 * phase)
    if style == "jump":
        hop = np.maximum(0.0, np.sin(2 * np.pi * 0.6 * t * dt))
        y = hip_height + 6.0 * hop ** 2

    data = np.zeros((frames, skel.total_channels))

    def set_channel(joint: str, channel: str, values) -> None:
        start = skel.channel_slice(skel.joint_index(joint)).start
        offset = skel.joints[skel.joint_index(joint)].channels.index(channel)
        data[:, start + offset] = values

    set_channel("Hips", "Xposition", xz[:, 0])
    set_channel("Hips", "Yposition", y)
    set_channel("Hips", "Zposition", xz[:, 1])
    set_channel("Hips", "Yrotation", np.degrees(heading))
    set_channel("Hips", "Zrotation", 2.0 * np.sin(phase))
    set_channel("Hips", "Xrotation", 18.0 if style == "duck_walk" else 3.0 * np.sin(2 * phase))

    leg_amp = {"run": 42.0, "jump": 20.0, "duck_walk": 35.0}.get(style, 27.0)
    set_channel("LeftUpLeg", "Xrotation", leg_amp * np.sin(phase))
    set_channel("RightUpLeg", "Xrotation", -leg_amp * np.sin(phase))
    set_channel("LeftLeg", "Xrotation", np.maximum(0, 35.0 * np.sin(phase + 0.9)))
    set_channel("RightLeg", "Xrotation", np.maximum(0, 35.0 * np.sin(phase + 0.9 + np.pi)))
    set_channel("LeftFoot", "Xrotation", -8.0 * np.sin(phase))
    set_channel("RightFoot", "Xrotation", 8.0 * np.sin(phase))

    # Upper-body overlay: pick among distinct arm/head behaviours so local
    # trajectories differ meaningfully between entries.
    overlay = index % 4
    arm_amp = 18.0 + 6.0 * rng.random()
    if overlay == 0:  # relaxed counter-swing
        set_channel("LeftArm", "Xrotation", -arm_amp * np.sin(phase))
        set_channel("RightArm", "Xrotation", arm_amp * np.sin(phase))
        set_channel("LeftForeArm", "Xrotation", -12.0 + 6.0 * np.sin(phase))
        set_channel("RightForeArm", "Xrotation", -12.0 - 6.0 * np.sin(phase))
    elif overlay == 1:  # right-hand wave overhead
        set_channel("RightArm", "Zrotation", 120.0 + 12.0 * np.sin(3 * phase))
        set_channel("RightForeArm", "Zrotation", 25.0 * np.sin(3 * phase))
        set_channel("LeftArm", "Xrotation", -arm_amp * np.sin(phase))
    elif overlay == 2:  # zombie reach
        set_channel("LeftArm", "Xrotation", -78.0 + 5.0 * np.sin(phase))
        set_channel("RightArm", "Xrotation", -78.0 - 5.0 * np.sin(phase))
        set_channel("LeftForeArm", "Yrotation", 10.0 * np.sin(2 * phase))
    else:  # big circular swing, head scan
        set_channel("LeftArm", "Xrotation", -50.0 * np.sin(phase))
        set_channel("LeftArm", "Zrotation", 30.0 * np.cos(phase))
        set_channel("RightArm", "Xrotation", 50.0 * np.sin(phase))
        set_channel("Neck", "Yrotation", 30.0 * np.sin(0.7 * phase))
    set_channel("Head", "Yrotation", 8.0 * np.sin(0.5 * phase + rng.uniform(0, np.pi)))
    set_channel("Spine", "Yrotation", 5.0 * np.sin(phase))

    return Motion(skel, dt, data, id=f"demo_{index:03d}", label=style)


def write_demo_corpus(outdir: str | Path, count: int = 55, frames: int = 160) -> list[Path]:
    """Write ``count`` BVH files plus a roles.json mapping into ``outdir``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    skel = demo_skeleton()
    paths = []
    labels = {}
    for i in range(count):
        motion = demo_motion(i, frames=frames, skeleton=skel)
        path = outdir / f"{motion.id}.bvh"
        path.write_text(write_bvh(motion))
        labels[motion.id] = motion.label
        paths.append(path)
    roles = dict(DEMO_ROLES, labels=labels)
    (outdir / "roles.json").write_text(json.dumps(roles, indent=2, sort_keys=True) + "\n")
    return paths
