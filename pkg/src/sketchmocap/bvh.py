"""BVH motion-capture data: skeleton/motion types, parser, and writer.

The supported profile is the common two-section grammar: a HIERARCHY of
ROOT/JOINT/End Site blocks (OFFSET + CHANNELS per joint) followed by a
MOTION block with a Frames: count, a Frame Time: line, and one
whitespace-separated row of channel values per frame.  The root joint
carries 3 position + 3 rotation channels; every other joint carries only
rotation channels.  Angles are degrees, rotations compose in the exact
order the CHANNELS line declares them.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BvhParseError, BvhStructureError

POSITION_CHANNELS = ("Xposition", "Yposition", "Zposition")
ROTATION_CHANNELS = ("Xrotation", "Yrotation", "Zrotation")
_VALID_CHANNELS = set(POSITION_CHANNELS) | set(ROTATION_CHANNELS)

AXIS_INDEX = {"X": 0, "Y": 1, "Z": 2}


@dataclass(frozen=True, eq=False)
class Joint:
    """One node of the hierarchy.  ``parent`` is an index into the joint
    list (None for the root); ``end_site`` is the optional terminal offset."""

    name: str
    parent: int | None
    offset: np.ndarray
    channels: tuple[str, ...]
    end_site: np.ndarray | None = None

    @property
    def rotation_channels(self) -> tuple[str, ...]:
        return tuple(c for c in self.channels if c.endswith("rotation"))

    @property
    def position_channels(self) -> tuple[str, ...]:
        return tuple(c for c in self.channels if c.endswith("position"))


class Skeleton:
    """Validated joint hierarchy with channel bookkeeping.

    Joints are ordered so every parent precedes its children; exactly one
    root exists and sits at index 0.  Instances are immutable after
    construction and safe to share across threads.
    """

    def __init__(self, joints: list[Joint] | tuple[Joint, ...]):
        joints = tuple(joints)
        if not joints:
            raise BvhStructureError("skeleton has no joints")
        names = [j.name for j in joints]
        if len(set(names)) != len(names):
            raise BvhStructureError("joint names are not unique")
        roots = [i for i, j in enumerate(joints) if j.parent is None]
        if roots != [0]:
            raise BvhStructureError(
                f"expected exactly one root at index 0, found roots at {roots}"
            )
        for i, joint in enumerate(joints):
            if i == 0:
                continue
            if not isinstance(joint.parent, int) or not 0 <= joint.parent < i:
                raise BvhStructureError(
                    f"joint {joint.name!r}: parent index must precede the joint"
                )
        root = joints[0]
        if len(root.position_channels) != 3 or len(root.rotation_channels) != 3:
            raise BvhStructureError(
                "root joint must carry 3 position + 3 rotation channels"
            )
        for joint in joints[1:]:
            # static (0-channel) joints are fine; position channels are not
            if joint.position_channels:
                raise BvhStructureError(
                    f"non-root joint {joint.name!r} declares position channels"
                )
        for joint in joints:
            if len(set(joint.channels)) != len(joint.channels):
                raise BvhStructureError(f"joint {joint.name!r} repeats a channel")
            bad = set(joint.channels) - _VALID_CHANNELS
            if bad:
                raise BvhStructureError(f"joint {joint.name!r}: unknown channels {bad}")

        self.joints = joints
        self._index = {j.name: i for i, j in enumerate(joints)}
        offsets, total = [], 0
        for j in joints:
            offsets.append(total)
            total += len(j.channels)
        self._channel_offsets = tuple(offsets)
        self.total_channels = total
        self.children: tuple[tuple[int, ...], ...] = tuple(
            tuple(i for i, j in enumerate(joints) if j.parent == parent)
            for parent in range(len(joints))
        )

    def __len__(self) -> int:
        return len(self.joints)

    def joint_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown joint {name!r}") from None

    def joint_names(self) -> tuple[str, ...]:
        return tuple(j.name for j in self.joints)

    def channel_slice(self, joint: int) -> slice:
        """Columns of the frame matrix owned by this joint."""
        start = self._channel_offsets[joint]
        return slice(start, start + len(self.joints[joint].channels))

    def rotation_columns(self, joint: int) -> tuple[int, ...]:
        start = self._channel_offsets[joint]
        return tuple(
            start + k
            for k, c in enumerate(self.joints[joint].channels)
            if c.endswith("rotation")
        )

    def position_columns(self, joint: int) -> tuple[int, ...]:
        start = self._channel_offsets[joint]
        return tuple(
            start + k
            for k, c in enumerate(self.joints[joint].channels)
            if c.endswith("position")
        )

    def descendants(self, joint: int) -> tuple[int, ...]:
        """The joint itself plus everything below it, in skeleton order."""
        keep = {joint}
        for i in range(joint + 1, len(self.joints)):
            if self.joints[i].parent in keep:
                keep.add(i)
        return tuple(sorted(keep))

    def same_structure(self, other: "Skeleton") -> bool:
        """Name/ordering/channel-layout equality; offsets are free to differ."""
        if len(self) != len(other):
            return False
        return all(
            a.name == b.name and a.parent == b.parent and a.channels == b.channels
            for a, b in zip(self.joints, other.joints)
        )


class Motion:
    """A skeleton plus its per-frame channel table (rotations in degrees)."""

    def __init__(
        self,
        skeleton: Skeleton,
        frame_time: float,
        frames: np.ndarray,
        id: str = "",
        label: str = "",
    ):
        frames = np.array(frames, dtype=np.float64)
        if frames.ndim != 2:
            raise BvhStructureError("frames must be a 2D table")
        if frames.shape[0] < 1:
            raise BvhStructureError("motion needs at least one frame")
        if frames.shape[1] != skeleton.total_channels:
            raise BvhStructureError(
                f"frame rows have {frames.shape[1]} values, "
                f"skeleton declares {skeleton.total_channels} channels"
            )
        if not frame_time > 0:
            raise BvhStructureError("frame_time must be positive")
        frames.setflags(write=False)
        self.skeleton = skeleton
        self.frame_time = float(frame_time)
        self.frames = frames
        self.id = id
        self.label = label

    @property
    def frame_count(self) -> int:
        return self.frames.shape[0]

    def with_frames(self, frames: np.ndarray, id: str | None = None) -> "Motion":
        return Motion(
            self.skeleton,
            self.frame_time,
            frames,
            id=self.id if id is None else id,
            label=self.label,
        )


class _Lines:
    """Token cursor over the non-empty lines of a document, tracking the
    1-based line number for error reporting."""

    def __init__(self, text: str):
        self.items = [
            (no, line.split())
            for no, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        ]
        self.pos = 0

    def peek(self) -> tuple[int, list[str]] | None:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self, expect: str | None = None) -> tuple[int, list[str]]:
        item = self.peek()
        if item is None:
            raise BvhParseError(
                f"unexpected end of document (expected {expect or 'more input'})"
            )
        self.pos += 1
        return item


def _parse_offset(tokens: list[str], line: int) -> np.ndarray:
    if tokens[0] != "OFFSET" or len(tokens) != 4:
        raise BvhParseError("expected 'OFFSET x y z'", line)
    try:
        return np.array([float(t) for t in tokens[1:]])
    except ValueError:
        raise BvhParseError("OFFSET values are not numbers", line) from None


def _parse_joint_block(
    lines: _Lines, joints: list[Joint], parent: int | None, header: list[str], header_line: int
) -> None:
    """Parse one ROOT/JOINT block (recursively), appending to ``joints``."""
    if len(header) < 2:
        raise BvhParseError(f"{header[0]} is missing a joint name", header_line)
    name = " ".join(header[1:])
    line, tokens = lines.next("'{'")
    if tokens != ["{"]:
        raise BvhParseError(f"expected '{{' after {header[0]} {name}", line)
    line, tokens = lines.next("OFFSET")
    offset = _parse_offset(tokens, line)
    line, tokens = lines.next("CHANNELS")
    if tokens[0] != "CHANNELS" or len(tokens) < 2:
        raise BvhParseError("expected 'CHANNELS n ...'", line)
    try:
        declared = int(tokens[1])
    except ValueError:
        raise BvhParseError("CHANNELS count is not an integer", line) from None
    channels = tuple(tokens[2:])
    if len(channels) != declared:
        raise BvhParseError(
            f"CHANNELS declares {declared} names but lists {len(channels)}", line
        )
    bad = set(channels) - _VALID_CHANNELS
    if bad:
        raise BvhParseError(f"unknown channel names {sorted(bad)}", line)

    index = len(joints)
    joints.append(Joint(name=name, parent=parent, offset=offset, channels=channels))

    end_site = None
    while True:
        line, tokens = lines.next("'}' or child block")
        if tokens == ["}"]:
            break
        if tokens[0] == "JOINT":
            _parse_joint_block(lines, joints, index, tokens, line)
        elif tokens[0] == "End":
            if end_site is not None:
                raise BvhParseError(f"joint {name!r} has multiple End Sites", line)
            line2, tokens2 = lines.next("'{'")
            if tokens2 != ["{"]:
                raise BvhParseError("expected '{' after End Site", line2)
            line2, tokens2 = lines.next("OFFSET")
            end_site = _parse_offset(tokens2, line2)
            line2, tokens2 = lines.next("'}'")
            if tokens2 != ["}"]:
                raise BvhParseError("expected '}' closing End Site", line2)
        else:
            raise BvhParseError(
                f"unexpected token {tokens[0]!r} inside joint {name!r}", line
            )
    if end_site is not None:
        joints[index] = Joint(
            name=name, parent=parent, offset=offset, channels=channels, end_site=end_site
        )


def parse_bvh(text: str, id: str = "", label: str = "") -> Motion:
    """Parse a BVH document into a Motion.

    Raises BvhParseError (with line number) for malformed hierarchy or
    header lines, BvhStructureError when the frame table does not match the
    declared channel count or frame count.
    """
    lines = _Lines(text)
    line, tokens = lines.next("HIERARCHY")
    if tokens != ["HIERARCHY"]:
        raise BvhParseError("document must start with HIERARCHY", line)
    line, tokens = lines.next("ROOT")
    if tokens[0] != "ROOT":
        raise BvhParseError("expected ROOT after HIERARCHY", line)
    joints: list[Joint] = []
    _parse_joint_block(lines, joints, None, tokens, line)

    line, tokens = lines.next("MOTION")
    if tokens[0] == "ROOT":
        raise BvhParseError("multiple ROOT blocks are not supported", line)
    if tokens != ["MOTION"]:
        raise BvhParseError("expected MOTION after the hierarchy", line)
    line, tokens = lines.next("Frames:")
    if tokens[0] != "Frames:" or len(tokens) != 2:
        raise BvhParseError("expected 'Frames: N'", line)
    try:
        declared_frames = int(tokens[1])
    except ValueError:
        raise BvhParseError("frame count is not an integer", line) from None
    line, tokens = lines.next("Frame Time:")
    if tokens[:2] != ["Frame", "Time:"] or len(tokens) != 3:
        raise BvhParseError("expected 'Frame Time: t'", line)
    try:
        frame_time = float(tokens[2])
    except ValueError:
        raise BvhParseError("frame time is not a number", line) from None

    skeleton = Skeleton(joints)
    rows = []
    while lines.peek() is not None:
        line, tokens = lines.next()
        try:
            row = [float(t) for t in tokens]
        except ValueError:
            raise BvhStructureError(
                f"line {line}: frame row contains a non-numeric token"
            ) from None
        if len(row) != skeleton.total_channels:
            raise BvhStructureError(
                f"line {line}: frame row has {len(row)} values, "
                f"expected {skeleton.total_channels}"
            )
        rows.append(row)
    if len(rows) != declared_frames:
        raise BvhStructureError(
            f"MOTION declares {declared_frames} frames but {len(rows)} rows follow"
        )
    return Motion(skeleton, frame_time, np.array(rows), id=id, label=label)


def load_bvh(path: str | Path, label: str = "") -> Motion:
    path = Path(path)
    return parse_bvh(path.read_text(), id=path.stem, label=label)


def _format_offset(offset: np.ndarray) -> str:
    return " ".join(f"{v:.6f}" for v in offset)


def _write_joint(out: list[str], skeleton: Skeleton, joint: int, depth: int) -> None:
    j = skeleton.joints[joint]
    tag = "ROOT" if j.parent is None else "JOINT"
    pad = "\t" * depth
    out.append(f"{pad}{tag} {j.name}")
    out.append(f"{pad}{{")
    out.append(f"{pad}\tOFFSET {_format_offset(j.offset)}")
    channels = f" {' '.join(j.channels)}" if j.channels else ""
    out.append(f"{pad}\tCHANNELS {len(j.channels)}{channels}")
    if j.end_site is not None:
        out.append(f"{pad}\tEnd Site")
        out.append(f"{pad}\t{{")
        out.append(f"{pad}\t\tOFFSET {_format_offset(j.end_site)}")
        out.append(f"{pad}\t}}")
    for child in skeleton.children[joint]:
        _write_joint(out, skeleton, child, depth + 1)
    out.append(f"{pad}}}")


def write_bvh(motion: Motion) -> str:
    """Serialize a Motion back to BVH text.

    Channel values are written with 4 decimal places, which keeps the
    parse/write round-trip error below the 1e-4 contract; offsets use 6.
    """
    out: list[str] = ["HIERARCHY"]
    _write_joint(out, motion.skeleton, 0, 0)
    out.append("MOTION")
    out.append(f"Frames: {motion.frame_count}")
    out.append(f"Frame Time: {motion.frame_time!r}")
    for row in motion.frames:
        out.append(" ".join(f"{v:.4f}" for v in row))
    return "\n".join(out) + "\n"


def save_bvh(motion: Motion, path: str | Path) -> None:
    Path(path).write_text(write_bvh(motion))
