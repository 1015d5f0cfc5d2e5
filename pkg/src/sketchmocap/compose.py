"""Motion synthesis by grafting limb subtrees onto a global motion.

The composed result keeps the global motion's root channels and everything
outside the assigned subtrees; inside a subtree, every rotation channel is
copied frame-by-frame from the source motion.  Positional channels are
never copied.  No blending happens at subtree boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .bvh import Motion, Skeleton
from .dataset import LOCAL_ROLES, DatasetIndex, RoleMap
from .errors import AssignmentConflictError, CompositionError, RoleMappingError


def affected_joints(skeleton: Skeleton, role: str, roles: RoleMap) -> tuple[str, ...]:
    """Joint names whose rotations a role overwrites, in skeleton order.

    Hands own their shoulder subtree; the head owns the neck chain minus
    any shoulder subtree nested under it, keeping the three sets disjoint.
    """
    if role not in LOCAL_ROLES:
        raise RoleMappingError(f"role {role!r} is not composable")
    anchor = roles.anchors[role]
    names = skeleton.joint_names()
    if anchor not in names:
        raise RoleMappingError(f"anchor joint {anchor!r} not present in skeleton")
    joints = set(skeleton.descendants(skeleton.joint_index(anchor)))
    if role == "head":
        for other in ("left_hand", "right_hand"):
            other_anchor = roles.anchors.get(other)
            if other_anchor in names:
                joints -= set(skeleton.descendants(skeleton.joint_index(other_anchor)))
    return tuple(names[i] for i in sorted(joints))


@dataclass(frozen=True)
class LimbAssignment:
    """One grafting decision: which subtree comes from which motion."""

    role: str
    motion_id: str
    joints: tuple[str, ...]


def make_assignment(
    skeleton: Skeleton, role: str, motion_id: str, roles: RoleMap
) -> LimbAssignment:
    return LimbAssignment(
        role=role, motion_id=motion_id, joints=affected_joints(skeleton, role, roles)
    )


def compose(
    global_motion: Motion, assignments: list[LimbAssignment], index: DatasetIndex
) -> Motion:
    """Overwrite assigned subtree rotations of the global motion.

    All motions must share skeleton structure and frame count; assignment
    subtrees must be disjoint and must not touch the root.
    """
    skel = global_motion.skeleton
    seen_roles = set()
    claimed: dict[str, str] = {}
    for a in assignments:
        if a.role in seen_roles:
            raise AssignmentConflictError(f"role {a.role!r} assigned twice")
        seen_roles.add(a.role)
        for name in a.joints:
            if name in claimed:
                raise AssignmentConflictError(
                    f"joint {name!r} claimed by both {claimed[name]!r} and {a.role!r}"
                )
            claimed[name] = a.role
    root_name = skel.joints[0].name
    if root_name in claimed:
        raise AssignmentConflictError("an assignment subtree includes the root joint")

    frames = np.array(global_motion.frames)
    for a in assignments:
        source = index.entry(a.motion_id).motion
        if not skel.same_structure(source.skeleton):
            raise CompositionError(
                f"source {a.motion_id!r} has a different skeleton than the global motion"
            )
        if source.frame_count != global_motion.frame_count:
            raise CompositionError(
                f"source {a.motion_id!r} has {source.frame_count} frames, "
                f"global has {global_motion.frame_count}"
            )
        for name in a.joints:
            for column in skel.rotation_columns(skel.joint_index(name)):
                frames[:, column] = source.frames[:, column]
    return global_motion.with_frames(frames)


@dataclass(frozen=True)
class CompositionState:
    """Accumulated selections of a design session: one global motion plus
    at most one limb assignment per role."""

    global_id: str | None = None
    assignments: dict[str, LimbAssignment] = field(default_factory=dict)

    def with_global(self, motion_id: str) -> "CompositionState":
        return replace(self, global_id=motion_id)

    def with_assignment(self, assignment: LimbAssignment) -> "CompositionState":
        updated = dict(self.assignments)
        updated[assignment.role] = assignment
        return replace(self, assignments=updated)

    def result(self, index: DatasetIndex) -> Motion:
        if self.global_id is None:
            raise CompositionError("no global motion selected")
        global_motion = index.entry(self.global_id).motion
        return compose(global_motion, list(self.assignments.values()), index)

    def to_json(self) -> dict:
        return {
            "global": self.global_id,
            "assignments": {
                role: {"motion_id": a.motion_id, "joints": list(a.joints)}
                for role, a in sorted(self.assignments.items())
            },
        }
