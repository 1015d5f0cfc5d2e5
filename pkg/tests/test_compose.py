import numpy as np
import pytest

from sketchmocap import affected_joints, compose, make_assignment
from sketchmocap.compose import CompositionState, LimbAssignment
from sketchmocap.dataset import RoleMap
from sketchmocap.errors import (
    AssignmentConflictError,
    CompositionError,
    RoleMappingError,
)

ROLE_SET = ("head", "left_hand", "right_hand")


def rotation_columns_of(skel, names):
    cols = []
    for name in names:
        cols.extend(skel.rotation_columns(skel.joint_index(name)))
    return cols


def test_empty_assignment_is_identity(index):
    motion = index.entries[0].motion
    out = compose(motion, [], index)
    assert np.array_equal(out.frames, motion.frames)


def test_left_hand_graft_channel_diff(index, roles):
    a, b = index.entries[0], index.entries[5]
    skel = a.motion.skeleton
    assignment = make_assignment(skel, "left_hand", b.id, roles)
    out = compose(a.motion, [assignment], index)

    inside = rotation_columns_of(skel, assignment.joints)
    outside = [c for c in range(skel.total_channels) if c not in inside]
    assert np.array_equal(out.frames[:, inside], b.motion.frames[:, inside])
    assert np.array_equal(out.frames[:, outside], a.motion.frames[:, outside])


def test_root_channels_preserved_exactly(index, roles):
    a, b = index.entries[1], index.entries[7]
    skel = a.motion.skeleton
    assignments = [make_assignment(skel, role, b.id, roles) for role in ROLE_SET]
    out = compose(a.motion, assignments, index)
    root_cols = list(range(len(skel.joints[0].channels)))
    assert np.array_equal(out.frames[:, root_cols], a.motion.frames[:, root_cols])
    assert out.frame_count == a.motion.frame_count


def test_assignment_order_is_irrelevant(index, roles):
    a = index.entries[2]
    skel = a.motion.skeleton
    assignments = [
        make_assignment(skel, "head", index.entries[3].id, roles),
        make_assignment(skel, "left_hand", index.entries[4].id, roles),
        make_assignment(skel, "right_hand", index.entries[5].id, roles),
    ]
    forward = compose(a.motion, assignments, index)
    backward = compose(a.motion, assignments[::-1], index)
    assert np.array_equal(forward.frames, backward.frames)


def test_reassignment_is_idempotent(index, roles):
    a, b = index.entries[0], index.entries[6]
    skel = a.motion.skeleton
    assignment = make_assignment(skel, "right_hand", b.id, roles)
    once = compose(a.motion, [assignment], index)
    twice = compose(once, [assignment], index)
    assert np.array_equal(once.frames, twice.frames)


def test_affected_joints_on_corpus_skeleton(index, roles):
    skel = index.entries[0].motion.skeleton
    assert affected_joints(skel, "left_hand", roles) == (
        "LeftShoulder", "LeftArm", "LeftForeArm", "LeftHand",
    )
    assert affected_joints(skel, "right_hand", roles) == (
        "RightShoulder", "RightArm", "RightForeArm", "RightHand",
    )
    assert affected_joints(skel, "head", roles) == ("Neck", "Head")


def test_role_subtrees_are_pairwise_disjoint(index, roles):
    skel = index.entries[0].motion.skeleton
    sets = [set(affected_joints(skel, role, roles)) for role in ROLE_SET]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            assert not sets[i] & sets[j]


def test_head_excludes_nested_shoulders(index, roles):
    # anchor the head at the chest so both shoulder chains nest under it
    skel = index.entries[0].motion.skeleton
    wide = RoleMap(tracked=dict(roles.tracked), anchors=dict(roles.anchors, head="Spine1"))
    head_joints = set(affected_joints(skel, "head", wide))
    assert "Spine1" in head_joints and "Neck" in head_joints and "Head" in head_joints
    assert not head_joints & set(affected_joints(skel, "left_hand", wide))
    assert not head_joints & set(affected_joints(skel, "right_hand", wide))


def test_missing_anchor_is_mapping_error(index, roles):
    skel = index.entries[0].motion.skeleton
    broken = RoleMap(
        tracked=dict(roles.tracked),
        anchors=dict(roles.anchors, left_hand="NoSuchJoint"),
    )
    with pytest.raises(RoleMappingError):
        affected_joints(skel, "left_hand", broken)


def test_duplicate_role_rejected(index, roles):
    a = index.entries[0]
    skel = a.motion.skeleton
    assignment = make_assignment(skel, "head", index.entries[1].id, roles)
    with pytest.raises(AssignmentConflictError):
        compose(a.motion, [assignment, assignment], index)


def test_overlapping_subtrees_rejected(index):
    a = index.entries[0]
    overlap = [
        LimbAssignment(role="left_hand", motion_id=index.entries[1].id,
                       joints=("LeftShoulder", "LeftArm")),
        LimbAssignment(role="head", motion_id=index.entries[2].id,
                       joints=("Neck", "LeftArm")),
    ]
    with pytest.raises(AssignmentConflictError):
        compose(a.motion, overlap, index)


def test_root_in_subtree_rejected(index):
    a = index.entries[0]
    bad = [LimbAssignment(role="head", motion_id=index.entries[1].id, joints=("Hips",))]
    with pytest.raises(AssignmentConflictError):
        compose(a.motion, bad, index)


def test_frame_count_mismatch_rejected(index, roles):
    a = index.entries[0]
    skel = a.motion.skeleton
    shorter = a.motion.with_frames(a.motion.frames[:50])
    assignment = make_assignment(skel, "head", index.entries[1].id, roles)
    with pytest.raises(CompositionError):
        compose(shorter, [assignment], index)


def test_skeleton_mismatch_rejected(index, roles, tmp_path):
    from helpers import chain_motion

    other = chain_motion(
        ["Hips", "Neck"], [(0, 0, 0), (0, 1, 0)],
        np.zeros((100, 9)),
    )
    assignment = LimbAssignment(role="head", motion_id=index.entries[0].id, joints=("Neck",))
    with pytest.raises(CompositionError):
        compose(other, [assignment], index)


def test_composition_state_accumulates(index, roles):
    skel = index.entries[0].motion.skeleton
    state = CompositionState().with_global(index.entries[0].id)
    state = state.with_assignment(make_assignment(skel, "head", index.entries[1].id, roles))
    state = state.with_assignment(make_assignment(skel, "head", index.entries[2].id, roles))
    assert state.assignments["head"].motion_id == index.entries[2].id
    result = state.result(index)
    assert result.frame_count == index.frame_count
    payload = state.to_json()
    assert payload["global"] == index.entries[0].id
    assert payload["assignments"]["head"]["motion_id"] == index.entries[2].id


def test_composition_state_requires_global(index):
    with pytest.raises(CompositionError):
        CompositionState().result(index)
