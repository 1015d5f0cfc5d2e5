import numpy as np
import pytest

from sketchmocap import build_entry, build_index, joint_trajectory, load_index, save_index
from sketchmocap.dataset import RoleMap
from sketchmocap.demo_data import demo_motion, write_demo_corpus
from sketchmocap.errors import DatasetBuildError, RoleMappingError, TrimError


def test_entry_trims_and_anchors_root(roles):
    motion = demo_motion(0, frames=300)
    entry = build_entry(motion, roles, start=0, frame_count=100)
    assert entry.frame_count == 100
    assert np.max(np.abs(entry.trajectories["root"].points[0])) <= 1e-6


def test_entry_with_start_offset(roles):
    motion = demo_motion(1, frames=300)
    entry = build_entry(motion, roles, start=120, frame_count=100)
    assert entry.frame_count == 100
    assert np.max(np.abs(entry.trajectories["root"].points[0])) <= 1e-6


def test_already_anchored_motion_unchanged(roles):
    motion = demo_motion(2, frames=140)
    once = build_entry(motion, roles, frame_count=100)
    twice = build_entry(once.motion, roles, frame_count=100)
    assert np.array_equal(once.motion.frames, twice.motion.frames)


def test_local_plus_root_recomposes_world(index):
    for entry in index.entries:
        root = entry.trajectories["root"].points
        for role in ("head", "left_hand", "right_hand"):
            world = entry.trajectories[role].points
            local = entry.local_trajectories[role].points
            assert np.max(np.abs(local + root - world)) <= 1e-6
            # and the stored world trajectory matches fresh forward kinematics
            joint = index.roles.tracked[role]
            fresh = joint_trajectory(entry.motion, joint).points
            assert np.max(np.abs(world - fresh)) <= 1e-6


def test_window_out_of_range(roles):
    motion = demo_motion(3, frames=90)
    with pytest.raises(TrimError):
        build_entry(motion, roles, start=0, frame_count=100)


def test_unmapped_role_rejected(roles):
    motion = demo_motion(4, frames=140)
    broken = RoleMap(
        tracked=dict(roles.tracked, head="NoSuchJoint"),
        anchors=dict(roles.anchors),
    )
    with pytest.raises(RoleMappingError):
        build_entry(motion, broken, frame_count=100)


def test_index_entry_count_and_order(index):
    assert len(index) == 12
    ids = [e.id for e in index.entries]
    assert ids == sorted(ids)
    assert len(set(ids)) == len(ids)
    assert all(e.frame_count == index.frame_count == 100 for e in index.entries)


def test_corrupt_file_is_skipped_not_fatal(tmp_path, roles):
    write_demo_corpus(tmp_path, count=1, frames=140)
    (tmp_path / "broken.bvh").write_text("HIERARCHY\nROOT oops\n")
    index = build_index(tmp_path, roles, frame_count=100)
    assert len(index) == 1
    assert len(index.skipped) == 1
    assert index.skipped[0]["source"].endswith("broken.bvh")


def test_too_short_file_is_skipped(tmp_path, roles):
    write_demo_corpus(tmp_path, count=2, frames=140)
    from sketchmocap import save_bvh
    save_bvh(demo_motion(9, frames=50), tmp_path / "short.bvh")
    index = build_index(tmp_path, roles, frame_count=100)
    assert len(index) == 2
    assert any("short.bvh" in s["source"] for s in index.skipped)


def test_empty_directory_is_an_error(tmp_path, roles):
    with pytest.raises(DatasetBuildError):
        build_index(tmp_path, roles)


def test_rebuild_is_byte_identical(tmp_path, corpus_dir, roles):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    build_index(corpus_dir, roles, frame_count=100, out=first)
    build_index(corpus_dir, roles, frame_count=100, out=second)
    assert first.read_bytes() == second.read_bytes()


def test_index_roundtrip(tmp_path, index):
    path = tmp_path / "index.json"
    save_index(index, path)
    loaded = load_index(path)
    assert len(loaded) == len(index)
    assert loaded.frame_count == index.frame_count
    assert loaded.roles == index.roles
    for a, b in zip(index.entries, loaded.entries):
        assert a.id == b.id and a.label == b.label
        assert np.array_equal(a.motion.frames, b.motion.frames)
        for role in a.trajectories:
            assert np.array_equal(a.trajectories[role].points, b.trajectories[role].points)
    # saving the loaded index reproduces the file
    again = tmp_path / "again.json"
    save_index(loaded, again)
    assert again.read_bytes() == path.read_bytes()


def test_labels_come_from_role_map(corpus_dir, index):
    import json

    labels = json.loads((corpus_dir / "roles.json").read_text())["labels"]
    for entry in index.entries:
        assert entry.label == labels[entry.id]
