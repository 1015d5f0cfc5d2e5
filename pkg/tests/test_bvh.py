import numpy as np
import pytest

from helpers import motions_structurally_equal

from sketchmocap import load_bvh, parse_bvh, write_bvh
from sketchmocap.errors import BvhParseError, BvhStructureError

TWO_JOINT_DOC = """\
HIERARCHY
ROOT Hips
{
\tOFFSET 0.0 0.0 0.0
\tCHANNELS 6 Xposition Yposition Zposition Zrotation Xrotation Yrotation
\tJOINT Chest
\t{
\t\tOFFSET 0.0 1.0 0.0
\t\tCHANNELS 3 Zrotation Xrotation Yrotation
\t\tEnd Site
\t\t{
\t\t\tOFFSET 0.0 1.0 0.0
\t\t}
\t}
}
MOTION
Frames: 1
Frame Time: 0.0083333
0 0 0 0 0 0 0 0 0
"""


def test_two_joint_zero_document():
    motion = parse_bvh(TWO_JOINT_DOC)
    assert motion.skeleton.total_channels == 9
    assert motion.frame_count == 1
    assert np.all(motion.frames == 0.0)
    assert motion.skeleton.joint_names() == ("Hips", "Chest")
    assert motion.skeleton.joints[1].parent == 0
    assert np.allclose(motion.skeleton.joints[1].end_site, [0, 1, 0])


def test_cmu_frame_time_preserved():
    motion = parse_bvh(TWO_JOINT_DOC)
    assert motion.frame_time == 0.0083333


def test_channel_order_preserved_exactly():
    motion = parse_bvh(TWO_JOINT_DOC)
    assert motion.skeleton.joints[0].channels == (
        "Xposition", "Yposition", "Zposition",
        "Zrotation", "Xrotation", "Yrotation",
    )


def test_zero_motion_writes_00000_tokens():
    motion = parse_bvh(TWO_JOINT_DOC)
    text = write_bvh(motion)
    rows = text.splitlines()[text.splitlines().index("Frame Time: 0.0083333") + 1 :]
    assert rows == ["0.0000 0.0000 0.0000 0.0000 0.0000 0.0000 0.0000 0.0000 0.0000"]


def test_metadata_lines_match_motion():
    motion = parse_bvh(TWO_JOINT_DOC)
    lines = write_bvh(motion).splitlines()
    assert f"Frames: {motion.frame_count}" in lines
    assert f"Frame Time: {motion.frame_time!r}" in lines


def test_roundtrip_over_corpus(corpus_dir):
    files = sorted(corpus_dir.glob("*.bvh"))
    assert len(files) >= 5
    for path in files:
        first = load_bvh(path)
        second = parse_bvh(write_bvh(first), id=first.id)
        assert motions_structurally_equal(first, second, value_tol=1e-4), path.name


def test_roundtrip_is_stable_after_one_pass(corpus_dir):
    # after one write, values are exactly representable at 4 decimals
    path = sorted(corpus_dir.glob("*.bvh"))[0]
    once = parse_bvh(write_bvh(load_bvh(path)))
    twice = parse_bvh(write_bvh(once))
    assert np.array_equal(once.frames, twice.frames)


def test_unbalanced_braces_reports_line():
    broken = TWO_JOINT_DOC.replace("\t}\n}\nMOTION", "\t}\nMOTION")
    with pytest.raises(BvhParseError) as err:
        parse_bvh(broken)
    assert err.value.line is not None
    assert "line" in str(err.value)


def test_missing_offset_rejected():
    broken = TWO_JOINT_DOC.replace("\t\tOFFSET 0.0 1.0 0.0\n\t\tCHANNELS", "\t\tCHANNELS")
    with pytest.raises(BvhParseError):
        parse_bvh(broken)


def test_missing_channels_rejected():
    broken = "\n".join(
        line for line in TWO_JOINT_DOC.splitlines() if not line.startswith("\t\tCHANNELS")
    )
    with pytest.raises(BvhParseError):
        parse_bvh(broken)


def test_frame_count_mismatch_is_structural_error():
    broken = TWO_JOINT_DOC.replace("Frames: 1", "Frames: 2")
    with pytest.raises(BvhStructureError):
        parse_bvh(broken)


def test_row_length_mismatch_is_structural_error():
    broken = TWO_JOINT_DOC.replace("0 0 0 0 0 0 0 0 0", "0 0 0 0 0 0 0 0")
    with pytest.raises(BvhStructureError):
        parse_bvh(broken)


def test_non_numeric_row_rejected():
    broken = TWO_JOINT_DOC.replace("0 0 0 0 0 0 0 0 0", "0 0 0 0 x 0 0 0 0")
    with pytest.raises(BvhStructureError):
        parse_bvh(broken)


def test_duplicate_joint_names_rejected():
    broken = TWO_JOINT_DOC.replace("JOINT Chest", "JOINT Hips")
    with pytest.raises(BvhStructureError):
        parse_bvh(broken)


def test_root_without_position_channels_rejected():
    broken = TWO_JOINT_DOC.replace(
        "CHANNELS 6 Xposition Yposition Zposition Zrotation Xrotation Yrotation",
        "CHANNELS 3 Zrotation Xrotation Yrotation",
    ).replace("0 0 0 0 0 0 0 0 0", "0 0 0 0 0 0")
    with pytest.raises(BvhStructureError):
        parse_bvh(broken)


def test_static_zero_channel_joint_roundtrips():
    doc = TWO_JOINT_DOC.replace(
        "\t\tCHANNELS 3 Zrotation Xrotation Yrotation", "\t\tCHANNELS 0"
    ).replace("0 0 0 0 0 0 0 0 0", "1 2 3 10 20 30")
    motion = parse_bvh(doc)
    assert motion.skeleton.total_channels == 6
    again = parse_bvh(write_bvh(motion))
    assert motions_structurally_equal(motion, again)


def test_missing_hierarchy_keyword_rejected():
    with pytest.raises(BvhParseError):
        parse_bvh(TWO_JOINT_DOC.replace("HIERARCHY\n", ""))


def test_frames_are_read_only():
    motion = parse_bvh(TWO_JOINT_DOC)
    with pytest.raises(ValueError):
        motion.frames[0, 0] = 1.0
