"""Shared test oracles and small builders, independent of the code under test."""

import numpy as np

from sketchmocap.bvh import Joint, Motion, Skeleton

ROOT_CHANNELS = (
    "Xposition", "Yposition", "Zposition", "Zrotation", "Xrotation", "Yrotation",
)
ZXY = ("Zrotation", "Xrotation", "Yrotation")


def chain_skeleton(names, offsets, root_channels=ROOT_CHANNELS, child_channels=ZXY):
    """A straight parent-child chain, for hand-checkable FK fixtures."""
    joints = [
        Joint(
            name=name,
            parent=None if i == 0 else i - 1,
            offset=np.asarray(offset, dtype=float),
            channels=root_channels if i == 0 else child_channels,
        )
        for i, (name, offset) in enumerate(zip(names, offsets))
    ]
    return Skeleton(joints)


def chain_motion(names, offsets, frames, frame_time=0.0083333, **kwargs):
    return Motion(chain_skeleton(names, offsets), frame_time, np.asarray(frames, float), **kwargs)


def frechet_bruteforce(a, b):
    """Exhaustive enumeration of every monotone coupling.

    Walks all lattice paths from (0,0) to (n-1,m-1) with right/down/diagonal
    steps, taking the max pair distance along each path and the min over
    paths.  Exponential; only usable for short polylines, which is the point:
    it shares no logic with the dynamic program it checks.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n, m = len(a), len(b)
    dist = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2).tolist()
    best = [float("inf")]

    def walk(i, j, running_max):
        d = dist[i][j]
        if d > running_max:
            running_max = d
        if i == n - 1 and j == m - 1:
            if running_max < best[0]:
                best[0] = running_max
            return
        if i + 1 < n:
            walk(i + 1, j, running_max)
        if j + 1 < m:
            walk(i, j + 1, running_max)
        if i + 1 < n and j + 1 < m:
            walk(i + 1, j + 1, running_max)

    walk(0, 0, 0.0)
    return best[0]


def point_to_polyline_distance(point, polyline):
    """Distance from a point to the nearest segment of a polyline."""
    p = np.asarray(point, dtype=float)
    pts = np.asarray(polyline, dtype=float)
    best = float("inf")
    for s, e in zip(pts[:-1], pts[1:]):
        seg = e - s
        denom = float(seg @ seg)
        t = 0.0 if denom == 0.0 else float(np.clip((p - s) @ seg / denom, 0.0, 1.0))
        best = min(best, float(np.linalg.norm(p - (s + t * seg))))
    return best


def motions_structurally_equal(a, b, value_tol=1e-4):
    """Round-trip oracle: structure exact, channel values within tolerance."""
    sa, sb = a.skeleton, b.skeleton
    if len(sa) != len(sb):
        return False
    for ja, jb in zip(sa.joints, sb.joints):
        if ja.name != jb.name or ja.parent != jb.parent or ja.channels != jb.channels:
            return False
        if np.max(np.abs(ja.offset - jb.offset)) > value_tol:
            return False
        if (ja.end_site is None) != (jb.end_site is None):
            return False
        if ja.end_site is not None and np.max(np.abs(ja.end_site - jb.end_site)) > value_tol:
            return False
    if a.frame_count != b.frame_count or a.frame_time != b.frame_time:
        return False
    return np.max(np.abs(a.frames - b.frames)) <= value_tol


def scipy_local_rotation(channels, values):
    """Independent per-joint rotation oracle built on scipy."""
    from scipy.spatial.transform import Rotation

    order = "".join(c[0] for c in channels if c.endswith("rotation"))
    angles = [v for c, v in zip(channels, values) if c.endswith("rotation")]
    if not order:
        return np.eye(3)
    return Rotation.from_euler(order, angles, degrees=True).as_matrix()


def scipy_fk(motion, frame):
    """Independent whole-pose FK oracle: scipy rotations, per-joint recursion."""
    skel = motion.skeleton
    row = motion.frames[frame]
    positions = np.zeros((len(skel), 3))
    rotations = np.zeros((len(skel), 3, 3))
    for j, joint in enumerate(skel.joints):
        values = row[skel.channel_slice(j)]
        local = scipy_local_rotation(joint.channels, values)
        if joint.parent is None:
            translation = np.zeros(3)
            for channel, v in zip(joint.channels, values):
                if channel.endswith("position"):
                    translation["XYZ".index(channel[0])] = v
            positions[j] = joint.offset + translation
            rotations[j] = local
        else:
            p = joint.parent
            rotations[j] = rotations[p] @ local
            positions[j] = positions[p] + rotations[p] @ joint.offset
    return positions, rotations
