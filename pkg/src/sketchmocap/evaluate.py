"""Mean squared Euler-angle error between a designed and a reference motion.

For each frame t and joint i, the joint's rotation channels form an angle
vector x_i(t) in degrees; the score is the mean over frames and joints of
the squared Euclidean difference ||x_i(t) - x'_i(t)||^2.  Root position
channels never enter the sum.  Differences are taken on raw angle values;
an optional wrap-aware mode folds them into (-180, 180] first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bvh import Motion
from .errors import EvaluationError


@dataclass(frozen=True)
class EvalReport:
    """Angle MSE (degrees squared) with its per-joint breakdown."""

    mse: float
    per_joint: dict[str, float]
    frame_count: int
    joint_count: int
    elapsed_seconds: float | None = None
    operation_count: int | None = None

    def top_offenders(self, count: int = 5) -> list[tuple[str, float]]:
        ranked = sorted(self.per_joint.items(), key=lambda kv: (-kv[1], kv[0]))
        return ranked[:count]

    def to_json(self) -> dict:
        payload = {
            "mse": self.mse,
            "per_joint": dict(self.per_joint),
            "frame_count": self.frame_count,
            "joint_count": self.joint_count,
        }
        if self.elapsed_seconds is not None:
            payload["elapsed_seconds"] = self.elapsed_seconds
        if self.operation_count is not None:
            payload["operation_count"] = self.operation_count
        return payload


def _wrap_degrees(diff: np.ndarray) -> np.ndarray:
    return (diff + 180.0) % 360.0 - 180.0


def mse_report(
    designed: Motion,
    reference: Motion,
    wrap_degrees: bool = False,
    elapsed_seconds: float | None = None,
    operation_count: int | None = None,
) -> EvalReport:
    """Score a designed motion against a reference on the same skeleton.

    Raises EvaluationError when skeletons or frame counts differ.
    """
    skel = designed.skeleton
    if not skel.same_structure(reference.skeleton):
        raise EvaluationError("motions have different skeletons")
    if designed.frame_count != reference.frame_count:
        raise EvaluationError(
            f"frame counts differ: {designed.frame_count} vs {reference.frame_count}"
        )
    per_joint: dict[str, float] = {}
    for j, joint in enumerate(skel.joints):
        columns = list(skel.rotation_columns(j))
        if not columns:
            continue
        diff = designed.frames[:, columns] - reference.frames[:, columns]
        if wrap_degrees:
            diff = _wrap_degrees(diff)
        per_joint[joint.name] = float(np.mean(np.sum(diff * diff, axis=1)))
    if not per_joint:
        raise EvaluationError("skeleton has no rotation channels to compare")
    return EvalReport(
        mse=float(np.mean(list(per_joint.values()))),
        per_joint=per_joint,
        frame_count=designed.frame_count,
        joint_count=len(per_joint),
        elapsed_seconds=elapsed_seconds,
        operation_count=operation_count,
    )
