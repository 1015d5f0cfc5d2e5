"""Sketch-driven motion-capture retrieval and composition engine.

Submit 2D strokes, rank database joint trajectories by Fréchet distance
under a stage camera, and graft retrieved limb motions onto a retrieved
global motion.
"""

from .bvh import Joint, Motion, Skeleton, load_bvh, parse_bvh, save_bvh, write_bvh
from .camera import (
    Camera,
    Orbit,
    Pan,
    ProjectedPolyline,
    ProjectionMap,
    SetRadius,
    Zoom,
    default_global_camera,
    default_local_camera,
    project_trajectory,
    projection_matrix,
    update_camera,
)
from .compose import (
    CompositionState,
    LimbAssignment,
    affected_joints,
    compose,
    make_assignment,
)
from .dataset import (
    DatasetEntry,
    DatasetIndex,
    RoleMap,
    build_entry,
    build_index,
    load_index,
    save_index,
)
from .evaluate import EvalReport, mse_report
from .frechet import frechet_distance
from .kinematics import Pose, Trajectory3D, forward_kinematics, joint_trajectory
from .retrieval import Candidate, RetrievalConfig, query, shadow_guidance
from .stroke import Stroke2D, resample_stroke

__version__ = "0.1.0"

__all__ = [
    "Camera",
    "Candidate",
    "CompositionState",
    "DatasetEntry",
    "DatasetIndex",
    "EvalReport",
    "Joint",
    "LimbAssignment",
    "Motion",
    "Orbit",
    "Pan",
    "Pose",
    "ProjectedPolyline",
    "ProjectionMap",
    "RetrievalConfig",
    "RoleMap",
    "SetRadius",
    "Skeleton",
    "Stroke2D",
    "Trajectory3D",
    "Zoom",
    "affected_joints",
    "build_entry",
    "build_index",
    "compose",
    "default_global_camera",
    "default_local_camera",
    "forward_kinematics",
    "frechet_distance",
    "joint_trajectory",
    "load_bvh",
    "load_index",
    "make_assignment",
    "mse_report",
    "parse_bvh",
    "project_trajectory",
    "projection_matrix",
    "query",
    "resample_stroke",
    "save_bvh",
    "save_index",
    "shadow_guidance",
    "update_camera",
    "write_bvh",
]
