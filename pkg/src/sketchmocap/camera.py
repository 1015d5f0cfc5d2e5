"""Stage cameras and the 3D-to-2D canvas projection.

Canvas origin is top-left with y down (stroke-capture convention), so the
projection flips world y.  The global-stage camera is free; the local-stage
camera sits on an orbit sphere around the character's reference point, with
adjustable radius.  Points behind the near plane are dropped, not clamped:
clamped points would fabricate geometry and corrupt matching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import CameraConfigError, CameraParameterError, ProjectionDegenerateError
from .kinematics import Trajectory3D

GLOBAL = "global"
LOCAL = "local"

_SPHERE_TOL = 1e-6


def _vec(v) -> np.ndarray:
    return np.asarray(v, dtype=np.float64)


def _tup3(v) -> tuple[float, float, float]:
    return (float(v[0]), float(v[1]), float(v[2]))


def _unit_from_angles(azimuth_deg: float, elevation_deg: float) -> np.ndarray:
    az, el = math.radians(azimuth_deg), math.radians(elevation_deg)
    return np.array(
        [math.cos(el) * math.sin(az), math.sin(el), math.cos(el) * math.cos(az)]
    )


@dataclass(frozen=True)
class Camera:
    """Immutable camera value; updates produce new instances."""

    mode: str
    eye: tuple[float, float, float]
    target: tuple[float, float, float]
    up: tuple[float, float, float] = (0.0, 1.0, 0.0)
    viewport: tuple[int, int] = (800, 600)
    fov_deg: float = 45.0
    orthographic: bool = False
    ortho_scale: float = 1.0
    near: float = 0.001
    radius: float | None = None
    azimuth_deg: float | None = None
    elevation_deg: float | None = None

    def __post_init__(self):
        if self.mode not in (GLOBAL, LOCAL):
            raise CameraConfigError(f"unknown camera mode {self.mode!r}")
        eye, target, up = _vec(self.eye), _vec(self.target), _vec(self.up)
        if np.allclose(eye, target):
            raise CameraConfigError("eye and target coincide")
        if abs(np.linalg.norm(up) - 1.0) > 1e-6:
            raise CameraConfigError("up vector must be unit length")
        if not self.orthographic and not 0.0 < self.fov_deg < 180.0:
            raise CameraConfigError("field of view must be in (0, 180) degrees")
        if self.orthographic and self.ortho_scale <= 0:
            raise CameraConfigError("orthographic scale must be positive")
        if self.viewport[0] <= 0 or self.viewport[1] <= 0:
            raise CameraConfigError("viewport must be positive")
        if self.mode == LOCAL:
            if self.radius is None or self.radius <= 0:
                raise CameraConfigError("local camera needs a positive orbit radius")
            if self.azimuth_deg is None or self.elevation_deg is None:
                raise CameraConfigError("local camera needs azimuth and elevation")
            dist = float(np.linalg.norm(eye - target))
            if abs(dist - self.radius) > _SPHERE_TOL:
                raise CameraConfigError(
                    f"local camera violates the sphere constraint: "
                    f"|eye-target|={dist!r} vs radius={self.radius!r}"
                )

    def to_json(self) -> dict:
        payload = {
            "mode": self.mode,
            "eye": list(self.eye),
            "target": list(self.target),
            "up": list(self.up),
            "viewport": list(self.viewport),
            "orthographic": self.orthographic,
            "near": self.near,
        }
        if self.orthographic:
            payload["ortho_scale"] = self.ortho_scale
        else:
            payload["fov_deg"] = self.fov_deg
        if self.mode == LOCAL:
            payload["radius"] = self.radius
            payload["azimuth_deg"] = self.azimuth_deg
            payload["elevation_deg"] = self.elevation_deg
        return payload

    @classmethod
    def from_json(cls, payload: dict) -> "Camera":
        kwargs = dict(
            mode=payload["mode"],
            eye=tuple(payload["eye"]),
            target=tuple(payload["target"]),
            up=tuple(payload.get("up", (0.0, 1.0, 0.0))),
            viewport=tuple(payload.get("viewport", (800, 600))),
            orthographic=bool(payload.get("orthographic", False)),
            near=float(payload.get("near", 0.001)),
        )
        if kwargs["orthographic"]:
            kwargs["ortho_scale"] = float(payload.get("ortho_scale", 1.0))
        else:
            kwargs["fov_deg"] = float(payload.get("fov_deg", 45.0))
        for key in ("radius", "azimuth_deg", "elevation_deg"):
            if payload.get(key) is not None:
                kwargs[key] = float(payload[key])
        return cls(**kwargs)


def default_global_camera(viewport: tuple[int, int] = (800, 600)) -> Camera:
    """Elevated three-quarter view over the virtual ground."""
    return Camera(
        mode=GLOBAL,
        eye=(120.0, 90.0, 120.0),
        target=(0.0, 10.0, 0.0),
        viewport=viewport,
    )


def default_local_camera(
    target: tuple[float, float, float],
    height: float,
    viewport: tuple[int, int] = (800, 600),
) -> Camera:
    """Orbit camera around the character's reference point, radius 3x height."""
    radius = max(3.0 * height, 1.0)
    azimuth, elevation = 0.0, 15.0
    eye = _vec(target) + radius * _unit_from_angles(azimuth, elevation)
    return Camera(
        mode=LOCAL,
        eye=_tup3(eye),
        target=tuple(target),
        viewport=viewport,
        radius=radius,
        azimuth_deg=azimuth,
        elevation_deg=elevation,
    )


@dataclass(frozen=True, eq=False)
class ProjectionMap:
    """World 3-vectors to canvas pixels, as a homogeneous 3x4 map.

    ``apply`` returns the projected points and a validity mask; in
    perspective mode points at or behind the near plane are invalid.
    """

    matrix: np.ndarray  # (3, 4)
    perspective: bool
    near: float

    def apply(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        pts = np.asarray(points, dtype=np.float64)
        homo = np.concatenate([pts, np.ones((pts.shape[0], 1))], axis=1)
        mapped = homo @ self.matrix.T
        w = mapped[:, 2]
        valid = w > self.near if self.perspective else np.ones(len(pts), dtype=bool)
        canvas = np.full((pts.shape[0], 2), np.nan)
        safe = np.where(valid, w, 1.0)
        canvas[:, 0] = mapped[:, 0] / safe
        canvas[:, 1] = mapped[:, 1] / safe
        canvas[~valid] = np.nan
        return canvas, valid

    def apply_point(self, point) -> np.ndarray:
        canvas, valid = self.apply(np.asarray(point, dtype=np.float64)[None, :])
        if not valid[0]:
            raise ProjectionDegenerateError("point lies behind the near plane")
        return canvas[0]


@dataclass(frozen=True, eq=False)
class ProjectedPolyline:
    """A trajectory after projection: canvas points plus its provenance."""

    points: np.ndarray  # (K, 2) pixels
    motion_id: str
    joint_role: str
    dropped: int = 0

    def __len__(self) -> int:
        return self.points.shape[0]

    def to_json(self) -> list[list[float]]:
        return [[float(x), float(y)] for x, y in self.points]


def projection_matrix(camera: Camera) -> ProjectionMap:
    """Compose the view, projection, and viewport transforms of a camera."""
    eye, target, up = _vec(camera.eye), _vec(camera.target), _vec(camera.up)
    forward = target - eye
    norm = np.linalg.norm(forward)
    if norm < 1e-12:
        raise CameraConfigError("degenerate camera: eye equals target")
    forward /= norm
    right = np.cross(forward, up)
    norm = np.linalg.norm(right)
    if norm < 1e-9:
        raise CameraConfigError("degenerate camera: view direction parallel to up")
    right /= norm
    true_up = np.cross(right, forward)

    # view rows map world points to camera coords (x right, y up, z forward)
    view = np.empty((3, 4))
    view[0, :3], view[0, 3] = right, -right @ eye
    view[1, :3], view[1, 3] = true_up, -true_up @ eye
    view[2, :3], view[2, 3] = forward, -forward @ eye

    width, height = camera.viewport
    cx, cy = width / 2.0, height / 2.0
    matrix = np.empty((3, 4))
    if camera.orthographic:
        s = camera.ortho_scale
        matrix[0] = s * view[0]
        matrix[0, 3] += cx
        matrix[1] = -s * view[1]
        matrix[1, 3] += cy
        matrix[2] = (0.0, 0.0, 0.0, 1.0)
    else:
        focal = (height / 2.0) / math.tan(math.radians(camera.fov_deg) / 2.0)
        matrix[0] = focal * view[0] + cx * view[2]
        matrix[1] = -focal * view[1] + cy * view[2]
        matrix[2] = view[2]
    return ProjectionMap(
        matrix=matrix, perspective=not camera.orthographic, near=camera.near
    )


def project_trajectory(
    camera: Camera, traj: Trajectory3D, role: str | None = None
) -> ProjectedPolyline:
    """Project a world trajectory to the canvas, dropping invalid points.

    Raises ProjectionDegenerateError when fewer than two points survive.
    """
    if len(traj) == 0:
        raise ProjectionDegenerateError("empty trajectory")
    canvas, valid = projection_matrix(camera).apply(traj.points)
    kept = canvas[valid]
    if kept.shape[0] < 2:
        raise ProjectionDegenerateError(
            f"trajectory of {traj.joint!r} projects to fewer than two valid points"
        )
    return ProjectedPolyline(
        points=kept,
        motion_id=traj.motion_id,
        joint_role=role if role is not None else traj.joint,
        dropped=int(len(traj) - kept.shape[0]),
    )


def anchor_local_trajectory(
    traj: Trajectory3D, target: tuple[float, float, float]
) -> Trajectory3D:
    """Re-anchor a root-relative trajectory at the camera target."""
    return Trajectory3D(
        motion_id=traj.motion_id, joint=traj.joint, points=traj.points + _vec(target)
    )


@dataclass(frozen=True)
class Pan:
    delta: tuple[float, float, float]


@dataclass(frozen=True)
class Zoom:
    factor: float


@dataclass(frozen=True)
class Orbit:
    d_azimuth_deg: float
    d_elevation_deg: float


@dataclass(frozen=True)
class SetRadius:
    radius: float


CameraAction = Pan | Zoom | Orbit | SetRadius

_ELEVATION_LIMIT = 89.0


def _local_eye(camera: Camera) -> tuple[float, float, float]:
    eye = _vec(camera.target) + camera.radius * _unit_from_angles(
        camera.azimuth_deg, camera.elevation_deg
    )
    return _tup3(eye)


def update_camera(camera: Camera, action: CameraAction) -> Camera:
    """Apply a pan/zoom/orbit/radius action, preserving camera invariants."""
    if isinstance(action, Pan):
        delta = _vec(action.delta)
        return replace(
            camera,
            eye=_tup3(_vec(camera.eye) + delta),
            target=_tup3(_vec(camera.target) + delta),
        )
    if isinstance(action, Zoom):
        if action.factor <= 0:
            raise CameraParameterError("zoom factor must be positive")
        if camera.orthographic:
            return replace(camera, ortho_scale=camera.ortho_scale * action.factor)
        eye = _vec(camera.target) + (_vec(camera.eye) - _vec(camera.target)) * action.factor
        if camera.mode == LOCAL:
            return replace(camera, eye=_tup3(eye), radius=camera.radius * action.factor)
        return replace(camera, eye=_tup3(eye))
    if isinstance(action, Orbit):
        if camera.mode != LOCAL:
            raise CameraParameterError("orbit is only available in local mode")
        elevation = min(
            _ELEVATION_LIMIT,
            max(-_ELEVATION_LIMIT, camera.elevation_deg + action.d_elevation_deg),
        )
        moved = replace(
            camera,
            azimuth_deg=camera.azimuth_deg + action.d_azimuth_deg,
            elevation_deg=elevation,
        )
        return replace(moved, eye=_local_eye(moved))
    if isinstance(action, SetRadius):
        if camera.mode != LOCAL:
            raise CameraParameterError("set_radius is only available in local mode")
        if action.radius <= 0:
            raise CameraParameterError("orbit radius must be positive")
        scale = action.radius / camera.radius
        eye = _vec(camera.target) + (_vec(camera.eye) - _vec(camera.target)) * scale
        return replace(camera, radius=action.radius, eye=_tup3(eye))
    raise CameraParameterError(f"unknown camera action {action!r}")


def action_from_json(payload: dict) -> CameraAction:
    """Decode the wire form {op: pan|zoom|orbit|set_radius, ...}."""
    op = payload.get("op")
    if op == "pan":
        delta = payload["delta"]
        return Pan(delta=(float(delta[0]), float(delta[1]), float(delta[2])))
    if op == "zoom":
        return Zoom(factor=float(payload["factor"]))
    if op == "orbit":
        return Orbit(
            d_azimuth_deg=float(payload.get("d_azimuth_deg", 0.0)),
            d_elevation_deg=float(payload.get("d_elevation_deg", 0.0)),
        )
    if op == "set_radius":
        return SetRadius(radius=float(payload["radius"]))
    raise CameraParameterError(f"unknown camera action {op!r}")
