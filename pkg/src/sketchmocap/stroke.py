"""User stroke capture and arc-length resampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStrokeError

DEFAULT_SAMPLE_COUNT = 100


@dataclass(frozen=True, eq=False)
class Stroke2D:
    """A captured stroke: raw points as drawn plus the match-ready sampling.

    Timestamps are deliberately absent; only the geometry of the stroke is
    compared against the database.
    """

    raw: np.ndarray     # (R, 2) canvas pixels, as captured
    points: np.ndarray  # (T, 2) sampling used for matching

    @classmethod
    def from_polyline(cls, points) -> "Stroke2D":
        """Adopt an existing polyline verbatim as both raw and match points.

        Used when the sampling is already decided, e.g. replaying a
        projected database trajectory as a query.
        """
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise DegenerateStrokeError("stroke needs at least two 2D points")
        return cls(raw=pts, points=pts)

    def __len__(self) -> int:
        return self.points.shape[0]


def resample_stroke(raw, count: int = DEFAULT_SAMPLE_COUNT) -> Stroke2D:
    """Resample a raw stroke to ``count`` points at uniform arc-length spacing.

    The first and last raw points are preserved exactly.  Raises
    DegenerateStrokeError when the stroke has fewer than two points or no
    spatial extent.
    """
    pts = np.asarray(raw, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise DegenerateStrokeError("stroke needs at least two 2D points")
    if count < 2:
        raise ValueError("resample count must be at least 2")
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    arclen = np.concatenate([[0.0], np.cumsum(seg)])
    total = arclen[-1]
    if total <= 0.0:
        raise DegenerateStrokeError("all stroke points coincide")
    targets = np.linspace(0.0, total, count)
    resampled = np.stack(
        [np.interp(targets, arclen, pts[:, 0]), np.interp(targets, arclen, pts[:, 1])],
        axis=1,
    )
    resampled[0] = pts[0]
    resampled[-1] = pts[-1]
    return Stroke2D(raw=pts, points=resampled)


def polyline_length(points) -> float:
    pts = np.asarray(points, dtype=np.float64)
    if pts.shape[0] < 2:
        return 0.0
    return float(np.linalg.norm(np.diff(pts, axis=0), axis=1).sum())
