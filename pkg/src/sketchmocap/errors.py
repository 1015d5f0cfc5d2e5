"""Exception types shared across the package."""


class SketchMocapError(Exception):
    """Base class for all package-specific errors."""


class BvhParseError(SketchMocapError, ValueError):
    """Malformed BVH hierarchy or header; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BvhStructureError(SketchMocapError, ValueError):
    """Frame table inconsistent with the declared hierarchy."""


class TrimError(SketchMocapError, ValueError):
    """Requested frame window falls outside the motion."""


class RoleMappingError(SketchMocapError, KeyError):
    """A joint role does not resolve to a joint of the skeleton."""


class DatasetBuildError(SketchMocapError, ValueError):
    """Index construction produced no usable entries."""


class CameraConfigError(SketchMocapError, ValueError):
    """Camera fields violate an invariant (degenerate eye/target/up, bad fov)."""


class CameraParameterError(SketchMocapError, ValueError):
    """Invalid camera update (non-positive zoom factor or radius, wrong mode)."""


class ProjectionDegenerateError(SketchMocapError, ValueError):
    """Fewer than two trajectory points survived projection."""


class DegenerateStrokeError(SketchMocapError, ValueError):
    """Stroke has no spatial extent (all points coincident, or fewer than 2)."""


class QueryError(SketchMocapError, ValueError):
    """Retrieval request inconsistent with the index or camera."""


class CompositionError(SketchMocapError, ValueError):
    """Motions cannot be combined (skeleton or frame-count mismatch)."""


class AssignmentConflictError(CompositionError):
    """Two limb assignments claim overlapping joint subtrees."""


class EvaluationError(SketchMocapError, ValueError):
    """Designed and reference motions are not comparable."""


class SessionStateError(SketchMocapError, ValueError):
    """Action not allowed in the session's current state."""
