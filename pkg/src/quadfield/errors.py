"""Exception types shared across the package."""


class QuadfieldError(Exception):
    """Base class for all package errors."""


class GeometryError(QuadfieldError):
    """Invalid geometry input or degenerate geometric configuration."""


class MeshError(QuadfieldError):
    """Triangular mesh is invalid, non-conforming or incompatible."""


class SolverError(QuadfieldError):
    """Discretization or linear-solve failure."""


class AnalysisError(QuadfieldError):
    """Field topology extraction failure (critical points, valences)."""


class DegenerateFieldError(AnalysisError):
    """A critical point with |index| > 1 was detected.

    Such points arise in perfectly symmetric configurations (e.g. a full
    disc) and cannot be assigned a simple valence. Perturb the geometry or
    mesh to split the point into simple ones.
    """


class TracingError(QuadfieldError):
    """Streamline integration failure."""


class LimitCycleError(TracingError):
    """A streamline exceeded the step budget without terminating."""


class BlockError(QuadfieldError):
    """Separatrix graph does not decompose the domain into quadrilaterals."""


class ConfigError(QuadfieldError):
    """Invalid pipeline or module configuration."""
