"""quadfield: guiding-field block decomposition and curved quad meshing.

Pipeline: geometry -> triangular spectral-element mesh -> adaptive Laplace
solve of the boundary-aligned guiding field -> field topology (critical
points, valences) -> separatrix tracing -> quadrilateral blocks -> refined
high-order quad mesh.
"""

from .errors import (
    AnalysisError,
    BlockError,
    ConfigError,
    DegenerateFieldError,
    GeometryError,
    LimitCycleError,
    MeshError,
    QuadfieldError,
    SolverError,
    TracingError,
)
from .geometry import Arc, BoundaryCurve, Corner, Domain, Segment, SplineCurve

__all__ = [
    "AnalysisError",
    "Arc",
    "BlockError",
    "BoundaryCurve",
    "ConfigError",
    "Corner",
    "DegenerateFieldError",
    "Domain",
    "GeometryError",
    "LimitCycleError",
    "MeshError",
    "QuadfieldError",
    "Segment",
    "SolverError",
    "SplineCurve",
    "TracingError",
]

__version__ = "0.1.0"
