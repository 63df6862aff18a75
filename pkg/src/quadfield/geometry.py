"""CAD-lite geometry kernel for piecewise-smooth planar domains.

A domain is a set of closed loops of oriented parametric curves (line
segments, circular arcs, cubic parametric splines). The outer loop runs
counter-clockwise and holes run clockwise, so the domain interior is always
on the left of the traversal direction. Curve junctions where the tangent
angle jumps are registered as corners with their interior wedge angle.

Curves keep their canonical definition plus an active parameter range, so
splitting a curve is exact: the two pieces share the parent's geometry.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import GeometryError

TAU_CORNER = 1e-3     # rad; tangent jumps below this are smooth junctions
GEOM_TOL_REL = 1e-9   # relative to the domain bounding-box diagonal


def wrap_angle(a):
    """Wrap an angle to (-pi, pi]."""
    a = (-a + np.pi) % (2.0 * np.pi)
    return np.pi - a


class BoundaryCurve:
    """Base class for oriented boundary curves.

    Subclasses define a canonical parametrization and expose an active
    range [t0, t1]. The domain interior lies on the left when the curve is
    traversed with increasing parameter.
    """

    kind = "abstract"

    def __init__(self, t0, t1):
        if not (np.isfinite(t0) and np.isfinite(t1)) or t1 <= t0:
            raise GeometryError(f"invalid parameter range [{t0}, {t1}]")
        self.t0 = float(t0)
        self.t1 = float(t1)
        self._length_table = None

    # subclasses implement the canonical evaluation
    def _point(self, t):
        raise NotImplementedError

    def _deriv(self, t):
        raise NotImplementedError

    def _deriv2(self, t):
        raise NotImplementedError

    def _check_range(self, t, tol=1e-12):
        t = np.asarray(t, dtype=float)
        span = self.t1 - self.t0
        if np.any(t < self.t0 - tol * span) or np.any(t > self.t1 + tol * span):
            raise GeometryError(
                f"parameter {t} outside [{self.t0}, {self.t1}] for {self.kind}")

    def point(self, t):
        """Evaluate the curve at parameter t (scalar or array)."""
        self._check_range(t)
        return self._point(np.asarray(t, dtype=float))

    def deriv(self, t):
        self._check_range(t)
        return self._deriv(np.asarray(t, dtype=float))

    def deriv2(self, t):
        self._check_range(t)
        return self._deriv2(np.asarray(t, dtype=float))

    def tangent_angle(self, t):
        """Angle of the forward tangent vector, in (-pi, pi]."""
        d = self.deriv(t)
        if d.ndim == 1:
            if np.hypot(d[0], d[1]) == 0.0:
                raise GeometryError("zero tangent on curve")
            return math.atan2(d[1], d[0])
        return np.arctan2(d[..., 1], d[..., 0])

    @property
    def start(self):
        return self.point(self.t0)

    @property
    def end(self):
        return self.point(self.t1)

    def _ensure_length_table(self, n=256):
        if self._length_table is None:
            ts = np.linspace(self.t0, self.t1, n)
            pts = self.point(ts)
            seg = np.hypot(np.diff(pts[:, 0]), np.diff(pts[:, 1]))
            cum = np.concatenate([[0.0], np.cumsum(seg)])
            self._length_table = (ts, cum)
        return self._length_table

    def length(self):
        """Approximate arc length over the active range."""
        return self._ensure_length_table()[1][-1]

    def param_at_arclength(self, s):
        """Parameter at arc length s from the start (clamped)."""
        ts, cum = self._ensure_length_table()
        s = np.clip(s, 0.0, cum[-1])
        return np.interp(s, cum, ts)

    def split_at(self, t):
        """Split into two curves at an interior parameter.

        Both pieces reference the parent geometry, so the concatenation
        reproduces the original pointwise.
        """
        span = self.t1 - self.t0
        if not (self.t0 + 1e-12 * span < t < self.t1 - 1e-12 * span):
            raise GeometryError(f"split parameter {t} not strictly inside "
                                f"({self.t0}, {self.t1})")
        a = self._with_range(self.t0, float(t))
        b = self._with_range(float(t), self.t1)
        return a, b

    def _with_range(self, t0, t1):
        raise NotImplementedError

    def sample(self, n):
        """n+1 points at uniform arc length, endpoints included."""
        s = np.linspace(0.0, self.length(), n + 1)
        return self.point(self.param_at_arclength(s))


class Segment(BoundaryCurve):
    """Straight line segment, canonical parameter t in [0, 1]."""

    kind = "segment"

    def __init__(self, p0, p1, t0=0.0, t1=1.0):
        self.p0 = np.asarray(p0, dtype=float)
        self.p1 = np.asarray(p1, dtype=float)
        if not (np.all(np.isfinite(self.p0)) and np.all(np.isfinite(self.p1))):
            raise GeometryError("segment endpoints must be finite")
        if np.allclose(self.p0, self.p1):
            raise GeometryError("degenerate segment")
        super().__init__(t0, t1)

    def _point(self, t):
        return self.p0 + np.multiply.outer(t, self.p1 - self.p0)

    def _deriv(self, t):
        d = self.p1 - self.p0
        return np.broadcast_to(d, t.shape + (2,)).copy() if t.ndim else d.copy()

    def _deriv2(self, t):
        return np.zeros(t.shape + (2,))

    def _with_range(self, t0, t1):
        return Segment(self.p0, self.p1, t0, t1)

    def to_json(self):
        return {"kind": "segment",
                "data": {"points": [self.p0.tolist(), self.p1.tolist()]}}


class Arc(BoundaryCurve):
    """Circular arc. The canonical parameter is the swept angle from the
    start, in [0, sweep]; positive direction follows the stored sense."""

    kind = "arc"

    def __init__(self, center, radius, angle0, angle1, ccw=True,
                 t0=None, t1=None):
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        if self.radius <= 0.0:
            raise GeometryError("arc radius must be positive")
        self.angle0 = float(angle0)
        self.ccw = bool(ccw)
        sweep = (angle1 - angle0) % (2.0 * np.pi) if ccw \
            else (angle0 - angle1) % (2.0 * np.pi)
        if sweep == 0.0:
            sweep = 2.0 * np.pi  # full circle
        self.sweep = sweep
        super().__init__(0.0 if t0 is None else t0,
                         sweep if t1 is None else t1)

    def _angle(self, t):
        return self.angle0 + (t if self.ccw else -t)

    def _point(self, t):
        a = self._angle(t)
        out = self.center + self.radius * np.stack(
            [np.cos(a), np.sin(a)], axis=-1)
        return out

    def _deriv(self, t):
        a = self._angle(t)
        sgn = 1.0 if self.ccw else -1.0
        return sgn * self.radius * np.stack([-np.sin(a), np.cos(a)], axis=-1)

    def _deriv2(self, t):
        a = self._angle(t)
        return -self.radius * np.stack([np.cos(a), np.sin(a)], axis=-1)

    def _with_range(self, t0, t1):
        a1 = self._angle(self.sweep)
        piece = Arc(self.center, self.radius, self.angle0, a1, self.ccw,
                    t0=t0, t1=t1)
        piece.sweep = self.sweep
        return piece

    def to_json(self):
        return {"kind": "arc",
                "data": {"center": self.center.tolist(),
                         "radius": self.radius,
                         "start_angle": self.angle0,
                         "end_angle": self._angle(self.sweep),
                         "ccw": self.ccw}}


class SplineCurve(BoundaryCurve):
    """Interpolating cubic parametric spline through control points.

    Knots follow normalized chord length on [0, 1]. End tangent vectors may
    be clamped; otherwise natural end conditions apply. Clamping lets two
    splines join with an exactly smooth (corner-free) junction.
    """

    kind = "spline"

    def __init__(self, points, tangents=None, t0=0.0, t1=1.0, _pp=None,
                 _meta=None):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 4 or pts.shape[1] != 2:
            raise GeometryError("spline needs at least 4 control points")
        if not np.all(np.isfinite(pts)):
            raise GeometryError("spline control points must be finite")
        self.points = pts
        self.tangents = None if tangents is None else np.asarray(
            tangents, dtype=float)
        if _pp is None:
            chord = np.hypot(*np.diff(pts, axis=0).T)
            if np.any(chord <= 0.0):
                raise GeometryError("repeated consecutive spline points")
            knots = np.concatenate([[0.0], np.cumsum(chord)])
            knots /= knots[-1]
            if self.tangents is not None:
                bc = ((1, self.tangents[0]), (1, self.tangents[1]))
            else:
                bc = "natural"
            _pp = CubicSpline(knots, pts, bc_type=bc)
        self._pp = _pp
        self._d1 = _pp.derivative(1)
        self._d2 = _pp.derivative(2)
        super().__init__(t0, t1)

    def _point(self, t):
        return self._pp(t)

    def _deriv(self, t):
        return self._d1(t)

    def _deriv2(self, t):
        return self._d2(t)

    def _with_range(self, t0, t1):
        return SplineCurve(self.points, self.tangents, t0, t1, _pp=self._pp)

    def to_json(self):
        data = {"points": self.points.tolist()}
        if self.tangents is not None:
            data["tangents"] = self.tangents.tolist()
        return {"kind": "spline", "data": data}


def tangent_angle(curve, t):
    """Angle of the forward tangent of a curve at parameter t."""
    return curve.tangent_angle(t)


def boundary_alignment(theta):
    """Map a wall tangent angle to the quarter-symmetric boundary pair
    (cos 4*theta, sin 4*theta); invariant under theta -> theta + k*pi/2."""
    theta = np.asarray(theta, dtype=float)
    return np.cos(4.0 * theta), np.sin(4.0 * theta)


@dataclass
class Corner:
    """Tangent-discontinuous junction between consecutive loop curves.

    theta0 is the direction of the wall leaving the corner, theta1 the
    direction arriving reversed; sweeping counter-clockwise from theta0 to
    theta1 covers the interior wedge of opening angle delta.
    """
    loop: int
    index: int              # corner position within the loop
    location: np.ndarray
    theta_in: float         # tangent of the incoming curve at its end
    theta_out: float        # tangent of the outgoing curve at its start
    delta: float            # interior wedge angle in (0, 2*pi)
    curve_in: int           # flat curve ids
    curve_out: int

    @property
    def theta0(self):
        return self.theta_out

    @property
    def theta1(self):
        return self.theta_out + self.delta

    def is_quarter_multiple(self, tol=TAU_CORNER):
        k = round(self.delta / (0.5 * np.pi))
        return k >= 1 and abs(self.delta - k * 0.5 * np.pi) <= tol


@dataclass
class ProjectionResult:
    curve: int
    t: float
    distance: float
    point: np.ndarray = field(default=None)


class Domain:
    """Multiply connected planar domain bounded by curve loops.

    The first loop is the outer boundary (counter-clockwise); remaining
    loops are holes (clockwise). Immutable after construction.
    """

    def __init__(self, loops, tau_corner=TAU_CORNER):
        if not loops:
            raise GeometryError("domain needs at least one loop")
        self.loops = [list(lp) for lp in loops]
        self.tau_corner = float(tau_corner)
        self.curves = [c for lp in self.loops for c in lp]
        self._loop_offsets = np.cumsum([0] + [len(lp) for lp in self.loops])
        self._polylines = None
        self._bbox = None
        self._validate_loops()
        self.corners = self._find_corners()

    # -- identifiers -------------------------------------------------
    def curve_id(self, loop, k):
        return int(self._loop_offsets[loop] + k)

    def loop_of_curve(self, cid):
        loop = int(np.searchsorted(self._loop_offsets, cid, side="right") - 1)
        return loop, cid - int(self._loop_offsets[loop])

    # -- basic queries -----------------------------------------------
    @property
    def bbox(self):
        if self._bbox is None:
            pts = np.vstack([c.sample(32) for c in self.curves])
            self._bbox = (pts.min(axis=0), pts.max(axis=0))
        return self._bbox

    @property
    def bbox_diag(self):
        lo, hi = self.bbox
        return float(np.hypot(*(hi - lo)))

    @property
    def geom_tol(self):
        return GEOM_TOL_REL * self.bbox_diag

    def perimeter(self):
        return float(sum(c.length() for c in self.curves))

    def loop_polyline(self, loop, per_curve=128):
        """Dense closed polyline of one loop (used for containment)."""
        if self._polylines is None:
            self._polylines = {}
        key = (loop, per_curve)
        if key not in self._polylines:
            pts = []
            for c in self.loops[loop]:
                pts.append(c.sample(per_curve)[:-1])
            poly = np.vstack(pts)
            self._polylines[key] = poly
        return self._polylines[key]

    def contains(self, points, per_curve=128):
        """Even-odd containment test against densely sampled loops.

        Reliable away from the boundary (to about the sampling sagitta);
        callers needing exact boundary decisions should combine this with
        project_to_boundary.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        inside = _crossing_parity(self.loop_polyline(0, per_curve), pts)
        for i in range(1, len(self.loops)):
            inside &= ~_crossing_parity(self.loop_polyline(i, per_curve), pts)
        return inside if pts.shape[0] > 1 else bool(inside[0])

    # -- validation ---------------------------------------------------
    def _validate_loops(self):
        # closure within tolerance and orientation by signed polygon area
        diag_pts = np.vstack([c.sample(8) for c in self.curves])
        diag = float(np.hypot(*(diag_pts.max(0) - diag_pts.min(0))))
        tol = max(1e-12, 1e-6 * diag)
        for li, lp in enumerate(self.loops):
            for k, c in enumerate(lp):
                nxt = lp[(k + 1) % len(lp)]
                gap = np.hypot(*(nxt.start - c.end))
                if gap > tol:
                    raise GeometryError(
                        f"loop {li} not closed between curves {k} and "
                        f"{(k + 1) % len(lp)} (gap {gap:.3e})")
            area = _polygon_area(self.loop_polyline(li))
            if li == 0 and area <= 0:
                raise GeometryError("outer loop must be counter-clockwise")
            if li > 0 and area >= 0:
                raise GeometryError(f"inner loop {li} must be clockwise")

    def _find_corners(self):
        corners = []
        for li, lp in enumerate(self.loops):
            for k, c in enumerate(lp):
                nxt = lp[(k + 1) % len(lp)]
                th_in = c.tangent_angle(c.t1)
                th_out = nxt.tangent_angle(nxt.t0)
                jump = wrap_angle(th_out - th_in)
                if abs(jump) <= self.tau_corner:
                    continue
                delta = (th_in + np.pi - th_out) % (2.0 * np.pi)
                if delta <= 0.0 or delta >= 2.0 * np.pi:
                    raise GeometryError(
                        f"degenerate corner on loop {li} curve {k}")
                corners.append(Corner(
                    loop=li, index=len(corners), location=nxt.start.copy(),
                    theta_in=float(th_in), theta_out=float(th_out),
                    delta=float(delta),
                    curve_in=self.curve_id(li, k),
                    curve_out=self.curve_id(li, (k + 1) % len(lp))))
        return corners

    # -- projection ---------------------------------------------------
    def project_to_boundary(self, point, n_seeds=8):
        """Globally nearest boundary point via multi-start Newton per curve.

        Ties (within the geometric tolerance) break to the lowest
        (curve id, parameter).
        """
        p = np.asarray(point, dtype=float)
        best = None
        tol = self.geom_tol
        for cid, c in enumerate(self.curves):
            t, d = _project_to_curve(c, p, n_seeds)
            if best is None or d < best.distance - tol or (
                    abs(d - best.distance) <= tol and
                    (cid, t) < (best.curve, best.t)):
                best = ProjectionResult(curve=cid, t=float(t),
                                        distance=float(d))
        best.point = self.curves[best.curve].point(best.t)
        return best

    def distance_to_boundary(self, point):
        return self.project_to_boundary(point).distance

    # -- turning check ------------------------------------------------
    def loop_turning(self, loop, n=512):
        """Total tangent turning of a loop: smooth turning plus exterior
        corner angles. +2*pi for the outer loop, -2*pi for holes."""
        total = 0.0
        lp = self.loops[loop]
        for c in lp:
            ts = np.linspace(c.t0, c.t1, n)
            th = c.tangent_angle(ts)
            total += float(np.sum(wrap_angle(np.diff(th))))
        for k, c in enumerate(lp):
            nxt = lp[(k + 1) % len(lp)]
            jump = wrap_angle(nxt.tangent_angle(nxt.t0) - c.tangent_angle(c.t1))
            total += float(jump)
        return total

    # -- serialization --------------------------------------------------
    def to_json(self):
        return {"version": 1,
                "loops": [[c.to_json() for c in lp] for lp in self.loops]}

    def save(self, path):
        with open(path, "w") as f:
            json.dump(self.to_json(), f, indent=1)

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict) or "loops" not in obj:
            raise GeometryError("geometry file must contain a 'loops' list")
        loops = []
        for lp in obj["loops"]:
            loops.append([curve_from_json(c) for c in lp])
        return Domain(loops)

    @staticmethod
    def load(path):
        with open(path) as f:
            return Domain.from_json(json.load(f))


def curve_from_json(obj):
    kind = obj.get("kind")
    data = obj.get("data", {})
    if kind == "segment":
        pts = data["points"]
        return Segment(pts[0], pts[1])
    if kind == "arc":
        return Arc(data["center"], data["radius"], data["start_angle"],
                   data["end_angle"], data.get("ccw", True))
    if kind == "spline":
        return SplineCurve(data["points"], data.get("tangents"))
    raise GeometryError(f"unknown curve kind {kind!r}")


# ----------------------------------------------------------------------
# helpers

def _polygon_area(poly):
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _crossing_parity(poly, pts):
    """Even-odd rule: True where pts are inside the closed polyline."""
    x0, y0 = poly[:, 0], poly[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    px = pts[:, 0][:, None]
    py = pts[:, 1][:, None]
    cond = (y0[None, :] > py) != (y1[None, :] > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = x0[None, :] + (py - y0[None, :]) / (y1 - y0)[None, :] * \
            (x1 - x0)[None, :]
    hits = cond & (px < xint)
    return (np.sum(hits, axis=1) % 2).astype(bool)


def _project_to_curve(curve, p, n_seeds):
    """Nearest parameter on one curve: Newton on the stationarity of the
    squared distance, multi-start plus endpoint candidates."""
    seeds = np.linspace(curve.t0, curve.t1, n_seeds + 2)
    cands = [curve.t0, curve.t1]
    for t in seeds[1:-1]:
        t = float(t)
        for _ in range(30):
            x = curve.point(t)
            d1 = curve.deriv(t)
            d2 = curve.deriv2(t)
            r = x - p
            g = float(r @ d1)
            h = float(d1 @ d1 + r @ d2)
            if h <= 0.0:
                break
            step = g / h
            t_new = min(max(t - step, curve.t0), curve.t1)
            if abs(t_new - t) < 1e-14 * max(1.0, abs(curve.t1 - curve.t0)):
                t = t_new
                break
            t = t_new
        cands.append(t)
    cands = np.asarray(cands)
    pts = curve.point(cands)
    dists = np.hypot(pts[:, 0] - p[0], pts[:, 1] - p[1])
    order = np.lexsort((cands, dists))
    k = order[0]
    # prefer the lowest parameter among near-equal minima
    dmin = dists[k]
    close = np.where(dists <= dmin + 1e-12 * max(1.0, dmin))[0]
    t_best = float(np.min(cands[close]))
    return t_best, float(dmin)
