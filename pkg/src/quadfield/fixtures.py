"""Built-in benchmark geometries.

Each builder returns a Domain. `get_domain(name)` is the registry used by
tests and the CLI; `write_fixture` dumps the JSON form so the file-based
interface is exercised too.
"""

from __future__ import annotations

import numpy as np

from .geometry import Arc, Domain, Segment, SplineCurve


def square(side=1.0):
    s = float(side)
    return Domain([[
        Segment((0, 0), (s, 0)),
        Segment((s, 0), (s, s)),
        Segment((s, s), (0, s)),
        Segment((0, s), (0, 0)),
    ]])


def rectangle(width=2.0, height=1.0):
    w, h = float(width), float(height)
    return Domain([[
        Segment((0, 0), (w, 0)),
        Segment((w, 0), (w, h)),
        Segment((w, h), (0, h)),
        Segment((0, h), (0, 0)),
    ]])


def lshape(size=2.0):
    """L-shaped hexagon: a square with one quadrant removed.

    Five convex right angles plus one reentrant corner at the notch.
    """
    s = float(size)
    m = 0.5 * s
    return Domain([[
        Segment((0, 0), (s, 0)),
        Segment((s, 0), (s, m)),
        Segment((s, m), (m, m)),
        Segment((m, m), (m, s)),
        Segment((m, s), (0, s)),
        Segment((0, s), (0, 0)),
    ]])


def half_disc(radius=1.0):
    """Upper half disc: diameter segment plus counter-clockwise semicircle."""
    r = float(radius)
    return Domain([[
        Segment((-r, 0), (r, 0)),
        Arc((0, 0), r, 0.0, np.pi, ccw=True),
    ]])


def disc(radius=1.0):
    """Full disc; its perfectly symmetric guiding field concentrates the
    entire topology in one degenerate interior point."""
    r = float(radius)
    return Domain([[
        Arc((0, 0), r, 0.0, np.pi, ccw=True),
        Arc((0, 0), r, np.pi, 2.0 * np.pi, ccw=True),
    ]])


def annular_sector(r_in=1.0, r_out=2.0, sweep=0.5 * np.pi):
    """Quarter-annulus style sector bounded by two arcs and two radial cuts."""
    a, b = float(r_in), float(r_out)
    th = float(sweep)
    return Domain([[
        Segment((a, 0), (b, 0)),
        Arc((0, 0), b, 0.0, th, ccw=True),
        Segment((b * np.cos(th), b * np.sin(th)),
                (a * np.cos(th), a * np.sin(th))),
        Arc((0, 0), a, th, 0.0, ccw=False),
    ]])


def polygon(vertices):
    verts = [np.asarray(v, dtype=float) for v in vertices]
    segs = [Segment(verts[i], verts[(i + 1) % len(verts)])
            for i in range(len(verts))]
    return Domain([segs])


def sharp_polygon():
    """Irregular pentagon with one very acute vertex.

    None of the corners is a multiple of pi/2, so the alignment data is
    discontinuous and the acute vertex collapses to valence zero.
    """
    return polygon([
        (0.0, 0.0),
        (6.0, 0.9),
        (5.2, 3.4),
        (2.0, 4.2),
        (-2.4, 1.1),
    ])


def _spiral_point(theta, k, offset):
    r = np.exp(k * theta + offset)
    return np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)


def _spiral_tangent(theta, k, offset):
    # d/dtheta of exp((k + i) theta + offset) has direction z * (k + i)
    p = _spiral_point(theta, k, offset)
    t = np.stack([k * p[..., 0] - p[..., 1], k * p[..., 1] + p[..., 0]],
                 axis=-1)
    return t / np.hypot(t[..., 0], t[..., 1])[..., None]


def nautilus(k=0.16, turns=1.5, width=0.72, n_wall=48, n_cap=16):
    """Smooth spiral blob: two logarithmic-spiral walls joined by smooth
    caps, all tangent-matched so the boundary has no corners.

    The walls are one winding of the same spiral family apart, scaled by
    `width` (< 1) to keep a gap between successive windings. The closed
    boundary is C1, so the alignment data is continuous everywhere.
    """
    theta_max = 2.0 * np.pi * float(turns)
    c = 2.0 * np.pi * k * float(width)

    th = np.linspace(0.0, theta_max, n_wall)
    outer = _spiral_point(th, k, c)             # outer wall, forward
    inner = _spiral_point(th[::-1], k, 0.0)     # inner wall, backward

    tan_o0 = _spiral_tangent(0.0, k, c)
    tan_o1 = _spiral_tangent(theta_max, k, c)
    tan_i0 = -_spiral_tangent(theta_max, k, 0.0)   # reversed traversal
    tan_i1 = -_spiral_tangent(0.0, k, 0.0)

    def cap(p0, d0, p1, d1, scale):
        # cubic Hermite bridge with prescribed end tangent directions
        s = np.linspace(0.0, 1.0, n_cap)
        h00 = 2 * s**3 - 3 * s**2 + 1
        h10 = s**3 - 2 * s**2 + s
        h01 = -2 * s**3 + 3 * s**2
        h11 = s**3 - s**2
        m0 = d0 * scale
        m1 = d1 * scale
        return (h00[:, None] * p0 + h10[:, None] * m0 +
                h01[:, None] * p1 + h11[:, None] * m1)

    gap_far = np.hypot(*(inner[0] - outer[-1]))
    gap_near = np.hypot(*(outer[0] - inner[-1]))
    cap_far = cap(outer[-1], tan_o1, inner[0], tan_i0, 1.6 * gap_far)
    cap_near = cap(inner[-1], tan_i1, outer[0], tan_o0, 1.6 * gap_near)

    curves = [
        SplineCurve(outer, tangents=[tan_o0, tan_o1]),
        SplineCurve(cap_far, tangents=[tan_o1, tan_i0]),
        SplineCurve(inner, tangents=[tan_i0, tan_i1]),
        SplineCurve(cap_near, tangents=[tan_i1, tan_o0]),
    ]
    return Domain([curves])


def naca0012(chord=1.0, box=(-1.0, 2.5, -1.2, 1.2), n=60):
    """NACA 0012 aerofoil (closed trailing edge) inside a rectangle."""
    t = 0.12
    x = 0.5 * (1.0 - np.cos(np.linspace(0.0, np.pi, n)))  # cosine spacing
    yt = 5 * t * (0.2969 * np.sqrt(x) - 0.1260 * x - 0.3516 * x**2
                  + 0.2843 * x**3 - 0.1036 * x**4)
    xc = x * chord
    upper = np.column_stack([xc, yt * chord])
    lower = np.column_stack([xc, -yt * chord])
    # clockwise loop (hole): trailing edge -> lower -> leading edge -> upper
    pts = np.vstack([lower[::-1], upper[1:]])
    xmin, xmax, ymin, ymax = box
    outer = [
        Segment((xmin, ymin), (xmax, ymin)),
        Segment((xmax, ymin), (xmax, ymax)),
        Segment((xmax, ymax), (xmin, ymax)),
        Segment((xmin, ymax), (xmin, ymin)),
    ]
    return Domain([outer, [SplineCurve(pts)]])


FIXTURES = {
    "square": square,
    "rectangle": rectangle,
    "lshape": lshape,
    "halfdisc": half_disc,
    "disc": disc,
    "annular_sector": annular_sector,
    "polygon": sharp_polygon,
    "nautilus": nautilus,
    "naca": naca0012,
}


def get_domain(name, **kwargs):
    try:
        builder = FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; "
                       f"choose from {sorted(FIXTURES)}") from None
    return builder(**kwargs)


def write_fixture(name, path, **kwargs):
    get_domain(name, **kwargs).save(path)
    return path
