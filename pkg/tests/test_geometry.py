import json

import numpy as np
import pytest

from quadfield import fixtures
from quadfield.errors import GeometryError
from quadfield.geometry import (
    Arc,
    Domain,
    Segment,
    SplineCurve,
    boundary_alignment,
    tangent_angle,
    wrap_angle,
)

RNG = np.random.default_rng(20240811)


def wiggly_spline():
    ts = np.linspace(0.0, 1.0, 9)
    pts = np.column_stack([ts * 3.0, np.sin(2.5 * ts) + 0.3 * ts**2])
    return SplineCurve(pts)


class TestTangentAngle:
    def test_horizontal_segment(self):
        seg = Segment((0, 0), (2, 0))
        for t in [0.0, 0.3, 1.0]:
            assert tangent_angle(seg, t) == pytest.approx(0.0, abs=1e-15)

    def test_unit_circle_ccw_at_zero(self):
        arc = Arc((0, 0), 1.0, 0.0, np.pi, ccw=True)
        assert tangent_angle(arc, 0.0) == pytest.approx(np.pi / 2, abs=1e-14)

    def test_spline_matches_finite_differences(self):
        # centered finite differences as the independent derivative check
        sp = wiggly_spline()
        eps = 1e-6
        for t in np.linspace(0.02, 0.98, 20):
            d = (sp.point(t + eps) - sp.point(t - eps)) / (2 * eps)
            expected = np.arctan2(d[1], d[0])
            assert tangent_angle(sp, t) == pytest.approx(expected, abs=1e-6)

    def test_out_of_range_rejected(self):
        seg = Segment((0, 0), (1, 0))
        with pytest.raises(GeometryError):
            seg.tangent_angle(1.5)


class TestBoundaryAlignment:
    @pytest.mark.parametrize("theta,expected", [
        (0.0, (1.0, 0.0)),
        (np.pi / 2, (1.0, 0.0)),
        (np.pi / 8, (0.0, 1.0)),
    ])
    def test_reference_values(self, theta, expected):
        u, v = boundary_alignment(theta)
        assert u == pytest.approx(expected[0], abs=1e-14)
        assert v == pytest.approx(expected[1], abs=1e-14)

    def test_quarter_turn_invariance(self):
        thetas = RNG.uniform(-10, 10, size=200)
        for k in (-3, -1, 1, 2, 4):
            u0, v0 = boundary_alignment(thetas)
            u1, v1 = boundary_alignment(thetas + k * np.pi / 2)
            assert np.max(np.abs(u0 - u1)) <= 1e-12
            assert np.max(np.abs(v0 - v1)) <= 1e-12


class TestCorners:
    def test_unit_square(self):
        dom = fixtures.square()
        assert len(dom.corners) == 4
        for c in dom.corners:
            assert c.delta == pytest.approx(np.pi / 2, abs=1e-12)
            assert c.is_quarter_multiple()

    def test_half_disc(self):
        dom = fixtures.half_disc()
        assert len(dom.corners) == 2
        for c in dom.corners:
            assert c.delta == pytest.approx(np.pi / 2, abs=1e-12)

    def test_lshape(self):
        dom = fixtures.lshape()
        deltas = sorted(c.delta for c in dom.corners)
        assert len(deltas) == 6
        assert np.allclose(deltas[:5], np.pi / 2, atol=1e-12)
        assert deltas[5] == pytest.approx(3 * np.pi / 2, abs=1e-12)

    def test_smooth_loop_has_no_corners(self):
        dom = fixtures.nautilus()
        assert dom.corners == []

    def test_corner_wedge_orientation(self):
        # interior wedge of the square corner at the origin opens into the
        # first quadrant
        dom = fixtures.square()
        corner = min(dom.corners, key=lambda c: tuple(c.location))
        assert np.allclose(corner.location, (0, 0), atol=1e-12)
        mid = corner.theta0 + 0.5 * corner.delta
        probe = corner.location + 0.01 * np.array([np.cos(mid), np.sin(mid)])
        assert dom.contains(probe)


class TestProjection:
    def test_point_on_curve(self):
        dom = fixtures.half_disc()
        arc = dom.curves[1]
        p = arc.point(0.7)
        res = dom.project_to_boundary(p)
        assert res.distance <= dom.geom_tol
        assert res.curve == 1

    def test_disc_center_tie_break(self):
        dom = fixtures.disc()
        res = dom.project_to_boundary((0.0, 0.0))
        assert res.distance == pytest.approx(1.0, abs=1e-9)
        assert res.curve == 0
        assert res.t == pytest.approx(0.0, abs=1e-9)

    def test_matches_dense_sampling(self):
        dom = fixtures.half_disc()
        # dense boundary sampling as the independent oracle
        samples = []
        for c in dom.curves:
            samples.append(c.sample(10_000))
        samples = np.vstack(samples)
        pts = RNG.uniform(-0.9, 0.9, size=(25, 2))
        pts[:, 1] = np.abs(pts[:, 1]) * 0.9 + 0.02
        pts = pts[dom.contains(pts)]
        assert len(pts) > 5
        for p in pts:
            brute = np.min(np.hypot(samples[:, 0] - p[0],
                                    samples[:, 1] - p[1]))
            res = dom.project_to_boundary(p)
            assert res.distance == pytest.approx(brute, abs=1e-6)

    def test_boundary_points_project_to_zero(self):
        dom = fixtures.nautilus()
        for c in dom.curves:
            for t in np.linspace(c.t0, c.t1, 7)[1:-1]:
                p = c.point(t)
                assert dom.distance_to_boundary(p) <= 1e-7


class TestSplit:
    def test_segment_midpoint(self):
        seg = Segment((0, 0), (2, 0))
        a, b = seg.split_at(0.5)
        assert a.length() == pytest.approx(1.0, abs=1e-9)
        assert b.length() == pytest.approx(1.0, abs=1e-9)
        assert np.allclose(a.end, b.start)

    def test_arc_mid_angle(self):
        arc = Arc((0, 0), 2.0, 0.2, 1.8, ccw=True)
        mid = 0.5 * (arc.t0 + arc.t1)
        a, b = arc.split_at(mid)
        total = (a.t1 - a.t0) + (b.t1 - b.t0)
        assert total == pytest.approx(arc.t1 - arc.t0, abs=1e-14)
        assert np.allclose(a.end, b.start, atol=1e-14)

    def test_spline_pieces_reproduce_parent(self):
        sp = wiggly_spline()
        a, b = sp.split_at(0.37)
        for piece in (a, b):
            ts = np.linspace(piece.t0, piece.t1, 50)
            orig = sp.point(ts)
            got = piece.point(ts)
            assert np.max(np.hypot(*(orig - got).T)) <= 1e-8

    def test_split_at_endpoint_rejected(self):
        seg = Segment((0, 0), (1, 0))
        with pytest.raises(GeometryError):
            seg.split_at(0.0)
        with pytest.raises(GeometryError):
            seg.split_at(1.0)


class TestDomainInvariants:
    @pytest.mark.parametrize("name", ["square", "lshape", "halfdisc",
                                      "disc", "annular_sector", "polygon",
                                      "nautilus", "naca"])
    def test_loop_turning(self, name):
        dom = fixtures.get_domain(name)
        assert dom.loop_turning(0) == pytest.approx(2 * np.pi, abs=1e-8)
        for li in range(1, len(dom.loops)):
            assert dom.loop_turning(li) == pytest.approx(-2 * np.pi, abs=1e-8)

    def test_orientation_validated(self):
        with pytest.raises(GeometryError):
            Domain([[
                Segment((0, 0), (0, 1)),
                Segment((0, 1), (1, 1)),
                Segment((1, 1), (1, 0)),
                Segment((1, 0), (0, 0)),
            ]])

    def test_open_loop_rejected(self):
        with pytest.raises(GeometryError):
            Domain([[
                Segment((0, 0), (1, 0)),
                Segment((1, 0), (1, 1)),
                Segment((1, 1), (0, 1)),
                Segment((0, 1), (0.2, 0.0)),
            ]])

    def test_containment(self):
        dom = fixtures.naca0012()
        assert dom.contains((2.2, 1.0))
        assert not dom.contains((0.5, 0.0))     # inside the aerofoil hole
        assert not dom.contains((-5.0, 0.0))


class TestSerialization:
    @pytest.mark.parametrize("name", ["square", "halfdisc", "nautilus",
                                      "naca"])
    def test_roundtrip(self, name, tmp_path):
        dom = fixtures.get_domain(name)
        path = tmp_path / f"{name}.json"
        dom.save(path)
        dom2 = Domain.load(path)
        assert len(dom2.curves) == len(dom.curves)
        for c1, c2 in zip(dom.curves, dom2.curves):
            ts = np.linspace(c1.t0, c1.t1, 11)
            assert np.allclose(c1.point(ts), c2.point(ts), atol=1e-12)

    def test_rejects_malformed(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"nope": []}))
        with pytest.raises(GeometryError):
            Domain.load(path)


def test_wrap_angle_range():
    vals = RNG.uniform(-20, 20, 500)
    w = wrap_angle(vals)
    assert np.all(w > -np.pi - 1e-15)
    assert np.all(w <= np.pi + 1e-15)
    assert np.allclose(np.cos(w), np.cos(vals), atol=1e-12)
    assert np.allclose(np.sin(w), np.sin(vals), atol=1e-12)
