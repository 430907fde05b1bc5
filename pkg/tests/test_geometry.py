"""Quarter-plane boundary curves: parametrization, normals, endpoint decay."""

import math

import numpy as np
import pytest

from biaxpot import (DomainError, Point, check_endpoint_conditions,
                     superellipse_curve)


def test_point_rejects_negative_coordinates():
    with pytest.raises(DomainError):
        Point(-0.1, 0.5)
    with pytest.raises(DomainError):
        Point(0.5, -1.0e-12)


def test_superellipse_endpoints(curve):
    start = curve.point_at(0.0)
    end = curve.point_at(curve.length)
    assert (start.x, start.y) == pytest.approx((0.0, 1.0), abs=1e-12)
    assert (end.x, end.y) == pytest.approx((1.0, 0.0), abs=1e-12)


def test_superellipse_flattens_onto_x_axis(curve):
    # near the x-axis endpoint the tangent turns onto the axis like y^2,
    # so |dx/ds| / y^2 stays bounded along the approach
    l = curve.length
    ratios = []
    for d in l * 2.0 ** (-np.arange(4, 14, dtype=float)):
        cp = curve.point_at(l - d)
        ratios.append(abs(cp.tangent[0]) / cp.y ** 2)
    assert max(ratios) <= 2.0 * ratios[0]


def test_quarter_circle_length():
    circle = superellipse_curve(1.0, 1.0, 2.0)
    assert abs(circle.length - math.pi / 2.0) <= 1.0e-8


def test_rejects_exponent_below_two():
    with pytest.raises(DomainError):
        superellipse_curve(1.0, 1.0, 1.5)


def test_point_at_midpoint_on_curve(curve):
    cp = curve.point_at(0.5 * curve.length)
    assert abs(cp.x ** 3 + cp.y ** 3 - 1.0) <= 1.0e-10


def test_point_at_unit_tangent(curve):
    for s in np.linspace(0.0, curve.length, 33):
        cp = curve.point_at(float(s))
        assert abs(math.hypot(*cp.tangent) - 1.0) <= 1.0e-10


def test_point_at_rejects_out_of_range(curve):
    with pytest.raises(DomainError):
        curve.point_at(-1.0e-9)
    with pytest.raises(DomainError):
        curve.point_at(curve.length * (1.0 + 1.0e-9))


def test_normal_orthogonal_and_outward(curve):
    interior = Point(0.25, 0.25)
    for s in np.linspace(0.01, curve.length - 0.01, 41):
        cp = curve.point_at(float(s))
        nx, ny = cp.normal
        tx, ty = cp.tangent
        assert abs(nx * tx + ny * ty) <= 1.0e-12
        assert abs(math.hypot(nx, ny) - 1.0) <= 1.0e-10
        # outward: points away from the interior of the convex domain
        assert (cp.x - interior.x) * nx + (cp.y - interior.y) * ny > 0.0


def test_arclength_parametrization_consistent(curve):
    # chord-length sums at two resolutions, Richardson-extrapolated,
    # reproduce arclength differences
    rng = np.random.default_rng(31)
    for _ in range(5):
        s1, s2 = np.sort(rng.uniform(0.0, curve.length, 2))
        if s2 - s1 < 0.05:
            continue

        def chord_sum(m):
            ss = np.linspace(s1, s2, m + 1)
            cps = curve.points_at(ss)
            xs = np.array([c.x for c in cps])
            ys = np.array([c.y for c in cps])
            return float(np.sum(np.hypot(np.diff(xs), np.diff(ys))))

        coarse = chord_sum(512)
        fine = chord_sum(1024)
        extrapolated = (4.0 * fine - coarse) / 3.0
        assert abs(extrapolated - (s2 - s1)) <= 1.0e-8


def test_endpoint_conditions_cubic_superellipse(curve):
    report = check_endpoint_conditions(curve, eps=0.5)
    assert report["ok"] is True


def test_endpoint_conditions_circle_fails():
    circle = superellipse_curve(1.0, 1.0, 2.0)
    report = check_endpoint_conditions(circle, eps=0.5)
    assert report["ok"] is False
    # the failure shows up as ratios growing along the approach
    assert report["x_axis_growth"] > 2.0


def test_endpoint_conditions_quartic_wide():
    wide = superellipse_curve(2.0, 1.0, 4.0)
    report = check_endpoint_conditions(wide, eps=0.9)
    assert report["ok"] is True
    assert np.all(np.isfinite(report["x_axis_ratios"]))
    assert np.all(np.isfinite(report["y_axis_ratios"]))
