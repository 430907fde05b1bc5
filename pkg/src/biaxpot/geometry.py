"""Boundary curves in the open quarter plane x > 0, y > 0.

A ``Curve`` is an arc from a point B = (0, b) on the y-axis to a point
A = (a, 0) on the x-axis, parametrised by arclength s in [0, l].  The
orientation is fixed: s = 0 at B, s = l at A.  For this traversal the
outward unit normal (pointing away from the enclosed region, which lies
between the arc and the axes) is (-y'(s), x'(s)).

The stock family is the superellipse (x/a)^q + (y/b)^q = 1 with q >= 2.
It is built from two graphs glued at the point of the arc where
x/a = y/b: near B the arc is the graph x -> (x, y(x)), near A the graph
y -> (x(y), y).  Both graphs have bounded slope on their half, so speed,
tangent and curvature follow from stable closed forms, and the only
numerical content is the arclength table used to invert s -> parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline, PchipInterpolator

from .errors import DomainError


@dataclass(frozen=True)
class Point:
    """A point of the closed quarter plane."""
    x: float
    y: float

    def __post_init__(self):
        if self.x < 0.0 or self.y < 0.0:
            raise DomainError(f"point ({self.x}, {self.y}) leaves the quarter plane")


@dataclass(frozen=True)
class CurvePoint:
    """Boundary point with local frame data at arclength s.

    ``normal`` is the outward unit normal (-dy/ds, dx/ds); ``tangent`` is
    (dx/ds, dy/ds); ``curvature`` is signed with respect to that frame.
    """
    s: float
    x: float
    y: float
    tangent: tuple[float, float]
    normal: tuple[float, float]
    curvature: float


_TABLE_CELLS = 1024
_GAUSS_PTS = 7


class Curve:
    """Arclength-parametrised arc from (0, b) to (a, 0); see module docstring.

    Subclasses provide the two graph branches through ``_branch_geometry``
    and the glue parameter; this base class owns the arclength tables and
    the s -> point evaluation.
    """

    def __init__(self, a: float, b: float):
        if a <= 0.0 or b <= 0.0:
            raise DomainError("curve endpoints must sit on the positive axes")
        self.a = float(a)
        self.b = float(b)
        self._build_tables()

    # -- subclass interface -------------------------------------------------

    def _branch_split(self) -> tuple[float, float]:
        """Glue values (x_star, y_star): branch 1 is the graph over
        x in [0, x_star] (containing B), branch 2 the graph over
        y in [0, y_star] (containing A)."""
        raise NotImplementedError

    def _graph_over_x(self, x: np.ndarray):
        """Return (y, dy/dx, d2y/dx2) for the branch near B."""
        raise NotImplementedError

    def _graph_over_y(self, y: np.ndarray):
        """Return (x, dx/dy, d2x/dy2) for the branch near A."""
        raise NotImplementedError

    # -- arclength machinery -------------------------------------------------

    def _build_tables(self):
        x_star, y_star = self._branch_split()
        gl_x, gl_w = leggauss(_GAUSS_PTS)

        def table(upper, speed):
            edges = upper * np.linspace(0.0, 1.0, _TABLE_CELLS + 1) ** 2
            mid = 0.5 * (edges[1:] + edges[:-1])
            half = 0.5 * (edges[1:] - edges[:-1])
            nodes = mid[:, None] + half[:, None] * gl_x[None, :]
            cell = half * (speed(nodes.ravel()).reshape(nodes.shape)
                           @ gl_w)
            return edges, np.concatenate(([0.0], np.cumsum(cell)))

        def speed_x(x):
            _, dy, _ = self._graph_over_x(x)
            return np.hypot(1.0, dy)

        def speed_y(y):
            _, dx, _ = self._graph_over_y(y)
            return np.hypot(1.0, dx)

        self._x_edges, s_of_x = table(x_star, speed_x)
        self._y_edges, s_of_y = table(y_star, speed_y)
        len1 = s_of_x[-1]
        len2 = s_of_y[-1]
        self.length = len1 + len2
        self._s_glue = len1
        # branch 1: s grows with x from B; branch 2: s = length - (arclength
        # measured from A), so it grows as y falls.  Forward maps are cubic
        # splines (smooth data, near machine accuracy at this resolution);
        # the inverse maps only seed the Newton polish, so the monotone
        # PCHIP form is the right tool there.
        self._s_of_x = CubicSpline(self._x_edges, s_of_x)
        self._x_of_s = PchipInterpolator(s_of_x, self._x_edges)
        self._s_of_y = CubicSpline(self._y_edges, self.length - s_of_y)
        self._y_of_s = PchipInterpolator(self.length - s_of_y[::-1],
                                         self._y_edges[::-1])

    def _refine(self, s: float, par: float, branch: int) -> float:
        """Newton-polish the table inverse so point_at is consistent with
        the analytic speed to machine accuracy."""
        for _ in range(3):
            if branch == 1:
                _, dy, _ = self._graph_over_x(np.array([par]))
                f = float(self._s_of_x(par)) - s
                par -= f / float(np.hypot(1.0, dy[0]))
                par = min(max(par, 0.0), self._x_edges[-1])
            else:
                _, dx, _ = self._graph_over_y(np.array([par]))
                f = float(self._s_of_y(par)) - s
                par += f / float(np.hypot(1.0, dx[0]))
                par = min(max(par, 0.0), self._y_edges[-1])
        return par

    def point_at(self, s: float) -> CurvePoint:
        """Boundary point, frame and curvature at arclength s in [0, l]."""
        if s < -1e-12 * self.length or s > self.length * (1.0 + 1e-12):
            raise DomainError(f"arclength {s} outside [0, {self.length}]")
        s = min(max(s, 0.0), self.length)
        if s <= self._s_glue:
            x = self._refine(s, float(self._x_of_s(s)), branch=1)
            ya, dy, d2y = self._graph_over_x(np.array([x]))
            y, dy, d2y = float(ya[0]), float(dy[0]), float(d2y[0])
            sp = np.hypot(1.0, dy)
            # ds points toward growing x on this branch
            tx, ty = 1.0 / sp, dy / sp
            kappa = d2y / sp ** 3
        else:
            y = self._refine(s, float(self._y_of_s(s)), branch=2)
            xa, dx, d2x = self._graph_over_y(np.array([y]))
            x, dx, d2x = float(xa[0]), float(dx[0]), float(d2x[0])
            sp = np.hypot(1.0, dx)
            # ds points toward falling y on this branch, so dx/ds = -dx/dy / sp
            tx, ty = -dx / sp, -1.0 / sp
            kappa = d2x / sp ** 3
        nx, ny = -ty, tx
        return CurvePoint(s=s, x=x, y=y, tangent=(tx, ty),
                          normal=(nx, ny), curvature=kappa)

    def points_at(self, s: np.ndarray) -> list[CurvePoint]:
        return [self.point_at(float(v)) for v in np.asarray(s, dtype=float)]


class SuperellipseCurve(Curve):
    """Quarter superellipse (x/a)^q + (y/b)^q = 1, q >= 2, from (0,b) to (a,0).

    q = 2 is the ellipse.  Larger q flattens the arc against the axes; the
    graph slope at the axis endpoints vanishes like the (q-1)-th power of
    the distance, which is what the endpoint flatness checks below measure.
    """

    def __init__(self, a: float, b: float, q: float):
        if q < 2.0:
            raise DomainError(f"superellipse exponent must satisfy q >= 2, got {q}")
        self.q = float(q)
        super().__init__(a, b)

    def _branch_split(self):
        # x/a = y/b on the arc: (x/a)^q = 1/2
        f = 0.5 ** (1.0 / self.q)
        return self.a * f, self.b * f

    def implicit_value(self, x: float, y: float) -> float:
        """Signed implicit function (x/a)^q + (y/b)^q - 1.

        Negative inside the arc, zero on it, positive outside; used by the
        point classifier in the potential module.
        """
        return (x / self.a) ** self.q + (y / self.b) ** self.q - 1.0

    def x_extent(self, y):
        """Width of the domain at height y: the x where the arc sits."""
        g = 1.0 - (np.asarray(y, dtype=float) / self.b) ** self.q
        return self.a * np.maximum(g, 0.0) ** (1.0 / self.q)

    def _graph_over_x(self, x):
        q = self.q
        w = (x / self.a) ** q
        g = (1.0 - w) ** (1.0 / q)     # y/b
        y = self.b * g
        # dy/dx = -(b/a) (x/a)^(q-1) g^(1-q)
        dy = -(self.b / self.a) * (x / self.a) ** (q - 1.0) * g ** (1.0 - q)
        # d2y/dx2 = -(q-1) (b/a^2) (x/a)^(q-2) g^(1-2q)
        d2y = -(q - 1.0) * (self.b / self.a ** 2) \
            * (x / self.a) ** (q - 2.0) * g ** (1.0 - 2.0 * q)
        return y, dy, d2y

    def _graph_over_y(self, y):
        q = self.q
        w = (y / self.b) ** q
        g = (1.0 - w) ** (1.0 / q)
        x = self.a * g
        dx = -(self.a / self.b) * (y / self.b) ** (q - 1.0) * g ** (1.0 - q)
        d2x = -(q - 1.0) * (self.a / self.b ** 2) \
            * (y / self.b) ** (q - 2.0) * g ** (1.0 - 2.0 * q)
        return x, dx, d2x


def superellipse_curve(a: float, b: float, q: float) -> SuperellipseCurve:
    """Stock boundary: quarter superellipse with semi-axes a, b, exponent q."""
    return SuperellipseCurve(a, b, q)


def check_endpoint_conditions(curve: Curve, eps: float = 1.0,
                              n_dyadic: int = 12) -> dict:
    """Measure how fast the arc flattens onto the axes at its endpoints.

    Samples dyadically shrinking arclength offsets from each endpoint and
    fits the decay exponent of |dx/ds| / y**(1+eps) near the x-axis end
    (resp. |dy/ds| / x**(1+eps) near the y-axis end).  The boundary
    integrals of the weighted potentials stay finite when both ratios stay
    bounded, i.e. when the fitted slopes are >= 0.

    Returns a report dict with the sampled ratios and a boolean ``ok``.
    """
    l = curve.length
    offs = l * 2.0 ** (-np.arange(4, 4 + n_dyadic, dtype=float))

    def probe(end_at_x_axis: bool):
        ratios = []
        for d in offs:
            p = curve.point_at(l - d if end_at_x_axis else d)
            if end_at_x_axis:
                ratios.append(abs(p.tangent[0]) / p.y ** (1.0 + eps))
            else:
                ratios.append(abs(p.tangent[1]) / p.x ** (1.0 + eps))
        ratios = np.array(ratios)
        grow = ratios[-1] / ratios[0]
        return ratios, grow

    rx, gx = probe(end_at_x_axis=True)
    ry, gy = probe(end_at_x_axis=False)
    ok = bool(gx < 2.0 and gy < 2.0)
    return {
        "eps": eps,
        "offsets": offs,
        "x_axis_ratios": rx,
        "y_axis_ratios": ry,
        "x_axis_growth": float(gx),
        "y_axis_growth": float(gy),
        "ok": ok,
    }
