"""The fourth fundamental solution of the bi-axially symmetric potential
equation

    u_xx + u_yy + (2 alpha / x) u_x + (2 beta / y) u_y = 0,
    0 < 2 alpha < 1,  0 < 2 beta < 1,

on the quarter plane, together with its gradient, conormal derivative and
the near-singularity envelope.  The solution is

    q4(x, y; x0, y0) = k4 (r^2)^(alpha+beta-2) (x x0)^(1-2 alpha)
                           (y y0)^(1-2 beta)
                           F2(2-alpha-beta; 1-alpha, 1-beta;
                              2-2 alpha, 2-2 beta; xi, eta)

with xi = -4 x x0 / r^2, eta = -4 y y0 / r^2.  It vanishes on both axes
and carries a logarithmic singularity at (x0, y0).

Derivative formulas need three more F2 parameter families (the x-shift,
the y-shift, and the a-shift of the main family); every kernel-type
evaluation here computes the required families through the same appell_f2
continuation, in batch over curve points where the caller has many.

Argument convention: the first point is the integration/evaluation
variable (x, y), the second the fixed field point (x0, y0).  q4 itself is
symmetric under the swap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPointsError, DomainError, SingularPairError
from .geometry import CurvePoint, Point
from .specfun import appell_f2_many, ln_gamma

# A pair is treated as numerically singular when r^2 falls below this
# fraction of the larger chord scale; quadrature layouts must keep nodes
# farther out than that.
SINGULAR_R2_FRAC = 1.0e-12


@dataclass(frozen=True)
class Params:
    """Axis exponents of the operator; both in (0, 1/2)."""
    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 < 2.0 * self.alpha < 1.0 and 0.0 < 2.0 * self.beta < 1.0):
            raise DomainError(
                f"parameters must satisfy 0 < 2*alpha, 2*beta < 1, "
                f"got alpha={self.alpha}, beta={self.beta}")


@dataclass(frozen=True)
class ChordSet:
    """Squared chord distances and F2 arguments for a point pair.

    r1sq = r2 + 4 x x0 and r2sq = r2 + 4 y y0 hold exactly in arithmetic
    (they are computed that way), so xi = (r2 - r1sq)/r2 and
    eta = (r2 - r2sq)/r2 are free of cancellation.
    """
    r2: float
    r1sq: float
    r2sq: float
    xi: float
    eta: float

    @property
    def u(self) -> float:
        """r^2 / r1^2 = 1/(1 - xi), in (0, 1]."""
        return self.r2 / self.r1sq

    @property
    def v(self) -> float:
        """r^2 / r2^2 = 1/(1 - eta), in (0, 1]."""
        return self.r2 / self.r2sq


def chords(P: Point, Q: Point) -> ChordSet:
    """Chord data for the pair (P, Q); raises for coincident points."""
    dx = P.x - Q.x
    dy = P.y - Q.y
    r2 = dx * dx + dy * dy
    if r2 == 0.0:
        raise CoincidentPointsError(
            f"chords undefined for coincident points ({P.x}, {P.y})")
    fx = 4.0 * P.x * Q.x
    fy = 4.0 * P.y * Q.y
    return ChordSet(r2=r2, r1sq=r2 + fx, r2sq=r2 + fy,
                    xi=-fx / r2, eta=-fy / r2)


def k4_constant(p: Params) -> float:
    """Normalization constant of q4.

    k4 = 2^(4-2a-2b) G(1-a) G(1-b) G(2-a-b) / (4 pi G(2-2a) G(2-2b)).
    """
    a, b = p.alpha, p.beta
    ln = ((4.0 - 2.0 * a - 2.0 * b) * math.log(2.0)
          + ln_gamma(1.0 - a) + ln_gamma(1.0 - b) + ln_gamma(2.0 - a - b)
          - math.log(4.0 * math.pi) - ln_gamma(2.0 - 2.0 * a)
          - ln_gamma(2.0 - 2.0 * b))
    return math.exp(ln)


# F2 parameter families used by q4 and its first derivatives:
# main) (2-a-b; 1-a, 1-b; 2-2a, 2-2b)   the solution itself
# dx)   (3-a-b; 2-a, 1-b; 3-2a, 2-2b)   x-shifted, from d/dxi
# dy)   (3-a-b; 1-a, 2-b; 2-2a, 3-2b)   y-shifted, from d/deta
# da)   (3-a-b; 1-a, 1-b; 2-2a, 2-2b)   a-shifted, from the Euler relation

def _family_params(p: Params):
    a, b = p.alpha, p.beta
    return {
        "main": (2.0 - a - b, 1.0 - a, 1.0 - b, 2.0 - 2.0 * a, 2.0 - 2.0 * b),
        "dx": (3.0 - a - b, 2.0 - a, 1.0 - b, 3.0 - 2.0 * a, 2.0 - 2.0 * b),
        "dy": (3.0 - a - b, 1.0 - a, 2.0 - b, 2.0 - 2.0 * a, 3.0 - 2.0 * b),
        "da": (3.0 - a - b, 1.0 - a, 1.0 - b, 2.0 - 2.0 * a, 2.0 - 2.0 * b),
    }


def _chord_arrays(xs, ys, x0: float, y0: float):
    """Vectorized chord data with the singular-pair guard."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    dx = xs - x0
    dy = ys - y0
    r2 = dx * dx + dy * dy
    fx = 4.0 * xs * x0
    fy = 4.0 * ys * y0
    r1sq = r2 + fx
    r2sq = r2 + fy
    bad = r2 < SINGULAR_R2_FRAC * np.maximum(r1sq, r2sq)
    if np.any(bad):
        j = int(np.argmax(bad))
        raise SingularPairError(
            f"pair ({xs.flat[j]}, {ys.flat[j]}) vs ({x0}, {y0}) too close "
            f"to the kernel singularity (r^2 = {r2.flat[j]:.3e})")
    with np.errstate(divide="ignore"):
        xi = -fx / r2
        eta = -fy / r2
    return xs, ys, dx, dy, r2, xi, eta


def q4_many(p: Params, xs, ys, Q: Point) -> np.ndarray:
    """q4 at many first-argument points against a fixed second point."""
    xs, ys, _, _, r2, xi, eta = _chord_arrays(xs, ys, Q.x, Q.y)
    fam = _family_params(p)
    f_main = appell_f2_many(*fam["main"], xi, eta)
    a, b = p.alpha, p.beta
    with np.errstate(invalid="ignore"):
        pref = ((xs * Q.x) ** (1.0 - 2.0 * a) * (ys * Q.y) ** (1.0 - 2.0 * b)
                * r2 ** (a + b - 2.0))
    out = k4_constant(p) * pref * f_main
    # on-axis points: the prefactor vanishes identically
    out = np.where((xs == 0.0) | (ys == 0.0) | (Q.x == 0.0) | (Q.y == 0.0),
                   np.where(r2 > 0.0, 0.0, np.nan), out)
    return out


def q4(p: Params, P: Point, Q: Point) -> float:
    """The fourth fundamental solution at the pair (P, Q)."""
    return float(q4_many(p, np.array([P.x]), np.array([P.y]), Q)[0])


def grad_q4_many(p: Params, xs, ys, Q: Point):
    """(d/dx, d/dy) of q4 in its first argument, at many points.

    Points must sit strictly inside the quadrant (the x-derivative carries
    an x^(-2 alpha) factor, and symmetrically in y).
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if np.any(xs <= 0.0) or np.any(ys <= 0.0):
        raise DomainError("grad_q4 needs points strictly inside the quadrant")
    xs, ys, dx, dy, r2, xi, eta = _chord_arrays(xs, ys, Q.x, Q.y)
    fam = _family_params(p)
    f_main = appell_f2_many(*fam["main"], xi, eta)
    f_dx = appell_f2_many(*fam["dx"], xi, eta)
    f_dy = appell_f2_many(*fam["dy"], xi, eta)
    f_da = appell_f2_many(*fam["da"], xi, eta)
    a, b = p.alpha, p.beta
    k4 = k4_constant(p)
    astar = 2.0 - a - b
    x0, y0 = Q.x, Q.y
    base = k4 * x0 ** (1.0 - 2.0 * a) * y0 ** (1.0 - 2.0 * b)
    r2m2 = r2 ** (a + b - 2.0)
    r2m3 = r2 ** (a + b - 3.0)
    xp = xs ** (1.0 - 2.0 * a)
    yp = ys ** (1.0 - 2.0 * b)
    gx = base * ((1.0 - 2.0 * a) * r2m2 * xs ** (-2.0 * a) * yp * f_main
                 - 2.0 * astar * r2m3 * xp * yp * (x0 * f_dx + dx * f_da))
    gy = base * ((1.0 - 2.0 * b) * r2m2 * xp * ys ** (-2.0 * b) * f_main
                 - 2.0 * astar * r2m3 * xp * yp * (y0 * f_dy + dy * f_da))
    return gx, gy


def grad_q4(p: Params, P: Point, Q: Point) -> tuple[float, float]:
    """Gradient of q4 with respect to its first point."""
    gx, gy = grad_q4_many(p, np.array([P.x]), np.array([P.y]), Q)
    return float(gx[0]), float(gy[0])


def dq4_dn(p: Params, cp: CurvePoint, Q: Point) -> float:
    """Outward conormal derivative of q4 at a curve point.

    Assembled as the five-term grouped closed form (the r^2-logarithm
    projection plus four single-family terms), which must agree with the
    normal projection of grad_q4; both are exposed so that tests can pit
    the two evaluation trees against each other.
    """
    xs = np.array([cp.x])
    ys = np.array([cp.y])
    xs, ys, dxv, dyv, r2, xi, eta = _chord_arrays(xs, ys, Q.x, Q.y)
    fam = _family_params(p)
    f_main = float(appell_f2_many(*fam["main"], xi, eta)[0])
    f_dx = float(appell_f2_many(*fam["dx"], xi, eta)[0])
    f_dy = float(appell_f2_many(*fam["dy"], xi, eta)[0])
    f_da = float(appell_f2_many(*fam["da"], xi, eta)[0])
    a, b = p.alpha, p.beta
    k4 = k4_constant(p)
    astar = 2.0 - a - b
    x, y = cp.x, cp.y
    x0, y0 = Q.x, Q.y
    tx, ty = cp.tangent
    r2s = float(r2[0])
    dln = (2.0 * float(dxv[0]) * (-ty) + 2.0 * float(dyv[0]) * tx) / r2s
    base = k4 * x0 ** (1.0 - 2.0 * a) * y0 ** (1.0 - 2.0 * b)
    r2m2 = r2s ** (a + b - 2.0)
    r2m3 = r2s ** (a + b - 3.0)
    xp = x ** (1.0 - 2.0 * a)
    yp = y ** (1.0 - 2.0 * b)
    return base * (
        -astar * r2m2 * xp * yp * f_da * dln
        - 2.0 * astar * r2m3 * xp * yp * x0 * f_dx * (-ty)
        - 2.0 * astar * r2m3 * xp * yp * y0 * f_dy * tx
        + (1.0 - 2.0 * a) * r2m2 * x ** (-2.0 * a) * yp * f_main * (-ty)
        + (1.0 - 2.0 * b) * r2m2 * xp * y ** (-2.0 * b) * f_main * tx)


def weighted_dq4_dn_many(p: Params, xs, ys, nxs, nys, Q: Point) -> np.ndarray:
    """x^(2 alpha) y^(2 beta) times the outward conormal derivative of q4,
    at many curve points (positions and outward normals) for a fixed Q.

    The weight is folded into the closed form so that every power of the
    curve coordinates is nonnegative; the result stays finite (and tends
    to zero) at the on-axis curve endpoints.
    """
    nxs = np.asarray(nxs, dtype=float)
    nys = np.asarray(nys, dtype=float)
    xs, ys, dx, dy, r2, xi, eta = _chord_arrays(xs, ys, Q.x, Q.y)
    fam = _family_params(p)
    f_main = appell_f2_many(*fam["main"], xi, eta)
    f_dx = appell_f2_many(*fam["dx"], xi, eta)
    f_dy = appell_f2_many(*fam["dy"], xi, eta)
    f_da = appell_f2_many(*fam["da"], xi, eta)
    a, b = p.alpha, p.beta
    k4 = k4_constant(p)
    astar = 2.0 - a - b
    x0, y0 = Q.x, Q.y
    base = k4 * x0 ** (1.0 - 2.0 * a) * y0 ** (1.0 - 2.0 * b)
    r2m2 = r2 ** (a + b - 2.0)
    r2m3 = r2 ** (a + b - 3.0)
    xy = xs * ys
    main_part = r2m2 * ((1.0 - 2.0 * a) * ys * nxs
                        + (1.0 - 2.0 * b) * xs * nys) * f_main
    shift_part = -2.0 * astar * r2m3 * xy * (x0 * f_dx * nxs + y0 * f_dy * nys)
    radial_part = -2.0 * astar * r2m3 * xy * (dx * nxs + dy * nys) * f_da
    return base * (main_part + shift_part + radial_part)


def singularity_envelope(p: Params, P: Point, Q: Point) -> float:
    """Comparison envelope for |q4| near the singular pair.

    Returns (x x0)^(1-2 alpha) (y y0)^(1-2 beta) (r1^2)^(alpha-1)
    (r2^2)^(beta-1) |ln(r^2/r1^2 + r^2/r2^2 - (r^2/r1^2)(r^2/r2^2))|.
    The log argument lies in (0, 1] for any admissible pair, so the
    absolute value fixes its sign; the envelope is meant for ratio tests
    |q4| / envelope, not as a certified bound.
    """
    if P.x <= 0.0 or P.y <= 0.0 or Q.x <= 0.0 or Q.y <= 0.0:
        raise DomainError("singularity_envelope needs strictly interior points")
    ch = chords(P, Q)
    u = ch.u
    v = ch.v
    arg = u + v - u * v
    if arg <= 0.0:
        raise DomainError(f"envelope log argument {arg} not positive")
    a, b = p.alpha, p.beta
    return ((P.x * Q.x) ** (1.0 - 2.0 * a) * (P.y * Q.y) ** (1.0 - 2.0 * b)
            * ch.r1sq ** (a - 1.0) * ch.r2sq ** (b - 1.0)
            * abs(math.log(arg)))
