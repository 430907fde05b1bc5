"""Double-layer potential, gauge function, boundary traces, and flux checks.

The double-layer potential carries the weighted conormal derivative of the
fundamental solution q4 against a density mu on the curve:

    w(P0) = int_0^l x(t)^(2a) y(t)^(2b) mu(t) dq4/dn(x(t), y(t); P0) dt.

Everything downstream of that integral lives here: the kernel K4(s, t) with
its continuous diagonal limit, smooth and log-graded quadrature rules, the
one-sided boundary traces with their +-mu/2 jumps, the gauge function k
collecting the axis-segment flux, the closed-contour flux identity, and the
energy (Green first identity) residual.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline
from scipy.special import roots_jacobi, roots_legendre

from .errors import (AmbiguousClassificationError, ConvergenceError,
                     DomainError)
from .geometry import Curve, Point
from .kernel import (Params, dq4_dn, grad_q4_many, k4_constant, q4_many,
                     weighted_dq4_dn_many)
from .specfun import gauss_2f1

__all__ = [
    "Density", "QuadratureRule", "smooth_rule", "graded_rule",
    "kernel_K4", "kernel_K4_diagonal", "kernel_K4_row",
    "double_layer", "k_gauge", "boundary_trace",
    "contour_flux", "flux_residual", "energy_residual",
    "classify", "nearest_arclength",
    "GaugeIdentityResult", "gauge_identity_verify",
    "Q4Solution",
]

# Offset fraction (of curve length) used for the one-sided kernel limits
# that define the diagonal of K4.
DIAG_OFFSET_FRAC = 1.0e-5

# Implicit-value band classifying a point as lying on the curve.
ON_CURVE_TOL = 1.0e-9

# Points closer to the curve than this, yet outside the on-curve band,
# cannot be classified reliably.
AMBIGUOUS_DIST = 1.0e-6

# Absolute error target for the adaptive near-boundary evaluator.
NEAR_FIELD_TOL = 1.0e-8

_LEG_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _leg(order: int) -> tuple[np.ndarray, np.ndarray]:
    rule = _LEG_CACHE.get(order)
    if rule is None:
        rule = roots_legendre(order)
        _LEG_CACHE[order] = rule
    return rule


def _jacobi01(n: int, exponent: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for int_0^1 s^exponent f(s) ds, exponent > -1."""
    x, w = roots_jacobi(n, 0.0, exponent)
    nodes = 0.5 * (x + 1.0)
    weights = w * 0.5 ** (exponent + 1.0)
    return nodes, weights


class Density:
    """Boundary density mu(s) on [0, l], closed form or sampled.

    Wraps a vectorised callable of arclength; ``from_samples`` builds a cubic
    spline through node values so that solver output can be re-evaluated at
    arbitrary quadrature nodes.
    """

    def __init__(self, func: Callable):
        if not callable(func):
            raise DomainError("density must be callable in arclength")
        self._func = func

    def __call__(self, s):
        arr = np.asarray(s, dtype=float)
        out = np.asarray(self._func(arr), dtype=float)
        out = np.broadcast_to(out, arr.shape) if out.shape != arr.shape else out
        if not np.all(np.isfinite(out)):
            raise DomainError("density produced non-finite values")
        return float(out) if arr.ndim == 0 else np.array(out, dtype=float)

    @classmethod
    def constant(cls, value: float) -> "Density":
        value = float(value)
        if not math.isfinite(value):
            raise DomainError("constant density must be finite")
        return cls(lambda s: np.full_like(np.asarray(s, dtype=float), value))

    @classmethod
    def from_samples(cls, nodes, values) -> "Density":
        nodes = np.asarray(nodes, dtype=float)
        values = np.asarray(values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape:
            raise DomainError("sampled density needs matching 1-d nodes/values")
        if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(values))):
            raise DomainError("sampled density must be finite")
        den = cls(CubicSpline(nodes, values))
        den.nodes = nodes.copy()
        den.values = values.copy()
        return den


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable quadrature rule on an arclength interval.

    ``kind`` is "smooth" for composite Gauss-Legendre layouts and
    "log-graded" for rules with dyadic panels accumulating at
    ``singular_at``; the latter leave out the innermost gap recorded in
    ``gap``, whose contribution the caller supplies from the diagonal limit.
    """

    nodes: np.ndarray
    weights: np.ndarray
    order: int
    kind: str
    singular_at: float | None = None
    gap: tuple[float, float] | None = None

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise DomainError("rule nodes/weights must be matching 1-d arrays")
        if np.any(weights <= 0.0):
            raise DomainError("rule weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return self.nodes.size


def _panel_nodes(edges: np.ndarray, order: int):
    """Gauss-Legendre nodes/weights on each [edges[k], edges[k+1]] panel."""
    x, w = _leg(order)
    lo = edges[:-1][:, None]
    hi = edges[1:][:, None]
    nodes = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x
    weights = 0.5 * (hi - lo) * w
    return nodes.ravel(), weights.ravel()


def _smooth_edges(length: float, panels: int, end_levels: int) -> np.ndarray:
    """Uniform panel edges with dyadic refinement of both end panels.

    Boundary integrands here are smooth inside (0, l) but only Hoelder at the
    axis endpoints (the solution vanishes like fractional powers there), so
    the end panels are split dyadically toward s = 0 and s = l.
    """
    base = panels - 2 * end_levels
    if base < 4:
        raise DomainError("node budget too small for the endpoint grading")
    coarse = np.linspace(0.0, length, base + 1)
    h = coarse[1] - coarse[0]
    left = coarse[0] + h * 0.5 ** np.arange(end_levels, 0, -1)
    right = coarse[-1] - h * 0.5 ** np.arange(1, end_levels + 1)
    return np.concatenate((coarse[:1], left, coarse[1:-1], right, coarse[-1:]))


def smooth_rule(length: float, n: int, order: int = 8) -> QuadratureRule:
    """Composite Gauss-Legendre rule with n nodes on [0, length].

    n must be a multiple of ``order``.  End panels are refined dyadically
    (weights stay positive and sum to the length exactly).
    """
    if length <= 0.0:
        raise DomainError("rule length must be positive")
    if order < 2:
        raise DomainError("panel order must be at least 2")
    if n < 4 * order or n % order != 0:
        raise DomainError(
            f"node count {n} must be a multiple of order {order}, >= {4 * order}")
    panels = n // order
    # a quarter of the panels to each endpoint grading, the rest to the
    # uniform interior grid, so both refine as n grows
    end_levels = min(18, panels // 4, (panels - 4) // 2)
    edges = _smooth_edges(length, panels, end_levels)
    nodes, weights = _panel_nodes(edges, order)
    if abs(weights.sum() - length) > 1.0e-12 * max(1.0, length):
        raise ConvergenceError("smooth rule weights failed the length check")
    return QuadratureRule(nodes, weights, order, "smooth")


# Smallest excluded half-gap of the graded rule, as a fraction of the
# curve length.  Narrower gaps would park nodes inside the kernel's
# singular-pair guard band when the grading point sits near an endpoint.
GRADED_MIN_GAP_FRAC = 4.0e-6


def graded_rule(length: float, s0: float, levels: int = 16,
                order: int = 12) -> QuadratureRule:
    """Dyadic panels accumulating at s0 from both sides.

    The kernel K4(s0, .) behaves like c*log|t - s0| plus a smooth part
    near s0; dyadic grading restores full Gauss accuracy for that shape.
    The innermost gap around s0 (per side about side_length*2**(-levels),
    but never narrower than GRADED_MIN_GAP_FRAC of the total length) is
    excluded and recorded in ``gap``; the trace evaluator integrates the
    log model across it analytically.
    """
    if not 0.0 < s0 < length:
        raise DomainError("grading point must lie strictly inside (0, length)")
    if levels < 4 or order < 2:
        raise DomainError("graded rule needs levels >= 4 and order >= 2")
    cap = length / 16.0
    floor_gap = GRADED_MIN_GAP_FRAC * length
    node_parts, weight_parts, half_gaps = [], [], []
    for reach, sign in ((s0, -1.0), (length - s0, 1.0)):
        side_levels = min(levels, max(2, int(math.log2(reach / floor_gap))))
        breaks = s0 + sign * reach * 0.5 ** np.arange(0, side_levels + 1)
        side_edges = []
        for lo, hi in zip(breaks[:-1], breaks[1:]):
            lo, hi = min(lo, hi), max(lo, hi)
            pieces = max(1, int(math.ceil((hi - lo) / cap)))
            side_edges.append(np.linspace(lo, hi, pieces + 1))
        # each side is one contiguous block; the gap between the two blocks
        # around s0 stays uncovered on purpose
        edges = np.unique(np.concatenate(side_edges))
        nd, wt = _panel_nodes(edges, order)
        node_parts.append(nd)
        weight_parts.append(wt)
        half_gaps.append(reach * 0.5 ** side_levels)
    nodes = np.concatenate(node_parts)
    weights = np.concatenate(weight_parts)
    idx = np.argsort(nodes, kind="stable")
    gap = (s0 - half_gaps[0], s0 + half_gaps[1])
    return QuadratureRule(nodes[idx], weights[idx], order, "log-graded",
                          singular_at=s0, gap=gap)


# -- kernel ------------------------------------------------------------------

_diag_cache: "weakref.WeakKeyDictionary[Curve, dict]" = weakref.WeakKeyDictionary()


def _curve_source(curve: Curve, s: float) -> Point:
    cp = curve.point_at(s)
    return Point(cp.x, cp.y)


def kernel_K4_diagonal(p: Params, curve: Curve, s: float) -> float:
    """Continuous diagonal limit of K4 at t = s.

    Computed as the average of the two one-sided values at offset
    DIAG_OFFSET_FRAC * length and cached per node.
    """
    cache = _diag_cache.setdefault(curve, {})
    key = (p.alpha, p.beta, float(s))
    value = cache.get(key)
    if value is None:
        delta = DIAG_OFFSET_FRAC * curve.length
        sides = [t for t in (s - delta, s + delta) if 0.0 < t < curve.length]
        if not sides:
            raise DomainError("diagonal limit needs room on at least one side")
        value = float(np.mean([kernel_K4(p, curve, s, t) for t in sides]))
        cache[key] = value
    return value


def kernel_K4(p: Params, curve: Curve, s: float, t: float) -> float:
    """Double-layer kernel K4(s, t) = x(t)^(2a) y(t)^(2b) dq4/dn_t."""
    if t == s:
        return kernel_K4_diagonal(p, curve, s)
    cp = curve.point_at(t)
    weight = cp.x ** (2.0 * p.alpha) * cp.y ** (2.0 * p.beta)
    return weight * dq4_dn(p, cp, _curve_source(curve, s))


# Offsets (fractions of arclength) bracketing the two-point fit of the
# kernel's diagonal log slope; the inner one matches DIAG_OFFSET_FRAC.
LOG_FIT_OUTER_FRAC = 1.0e-3


def kernel_K4_log_split(p: Params, curve: Curve,
                        s: float) -> tuple[float, float]:
    """Log slope and regular part of the kernel near its diagonal.

    The log coefficient of q4 varies with the source point, so the kernel
    keeps a residual c(s) * ln|t - s| term; near the diagonal
    K4(s, t) ~ c(s) * ln|t - s| + regular(s).  Both constants come from the
    symmetrised kernel values at two offsets.
    """
    outer = LOG_FIT_OUTER_FRAC * curve.length
    inner = DIAG_OFFSET_FRAC * curve.length
    d_outer = 0.5 * (kernel_K4(p, curve, s, s - outer)
                     + kernel_K4(p, curve, s, s + outer))
    d_inner = kernel_K4_diagonal(p, curve, s)
    slope = (d_outer - d_inner) / math.log(outer / inner)
    regular = d_inner - slope * math.log(inner)
    return slope, regular


def _weighted_row(p: Params, curve: Curve, ts: np.ndarray,
                  source: Point) -> np.ndarray:
    """Weighted conormal derivative of q4(.; source) at curve points ts."""
    cps = curve.points_at(ts)
    xs = np.array([c.x for c in cps])
    ys = np.array([c.y for c in cps])
    nxs = np.array([c.normal[0] for c in cps])
    nys = np.array([c.normal[1] for c in cps])
    return weighted_dq4_dn_many(p, xs, ys, nxs, nys, source)


def kernel_K4_row(p: Params, curve: Curve, s: float, ts) -> np.ndarray:
    """Vectorised K4(s, t) over an array of arclengths t."""
    ts = np.asarray(ts, dtype=float)
    out = np.empty(ts.shape, dtype=float)
    diag = ts == s
    if np.any(~diag):
        out[~diag] = _weighted_row(p, curve, ts[~diag],
                                   _curve_source(curve, s))
    if np.any(diag):
        out[diag] = kernel_K4_diagonal(p, curve, s)
    return out


# -- geometry queries --------------------------------------------------------

def nearest_arclength(curve: Curve, P: Point) -> tuple[float, float]:
    """Arclength of the curve point nearest to P, and the distance.

    Coarse scan of the arc followed by Newton steps on the stationarity
    condition (Gamma(s) - P) . T(s) = 0.
    """
    ss = np.linspace(0.0, curve.length, 257)
    cps = curve.points_at(ss)
    d2 = [(c.x - P.x) ** 2 + (c.y - P.y) ** 2 for c in cps]
    s = float(ss[int(np.argmin(d2))])
    for _ in range(8):
        cp = curve.point_at(s)
        rx, ry = cp.x - P.x, cp.y - P.y
        g = rx * cp.tangent[0] + ry * cp.tangent[1]
        # d/ds of g: |T|^2 + (Gamma - P) . kappa N
        gp = 1.0 + cp.curvature * (rx * cp.normal[0] + ry * cp.normal[1])
        if gp == 0.0:
            break
        step = g / gp
        s = min(max(s - step, 0.0), curve.length)
        if abs(step) < 1.0e-14 * curve.length:
            break
    cp = curve.point_at(s)
    return s, math.hypot(cp.x - P.x, cp.y - P.y)


def classify(curve: Curve, P: Point) -> str:
    """Classify P against the closed domain: "inside", "on", or "outside".

    Uses the implicit value of the arc with an on-curve band of ON_CURVE_TOL;
    points within AMBIGUOUS_DIST of the arc that miss the band raise
    AmbiguousClassificationError.
    """
    if P.x <= 0.0 or P.y <= 0.0:
        raise DomainError("classification needs a point in the open quadrant")
    if not hasattr(curve, "implicit_value"):
        raise DomainError("classification needs a curve with an implicit form")
    value = curve.implicit_value(P.x, P.y)
    if abs(value) <= ON_CURVE_TOL:
        return "on"
    # cheap distance bound from the implicit gradient before the expensive
    # nearest-point search
    q = curve.q
    gx = q / curve.a * (P.x / curve.a) ** (q - 1.0)
    gy = q / curve.b * (P.y / curve.b) ** (q - 1.0)
    d_est = abs(value) / math.hypot(gx, gy)
    if d_est <= 10.0 * AMBIGUOUS_DIST:
        _, dist = nearest_arclength(curve, P)
        if dist <= AMBIGUOUS_DIST:
            raise AmbiguousClassificationError(
                f"point ({P.x}, {P.y}) lies {dist:.3e} from the curve, "
                "inside the ambiguity band")
    return "inside" if value < 0.0 else "outside"


# -- double-layer potential ----------------------------------------------------

def _layer_panel(p: Params, curve: Curve, mu: Density, P0: Point,
                 lo: float, hi: float, order: int) -> float:
    x, w = _leg(order)
    s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x
    weights = 0.5 * (hi - lo) * w
    vals = _weighted_row(p, curve, s, P0)
    return float(np.dot(weights, vals * mu(s)))


def _layer_adaptive(p: Params, curve: Curve, mu: Density, P0: Point,
                    lo: float, hi: float, parent: float, budget: float,
                    order: int, depth: int) -> float:
    mid = 0.5 * (lo + hi)
    left = _layer_panel(p, curve, mu, P0, lo, mid, order)
    right = _layer_panel(p, curve, mu, P0, mid, hi, order)
    if abs(parent - (left + right)) <= budget or depth >= 48:
        if depth >= 48 and abs(parent - (left + right)) > budget:
            raise ConvergenceError(
                "near-boundary subdivision stalled; evaluation point is "
                "effectively on the curve, use boundary_trace")
        return left + right
    half = 0.5 * budget
    return (_layer_adaptive(p, curve, mu, P0, lo, mid, left, half, order,
                            depth + 1)
            + _layer_adaptive(p, curve, mu, P0, mid, hi, right, half, order,
                              depth + 1))


def double_layer(p: Params, curve: Curve, mu: Density, P0: Point,
                 rule: QuadratureRule | None = None,
                 tol: float = NEAR_FIELD_TOL,
                 support: tuple[float, float] | None = None) -> float:
    """Double-layer potential at an off-curve point P0.

    With a rule supplied and P0 well separated from the curve the rule is
    applied directly; otherwise the integral is computed by adaptive panel
    bisection until the local error estimates sum below ``tol``, which keeps
    the near-boundary peak (width comparable to the distance to the curve)
    resolved.  ``support`` restricts the integration to a sub-arc (used for
    densities that live on a trimmed node range).
    """
    if P0.x <= 0.0 or P0.y <= 0.0:
        raise DomainError("evaluation point must lie in the open quadrant")
    if rule is not None:
        panels = max(1, len(rule) // rule.order)
        _, dist = nearest_arclength(curve, P0)
        if dist >= 4.0 * curve.length / panels:
            row = _weighted_row(p, curve, rule.nodes, P0)
            return float(np.dot(rule.weights, row * mu(rule.nodes)))
    # adaptive path, also the default
    lo0, hi0 = support if support is not None else (0.0, curve.length)
    if not 0.0 <= lo0 < hi0 <= curve.length:
        raise DomainError("support must be a sub-interval of [0, length]")
    edges = lo0 + _smooth_edges(hi0 - lo0, 40, 14)
    total = 0.0
    budget = tol / (len(edges) - 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        parent = _layer_panel(p, curve, mu, P0, lo, hi, 12)
        total += _layer_adaptive(p, curve, mu, P0, lo, hi, parent, budget,
                                 12, 0)
    return total


# -- gauge function ------------------------------------------------------------

def _axis_density_x(p: Params, x: float, P0: Point) -> float:
    """Limit of y^(2b) dq4/dy on the x axis, without the gauge prefactor.

    The only term of the y gradient surviving the y -> 0 limit is the one
    carrying y^(-2b); its two-variable series collapses to a Gauss 2F1 in
    the single remaining chord variable.
    """
    if x == 0.0:
        return 0.0
    d2 = (x - P0.x) ** 2 + P0.y ** 2
    z = -4.0 * x * P0.x / d2
    f = gauss_2f1(2.0 - p.alpha - p.beta, 1.0 - p.alpha,
                  2.0 - 2.0 * p.alpha, z)
    return x * d2 ** (p.alpha + p.beta - 2.0) * f


def _axis_density_y(p: Params, y: float, P0: Point) -> float:
    """Limit of x^(2a) dq4/dx on the y axis, without the gauge prefactor."""
    if y == 0.0:
        return 0.0
    d2 = P0.x ** 2 + (y - P0.y) ** 2
    z = -4.0 * y * P0.y / d2
    f = gauss_2f1(2.0 - p.alpha - p.beta, 1.0 - p.beta,
                  2.0 - 2.0 * p.beta, z)
    return y * d2 ** (p.alpha + p.beta - 2.0) * f


def k_gauge(p: Params, a: float, b: float, P0: Point) -> float:
    """Gauge function k(x0, y0): the axis-segment flux of q4(.; P0).

    Two 1-d integrals over the axis segments [0, a] and [0, b] of the
    analytic axis limits of the weighted gradient, computed adaptively to
    absolute accuracy 1e-10.  Defined for any P0 in the open quadrant.
    """
    if a <= 0.0 or b <= 0.0:
        raise DomainError("axis segment lengths must be positive")
    if P0.x <= 0.0 or P0.y <= 0.0:
        raise DomainError("gauge function needs a point in the open quadrant")
    pref = (k4_constant(p) * P0.x ** (1.0 - 2.0 * p.alpha)
            * P0.y ** (1.0 - 2.0 * p.beta))
    vx, ex = quad(lambda x: _axis_density_x(p, x, P0), 0.0, a,
                  epsabs=1.0e-12, epsrel=1.0e-12, limit=400,
                  points=[P0.x] if 0.0 < P0.x < a else None)
    vy, ey = quad(lambda y: _axis_density_y(p, y, P0), 0.0, b,
                  epsabs=1.0e-12, epsrel=1.0e-12, limit=400,
                  points=[P0.y] if 0.0 < P0.y < b else None)
    if max(ex, ey) > 1.0e-9:
        raise ConvergenceError(
            f"gauge quadrature error estimate {max(ex, ey):.2e} too large")
    return pref * ((1.0 - 2.0 * p.beta) * vx + (1.0 - 2.0 * p.alpha) * vy)


# -- boundary traces -------------------------------------------------------------

_trace_cache: "weakref.WeakKeyDictionary[Curve, dict]" = weakref.WeakKeyDictionary()


def _trace_integral(p: Params, curve: Curve, mu: Density, s: float,
                    levels: int, order: int) -> float:
    """int_0^l mu(t) K4(s, t) dt with the log-graded rule.

    The kernel row and the gap correction depend only on (p, s, levels,
    order), so they are cached per curve; different densities and the two
    trace sides reuse the same row.
    """
    cache = _trace_cache.setdefault(curve, {})
    key = (p.alpha, p.beta, float(s), levels, order)
    entry = cache.get(key)
    if entry is None:
        rule = graded_rule(curve.length, s, levels, order)
        row = kernel_K4_row(p, curve, s, rule.nodes)
        slope, regular = kernel_K4_log_split(p, curve, s)
        lo, hi = rule.gap
        # The row integral excludes the gap; integrate the near-diagonal
        # model c ln|t - s| + regular across it exactly.
        left, right = s - lo, hi - s
        log_part = (left * (math.log(left) - 1.0)
                    + right * (math.log(right) - 1.0))
        gap_weight = regular * (hi - lo) + slope * log_part
        entry = (rule, row, gap_weight)
        cache[key] = entry
    rule, row, gap_weight = entry
    return float(np.dot(rule.weights, row * mu(rule.nodes))
                 + gap_weight * mu(s))


def boundary_trace(p: Params, curve: Curve, mu: Density, s: float,
                   side: str, levels: int = 16, order: int = 12) -> float:
    """One-sided limit of the double-layer potential on the curve.

    interior trace = -mu(s)/2 + w0(s), exterior trace = +mu(s)/2 + w0(s),
    where w0 is the on-curve integral computed with the log-graded rule.
    """
    if side not in ("interior", "exterior"):
        raise DomainError(f"side must be 'interior' or 'exterior', got {side!r}")
    if not 0.0 < s < curve.length:
        raise DomainError("trace arclength must lie strictly inside (0, l)")
    w0 = _trace_integral(p, curve, mu, s, levels, order)
    jump = -0.5 if side == "interior" else 0.5
    return jump * float(mu(s)) + w0


# -- flux identities -------------------------------------------------------------

def contour_flux(p: Params, curve: Curve, Q: Point,
                 rule: QuadratureRule | None = None) -> float:
    """Weighted flux of q4(.; Q) through the closed boundary of the domain.

    Curve part by quadrature; the two axis segments contribute exactly
    -k_gauge(Q) through their analytic limits.  Equals -1 for Q inside the
    domain and 0 for Q outside.
    """
    if classify(curve, Q) == "on":
        raise DomainError("flux source must not lie on the curve")
    if rule is None:
        rule = smooth_rule(curve.length, 512)
    row = _weighted_row(p, curve, rule.nodes, Q)
    curve_part = float(np.dot(rule.weights, row))
    return curve_part - k_gauge(p, curve.a, curve.b, Q)


def flux_residual(p: Params, curve: Curve, Q_outside: Point,
                  rule: QuadratureRule | None = None) -> float:
    """|closed-boundary flux| for an exterior source, expected -> 0."""
    if classify(curve, Q_outside) != "outside":
        raise DomainError(
            "flux residual needs a source strictly outside the domain; "
            "for interior sources use contour_flux, which tends to -1")
    return abs(contour_flux(p, curve, Q_outside, rule))


# -- energy identity -------------------------------------------------------------

@dataclass(frozen=True)
class Q4Solution:
    """Regular solution u = q4(.; source) with source outside the domain."""

    p: Params
    source: Point

    def value_many(self, xs, ys) -> np.ndarray:
        return q4_many(self.p, xs, ys, self.source)

    def grad_many(self, xs, ys):
        return grad_q4_many(self.p, xs, ys, self.source)

    def weighted_conormal_many(self, xs, ys, nxs, nys) -> np.ndarray:
        return weighted_dq4_dn_many(self.p, xs, ys, nxs, nys, self.source)


def energy_residual(p: Params, curve: Curve, u, rule2d: int = 32,
                    n_boundary: int = 512) -> float:
    """Residual of the weighted first Green identity for a regular solution.

    |int_Omega x^(2a) y^(2b) |grad u|^2 - int_Gamma x^(2a) y^(2b) u du/dn ds|.
    The axis parts of the boundary term vanish because u does.  The area
    integral runs over a tensor rule on (xi, w) in (0,1)^2 with
    x = xi * X(y), y = b * (1 - (1-w)^q); Gauss-Jacobi weights absorb the
    xi^(-2a) and w^(-2b) factors exactly, and the remaining integrand
    x^(4a) y^(4b) |grad u|^2 is smooth up to the axes.
    """
    if not hasattr(curve, "x_extent"):
        raise DomainError("energy residual needs a superellipse domain")
    n = int(rule2d)
    if n < 4:
        raise DomainError("2-d rule needs at least 4 points per direction")
    q, a, b = curve.q, curve.a, curve.b
    xi, wxi = _jacobi01(n, -2.0 * p.alpha)
    w, ww = _jacobi01(n, -2.0 * p.beta)
    zeta = -np.expm1(q * np.log1p(-w))          # 1 - (1-w)^q, stable near 0
    ys = b * zeta
    dyd_w = b * q * (1.0 - w) ** (q - 1.0)
    X = curve.x_extent(ys)
    xs = X[:, None] * xi[None, :]
    yy = np.broadcast_to(ys[:, None], xs.shape)
    gx, gy = u.grad_many(xs.ravel(), yy.ravel())
    phi = (xs.ravel() ** (4.0 * p.alpha) * yy.ravel() ** (4.0 * p.beta)
           * (gx * gx + gy * gy)).reshape(xs.shape)
    inner = phi @ wxi
    outer = (ww * (zeta / w) ** (-2.0 * p.beta) * b ** (-2.0 * p.beta)
             * dyd_w * X ** (1.0 - 2.0 * p.alpha))
    area = float(np.dot(outer, inner))

    rule = smooth_rule(curve.length, n_boundary)
    cps = curve.points_at(rule.nodes)
    bx = np.array([c.x for c in cps])
    by = np.array([c.y for c in cps])
    bnx = np.array([c.normal[0] for c in cps])
    bny = np.array([c.normal[1] for c in cps])
    flux = u.weighted_conormal_many(bx, by, bnx, bny)
    vals = u.value_many(bx, by)
    boundary = float(np.dot(rule.weights, vals * flux))
    return abs(area - boundary)


# -- the three-case gauge identity ----------------------------------------------

class GaugeIdentityResult(NamedTuple):
    classification: str
    lhs: float
    rhs: float
    residual: float


def gauge_identity_verify(p: Params, curve: Curve, P0: Point,
                          n: int = 512) -> GaugeIdentityResult:
    """Check the constant-density double-layer value against the gauge function.

    The unit-density potential w1 equals k(P0) - 1 inside the domain,
    k(P0) - 1/2 on the curve, and k(P0) outside.  Returns the classification,
    the quadrature value w1, the predicted value, and their distance.
    """
    classification = classify(curve, P0)
    k = k_gauge(p, curve.a, curve.b, P0)
    one = Density.constant(1.0)
    if classification == "on":
        s0, _ = nearest_arclength(curve, P0)
        lhs = _trace_integral(p, curve, one, s0, levels=16, order=12)
        rhs = k - 0.5
    else:
        lhs = double_layer(p, curve, one, P0)
        rhs = k - 1.0 if classification == "inside" else k
    return GaugeIdentityResult(classification, lhs, rhs, abs(lhs - rhs))
