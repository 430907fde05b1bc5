"""Nystrom solver for the interior Dirichlet problem via the double layer.

The interior trace relation turns the Dirichlet problem into a second-kind
Fredholm equation for the density mu:

    -mu(s)/2 + int K4(s, t) mu(t) dt = f(s).

The kernel is smooth away from the diagonal but carries a residual
c(s) * log|t - s| term there (the log coefficient of q4 varies with the
source point, so its normal derivative keeps a logarithm).  Plain Nystrom
weights would lose that term, so the panels adjacent to each collocation
node use product-integration weights built from exact log moments, with the
regular part of the kernel recovered by subtracting the fitted log slope.

Collocation nodes live on [g, l - g] with a small guard band g at the axis
endpoints, where the curve meets the axes and the trace relation is not
established; the kernel's endpoint decay keeps the truncated mass small and
the convergence study tracks it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

import scipy.linalg as la

from .errors import DomainError, SolveError
from .geometry import Curve, Point
from .kernel import Params, q4_many, weighted_dq4_dn_many
from .potential import (Density, QuadratureRule, _leg, _panel_nodes,
                        double_layer, kernel_K4_log_split)

__all__ = [
    "GUARD_FRAC", "PANEL_ORDER", "NystromSystem",
    "assemble", "solve_dirichlet", "evaluate",
    "manufactured_data", "default_exterior_source", "convergence_study",
    "condition_estimate",
]

# Fraction of the arclength excluded at each endpoint of the collocation
# range at the minimum node count; the default guard scales like 1/n from
# this anchor so the truncation bias follows the scheme's convergence.
GUARD_FRAC = 0.025

# Gauss order of the collocation panels.
PANEL_ORDER = 8

_lagrange_cache: dict[int, np.ndarray] = {}


def _lagrange_coeffs(order: int) -> np.ndarray:
    """Monomial coefficients of the Lagrange basis on Gauss nodes in [-1, 1].

    Column k holds the coefficients of L_k, lowest power first.
    """
    coeffs = _lagrange_cache.get(order)
    if coeffs is None:
        u, _ = _leg(order)
        vander = np.vander(u, order, increasing=True)
        coeffs = np.linalg.inv(vander)
        _lagrange_cache[order] = coeffs
    return coeffs


def _log_moment(power: int, lo: float, hi: float) -> float:
    """int_lo^hi tau^power * ln|tau| dtau, valid across tau = 0."""

    def anti(t: float) -> float:
        if t == 0.0:
            return 0.0
        r = power + 1
        return t ** r / r * (math.log(abs(t)) - 1.0 / r)

    return anti(hi) - anti(lo)


def _log_panel_weights(lo: float, hi: float, s0: float,
                       order: int) -> np.ndarray:
    """Weights integrating ln|t - s0| against panel-node values exactly.

    lambda_k = int_lo^hi ln|t - s0| L_k(t) dt for the Gauss-order Lagrange
    basis on [lo, hi]; exact for data from polynomials of the panel degree.
    """
    half = 0.5 * (hi - lo)
    nu = (s0 - 0.5 * (lo + hi)) / half
    powers = np.arange(order)
    # int_{-1}^{1} u^r ln|u - nu| du via the binomial expansion around nu
    log_part = np.zeros(order)
    for r in range(order):
        total = 0.0
        for qq in range(r + 1):
            total += (math.comb(r, qq) * nu ** (r - qq)
                      * _log_moment(qq, -1.0 - nu, 1.0 - nu))
        log_part[r] = total
    plain = np.where(powers % 2 == 0, 2.0 / (powers + 1.0), 0.0)
    moments = half * (math.log(half) * plain + log_part)
    return _lagrange_coeffs(order).T @ moments


@dataclass
class NystromSystem:
    """Discretised second-kind system on the guarded collocation range.

    ``matrix`` is -I/2 plus the quadrature of the kernel; rows belonging to
    panels adjacent to the collocation node carry the product-integration
    correction for the kernel's diagonal log term.  ``log_slope`` stores the
    fitted per-node log coefficients, ``regular_diag`` the log-free diagonal
    values.
    """

    p: Params
    curve: Curve
    n: int
    nodes: np.ndarray
    weights: np.ndarray
    edges: np.ndarray
    matrix: np.ndarray
    rhs: np.ndarray | None
    log_slope: np.ndarray
    regular_diag: np.ndarray

    @property
    def support(self) -> tuple[float, float]:
        return float(self.edges[0]), float(self.edges[-1])

    def rule(self) -> QuadratureRule:
        return QuadratureRule(self.nodes, self.weights, PANEL_ORDER, "smooth")


def assemble(p: Params, curve: Curve, n: int,
             f: Callable | None = None,
             guard_frac: float | None = None) -> NystromSystem:
    """Build the collocation system with n nodes on the guarded range.

    ``f`` is optional boundary data evaluated at the nodes into the rhs.
    ``guard_frac`` sets the excluded endpoint fraction.  By default it
    shrinks with the mesh (the stock fraction anchored at the minimum
    node count), so the endpoint truncation bias refines along with the
    quadrature error instead of flooring it.
    """
    if n < 16:
        raise DomainError(f"need at least 16 nodes, got {n}")
    if n % PANEL_ORDER != 0:
        raise DomainError(f"node count must be a multiple of {PANEL_ORDER}")
    if guard_frac is None:
        guard_frac = min(0.2, max(0.002, GUARD_FRAC * 16.0 / n))
    if not 0.002 <= guard_frac <= 0.2:
        raise DomainError("guard fraction must lie in [0.002, 0.2]")
    length = curve.length
    guard = guard_frac * length
    panels = n // PANEL_ORDER
    edges = np.linspace(guard, length - guard, panels + 1)
    nodes, weights = _panel_nodes(edges, PANEL_ORDER)

    cps = curve.points_at(nodes)
    xs = np.array([c.x for c in cps])
    ys = np.array([c.y for c in cps])
    nxs = np.array([c.normal[0] for c in cps])
    nys = np.array([c.normal[1] for c in cps])

    matrix = np.empty((n, n))
    log_slope = np.empty(n)
    regular_diag = np.empty(n)
    for i in range(n):
        s_i = float(nodes[i])
        source = Point(float(xs[i]), float(ys[i]))
        try:
            others = np.arange(n) != i
            row = np.empty(n)
            row[others] = weighted_dq4_dn_many(p, xs[others], ys[others],
                                               nxs[others], nys[others],
                                               source)
            slope, regular = kernel_K4_log_split(p, curve, s_i)
        except Exception as exc:
            raise SolveError(
                f"kernel evaluation failed on row {i} (s = {s_i:.6f}): {exc}"
            ) from exc
        row[i] = 0.0
        log_slope[i] = slope
        regular_diag[i] = regular

        arow = weights * row
        panel_i = i // PANEL_ORDER
        for q in range(max(0, panel_i - 1), min(panels, panel_i + 2)):
            sl = slice(q * PANEL_ORDER, (q + 1) * PANEL_ORDER)
            lam = _log_panel_weights(edges[q], edges[q + 1], s_i, PANEL_ORDER)
            for k, j in enumerate(range(sl.start, sl.stop)):
                if j == i:
                    arow[j] = weights[j] * regular + slope * lam[k]
                else:
                    gap = math.log(abs(nodes[j] - s_i))
                    arow[j] = (weights[j] * (row[j] - slope * gap)
                               + slope * lam[k])
        matrix[i] = arow
    matrix[np.arange(n), np.arange(n)] += -0.5

    rhs = None
    if f is not None:
        rhs = np.asarray(f(nodes), dtype=float)
        if rhs.shape != nodes.shape or not np.all(np.isfinite(rhs)):
            raise DomainError("boundary data must be finite at all nodes")
    return NystromSystem(p=p, curve=curve, n=n, nodes=nodes, weights=weights,
                         edges=edges, matrix=matrix, rhs=rhs,
                         log_slope=log_slope, regular_diag=regular_diag)


def condition_estimate(sys: NystromSystem, iterations: int = 30) -> float:
    """Two-norm condition estimate by power iteration.

    Largest singular value from iterating A^T A; smallest from iterating
    its inverse through an LU factorisation.
    """
    a = sys.matrix
    rng = np.random.default_rng(7)
    v = rng.standard_normal(sys.n)
    v /= np.linalg.norm(v)
    smax_sq = 0.0
    for _ in range(iterations):
        w = a.T @ (a @ v)
        smax_sq = float(np.linalg.norm(w))
        v = w / smax_sq
    try:
        lu, piv = la.lu_factor(a)
    except (np.linalg.LinAlgError, ValueError):
        return math.inf
    u = rng.standard_normal(sys.n)
    u /= np.linalg.norm(u)
    inv_sq = 0.0
    for _ in range(iterations):
        try:
            w = la.lu_solve((lu, piv), la.lu_solve((lu, piv), u, trans=1))
        except ValueError:
            # a zero pivot passed lu_factor silently; the solve blew up
            return math.inf
        inv_sq = float(np.linalg.norm(w))
        if not math.isfinite(inv_sq) or inv_sq == 0.0:
            return math.inf
        u = w / inv_sq
    return math.sqrt(smax_sq) * math.sqrt(inv_sq)


def solve_dirichlet(sys: NystromSystem,
                    rhs: np.ndarray | None = None) -> Density:
    """Direct dense solve of the collocation system.

    Returns the density as a spline through the node values (the sampled
    nodes and values ride along as attributes).  Residual worse than
    1e-10 * ||f||_inf or a singular matrix raises SolveError with the
    condition estimate.
    """
    f = sys.rhs if rhs is None else np.asarray(rhs, dtype=float)
    if f is None:
        raise SolveError("system has no right-hand side; assemble with data")
    if f.shape != sys.nodes.shape:
        raise SolveError("right-hand side shape does not match the nodes")
    try:
        mu = np.linalg.solve(sys.matrix, f)
    except np.linalg.LinAlgError as exc:
        raise SolveError(
            f"matrix numerically singular (condition estimate "
            f"{condition_estimate(sys):.3e})") from exc
    residual = float(np.max(np.abs(sys.matrix @ mu - f)))
    scale = float(np.max(np.abs(f)))
    if residual > 1.0e-10 * max(scale, 1.0e-300):
        raise SolveError(
            f"solve residual {residual:.3e} exceeds 1e-10 * ||f||_inf "
            f"(condition estimate {condition_estimate(sys):.3e})")
    return Density.from_samples(sys.nodes, mu)


def evaluate(p: Params, curve: Curve, mu: Density, P0: Point,
             sys: NystromSystem | None = None) -> float:
    """Potential of the solved density at an interior point.

    Uses the collocation rule directly when P0 is well separated from the
    curve and the adaptive near-field integrator otherwise; the integration
    is restricted to the density's node range.
    """
    if sys is not None:
        return double_layer(p, curve, mu, P0, rule=sys.rule(),
                            support=sys.support)
    nodes = getattr(mu, "nodes", None)
    support = ((float(nodes[0]), float(nodes[-1]))
               if nodes is not None else None)
    return double_layer(p, curve, mu, P0, support=support)


def default_exterior_source(curve: Curve) -> Point:
    """Stock source for manufactured solutions, outside the closed domain."""
    return Point(1.5 * curve.a, 1.5 * curve.b)


def manufactured_data(p: Params, curve: Curve,
                      source: Point | None = None) -> Callable:
    """Boundary data of the exact solution u* = q4(.; source) on the curve."""
    src = default_exterior_source(curve) if source is None else source

    def f(s):
        cps = curve.points_at(np.atleast_1d(np.asarray(s, dtype=float)))
        xs = np.array([c.x for c in cps])
        ys = np.array([c.y for c in cps])
        vals = q4_many(p, xs, ys, src)
        return vals if np.ndim(s) else float(vals[0])

    return f


def convergence_study(p: Params, curve: Curve, ns, probes,
                      source: Point | None = None) -> dict:
    """Manufactured-solution study over node counts.

    For each n: assemble with the mesh-scaled default guard, solve,
    evaluate at the probes, and compare with the exact exterior-source
    solution.  Returns per-n max probe errors and the least-squares
    convergence order.
    """
    src = default_exterior_source(curve) if source is None else source
    f = manufactured_data(p, curve, src)
    probes = [probe if isinstance(probe, Point) else Point(*probe)
              for probe in probes]
    px = np.array([q.x for q in probes])
    py = np.array([q.y for q in probes])
    exact = q4_many(p, px, py, src)
    ns = [int(v) for v in ns]
    errors = []
    for n in ns:
        sys = assemble(p, curve, n, f=f)
        mu = solve_dirichlet(sys)
        values = np.array([evaluate(p, curve, mu, q, sys=sys)
                           for q in probes])
        errors.append(float(np.max(np.abs(values - exact))))
    slope = np.polyfit(np.log(np.asarray(ns, dtype=float)),
                       np.log(np.asarray(errors)), 1)[0]
    return {"ns": ns, "errors": errors, "order": float(-slope)}
