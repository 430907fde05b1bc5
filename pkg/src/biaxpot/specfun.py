"""Gauss and Appell hypergeometric functions on the real domain used by the
weighted potential kernels.

The functions here are deliberately narrow: real parameters, real arguments,
double precision.  ``gauss_2f1`` covers z <= 1 through a three-way strategy
(direct series, Pfaff reflection for negative z, connection formula near
z = 1 with the Gauss summation handling z = 1 itself).  ``appell_f2``
continues the F2 double series to the third quadrant x <= 0, y <= 0, which
is the regime produced by the chord variables of the fundamental solution:
mid-range through the Burchnall-Chaundy product expansion

    F2(a;b1,b2;c1,c2;x,y) = (1-x)^(-b1) (1-y)^(-b2)
        * sum_i  (a)_i (b1)_i (b2)_i / ((c1)_i (c2)_i i!)
          * (x/(1-x))^i (y/(1-y))^i
          * 2F1(c1-a, b1+i; c1+i; x/(x-1)) * 2F1(c2-a, b2+i; c2+i; y/(y-1))

whose transformed arguments sit in [0,1), and, once the product expansion
needs too many terms (both arguments near 1, i.e. field and source point
close), through the Euler integral representation

    F2 = C * int_0^1 int_0^1 s^(b1-1) (1-s)^(c1-b1-1) t^(b2-1) (1-t)^(c2-b2-1)
             * (1 - s x - t y)^(-a) ds dt,

valid for c1 > b1 > 0, c2 > b2 > 0, which all kernel parameter families
satisfy.  The integrand is elementary and positive for x, y <= 0, so graded
Gauss-Jacobi/Legendre panels give uniform relative accuracy arbitrarily
close to the kernel singularity.

Everything is a pure function of its arguments; nothing here keeps state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi

from .errors import ConvergenceError, DivergenceError, DomainError

# Series controls.  A term sequence is considered converged once
# consecutive terms stay below SERIES_RTOL relative to the running sum
# SERIES_RUN times in a row; MAX_TERMS is a hard cap per summation index.
SERIES_RTOL = 1.0e-15
SERIES_RUN = 3
MAX_TERMS = 10000

# Switch point between the direct 2F1 series and the 1-z connection formula.
Z_SWITCH = 0.5

# Below this distance of c-a-b from an integer the connection formula loses
# digits to cancellation and the direct series is used instead (unless z is
# so close to 1 that the series cannot finish under the term cap).
EXCESS_INT_TOL = 5.0e-2
Z_SERIES_MAX = 0.995

# Product-expansion outer ratio beyond which appell_f2 switches to the
# Euler integral.  The outer series needs ~ -37/ln(t) terms, and the inner
# 2F1 grids lose accuracy once the parameter shift grows past roughly a
# thousand, so the boundary keeps the worst case near 900 terms.
BC_T_MAX = 0.96

# Outer terms per block of the product expansion.  Small blocks let
# fast-converging points leave the working set before the inner grids
# reach large, expensive parameter shifts.
BC_BLOCK_CAP = 256

_INT_TOL = 1.0e-12


# ---------------------------------------------------------------------------
# log-gamma and friends
# ---------------------------------------------------------------------------

# Stirling series coefficients B_{2k} / (2k (2k-1)) for k = 1..7.  With the
# argument shifted above _STIRLING_CUT the truncation error is below 3e-17.
_STIRLING_COF = (
    1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,
)
_STIRLING_CUT = 10.0
_HALF_LN_2PI = 0.9189385332046727


def ln_gamma(x):
    """Natural log of Gamma(x) for x > 0 (scalar or ndarray)."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("ln_gamma requires x > 0")
    scalar = arr.ndim == 0
    z = np.atleast_1d(arr).astype(float).copy()
    shift = np.zeros_like(z)
    mask = z < _STIRLING_CUT
    while np.any(mask):
        shift[mask] += np.log(z[mask])
        z[mask] += 1.0
        mask = z < _STIRLING_CUT
    w = 1.0 / (z * z)
    ser = np.zeros_like(z)
    for c in reversed(_STIRLING_COF):
        ser = ser * w + c
    out = (z - 0.5) * np.log(z) - z + _HALF_LN_2PI + ser / z - shift
    return float(out[0]) if scalar else out


def _sinpi(x: float) -> float:
    # sin(pi x) with argument reduction so large |x| keeps full precision
    n = math.floor(x)
    f = x - n
    s = math.sin(math.pi * f)
    return -s if n % 2 else s


def _ln_gamma_signed(x: float) -> tuple[float, float]:
    """Return (log|Gamma(x)|, sign).  Poles report sign 0 and +inf."""
    if x > 0.0:
        return ln_gamma(x), 1.0
    if abs(x - round(x)) < _INT_TOL * max(1.0, abs(x)):
        return math.inf, 0.0
    # reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    s = _sinpi(x)
    return (math.log(math.pi) - math.log(abs(s)) - ln_gamma(1.0 - x),
            math.copysign(1.0, s))


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0 or n != int(n):
        raise DomainError("pochhammer requires an integer n >= 0")
    out = 1.0
    for k in range(int(n)):
        out *= a + k
    return out


def _is_nonpos_int(x: float) -> bool:
    return x <= 0.5 and abs(x - round(x)) < _INT_TOL * max(1.0, abs(x))


# ---------------------------------------------------------------------------
# Gauss 2F1
# ---------------------------------------------------------------------------

def _hyp2f1_series(a: float, b: float, c: float, z: float,
                   max_terms: int = MAX_TERMS) -> float:
    """Direct 2F1 power series; caller guarantees |z| < 1 or termination."""
    term = 1.0
    total = 1.0
    small = 0
    for m in range(max_terms):
        term *= (a + m) * (b + m) * z / ((c + m) * (m + 1))
        total += term
        if abs(term) <= SERIES_RTOL * abs(total):
            small += 1
            if small >= SERIES_RUN:
                return total
        else:
            small = 0
    raise ConvergenceError(
        f"2F1 series did not converge within {max_terms} terms "
        f"(a={a}, b={b}, c={c}, z={z})")


def gauss_2f1_at_one(a: float, b: float, c: float) -> float:
    """2F1(a, b; c; 1) by Gauss summation; requires c - a - b > 0."""
    if c <= 0.0 and _is_nonpos_int(c):
        raise DomainError("gauss_2f1_at_one: c must not be a nonpositive integer")
    s = c - a - b
    if s <= 0.0:
        raise DivergenceError(
            f"2F1 diverges at z = 1 for c - a - b = {s} <= 0")
    ln_num, sg_num = 0.0, 1.0
    for v in (c, s):
        lg, sg = _ln_gamma_signed(v)
        ln_num += lg
        sg_num *= sg
    ln_den, sg_den = 0.0, 1.0
    for v in (c - a, c - b):
        lg, sg = _ln_gamma_signed(v)
        if sg == 0.0:
            return 0.0  # pole in the denominator kills the value
        ln_den += lg
        sg_den *= sg
    return sg_num * sg_den * math.exp(ln_num - ln_den)


def _hyp2f1_connection(a: float, b: float, c: float, z: float) -> float:
    """2F1 on (Z_SWITCH, 1) through the 1-z connection formula.

    Requires c - a - b not an integer; both component series run at
    argument u = 1 - z < 1 - Z_SWITCH.
    """
    u = 1.0 - z
    s = c - a - b
    lg_c = ln_gamma(c) if c > 0 else None
    if lg_c is None:
        lgc, sgc = _ln_gamma_signed(c)
    else:
        lgc, sgc = lg_c, 1.0

    def coeff(top: float, bot1: float, bot2: float) -> float:
        lt, st = _ln_gamma_signed(top)
        l1, s1 = _ln_gamma_signed(bot1)
        l2, s2 = _ln_gamma_signed(bot2)
        if s1 == 0.0 or s2 == 0.0:
            return 0.0
        if st == 0.0:
            raise ConvergenceError(
                "connection formula unusable: integer parameter excess")
        return sgc * st * s1 * s2 * math.exp(lgc + lt - l1 - l2)

    c1 = coeff(s, c - a, c - b)
    c2 = coeff(-s, a, b)
    out = 0.0
    if c1 != 0.0:
        out += c1 * _hyp2f1_series(a, b, 1.0 - s, u)
    if c2 != 0.0:
        out += c2 * u ** s * _hyp2f1_series(c - a, c - b, 1.0 + s, u)
    return out


def gauss_2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric 2F1(a, b; c; z) for real z <= 1.

    Strategy: direct series on [0, Z_SWITCH]; Pfaff reflection
    F(a,b;c;z) = (1-z)^(-b) F(c-a, b; c; z/(z-1)) for z < 0; the 1-z
    connection formula on (Z_SWITCH, 1) falling back to the plain series
    when c - a - b sits too close to an integer; Gauss summation at z = 1.

    Raises DomainError for z > 1 or a nonpositive integer c, and
    DivergenceError at z = 1 when c - a - b <= 0.
    """
    if z > 1.0:
        raise DomainError(f"gauss_2f1 defined for z <= 1, got z = {z}")
    if _is_nonpos_int(c):
        raise DomainError("gauss_2f1: c must not be a nonpositive integer")
    # terminating series bypass every transformation
    if _is_nonpos_int(a) or _is_nonpos_int(b):
        if _is_nonpos_int(a) and _is_nonpos_int(b):
            n_stop = int(-max(round(a), round(b)))
        else:
            n_stop = int(-round(a)) if _is_nonpos_int(a) else int(-round(b))
        term, total = 1.0, 1.0
        for m in range(n_stop):
            term *= (a + m) * (b + m) * z / ((c + m) * (m + 1))
            total += term
        return total
    if z == 1.0:
        return gauss_2f1_at_one(a, b, c)
    if z < 0.0:
        return (1.0 - z) ** (-b) * gauss_2f1(c - a, b, c, z / (z - 1.0))
    if z <= Z_SWITCH:
        return _hyp2f1_series(a, b, c, z)
    s = c - a - b
    if abs(s - round(s)) > EXCESS_INT_TOL or z > Z_SERIES_MAX:
        return _hyp2f1_connection(a, b, c, z)
    return _hyp2f1_series(a, b, c, z)


# ---------------------------------------------------------------------------
# Appell F2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class F2Args:
    """Parameter/argument bundle for Appell F2(a; b1, b2; c1, c2; x, y)."""
    a: float
    b1: float
    b2: float
    c1: float
    c2: float
    x: float
    y: float

    def __post_init__(self):
        for name in ("c1", "c2"):
            if _is_nonpos_int(getattr(self, name)):
                raise DomainError(f"F2Args: {name} must not be a nonpositive integer")


def appell_f2_series(args: F2Args) -> float:
    """F2 by its double power series; requires |x| + |y| < 1."""
    if abs(args.x) + abs(args.y) >= 1.0:
        raise DomainError(
            "appell_f2_series requires |x| + |y| < 1 "
            f"(got {abs(args.x) + abs(args.y)})")
    a, b1, b2, c1, c2 = args.a, args.b1, args.b2, args.c1, args.c2
    x, y = args.x, args.y
    total = 0.0
    lead = 1.0  # (a)_m (b1)_m / ((c1)_m m!) x^m
    small_rows = 0
    for m in range(MAX_TERMS):
        # row over n at fixed m
        term = lead
        row = term
        small = 0
        for n in range(MAX_TERMS):
            term *= (a + m + n) * (b2 + n) * y / ((c2 + n) * (n + 1))
            row += term
            if abs(term) <= SERIES_RTOL * max(abs(total), abs(row), 1e-300):
                small += 1
                if small >= SERIES_RUN:
                    break
            else:
                small = 0
        else:
            raise ConvergenceError("appell_f2_series: inner index hit the term cap")
        total += row
        if abs(row) <= SERIES_RTOL * max(abs(total), 1e-300) and abs(lead) <= SERIES_RTOL * max(abs(total), 1e-300):
            small_rows += 1
            if small_rows >= SERIES_RUN:
                return total
        else:
            small_rows = 0
        lead *= (a + m) * (b1 + m) * x / ((c1 + m) * (m + 1))
    raise ConvergenceError("appell_f2_series: outer index hit the term cap")


def f2_param_shift(args: F2Args, m: int, n: int) -> tuple[float, F2Args]:
    """Coefficient and shifted parameters of the mixed derivative
    d^(m+n) F2 / dx^m dy^n = coef * F2(a+m+n; b1+m, b2+n; c1+m, c2+n; x, y).
    """
    if m < 0 or n < 0:
        raise DomainError("f2_param_shift requires m, n >= 0")
    coef = (pochhammer(args.a, m + n) * pochhammer(args.b1, m)
            * pochhammer(args.b2, n)
            / (pochhammer(args.c1, m) * pochhammer(args.c2, n)))
    shifted = F2Args(args.a + m + n, args.b1 + m, args.b2 + n,
                     args.c1 + m, args.c2 + n, args.x, args.y)
    return coef, shifted


# -- vectorised inner 2F1 families for the product expansion ----------------

def _hyp_series_grid(a0, da, b0, db, c0, dc, z, n, max_terms=1200):
    """2F1(a0 + da*i, b0 + db*i; c0 + dc*i; z_j), i = 0..n-1, as an (n, npts)
    grid over the argument vector z with |z_j| <= 0.5.

    The shift pattern (da, db, dc in {0, 1}) covers both the direct regime
    (b and c shift together) and the two component series of the connection
    formula (a-slot or b-slot shifts, c fixed).  When a numerator slot
    shifts with i the terms crest around m ~ i*z/(1-z) before decaying;
    the product-expansion driver keeps i small enough that the crest stays
    well under the cap.
    """
    i = np.arange(n, dtype=float)[:, None]
    z = np.asarray(z, dtype=float)[None, :]
    term = np.ones((n, z.shape[1]))
    total = np.ones_like(term)
    small = 0
    for m in range(max_terms):
        term = term * ((a0 + da * i + m) * (b0 + db * i + m) * z
                       / ((c0 + dc * i + m) * (m + 1)))
        total = total + term
        if np.max(np.abs(term)) <= SERIES_RTOL * max(np.max(np.abs(total)), 1e-300):
            small += 1
            if small >= SERIES_RUN:
                return total
        else:
            small = 0
    raise ConvergenceError("vectorised 2F1 series hit the term cap")


def _hyp_connection_grid(A, B0, C0, u, n):
    """2F1(A, B0 + i; C0 + i; 1-u_j) on the (n, npts) grid, 0 < u_j < 0.5.

    Uses the 1-z connection formula; the excess s = C0 - A - B0 is shared
    by every member of the family.  Requires s not an integer, C0 - B0 > 0
    and C0 - A > 0 (the kernel families guarantee both).
    """
    s = C0 - A - B0
    if abs(s - round(s)) < 1e-8:
        raise ConvergenceError(
            "connection formula unusable: integer parameter excess")
    i = np.arange(n, dtype=float)
    u = np.asarray(u, dtype=float)
    lg_s, sg_s = _ln_gamma_signed(s)
    lg_ms, sg_ms = _ln_gamma_signed(-s)
    lg_cb = ln_gamma(C0 - B0)
    # g1_i = G(C0+i) G(s) / (G(C0-A+i) G(C0-B0))
    g1 = sg_s * np.exp(ln_gamma(C0 + i) - ln_gamma(C0 - A + i) + lg_s - lg_cb)
    f1 = _hyp_series_grid(A, 0.0, B0, 1.0, 1.0 - s, 0.0, u, n)
    out = g1[:, None] * f1
    lgA, sgA = _ln_gamma_signed(A)
    if sgA != 0.0:
        g2 = (sg_ms * sgA
              * np.exp(ln_gamma(C0 + i) - ln_gamma(B0 + i) + lg_ms - lgA))
        f2 = _hyp_series_grid(C0 - A, 1.0, C0 - B0, 0.0, 1.0 + s, 0.0, u, n)
        out = out + u[None, :] ** s * g2[:, None] * f2
    return out


def _bc_outer_need(t_max: float) -> int:
    """Outer terms needed for the product expansion to reach ~1e-16 t^i
    decay; the estimate is sharp because the outer coefficients are O(1)."""
    if t_max <= 0.0:
        return 4
    return int(min(MAX_TERMS, 37.0 / -np.log(min(t_max, 0.9999)) + 16.0))


def _f2_product_core(a, b1, b2, c1, c2, u,
                     v) -> tuple[np.ndarray, np.ndarray]:
    """Burchnall-Chaundy outer sum over a batch of points; u_j = 1/(1-x_j),
    v_j = 1/(1-y_j) in (0, 1].

    Returns (values, stalled): values include the (1-x)^(-b1) (1-y)^(-b2)
    = u^b1 v^b2 prefactor, and stalled flags the points whose outer tail
    never passed the convergence test.  Points converge at different outer
    orders, so finished points drop out of the working set block by block;
    the block cap keeps the inner series away from the large shifts only
    the slowest points would visit.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    t = (1.0 - u) * (1.0 - v)
    npts = u.size
    total = np.zeros(npts)
    active = np.arange(npts)
    gamma_next = 1.0  # (a)_i (b1)_i (b2)_i / ((c1)_i (c2)_i i!) at block start
    start = 0
    cap = _bc_outer_need(float(np.max(t))) + 2 * BC_BLOCK_CAP
    while start < cap:
        nblk = min(max(_bc_outer_need(float(np.max(t[active]))) - start, 16),
                   BC_BLOCK_CAP, cap - start)
        i = np.arange(start, start + nblk, dtype=float)
        ratios = ((a + i) * (b1 + i) * (b2 + i)
                  / ((c1 + i) * (c2 + i) * (i + 1.0)))
        gam = gamma_next * np.concatenate(([1.0], np.cumprod(ratios[:-1])))
        gamma_next = gam[-1] * ratios[-1]
        ua, va, ta = u[active], v[active], t[active]
        # inner families split by argument regime on each axis
        phi1 = np.empty((nblk, active.size))
        phi2 = np.empty((nblk, active.size))
        for phi, w, (A, B0, C0) in (
                (phi1, ua, (c1 - a, b1 + start, c1 + start)),
                (phi2, va, (c2 - a, b2 + start, c2 + start))):
            big = w >= Z_SWITCH
            if np.any(big):
                phi[:, big] = _hyp_series_grid(
                    A, 0.0, B0, 1.0, C0, 1.0, 1.0 - w[big], nblk)
            if np.any(~big):
                phi[:, ~big] = _hyp_connection_grid(A, B0, C0, w[~big], nblk)
        with np.errstate(under="ignore"):
            terms = gam[:, None] * phi1 * phi2 * ta[None, :] ** i[:, None]
        total[active] += terms.sum(axis=0)
        floor = SERIES_RTOL * np.maximum(np.abs(total[active]), 1e-300)
        tail = np.abs(terms[-SERIES_RUN:]) if nblk >= SERIES_RUN else np.abs(terms)
        done = np.all(tail <= floor[None, :], axis=0)
        active = active[~done]
        if active.size == 0:
            break
        start += nblk
    stalled = np.zeros(npts, dtype=bool)
    stalled[active] = True
    return u ** b1 * v ** b2 * total, stalled


def _f2_product_many(a, b1, b2, c1, c2, u, v) -> np.ndarray:
    """Batched product expansion; raises if any point fails to converge."""
    values, stalled = _f2_product_core(a, b1, b2, c1, c2, u, v)
    if np.any(stalled):
        t = (1.0 - np.asarray(u)) * (1.0 - np.asarray(v))
        raise ConvergenceError(
            "F2 product expansion hit the outer term cap "
            f"(max t = {t.max():.6g}; arguments too close to the singular point)")
    return values


def _f2_product_expansion(a, b1, b2, c1, c2, u, v) -> float:
    """Single-point wrapper around the batched product expansion."""
    return float(_f2_product_many(a, b1, b2, c1, c2,
                                  np.array([u]), np.array([v]))[0])


# -- Euler integral route for the near-singular regime ----------------------

_EULER_LEG_N = 12
_EULER_JAC_N = 24
_LEG_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}
_JAC_CACHE: dict[tuple[int, float], tuple[np.ndarray, np.ndarray]] = {}


def _leg_rule(n):
    if n not in _LEG_CACHE:
        _LEG_CACHE[n] = leggauss(n)
    return _LEG_CACHE[n]


def _jac_rule(n, beta_exp):
    key = (n, round(beta_exp, 14))
    if key not in _JAC_CACHE:
        # weight (1 + t)^beta_exp on [-1, 1]
        _JAC_CACHE[key] = roots_jacobi(n, 0.0, beta_exp)
    return _JAC_CACHE[key]


def _euler_axis(b, cb, absx):
    """Nodes/weights for int_0^1 s^(b-1) (1-s)^(cb-1) g(s|x|) ds.

    Returns nodes s_k and weights that already include the full beta-type
    weight s^(b-1) (1-s)^(cb-1).  Panels are graded dyadically from the
    scale 1/|x| so that the remaining factor (1 + s|x| + ...)^(-a) is
    smooth on every panel.
    """
    nodes = []
    weights = []
    h0 = 0.5 / max(absx, 1.0)
    # left Gauss-Jacobi panel [0, h0] absorbing s^(b-1)
    tj, wj = _jac_rule(_EULER_JAC_N, b - 1.0)
    s = 0.5 * h0 * (tj + 1.0)
    w = wj * (0.5 * h0) ** b * (1.0 - s) ** (cb - 1.0)
    nodes.append(s)
    weights.append(w)
    # dyadic Gauss-Legendre panels [h0 2^k, h0 2^(k+1)] up to 1/2
    tl, wl = _leg_rule(_EULER_LEG_N)
    lo = h0
    while lo < 0.5:
        hi = min(2.0 * lo, 0.5)
        s = 0.5 * (hi + lo) + 0.5 * (hi - lo) * tl
        w = wl * 0.5 * (hi - lo) * s ** (b - 1.0) * (1.0 - s) ** (cb - 1.0)
        nodes.append(s)
        weights.append(w)
        lo = hi
    # right Gauss-Jacobi panel [1/2, 1] absorbing (1-s)^(cb-1)
    tj, wj = _jac_rule(_EULER_JAC_N, cb - 1.0)
    s = 1.0 - 0.25 * (tj + 1.0)
    w = wj * 0.25 ** cb * s ** (b - 1.0)
    nodes.append(s)
    weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def _f2_euler(a, b1, b2, c1, c2, x, y) -> float:
    """F2 by the 2-D Euler integral; requires c1 > b1 > 0, c2 > b2 > 0."""
    s, ws = _euler_axis(b1, c1 - b1, abs(x))
    tt, wt = _euler_axis(b2, c2 - b2, abs(y))
    core = (1.0 - s[:, None] * x - tt[None, :] * y) ** (-a)
    val = ws @ core @ wt
    ln_pref = (ln_gamma(c1) + ln_gamma(c2) - ln_gamma(b1) - ln_gamma(c1 - b1)
               - ln_gamma(b2) - ln_gamma(c2 - b2))
    return float(math.exp(ln_pref) * val)


def appell_f2_many(a: float, b1: float, b2: float, c1: float, c2: float,
                   x, y) -> np.ndarray:
    """Appell F2 at fixed parameters over argument vectors x <= 0, y <= 0.

    Dispatches per point between the Burchnall-Chaundy product expansion
    (mid range) and the Euler double integral (both transformed arguments
    near 1, the near-singular regime of the kernels).  Agrees with
    ``appell_f2_series`` on the overlap |x| + |y| < 1.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DomainError("appell_f2_many: x and y must have equal shapes")
    if np.any(x > 0.0) or np.any(y > 0.0):
        raise DomainError("appell_f2 is defined for x <= 0 and y <= 0")
    if _is_nonpos_int(c1) or _is_nonpos_int(c2):
        raise DomainError("appell_f2: c parameters must not be nonpositive integers")
    shape = x.shape
    x = x.ravel()
    y = y.ravel()
    u = 1.0 / (1.0 - x)
    v = 1.0 / (1.0 - y)
    t = (1.0 - u) * (1.0 - v)
    out = np.empty(x.size)
    euler_ok = (c1 > b1 > 0.0) and (c2 > b2 > 0.0)
    near = (t > BC_T_MAX) & euler_ok
    for j in np.nonzero(near)[0]:
        out[j] = _f2_euler(a, b1, b2, c1, c2, x[j], y[j])
    mid = np.nonzero(~near)[0]
    if mid.size:
        values, stalled = _f2_product_core(a, b1, b2, c1, c2, u[mid], v[mid])
        out[mid] = values
        if np.any(stalled):
            if not euler_ok:
                raise ConvergenceError(
                    "F2 product expansion stalled and the Euler integral "
                    "needs c1 > b1 > 0 and c2 > b2 > 0")
            for j in mid[stalled]:
                out[j] = _f2_euler(a, b1, b2, c1, c2, x[j], y[j])
    return out.reshape(shape)


def appell_f2(args: F2Args) -> float:
    """Appell F2 continued to x <= 0, y <= 0 (single point)."""
    return float(appell_f2_many(args.a, args.b1, args.b2, args.c1, args.c2,
                                np.array([args.x]), np.array([args.y]))[0])


# ---------------------------------------------------------------------------
# zero-balanced 3F2 near unit argument
# ---------------------------------------------------------------------------

def _li2(z: float) -> float:
    if z < -1.0 or z > 1.0:
        raise DomainError("_li2 wants z in [-1, 1]")
    if z > 0.5:
        w = 1.0 - z
        return (math.pi ** 2 / 6.0 - math.log(z) * math.log(w) - _li2(w))
    term_z = z
    total = 0.0
    zk = 1.0
    for k in range(1, 2000):
        zk *= z
        t = zk / (k * k)
        total += t
        if abs(t) <= 1e-17 * max(abs(total), 1e-300):
            break
    return total


def _li3(z: float) -> float:
    if z > 0.5:
        w = 1.0 - z
        lz = math.log(z)
        zeta3 = 1.2020569031595942854
        return (zeta3 + lz ** 3 / 6.0 + (math.pi ** 2 / 6.0) * lz
                - 0.5 * lz ** 2 * math.log(w) - _li3(w) - _li3(-w / z))
    total = 0.0
    zk = 1.0
    for k in range(1, 2000):
        zk *= z
        t = zk / (k * k * k)
        total += t
        if abs(t) <= 1e-17 * max(abs(total), 1e-300):
            break
    return total


def _gamma_ratio_g1(p: float, q: float) -> float:
    # Gamma(n+p)/Gamma(n+q) ~ n^(p-q) (1 + G1/n + G2/n^2 + ...)
    return 0.5 * (p - q) * (p + q - 1.0)


def _gamma_ratio_g2(p: float, q: float) -> float:
    d = p - q
    return d * (d - 1.0) * (3.0 * (p + q - 1.0) ** 2 - (d + 1.0)) / 24.0


_LOG3F2_NMAX = 30000


def log_singular_3f2(a1: float, a2: float, a3: float,
                     b1: float, b2: float, z: float) -> float:
    """Zero-balanced 3F2(a1, a2, a3; b1, b2; z) on 0 < z < 1.

    Requires b1 + b2 = a1 + a2 + a3 (the logarithmic case at z = 1) and
    positive parameters.  The value is assembled from the standard
    logarithmic-case expansion: the gamma-ratio asymptotics of the series
    coefficients turn the tail into polylogarithms Li1..Li3 (Li1 carries
    the ln(1-z) factor, the reflection identities of Li2/Li3 carry the
    higher (1-z)^k ln(1-z) terms) plus an explicitly summed, absolutely
    convergent remainder.
    """
    if not (0.0 < z < 1.0):
        raise DomainError("log_singular_3f2 requires 0 < z < 1")
    if min(a1, a2, a3, b1, b2) <= 0.0:
        raise DomainError("log_singular_3f2 requires positive parameters")
    bal = b1 + b2 - a1 - a2 - a3
    if abs(bal) > 1e-12:
        raise DomainError(
            f"log_singular_3f2 requires zero parameter balance, got {bal}")
    K = math.exp(ln_gamma(b1) + ln_gamma(b2)
                 - ln_gamma(a1) - ln_gamma(a2) - ln_gamma(a3))
    pairs = ((a1, b1), (a2, b2), (a3, 1.0))
    g1s = [_gamma_ratio_g1(p, q) for p, q in pairs]
    g2s = [_gamma_ratio_g2(p, q) for p, q in pairs]
    u1 = sum(g1s)
    u2 = sum(g2s) + g1s[0] * g1s[1] + g1s[0] * g1s[2] + g1s[1] * g1s[2]

    n = np.arange(1.0, _LOG3F2_NMAX + 1.0)
    ratios = ((a1 + n - 1.0) * (a2 + n - 1.0) * (a3 + n - 1.0)
              / ((b1 + n - 1.0) * (b2 + n - 1.0) * n))
    t_n = np.cumprod(ratios)  # T_n for n = 1..N
    model = (K / n) * (1.0 + u1 / n + u2 / n ** 2)
    rem = float(np.sum((t_n - model) * z ** n))

    li1 = -math.log1p(-z)
    return 1.0 + K * (li1 + u1 * _li2(z) + u2 * _li3(z)) + rem
