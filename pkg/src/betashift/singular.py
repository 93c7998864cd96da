"""Distribution functions of the eigenmeasures and the generalized Takagi function.

Pushing the leading eigenmeasure at temperature ``t`` to ``[0, 1]`` gives a
continuous increasing function ``D_t``; reparametrized by ``p = 1/lambda_t``
it becomes ``F_p``, which at ``beta = 2`` is the Lebesgue singular function.
Differentiating ``F_p`` in ``p`` at ``p = 1/beta`` yields ``G``, a
continuous nowhere-differentiable function that reduces to the Takagi
function at ``beta = 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigen import leading_lambda, series_sums
from .errors import DivergenceError, DomainError, RangeError
from .kernel import BetaContext, finite_expansion_length, greedy_digits, quasi_greedy_digits
from .spectrum import T_CAP, alpha_of_t

#: Default digit depth for series on [0, 1].
DEFAULT_DEPTH = 256

#: Largest depth reached by automatic depth increases.
MAX_DEPTH = 4096


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function on ``[0, 1]`` with evaluation metadata.

    Attributes
    ----------
    beta : float
    parameter : float
        The temperature ``t`` or the parameter ``p``; ``nan`` when unused.
    xs, ys : numpy.ndarray
    digit_depth : int
        Largest digit depth used for any sample.
    err_bound : float
        Bound on the truncation error of every sample.
    """

    beta: float
    parameter: float
    xs: np.ndarray
    ys: np.ndarray
    digit_depth: int
    err_bound: float


# ---------------------------------------------------------------------------
# Temperature map
# ---------------------------------------------------------------------------


def _excess(ctx, t, u):
    try:
        s = series_sums(ctx, t, u)
    except DivergenceError:
        return math.inf, None
    return s.excess, s


def f_of_p(ctx: BetaContext, p: float, tol: float = 1e-12, t_cap: float = T_CAP) -> float:
    """Temperature ``t`` with ``lambda_t = 1/p``.

    Solves ``phi_t(p) = 1`` in ``t`` (the left side increases with ``t``)
    by bracketing from ``[-1, 1]`` and safeguarded Newton steps whose
    derivative is the digit-weighted series.

    Raises
    ------
    RangeError
        If no ``|t| <= t_cap`` brackets the root.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError("p must lie in (0, 1)")
    u = -math.log(p)
    lo, hi = -1.0, 1.0
    g_lo, _ = _excess(ctx, lo, u)
    while g_lo > 0.0:
        if lo <= -t_cap:
            raise RangeError(f"1/p={1 / p} is below lambda at t=-{t_cap}")
        hi = lo
        lo = max(2 * lo, -t_cap)
        g_lo, _ = _excess(ctx, lo, u)
    g_hi, _ = _excess(ctx, hi, u)
    while g_hi < 0.0:
        if hi >= t_cap:
            raise RangeError(f"1/p={1 / p} is above lambda at t={t_cap}")
        lo = hi
        hi = min(2 * hi, t_cap)
        g_hi, _ = _excess(ctx, hi, u)
    if g_lo == 0.0:
        return lo
    t = 0.5 * (lo + hi)
    for _ in range(200):
        g, sums = _excess(ctx, t, u)
        if g == 0.0:
            break
        if g > 0.0:
            hi = t
        else:
            lo = t
        new = t - g / sums.digits if sums is not None and sums.digits > 0 else 0.5 * (lo + hi)
        if not lo < new < hi:
            new = 0.5 * (lo + hi)
        if abs(new - t) <= 1e-15 * max(1.0, abs(t)) or hi - lo <= 1e-15 * max(1.0, abs(t)):
            t = new
            break
        t = new
    return float(t)


# ---------------------------------------------------------------------------
# Distribution functions
# ---------------------------------------------------------------------------


def _weighted_digit_sum(digits: np.ndarray, t: float, u: float) -> float:
    """``sum_n g_n exp(t*(g_1+...+g_{n-1}) - n*u)``."""
    pos = np.flatnonzero(digits) + 1.0
    if pos.size == 0:
        return 0.0
    k = np.arange(pos.size, dtype=float)
    return float(np.exp(t * k - pos * u).sum())


def _dist(ctx: BetaContext, t: float, u: float, x: float, depth: int, tol: float):
    """Distribution function at one point; returns ``(value, tail, depth)``.

    The omitted tail equals ``exp(t*S_N - N*u)`` times the distribution
    function at the orbit point, hence at most ``exp(t*S_N - N*u)``.
    """
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x={x} is outside [0, 1]")
    n = int(depth)
    while True:
        g = greedy_digits(ctx, x, n)
        tail = math.exp(t * float(g.sum()) - n * u)
        if tail <= tol or n >= MAX_DEPTH or _terminates(ctx, x, n):
            break
        n = min(2 * n, MAX_DEPTH)
    if _terminates(ctx, x, n):
        tail = 0.0
    return _weighted_digit_sum(g, t, u), tail, n


def _terminates(ctx: BetaContext, x: float, n: int) -> bool:
    return finite_expansion_length(ctx, x, n) is not None


def D_t(ctx: BetaContext, t: float, x: float, depth: int = DEFAULT_DEPTH,
        tol: float = 1e-13) -> float:
    """Distribution function of the eigenmeasure at temperature ``t``.

    ``D_t(x) = sum_n g_n(x) exp(t*(g_1+...+g_{n-1})) / lambda_t^n`` over the
    greedy digits of ``x``. The depth doubles (up to 4096) until the tail
    bound drops below ``tol``.
    """
    eig = leading_lambda(ctx, float(t))
    return _dist(ctx, eig.t, eig.log_lam, x, depth, tol)[0]


def F_p(ctx: BetaContext, p: float, x: float, depth: int = DEFAULT_DEPTH,
        tol: float = 1e-13) -> float:
    """Distribution function reparametrized by ``p = 1/lambda_t``."""
    t = f_of_p(ctx, p)
    return _dist(ctx, t, -math.log(p), x, depth, tol)[0]


def distribution_grid(ctx: BetaContext, xs, t: float | None = None, p: float | None = None,
                      depth: int = DEFAULT_DEPTH, tol: float = 1e-13) -> GridFunction:
    """Evaluate ``D_t`` (give ``t``) or ``F_p`` (give ``p``) on a grid."""
    if (t is None) == (p is None):
        raise DomainError("give exactly one of t and p")
    if p is not None:
        temp, u, param = f_of_p(ctx, p), -math.log(p), float(p)
    else:
        eig = leading_lambda(ctx, float(t))
        temp, u, param = eig.t, eig.log_lam, float(t)
    xs = _check_grid(xs)
    ys = np.empty_like(xs)
    worst, used = 0.0, 0
    for i, x in enumerate(xs):
        ys[i], tail, n = _dist(ctx, temp, u, x, depth, tol)
        worst, used = max(worst, tail), max(used, n)
    return GridFunction(ctx.beta, param, xs, ys, used, worst)


def lebesgue_singular(p: float, x: float, depth: int = 64) -> float:
    """Lebesgue singular function by its binary-digit series.

    Uses ``(p/(1-p)) * sum g_n p^(n - S_n) (1-p)^S_n`` with ``S_n`` the
    number of ones among the first ``n`` binary digits of ``x`` (the point 1
    is read as ``111...``). The depth grows until the next term is below
    ``1e-17``.
    """
    if not 0.0 < p < 1.0:
        raise DomainError("p must lie in (0, 1)")
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x={x} is outside [0, 1]")
    lp, lq = math.log(p), math.log1p(-p)
    total, ones, n, y = 0.0, 0, 0, x
    limit = max(depth, 1)
    while True:
        n += 1
        if x == 1.0:
            bit = 1
        else:
            y *= 2.0
            bit = 1 if y >= 1.0 else 0
            y -= bit
        if bit:
            ones += 1
            total += math.exp((n - ones) * lp + ones * lq)
        # remaining mass is at most p^(n-S_n) (1-p)^S_n
        rest = math.exp((n - ones) * lp + ones * lq)
        if (y == 0.0 and x != 1.0) or (n >= limit and rest < 1e-17) or n >= 4096:
            break
    return p / (1.0 - p) * total


# ---------------------------------------------------------------------------
# Generalized Takagi function
# ---------------------------------------------------------------------------


def _takagi_series(ctx: BetaContext, digits: np.ndarray) -> float:
    m = alpha_of_t(ctx, 0.0)
    n = np.arange(1, digits.size + 1, dtype=float)
    prev = np.concatenate([[0.0], np.cumsum(digits, dtype=float)[:-1]])
    weights = (n - prev / m) * np.power(ctx.beta, -n)
    return float(np.sum(weights * digits))


def takagi_tail_bound(ctx: BetaContext, depth: int) -> float:
    """Bound ``sum_{n>depth} (n / beta^n) (1 + 1/m)`` on the omitted terms."""
    m = alpha_of_t(ctx, 0.0)
    r = 1.0 / ctx.beta
    n = depth
    return (1.0 + 1.0 / m) * r ** (n + 1) * ((n + 1) - n * r) / (1.0 - r) ** 2


def _takagi_depth(ctx: BetaContext, depth: int, tol: float) -> int:
    while takagi_tail_bound(ctx, depth) > tol and depth < MAX_DEPTH:
        depth = min(2 * depth, MAX_DEPTH)
    return depth


def G_beta(ctx: BetaContext, x: float, depth: int = DEFAULT_DEPTH, tol: float = 1e-13) -> float:
    """Generalized Takagi function from the greedy digits of ``x``.

    ``G(x) = sum_n g_n beta^-n (n - (g_1+...+g_{n-1})/m)`` with
    ``m = alpha(0)``, the equilibrium frequency of 1 at zero temperature.
    """
    depth = _takagi_depth(ctx, depth, tol)
    return _takagi_series(ctx, greedy_digits(ctx, x, depth))


def G_quasi(ctx: BetaContext, x: float, depth: int = DEFAULT_DEPTH, tol: float = 1e-13) -> float:
    """Same series as :func:`G_beta` on the quasi-greedy digits of ``x`` in (0, 1]."""
    depth = _takagi_depth(ctx, depth, tol)
    return _takagi_series(ctx, quasi_greedy_digits(ctx, x, depth))


def takagi_grid(ctx: BetaContext, xs, depth: int = DEFAULT_DEPTH, tol: float = 1e-13) -> GridFunction:
    """Evaluate :func:`G_beta` on a grid."""
    xs = _check_grid(xs)
    depth = _takagi_depth(ctx, depth, tol)
    ys = np.array([_takagi_series(ctx, greedy_digits(ctx, x, depth)) for x in xs])
    return GridFunction(ctx.beta, math.nan, xs, ys, depth, takagi_tail_bound(ctx, depth))


def _tent(y: float) -> float:
    # both branches are exact in binary64
    return 2.0 * y if y <= 0.5 else 2.0 - 2.0 * y


def takagi_oracle(x: float, depth: int = 64) -> float:
    """Classical Takagi function ``sum_{n=1}^{depth} T^n(x) / 2^n`` for the tent map ``T``.

    The omitted tail is below ``2^-depth``.
    """
    if depth < 1:
        raise DomainError("depth must be at least 1")
    total, y, scale = 0.0, float(x), 1.0
    for _ in range(depth):
        y = _tent(y)
        scale *= 0.5
        total += y * scale
    return total


def fd_hata_yamaguchi(ctx: BetaContext, x: float, h: float = 1e-4,
                      depth: int = DEFAULT_DEPTH) -> float:
    """Central difference ``(1/beta) dF_p(x)/dp`` at ``p = 1/beta``."""
    p0 = 1.0 / ctx.beta
    if not (0.0 < p0 - h and p0 + h < 1.0):
        raise DomainError("h is too large")
    up = F_p(ctx, p0 + h, x, depth)
    down = F_p(ctx, p0 - h, x, depth)
    return (up - down) / (2.0 * h) / ctx.beta


def _check_grid(xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or xs.size == 0:
        raise DomainError("grid must be a nonempty 1-d sequence")
    if np.any(np.diff(xs) <= 0):
        raise DomainError("grid must be strictly increasing")
    if xs[0] < 0.0 or xs[-1] > 1.0:
        raise DomainError("grid must lie in [0, 1]")
    return xs
