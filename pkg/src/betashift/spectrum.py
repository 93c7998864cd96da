"""Digit-frequency function, Hausdorff dimension spectrum and closed forms.

``alpha(t)`` is the equilibrium frequency of the digit 1, the derivative of
the pressure ``P(t) = log lambda_t``. The set of points whose digit-1
frequency equals ``alpha(t)`` has Hausdorff dimension
``(P(t) - t*alpha(t)) / log beta``; :func:`dim_of_alpha` inverts ``alpha``
to evaluate the spectrum at a prescribed frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .eigen import leading_lambda, series_sums
from .errors import ConsistencyError, DivergenceError, DomainError, RangeError
from .kernel import BetaContext

#: Largest temperature magnitude used by inversions and sweeps.
T_CAP = 40.0

#: Temperature at which the supremum frequency is estimated. The frequency
#: approaches its supremum only like ``exp(-c t)``; at ``t = 30`` it can still
#: be 1e-5 short (beta = 1.9), so the estimate is taken at the cap.
T_MAX = T_CAP


@dataclass(frozen=True)
class SpectrumPoint:
    """One row of a dimension-spectrum sweep."""

    t: float
    lam: float
    pressure: float
    alpha: float
    dim: float


@lru_cache(maxsize=65536)
def alpha_of_t(ctx: BetaContext, t: float) -> float:
    """Equilibrium frequency of the digit 1 at temperature ``t``.

    Ratio of the digit-weighted series to the normalizer, both evaluated at
    the leading eigenvalue.
    """
    eig = leading_lambda(ctx, float(t))
    sums = series_sums(ctx, eig.t, eig.log_lam)
    return sums.digits / sums.first


def alpha_fd(ctx: BetaContext, t: float, h: float = 1e-4) -> float:
    """Central-difference derivative of the pressure, a check on :func:`alpha_of_t`."""
    if h <= 0:
        raise DomainError("h must be positive")
    return (leading_lambda(ctx, t + h).log_lam - leading_lambda(ctx, t - h).log_lam) / (2 * h)


def dim_at_t(ctx: BetaContext, t: float) -> SpectrumPoint:
    """Spectrum point ``(t, lambda, P, alpha, dim)`` at one temperature.

    Raises
    ------
    ConsistencyError
        If the dimension falls outside ``[0, 1]`` by more than ``1e-9``.
    """
    eig = leading_lambda(ctx, float(t))
    a = alpha_of_t(ctx, float(t))
    dim = (eig.log_lam - eig.t * a) / ctx.log_beta
    if dim < -1e-9 or dim > 1 + 1e-9:
        raise ConsistencyError(f"dimension {dim!r} at t={t} is outside [0, 1]")
    return SpectrumPoint(eig.t, eig.lam, eig.log_lam, a, min(max(dim, 0.0), 1.0))


def default_t_grid(n: int = 257, t_max: float = 12.0, sharpness: float = 3.0) -> np.ndarray:
    """Symmetric grid on ``[-t_max, t_max]`` that is denser near 0."""
    s = np.linspace(-1.0, 1.0, n)
    return np.sign(s) * t_max * np.expm1(sharpness * np.abs(s)) / math.expm1(sharpness)


def sweep(ctx: BetaContext, t_grid=None) -> list[SpectrumPoint]:
    """Spectrum points over a temperature grid (default 257 points on [-12, 12])."""
    grid = default_t_grid() if t_grid is None else np.asarray(t_grid, dtype=float)
    return [dim_at_t(ctx, float(t)) for t in grid]


def stable_cap(ctx: BetaContext, t_cap: float = T_CAP, sign: float = 1.0) -> float:
    """Largest ``|t| <= t_cap`` (in steps of 5) where the eigenvalue is resolvable.

    For the full shift the determinant series sits at its radius of
    convergence once ``exp(-t)`` drops below the spacing of binary64 near
    ``t``, so very large temperatures cannot be evaluated.
    """
    t = float(t_cap)
    while t > 0:
        try:
            alpha_of_t(ctx, math.copysign(t, sign))
            return t
        except DivergenceError:
            t -= 5.0
    raise DivergenceError("no resolvable temperature below the cap")


def invert_alpha(ctx: BetaContext, p: float, tol: float = 1e-12, t_cap: float = T_CAP) -> float:
    """Temperature ``t`` with ``alpha(t) = p``.

    The bracket starts at ``[-1, 1]`` and doubles until it encloses ``p``,
    up to ``|t| <= t_cap``; a Brent iteration then refines it.

    Raises
    ------
    RangeError
        When ``p`` is not bracketed within the cap.
    """
    p = float(p)
    t_lo = -stable_cap(ctx, t_cap, -1.0)
    t_hi = stable_cap(ctx, t_cap, 1.0)
    lo, hi = max(-1.0, t_lo), min(1.0, t_hi)
    while alpha_of_t(ctx, lo) > p:
        if lo <= t_lo:
            raise RangeError(f"frequency {p} is below alpha({t_lo:g})")
        lo = max(2 * lo, t_lo)
    while alpha_of_t(ctx, hi) < p:
        if hi >= t_hi:
            raise RangeError(f"frequency {p} is above alpha({t_hi:g})")
        hi = min(2 * hi, t_hi)
    if alpha_of_t(ctx, lo) == p:
        return lo
    if alpha_of_t(ctx, hi) == p:
        return hi
    t = brentq(lambda s: alpha_of_t(ctx, s) - p, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=200)
    if abs(alpha_of_t(ctx, t) - p) > tol:
        # fall back to plain bisection for the last few digits
        a, b = lo, hi
        for _ in range(200):
            t = 0.5 * (a + b)
            if alpha_of_t(ctx, t) < p:
                a = t
            else:
                b = t
            if b - a < 1e-15 * max(1.0, abs(t)):
                break
    return float(t)


@dataclass(frozen=True)
class AlphaDimension:
    """Spectrum value at a prescribed frequency.

    ``extrapolated`` marks boundary frequencies resolved by the Legendre
    bound at the temperature cap instead of an exact inversion.
    """

    alpha: float
    t: float
    dim: float
    extrapolated: bool


def alpha_dimension(ctx: BetaContext, alpha: float, t_cap: float = T_CAP) -> AlphaDimension:
    """Dimension of the set of points with digit-1 frequency ``alpha``.

    Inside the range of ``alpha(t)`` the temperature is found by inversion.
    Outside ``[0, c]`` (``c`` the supremum frequency, or its upper bound) the
    set is empty and the dimension 0. Between the two, the value is
    ``inf_t (P(t) - t*alpha)/log beta`` evaluated at the most extreme
    resolvable temperature (see :func:`stable_cap`) and flagged as
    extrapolated.
    """
    alpha = float(alpha)
    upper = c_beta_report(ctx).upper_limit
    if alpha < 0.0 or alpha > upper:
        return AlphaDimension(alpha, math.nan, 0.0, False)
    try:
        t = invert_alpha(ctx, alpha, t_cap=t_cap)
    except RangeError:
        sign = -1.0 if alpha < alpha_of_t(ctx, 0.0) else 1.0
        t = math.copysign(stable_cap(ctx, t_cap, sign), sign)
        eig = leading_lambda(ctx, t)
        dim = (eig.log_lam - t * alpha) / ctx.log_beta
        return AlphaDimension(alpha, t, float(min(max(dim, 0.0), 1.0)), True)
    return AlphaDimension(alpha, t, dim_at_t(ctx, t).dim, False)


def dim_of_alpha(ctx: BetaContext, alpha: float) -> float:
    """Dimension of the digit-frequency set at ``alpha`` (0 outside ``[0, c]``)."""
    return alpha_dimension(ctx, alpha).dim


# ---------------------------------------------------------------------------
# Supremum frequency
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CBetaReport:
    """Bounds on the largest invariant frequency of the digit 1.

    ``N`` is the leading run of ones in the digits of 1 (``None`` when the
    digits are all ones) and ``M`` the run of zeros that follows.
    """

    N: int | None
    M: int
    lower: float
    upper: float
    exact: float | None
    numeric_estimate: float

    @property
    def upper_limit(self) -> float:
        return self.exact if self.exact is not None else self.upper


def _runs(ctx: BetaContext) -> tuple[int | None, int]:
    seq = ctx.one_digits
    if seq.is_periodic and not any(d == 0 for d in seq.preperiod) and set(seq.period) == {1}:
        return None, 0
    digits = seq.prefix(min(seq.available, 8192))
    zeros = np.flatnonzero(digits == 0)
    n = int(zeros[0])
    rest = digits[n:]
    ones_after = np.flatnonzero(rest == 1)
    m = int(ones_after[0]) if ones_after.size else int(rest.size)
    return n, m


@lru_cache(maxsize=256)
def c_beta_report(ctx: BetaContext) -> CBetaReport:
    """Rigorous bounds, exact value when known, and a numeric estimate of ``c_beta``."""
    n, m = _runs(ctx)
    estimate = alpha_of_t(ctx, stable_cap(ctx, T_MAX))
    if n is None:
        return CBetaReport(None, 0, 1.0, 1.0, 1.0, estimate)
    if n >= 2:
        lower, upper = (n - 1) / n, n / (n + 1)
    else:
        lower, upper = 1 / (m + 2), 1 / (m + 1)
    exact = None
    seq = ctx.one_digits
    if seq.is_periodic and len(seq.preperiod) == 0:
        per = seq.period
        if per == (1,) * n + (0,):
            exact = n / (n + 1)
        elif n == 1 and per == (1,) + (0,) * m:
            exact = 1 / (m + 1)
    return CBetaReport(n, m, lower, upper, exact, estimate)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def _xlogx(x: float) -> float:
    return 0.0 if x == 0.0 else x * math.log(x)


def besicovitch(alpha: float) -> float:
    """Binary entropy over ``log 2``: the spectrum of the full 2-shift."""
    if not 0.0 <= alpha <= 1.0:
        raise DomainError("alpha must lie in [0, 1]")
    return -(_xlogx(alpha) + _xlogx(1.0 - alpha)) / math.log(2.0)


def parry_closed_form(order: int, alpha: float) -> float:
    """Spectrum for ``beta`` solving ``b^(N+1) - b^N - 1 = 0`` with ``N = order``.

    Valid on ``[0, 1/(N+1)]``; the golden ratio is ``N = 1``.
    """
    n = int(order)
    if n < 1:
        raise DomainError("order must be at least 1")
    if not 0.0 <= alpha <= 1.0 / (n + 1):
        raise DomainError(f"alpha must lie in [0, 1/{n + 1}]")
    beta = _parry_beta(n)
    a = 1.0 - n * alpha
    b = 1.0 - (n + 1) * alpha
    # a*log(a/b) - alpha*log(alpha/b) with a - alpha = b
    return (_xlogx(a) - _xlogx(alpha) - _xlogx(max(b, 0.0))) / math.log(beta)


def fan_zhu(alpha: float) -> float:
    """Spectrum for the golden ratio, valid on ``[0, 1/2]``."""
    return parry_closed_form(1, alpha)


@lru_cache(maxsize=64)
def _parry_beta(n: int) -> float:
    return brentq(lambda b: b ** (n + 1) - b**n - 1.0, 1.0 + 1e-12, 2.0, xtol=1e-16, rtol=8.9e-16)


def closed_form_baselines(name: str, alpha: float, order: int | None = None) -> float:
    """Evaluate a named closed-form spectrum.

    Parameters
    ----------
    name : {'besicovitch', 'fan_zhu', 'parry'}
    alpha : float
    order : int, optional
        Required for ``'parry'``.
    """
    if name == "besicovitch":
        return besicovitch(alpha)
    if name == "fan_zhu":
        return fan_zhu(alpha)
    if name == "parry":
        if order is None:
            raise DomainError("the parry closed form needs an order")
        return parry_closed_form(order, alpha)
    raise DomainError(f"unknown closed form {name!r}")
