"""The determinant power series and the leading eigenvalue it determines.

The coefficient of ``z^n`` is ``q_n exp(t * (q_1 + ... + q_{n-1}))`` where
``q`` are the quasi-greedy digits of 1. Only positions holding a 1
contribute, and at the ``k``-th such position the exponent is ``t*(k-1)``,
so every sum here runs over the list of positions of ones.

All evaluation happens in the variable ``u = -log z`` (so ``z = 1/lambda``
corresponds to ``u = log lambda``). Terms are formed as
``exp(t*(k-1) - n_k*u)``, which stays finite for any temperature the
library supports, and eventually periodic digit sequences are summed in
closed form over the repeating block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DivergenceError, DomainError, UnsupportedError
from .kernel import BetaContext

_EPS = np.finfo(float).eps

#: Width of the adaptive window, in ones, used when no tail bound applies.
GUARD_WINDOW = 64


# ---------------------------------------------------------------------------
# Positions of ones
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Ones:
    """Positions of the digit 1 in the digits of 1, split for closed-form sums.

    For a periodic sequence ``head`` lists ones in the preperiod and ``block``
    ones in the first copy of the period; ``period``/``per_ones`` give the
    block length and the number of ones in it. For a truncated sequence
    ``head`` lists every known one and ``length`` is the number of digits.
    """

    head: np.ndarray
    block: np.ndarray
    period: int
    per_ones: int
    length: int
    periodic: bool
    max_gap: int


@lru_cache(maxsize=256)
def _ones(ctx: BetaContext) -> _Ones:
    seq = ctx.one_digits
    if seq.is_periodic:
        pre = len(seq.preperiod)
        head = np.flatnonzero(np.asarray(seq.preperiod, dtype=np.int8)) + 1.0
        block = np.flatnonzero(np.asarray(seq.period, dtype=np.int8)) + 1.0 + pre
        allpos = np.concatenate([head, block, block[:1] + len(seq.period)])
        gap = int(np.max(np.diff(allpos))) if allpos.size > 1 else len(seq.period)
        return _Ones(head, block, len(seq.period), int(block.size), pre, True, gap)
    digits = seq.prefix(seq.available)
    pos = np.flatnonzero(digits) + 1.0
    gap = int(np.max(np.diff(pos))) if pos.size > 1 else int(seq.available)
    return _Ones(pos, np.empty(0), 0, 0, int(seq.available), False, gap)


# ---------------------------------------------------------------------------
# Series sums
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesSums:
    """Three weighted versions of the determinant series at one ``(t, u)``.

    ``excess`` is ``sum T_n - 1`` computed without cancellation in its
    leading term, ``first`` is ``sum n T_n`` and ``digits`` is
    ``sum (S_n - 1) T_n`` where ``S_n`` counts ones among the first ``n``
    digits. Each carries an absolute error bound (tail plus rounding).
    """

    excess: float
    first: float
    digits: float
    err_excess: float
    err_first: float
    err_digits: float
    truncation: int
    certified: bool = True

    @property
    def value(self) -> float:
        return 1.0 + self.excess


def series_sums(ctx: BetaContext, t: float, u: float) -> SeriesSums:
    """Evaluate the determinant series and two weighted variants at ``z = e^-u``.

    Raises
    ------
    DivergenceError
        If the series diverges at ``u`` or no usable tail estimate exists.
    """
    ones = _ones(ctx)
    if ones.periodic:
        return _periodic_sums(ones, t, u)
    return _truncated_sums(ones, t, u)


def _periodic_sums(ones: _Ones, t: float, u: float) -> SeriesSums:
    p, s = ones.period, ones.per_ones
    log_rho = t * s - p * u
    if log_rho >= 0.0:
        raise DivergenceError(f"series diverges at u={u} (block ratio >= 1)")
    om = -math.expm1(log_rho)
    rho = math.exp(log_rho)
    kh = np.arange(ones.head.size, dtype=float)
    kb = np.arange(ones.head.size, ones.head.size + ones.block.size, dtype=float)
    th = np.exp(t * kh - ones.head * u)
    tb = np.exp(t * kb - ones.block * u)
    sb = tb.sum()

    # first term split off so that "sum - 1" keeps relative accuracy
    if ones.head.size:
        excess = math.expm1(-u) + th[1:].sum() + sb / om
    else:
        excess = math.expm1(-u) + tb[1:].sum() / om + tb[0] * rho / om
    first = (th * ones.head).sum() + (tb * ones.block).sum() / om + p * sb * rho / om**2
    digits = (th * kh).sum() + (tb * kb).sum() / om + s * sb * rho / om**2

    # 1 - rho inherits the absolute error of its exponent
    rel = 8 * _EPS + _EPS * (abs(t * s) + p * u + 1.0) / om
    mag = th.sum() + sb / om
    return SeriesSums(
        excess, first, digits,
        rel * mag + 4 * _EPS,
        rel * first * (2.0 + 1.0 / om),
        rel * digits * (2.0 + 1.0 / om) + _EPS,
        ones.length + p,
    )


def _truncated_sums(ones: _Ones, t: float, u: float) -> SeriesSums:
    pos = ones.head
    k = np.arange(pos.size, dtype=float)
    logs = t * k - pos * u
    with np.errstate(over="ignore"):
        # overflow means u is far below the root; inf sums say so
        terms = np.exp(logs)
        excess = math.expm1(-u) + terms[1:].sum()
        first = (terms * pos).sum()
        digits = (terms * k).sum()

    length, count = ones.length, pos.size
    certified = True
    log_y = t - u
    if u > 0.0 and log_y < 0.0:
        # the (count+1+j)-th one sits at a position >= length+1+j
        y = math.exp(log_y)
        base = math.exp(t * count - (length + 1) * u)
        oy = -math.expm1(log_y)
        tail_one = base / oy
        tail_digits = base * (count / oy + y / oy**2)
        bounds = []
        if (length + 1) * u >= 1.0:
            bounds.append(base * ((length + 1) / oy + y / oy**2))
        if t <= 0.0:
            r = math.exp(-u)
            orr = -math.expm1(-u)
            bounds.append(base * ((length + 1) - length * r) / orr**2)
        if bounds:
            tail_first = min(bounds)
        else:
            certified = False
            tail_first = base * ((length + ones.max_gap / oy) / oy)
    else:
        rho_hat = _window_ratio(logs)
        if rho_hat is None or rho_hat >= 0.999:
            raise DivergenceError(
                f"tail guard failed at t={t}, u={u}: window ratio "
                f"{rho_hat if rho_hat is not None else 'unavailable'}"
            )
        certified = False
        last = terms[-1]
        geo = rho_hat / (1.0 - rho_hat)
        tail_one = last * geo
        tail_first = last * geo * (length + ones.max_gap / (1.0 - rho_hat))
        tail_digits = last * geo * (count + 1.0 / (1.0 - rho_hat))
    rel = 4 * _EPS * math.log2(max(count, 2))
    return SeriesSums(
        excess, first, digits,
        tail_one + rel * (terms.sum() + 1.0),
        tail_first + rel * first,
        tail_digits + rel * digits,
        length,
        certified,
    )


def _window_ratio(logs: np.ndarray) -> float | None:
    """Largest per-one decay ratio over the trailing windows of terms.

    Consecutive ones can grow (adjacent ones multiply a term by ``e^(t-u)``),
    so the ratio is measured across blocks of ``GUARD_WINDOW`` ones and taken
    to the matching root; the worst of four trailing blocks is returned.
    """
    w = GUARD_WINDOW
    if logs.size < 2 * w:
        return None
    tail = logs[-4 * w - 1:] if logs.size > 4 * w else logs
    ratios = (tail[w:] - tail[:-w]) / w
    return float(math.exp(np.max(ratios)))


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def phi_eval(ctx: BetaContext, t: float, z: float, tol: float = 1e-13):
    """Evaluate the determinant series at a nonnegative real ``z``.

    Parameters
    ----------
    ctx : BetaContext
    t : float
        Temperature.
    z : float
        Evaluation point, ``z >= 0``.
    tol : float
        Largest acceptable truncation error.

    Returns
    -------
    (value, err_bound) : tuple of float

    Raises
    ------
    DivergenceError
        If ``z`` lies outside the region where convergence can be shown, or
        the tail bound exceeds ``tol``.
    """
    if z < 0 or not math.isfinite(z):
        raise DomainError("z must be a finite nonnegative number")
    if tol <= 0:
        raise DomainError("tol must be positive")
    if z == 0:
        return 0.0, 0.0
    sums = series_sums(ctx, t, -math.log(z))
    tail_part = sums.err_excess
    if not ctx.one_digits.is_periodic and tail_part > tol + 1e-13 * sums.value:
        raise DivergenceError(f"tail bound {tail_part:.3g} exceeds tol={tol:g}")
    return sums.value, sums.err_excess


@dataclass(frozen=True)
class LeadingEigen:
    """Leading eigenvalue of the weighted transfer operator at one temperature.

    Attributes
    ----------
    t : float
    lam : float
        The eigenvalue, ``> 1``.
    eta : float
        ``1/lam``, the smallest positive zero of ``1 - phi``.
    truncation : int
        Digits of 1 used explicitly.
    err_bound : float
        Bound on ``|phi(eta) - 1|`` (residual plus evaluation error).
    F_t : float
        Normalizer ``sum n q_n H_{n-1} / lam^n``.
    log_lam : float
        ``log lam`` computed directly (more accurate than ``log(lam)``).
    """

    t: float
    lam: float
    eta: float
    truncation: int
    err_bound: float
    F_t: float
    log_lam: float

    @property
    def pressure(self) -> float:
        return self.log_lam


def _upper_u(t: float) -> float:
    """``log(1 + e^t)``, the bracket end where ``phi <= 1`` is guaranteed."""
    if t > 30:
        return t + math.log1p(math.exp(-t))
    return math.log1p(math.exp(t))


def _excess_or_inf(ctx, t, u):
    try:
        s = series_sums(ctx, t, u)
    except DivergenceError:
        return math.inf, None
    return s.excess, s


@lru_cache(maxsize=65536)
def leading_lambda(ctx: BetaContext, t: float, tol: float = 1e-12) -> LeadingEigen:
    """Leading eigenvalue ``lambda_t`` as the inverse zero of ``1 - phi_t``.

    Bisection on ``u = log lambda`` over ``[0, log(1 + e^t)]`` narrows the
    bracket to a relative width of ``1e-6``; Newton steps with derivative
    ``-F`` finish until the residual is below ``tol`` or ``u`` stops moving.

    Parameters
    ----------
    ctx : BetaContext
    t : float
    tol : float
        Target residual ``|phi_t(1/lambda) - 1|``.

    Returns
    -------
    LeadingEigen
    """
    t = float(t)
    if not math.isfinite(t):
        raise DomainError("t must be finite")
    hi = _upper_u(t)
    lo = 0.0
    g_hi, s_hi = _excess_or_inf(ctx, t, hi)
    if g_hi >= 0.0:
        # the root sits at the bracket end (full shift)
        u, sums = hi, s_hi
    else:
        while hi - lo > 1e-6 * hi:
            mid = 0.5 * (lo + hi)
            g, _ = _excess_or_inf(ctx, t, mid)
            if g > 0.0:
                lo = mid
            else:
                hi = mid
        u = 0.5 * (lo + hi)
        g, sums = _excess_or_inf(ctx, t, u)
        for _ in range(60):
            if sums is None:
                # divergent series: u lies below the root
                lo = u
                u = 0.5 * (lo + hi)
                g, sums = _excess_or_inf(ctx, t, u)
                continue
            if g > 0.0:
                lo = u
            elif g < 0.0:
                hi = u
            if g == 0.0:
                break
            step = g / sums.first
            new = u + step
            if not (lo <= new <= hi):
                new = 0.5 * (lo + hi)
            if abs(new - u) <= 2 * _EPS * u:
                break
            u = new
            g, sums = _excess_or_inf(ctx, t, u)
        if sums is None:
            u = hi
            g, sums = _excess_or_inf(ctx, t, u)
    if sums is None:
        raise DivergenceError(f"no convergent evaluation point near the eigenvalue at t={t}")
    lam = math.exp(u)
    return LeadingEigen(
        t=t,
        lam=lam,
        eta=math.exp(-u),
        truncation=sums.truncation,
        err_bound=abs(sums.excess) + sums.err_excess,
        F_t=sums.first,
        log_lam=u,
    )


def pressure(ctx: BetaContext, t: float) -> float:
    """Topological pressure of ``t`` times the indicator of the first digit being 1."""
    return leading_lambda(ctx, float(t)).log_lam


def normalizer_F(ctx: BetaContext, eig: LeadingEigen) -> float:
    """Normalizer ``F(t) = sum n q_n H_{n-1} / lambda^n`` at a computed eigenvalue."""
    return series_sums(ctx, eig.t, eig.log_lam).first


# ---------------------------------------------------------------------------
# Rational form and subleading zeros
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalPhi:
    """Closed form ``phi = A + B / (1 - w^s z^p)`` with ``w = e^t``.

    ``head_terms`` and ``block_terms`` list monomials ``(n, k)`` meaning
    ``w^k z^n`` with coefficient 1; ``A`` sums the head terms, ``B`` the
    block terms.
    """

    head_terms: tuple[tuple[int, int], ...]
    block_terms: tuple[tuple[int, int], ...]
    period: int
    per_ones: int

    def evaluate(self, t: float, z):
        """Value of the rational function at complex or real ``z``."""
        w = math.exp(t)
        a = sum(w**k * z**n for n, k in self.head_terms)
        b = sum(w**k * z**n for n, k in self.block_terms)
        return a + b / (1 - w**self.per_ones * z**self.period)

    def numerator(self, t: float) -> np.ndarray:
        """Coefficients (highest degree first) of ``A*D + B``."""
        return self._poly(t, numerator=True)

    def denominator(self, t: float) -> np.ndarray:
        """Coefficients (highest degree first) of ``D = 1 - w^s z^p``."""
        d = np.zeros(self.period + 1)
        d[-1] = 1.0
        d[0] -= math.exp(t * self.per_ones)
        return d

    def determinant(self, t: float) -> np.ndarray:
        """Coefficients of ``D*(1 - phi)``, whose zeros include those of ``1 - phi``."""
        num = self.numerator(t)
        den = self.denominator(t)
        size = max(num.size, den.size)
        return np.pad(den, (size - den.size, 0)) - np.pad(num, (size - num.size, 0))

    def _poly(self, t, numerator):
        w = math.exp(t)
        deg = max([n for n, _ in self.head_terms] + [0]) + self.period
        deg = max(deg, max([n for n, _ in self.block_terms] + [0]))
        c = np.zeros(deg + 1)  # c[j] multiplies z^j
        ws = w**self.per_ones
        for n, k in self.head_terms:
            c[n] += w**k
            c[n + self.period] -= w**k * ws
        for n, k in self.block_terms:
            c[n] += w**k
        return c[::-1]


def rationalize_phi(ctx: BetaContext) -> RationalPhi:
    """Rational closed form of the determinant series for periodic digits of 1.

    Raises
    ------
    UnsupportedError
        If no period was detected in the digits of 1.
    """
    seq = ctx.one_digits
    if not seq.is_periodic:
        raise UnsupportedError("digits of 1 have no detected period")
    ones = _ones(ctx)
    head = tuple((int(n), k) for k, n in enumerate(ones.head))
    a = len(head)
    block = tuple((int(n), a + k) for k, n in enumerate(ones.block))
    return RationalPhi(head, block, ones.period, ones.per_ones)


@dataclass(frozen=True)
class SubleadingZeros:
    """Zeros of ``1 - phi_t`` other than the leading one.

    ``approximate`` is set when the zeros come from a truncated series
    rather than the exact rational form.
    """

    zeros: tuple[complex, ...]
    approximate: bool
    eta: float

    def __len__(self):
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    def __getitem__(self, i):
        return self.zeros[i]


def _polish(coeffs: np.ndarray, roots: np.ndarray, steps: int = 3) -> np.ndarray:
    """A few Newton steps on each root of moderate modulus."""
    d = np.polyder(coeffs)
    roots = roots.astype(complex)
    near = np.abs(roots) <= 4.0
    r = roots[near]
    with np.errstate(all="ignore"):
        for _ in range(steps):
            f = np.polyval(coeffs, r)
            df = np.polyval(d, r)
            step = np.where(df != 0, f / np.where(df != 0, df, 1), 0)
            r = np.where(np.isfinite(step), r - step, r)
    roots[near] = r
    return roots


def subleading_zeros(ctx: BetaContext, t: float, modulus_cap: float | None = None,
                     degree: int = 512) -> SubleadingZeros:
    """Complex zeros of ``1 - phi_t`` with ``eta_t < |z| <= modulus_cap``.

    Works in the scaled variable ``zeta = z / eta_t`` so polynomial
    coefficients stay of order one for every temperature. Periodic digits
    use the exact rational numerator; otherwise a degree-``degree``
    truncation is solved and a root is kept only if the truncation of twice
    that degree also nearly vanishes there.

    Raises
    ------
    UnsupportedError
        In the truncated case, when the leading zero itself fails the check.
    """
    eig = leading_lambda(ctx, float(t))
    u = eig.log_lam
    ones = _ones(ctx)
    cap = math.inf if modulus_cap is None else float(modulus_cap)

    if ones.periodic:
        p, s = ones.period, ones.per_ones
        rho = math.exp(t * s - p * u)
        kh = np.arange(ones.head.size)
        kb = np.arange(ones.head.size, ones.head.size + ones.block.size)
        th = np.exp(t * kh - ones.head * u)
        tb = np.exp(t * kb - ones.block * u)
        deg = int(max(ones.head.max(initial=0) + p, ones.block.max(initial=0)))
        c = np.zeros(deg + 1)  # c[j] multiplies zeta^j of D*(1 - phi)
        c[0] += 1.0
        c[p] -= rho
        for n, v in zip(ones.head.astype(int), th):
            c[n] -= v
            c[n + p] += v * rho
        for n, v in zip(ones.block.astype(int), tb):
            c[n] -= v
        coeffs = np.trim_zeros(c[::-1], "f")
        roots = _polish(coeffs, np.roots(coeffs))

        def residual(zeta):
            a = np.sum(th * zeta ** ones.head)
            b = np.sum(tb * zeta ** ones.block)
            return abs(1.0 - a - b / (1.0 - rho * zeta**p))

        threshold = 1e-8
        approximate = False
    else:
        # scale by the growth rate of the coefficients, exp(t*d), so that they
        # neither explode nor vanish across the truncation degree
        scale = eig.lam / math.exp(t * ctx.digit_frequency_estimate)
        pos, k = ones.head, np.arange(ones.head.size)
        logs = t * k - pos * u
        low = pos <= degree
        c = np.zeros(degree + 1)  # c[j] multiplies xi^j, zeta = scale * xi
        c[0] = 1.0
        c[pos[low].astype(int)] -= np.exp(logs[low] + pos[low] * math.log(scale))
        coeffs = np.trim_zeros(c[::-1], "f")
        try:
            with np.errstate(all="ignore"):
                roots = _polish(coeffs, np.roots(coeffs)) * scale
        except np.linalg.LinAlgError as exc:
            raise UnsupportedError(f"truncated polynomial roots failed: {exc}") from exc
        check = pos <= 2 * degree
        pc, tc = pos[check], np.exp(logs[check])

        def residual(zeta):
            with np.errstate(over="ignore", invalid="ignore"):
                return abs(1.0 - np.sum(tc * zeta**pc))

        threshold = 1e-6
        approximate = True
        lead = roots[np.argmin(np.abs(roots - 1.0))]
        if abs(lead - 1.0) > 1e-6 or not residual(lead) < threshold:
            raise UnsupportedError("truncated series does not reproduce the leading zero")

    out = []
    for zeta in roots:
        if abs(zeta - 1.0) < 1e-7 or abs(zeta) <= 1.0 + 1e-10:
            continue
        z = complex(zeta) * eig.eta
        if abs(z) > cap:
            continue
        res = residual(complex(zeta))
        if np.isfinite(res) and res < threshold:
            out.append(z)
    out.sort(key=lambda z: (abs(z), z.imag))
    return SubleadingZeros(tuple(out), approximate, eig.eta)


def mixing_rate_bound(ctx: BetaContext, t: float) -> float:
    """Decay-of-correlations rate bound relative to the leading eigenvalue.

    Returns ``max(r_hat, max |1/z|) / lambda_t`` over the subleading zeros,
    where ``r_hat = exp(max(t, 0) * d)`` and ``d`` is the digit frequency of
    the digits of 1. ``r_hat`` is an estimate of the essential spectral
    radius, so the result is a bound modulo that estimate.
    """
    eig = leading_lambda(ctx, float(t))
    zeros = subleading_zeros(ctx, t)
    r_hat = math.exp(max(t, 0.0) * ctx.digit_frequency_estimate)
    worst = r_hat
    for z in zeros:
        worst = max(worst, 1.0 / abs(z))
    return worst / eig.lam
