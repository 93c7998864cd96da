"""Digit machinery for the beta-shift on two symbols.

This module owns everything that turns a number ``1 < beta <= 2`` into
symbolic data: the quasi-greedy digit sequence of 1 (the single source of
truth for all later series coefficients), greedy and quasi-greedy digits of
arbitrary points, Parry's admissibility test and the coding map.

Floating iteration of ``x -> beta*x mod 1`` loses one bit every step or so,
so digits are produced with mpmath at a working precision that grows with
the number of digits requested. Only the digits leave this module; every
downstream series is evaluated in binary64.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np
from scipy.optimize import brentq

from .errors import DomainError

#: Orbit points closer than this to ``1/beta`` are treated as hitting it.
DRIFT_TOL = 1e-11

#: Default number of digits of 1 generated for a numeric ``beta``.
DEFAULT_DIGITS = 4096

_GUARD_BITS = 128


# ---------------------------------------------------------------------------
# Digit sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DigitSequence:
    """An eventually periodic, or truncated, infinite word over {0, 1}.

    Parameters
    ----------
    preperiod : tuple of int
        Digits before the repeating block. For a sequence without a detected
        period this holds every known digit.
    period : tuple of int or None
        Repeating block, or ``None`` when only a finite window is known.
    truncation_length : int or None
        Number of known digits when ``period`` is ``None``. Filled in
        automatically.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...] | None = None
    truncation_length: int | None = None

    def __post_init__(self):
        pre = tuple(int(d) for d in self.preperiod)
        per = None if self.period is None else tuple(int(d) for d in self.period)
        if any(d not in (0, 1) for d in pre + (per or ())):
            raise DomainError("digits must be 0 or 1")
        if per is not None and len(per) == 0:
            raise DomainError("period must be nonempty")
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)
        if per is None:
            object.__setattr__(self, "truncation_length", len(pre))

    # construction helpers -------------------------------------------------

    @classmethod
    def finite(cls, word) -> "DigitSequence":
        """A finite word followed by zeros forever."""
        return cls(tuple(int(d) for d in word), (0,))

    @classmethod
    def parse(cls, text: str) -> "DigitSequence":
        """Parse ``"PRE(PER)"`` notation, e.g. ``"(110)"`` or ``"11(01)"``.

        A string without parentheses is a truncated sequence with no period.
        """
        text = text.strip().replace(" ", "")
        m = re.fullmatch(r"([01]*)(?:\(([01]+)\))?", text)
        if m is None or not text:
            raise DomainError(f"cannot parse digit sequence {text!r}")
        pre = tuple(int(c) for c in m.group(1))
        per = tuple(int(c) for c in m.group(2)) if m.group(2) else None
        return cls(pre, per)

    def __str__(self) -> str:
        body = "".join(map(str, self.preperiod))
        if self.period is not None:
            body += "(" + "".join(map(str, self.period)) + ")"
        return body

    # queries ----------------------------------------------------------------

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    @property
    def available(self) -> float:
        """How many digits can be produced (``inf`` when periodic)."""
        return math.inf if self.is_periodic else self.truncation_length

    @property
    def ones_per_period(self) -> int:
        return sum(self.period) if self.is_periodic else 0

    def prefix(self, n: int) -> np.ndarray:
        """First ``n`` digits as an ``int8`` array."""
        n = int(n)
        pre = np.asarray(self.preperiod, dtype=np.int8)
        if n <= len(pre):
            return pre[:n].copy()
        if self.period is None:
            raise DomainError(
                f"only {len(pre)} digits are known, {n} were requested"
            )
        per = np.asarray(self.period, dtype=np.int8)
        reps = -(-(n - len(pre)) // len(per))
        return np.concatenate([pre, np.tile(per, reps)])[:n]

    def digit(self, i: int) -> int:
        """The ``i``-th digit, counting from 1."""
        return int(self.prefix(i)[i - 1])

    def shift(self, k: int) -> "DigitSequence":
        """The sequence with its first ``k`` digits removed."""
        if k <= len(self.preperiod):
            return DigitSequence(self.preperiod[k:], self.period)
        if self.period is None:
            raise DomainError("cannot shift past the known digits")
        j = (k - len(self.preperiod)) % len(self.period)
        return DigitSequence((), self.period[j:] + self.period[:j])

    def comparison_length(self, other: "DigitSequence") -> int | float:
        """Digits needed to decide a lexicographic comparison exactly."""
        if self.is_periodic and other.is_periodic:
            return max(len(self.preperiod), len(other.preperiod)) + math.lcm(
                len(self.period), len(other.period)
            )
        return min(self.available, other.available)


def compare(a: DigitSequence, b: DigitSequence) -> int:
    """Lexicographic comparison of two digit sequences.

    Returns -1, 0 or 1. Eventually periodic inputs are compared exactly; a
    truncated input is compared on the digits both sides know, and agreement
    there is reported as equality.
    """
    n = a.comparison_length(b)
    if n == 0:
        return 0
    x, y = a.prefix(n), b.prefix(n)
    diff = np.flatnonzero(x != y)
    if diff.size == 0:
        return 0
    i = diff[0]
    return -1 if x[i] < y[i] else 1


def detect_period(digits, max_pre: int | None = None, max_per: int | None = None):
    """Find the smallest eventual period of a finite window of digits.

    Parameters
    ----------
    digits : sequence of int
        Observed digits.
    max_pre, max_per : int, optional
        Largest preperiod and period length searched. Both default to a
        quarter of the window.

    Returns
    -------
    tuple of (int, int) or None
        ``(preperiod length, period length)`` with the preperiod minimal and,
        among those, the shortest period; the periodic continuation is
        checked on the entire window and must repeat at least twice.
        ``None`` when no pair within the bounds fits.
    """
    a = np.asarray(digits, dtype=np.int8)
    size = a.size
    if max_pre is None:
        max_pre = size // 4
    if max_per is None:
        max_per = size // 4
    best = None
    for ell in range(1, min(max_per, size - 1) + 1):
        mism = np.flatnonzero(a[:-ell] != a[ell:])
        p = 0 if mism.size == 0 else int(mism[-1]) + 1
        if p > max_pre or size - p < 2 * ell:
            continue
        if best is None or p < best[0]:
            best = (p, ell)
            if p == 0:
                break
    return best


# ---------------------------------------------------------------------------
# Specifying beta
# ---------------------------------------------------------------------------

_FAMILY_ALIASES = {
    "golden": ("multinacci", 1),
    "tribonacci": ("multinacci", 2),
    "dyadic": ("dyadic", None),
}


@dataclass(frozen=True)
class BetaSpec:
    """How ``beta`` is given.

    Exactly one of ``value``, ``poly`` or ``family`` is normally set. A
    ``digits`` override may accompany any of them, or stand alone, in which
    case ``beta`` is the root of ``sum q_n beta^-n = 1``.

    Parameters
    ----------
    value : float or str, optional
        Numeric ``beta``. Strings are read in decimal at full working
        precision, floats are taken as the exact binary64 value.
    poly : tuple of int, optional
        Integer coefficients, highest degree first, with a unique root in
        ``(1, 2]``.
    family : {'dyadic', 'multinacci', 'parry'}, optional
        Named family with known digit pattern.
    order : int, optional
        ``N`` for multinacci (digits of 1 are ``(1^N 0)^inf``) or ``M`` for
        parry (``(1 0^M)^inf``, root of ``b^(M+1) - b^M - 1``).
    digits : DigitSequence, optional
        Quasi-greedy digits of 1 supplied by the user.
    """

    value: float | str | None = None
    poly: tuple[int, ...] | None = None
    family: str | None = None
    order: int | None = None
    digits: DigitSequence | None = None

    def __post_init__(self):
        if self.poly is not None:
            object.__setattr__(self, "poly", tuple(int(c) for c in self.poly))
        if self.family is not None:
            if self.family not in ("dyadic", "multinacci", "parry"):
                raise DomainError(f"unknown family {self.family!r}")
            if self.family != "dyadic" and (self.order is None or self.order < 1):
                raise DomainError(f"family {self.family!r} needs an order >= 1")
        given = [self.value is not None, self.poly is not None, self.family is not None]
        if sum(given) > 1:
            raise DomainError("give at most one of value, poly and family")
        if sum(given) == 0 and self.digits is None:
            raise DomainError("no beta given")

    @classmethod
    def dyadic(cls) -> "BetaSpec":
        return cls(family="dyadic")

    @classmethod
    def multinacci(cls, n: int) -> "BetaSpec":
        return cls(family="multinacci", order=int(n))

    @classmethod
    def parry(cls, m: int) -> "BetaSpec":
        return cls(family="parry", order=int(m))

    @classmethod
    def from_tag(cls, tag: str) -> "BetaSpec":
        """Parse ``golden``, ``tribonacci``, ``dyadic``, ``multinacci:N`` or ``parry:M``."""
        tag = tag.strip().lower().replace("_", ":").replace("-", ":")
        if tag in _FAMILY_ALIASES:
            fam, order = _FAMILY_ALIASES[tag]
            return cls(family=fam, order=order)
        m = re.fullmatch(r"(multinacci|parry):?(\d+)", tag)
        if m is None:
            raise DomainError(f"unknown family tag {tag!r}")
        return cls(family=m.group(1), order=int(m.group(2)))

    def label(self) -> str:
        if self.family == "dyadic":
            return "dyadic"
        if self.family is not None:
            return f"{self.family}:{self.order}"
        if self.poly is not None:
            return "poly:" + ",".join(map(str, self.poly))
        if self.value is not None:
            return f"value:{self.value}"
        return f"digits:{self.digits}"

    def family_polynomial(self) -> tuple[int, ...] | None:
        """Integer polynomial (highest degree first) defining a family member."""
        if self.family == "dyadic":
            return (1, -2)
        if self.family == "multinacci":
            return (1,) + (-1,) * (self.order + 1)
        if self.family == "parry":
            return (1, -1) + (0,) * (self.order - 1) + (-1,)
        return None

    def family_digits(self) -> DigitSequence | None:
        if self.family == "dyadic":
            return DigitSequence((), (1,))
        if self.family == "multinacci":
            return DigitSequence((), (1,) * self.order + (0,))
        if self.family == "parry":
            return DigitSequence((), (1,) + (0,) * self.order)
        return None


def _digits_polynomial(seq: DigitSequence) -> tuple[int, ...]:
    """Integer polynomial in ``beta`` whose root makes ``sum q_n beta^-n = 1``.

    With ``x = 1/beta`` and ``q = A (B)^inf`` (preperiod length ``k``, period
    ``p``) the identity reads ``(A(x) - 1)(1 - x^p) + x^k B(x) = 0``;
    multiplying by ``beta^(k+p)`` gives integer coefficients.
    """
    pre = list(seq.preperiod)
    if seq.period is None:
        # sum_{n<=L} q_n x^n - 1 = 0
        coeffs_x = [-1] + pre
        deg = len(coeffs_x) - 1
        return tuple(coeffs_x[:deg + 1])  # highest power of beta first
    per = list(seq.period)
    k, p = len(pre), len(per)
    deg = k + p
    cx = np.zeros(deg + 1, dtype=object)  # cx[j] multiplies x^j
    a_minus_1 = np.zeros(k + 1, dtype=object)
    a_minus_1[0] = -1
    for i, d in enumerate(pre, start=1):
        a_minus_1[i] += d
    for j, c in enumerate(a_minus_1):
        cx[j] += c
        cx[j + p] -= c
    for i, d in enumerate(per, start=1):
        cx[k + i] += d
    # x^j * beta^deg = beta^(deg - j): coefficient of beta^(deg-j) is cx[j]
    return tuple(int(c) for c in cx)


def _beta_from_digits(seq: DigitSequence) -> float:
    """Solve ``sum q_n beta^-n = 1`` for ``beta`` in binary64."""

    def excess(x):
        return _value_at(seq, x) - 1.0

    if excess(0.5) >= 0.0:
        return 2.0
    x = brentq(excess, 0.5, 1.0 - 1e-12, xtol=1e-17, rtol=8.9e-16)
    return 1.0 / x


def _value_at(seq: DigitSequence, x: float) -> float:
    """``sum a_n x^n`` for a digit sequence, closed form on the period."""
    head = _horner(np.asarray(seq.preperiod, dtype=float), 1.0 / x)
    if not seq.is_periodic:
        return head
    p = len(seq.period)
    block = _horner(np.asarray(seq.period, dtype=float), 1.0 / x) / (1.0 - x ** p)
    return head + block * x ** len(seq.preperiod)


def _unique_root_in_unit_interval(poly: tuple[int, ...]) -> float:
    """Float root in ``(1, 2]`` with a sign-change uniqueness check."""
    coeffs = np.asarray(poly, dtype=float)
    xs = np.linspace(1.0, 2.0, 4097)
    xs[0] = 1.0 + 1e-12
    vals = np.polyval(coeffs, xs)
    zeros = np.flatnonzero(vals[1:] == 0.0) + 1
    changes = np.flatnonzero(vals[:-1] * vals[1:] < 0.0)
    if zeros.size + changes.size != 1:
        raise DomainError(
            "polynomial must have exactly one root in (1, 2], "
            f"found {zeros.size + changes.size}"
        )
    if zeros.size:
        return float(xs[zeros[0]])
    a, b = float(xs[changes[0]]), float(xs[changes[0] + 1])
    root = brentq(lambda x: float(np.polyval(coeffs, x)), a, b, xtol=1e-16, rtol=8.9e-16)
    return float(root)


# ---------------------------------------------------------------------------
# Context
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class BetaContext:
    """``beta`` together with its quasi-greedy digits of 1.

    Contexts hash by identity so they can key caches. Treat them as
    immutable once built; use :func:`make_context` to construct one.

    Attributes
    ----------
    spec : BetaSpec
    beta : float
    one_digits : DigitSequence
        Quasi-greedy expansion of 1.
    is_simple : bool
        Whether the greedy orbit of 1 reaches ``1/beta``.
    digit_frequency_estimate : float
        Frequency of the digit 1 in ``one_digits`` (exact when periodic).
    simplicity_ambiguous : bool
        Set when the orbit of 1 came within the drift tolerance of
        ``1/beta`` although, at working precision, it did not hit it.
    """

    spec: BetaSpec
    beta: float
    one_digits: DigitSequence
    is_simple: bool
    digit_frequency_estimate: float
    simplicity_ambiguous: bool = False
    polynomial: tuple[int, ...] | None = None
    _beta_mp: object = field(default=None, repr=False)
    _beta_prec: int = field(default=0, repr=False)

    @property
    def log_beta(self) -> float:
        return math.log(self.beta)

    @property
    def is_dyadic(self) -> bool:
        return self.beta == 2.0

    def beta_mp(self, prec: int):
        """``beta`` as an mpmath number accurate to about ``prec`` bits."""
        if self._beta_mp is not None and self._beta_prec >= prec:
            return self._beta_mp
        if self.polynomial is not None and self.beta != 2.0:
            start = self._beta_mp if self._beta_mp is not None else mpmath.mpf(self.beta)
            self._beta_mp = _refine_root(self.polynomial, start, prec)
            self._beta_prec = prec
        elif isinstance(self.spec.value, str):
            self._beta_mp = _value_to_mpf(self.spec.value, prec)
            self._beta_prec = prec
        else:
            # binary64 value, exact at any precision
            self._beta_mp = mpmath.mpf(self.beta)
            self._beta_prec = 1 << 30
        return self._beta_mp


def _value_to_mpf(value, prec: int):
    with mpmath.workprec(prec):
        if isinstance(value, str):
            return mpmath.mpf(value)
        return mpmath.mpf(float(value))


def _refine_root(poly, start, prec: int):
    """Newton iteration in mpmath, doubling precision as it converges."""
    coeffs = [mpmath.mpf(c) for c in poly]
    x = mpmath.mpf(start)
    work = 53
    while True:
        work = min(2 * work, prec + 32)
        with mpmath.workprec(work):
            for _ in range(4):
                f, df = mpmath.polyval(coeffs, x, derivative=True)
                x = x - f / df
        if work >= prec + 32:
            with mpmath.workprec(work):
                for _ in range(2):
                    f, df = mpmath.polyval(coeffs, x, derivative=True)
                    x = x - f / df
            return x


def _orbit_of_one(ctx_beta_mp, length: int, prec: int):
    """Greedy digits of 1 and the step at which the orbit reaches ``1/beta``.

    Returns ``(digits, hit, ambiguous)`` where ``hit`` is the 1-based digit
    index ``S`` with ``tau^(S-1)(1) ~ 1/beta`` (or ``None``).
    """
    digits = np.zeros(length, dtype=np.int8)
    with mpmath.workprec(prec):
        beta = +ctx_beta_mp
        inv = 1 / beta
        y = mpmath.mpf(1)
        err_unit = mpmath.ldexp(1, -prec + 8)
        for n in range(1, length + 1):
            if n > 1:
                dist = abs(y - inv)
                if dist < DRIFT_TOL:
                    ambiguous = dist > err_unit * beta ** n * 4
                    return digits[: n - 1], n, bool(ambiguous)
            y = y * beta
            if y >= 1:
                digits[n - 1] = 1
                y -= 1
    return digits, None, False


def make_context(spec, max_len: int = DEFAULT_DIGITS) -> BetaContext:
    """Resolve a beta description into a :class:`BetaContext`.

    The description is a value, a polynomial, a named family or explicit
    digits of 1.

    Parameters
    ----------
    spec : BetaSpec, float, str
        A :class:`BetaSpec`, a number, or a family tag such as ``"golden"``
        or ``"parry:2"``.
    max_len : int
        Number of digits of 1 produced when no period is found.
    """
    spec = _coerce_spec(spec)
    if max_len < 8:
        raise DomainError("max_len must be at least 8")

    poly = spec.poly or spec.family_polynomial()
    override = spec.digits if spec.digits is not None else spec.family_digits()

    if spec.value is not None:
        beta = float(spec.value)
    elif poly is not None:
        beta = _unique_root_in_unit_interval(poly)
    else:
        beta = _beta_from_digits(override)
        poly = _digits_polynomial(override) if override.is_periodic else None
        if poly is not None and len(poly) > 200:
            poly = None
    if not (1.0 < beta <= 2.0 + 1e-14):
        raise DomainError(f"beta={beta} is outside (1, 2]")
    beta = min(beta, 2.0)

    ctx = BetaContext(spec, beta, DigitSequence((), (1,)), False, 1.0,
                      polynomial=None if spec.value is not None else poly)
    if override is not None:
        one = override
        simple = override.is_periodic and override.period[-1] == 0 and beta != 2.0
        ambiguous = False
    elif beta == 2.0:
        one, simple, ambiguous = DigitSequence((), (1,)), False, False
    else:
        prec = int(max_len * math.log2(beta)) + _GUARD_BITS
        digits, hit, ambiguous = _orbit_of_one(ctx.beta_mp(prec), max_len, prec)
        if hit is not None:
            word = tuple(int(d) for d in digits) + (0,)
            one, simple = DigitSequence((), word), True
        else:
            simple = False
            found = detect_period(digits)
            if found is None:
                one = DigitSequence(tuple(int(d) for d in digits))
            else:
                p, ell = found
                one = DigitSequence(tuple(digits[:p]), tuple(digits[p:p + ell]))
        one = _reduce(one)

    ctx.one_digits = one
    ctx.is_simple = simple
    ctx.simplicity_ambiguous = ambiguous
    if one.is_periodic:
        ctx.digit_frequency_estimate = one.ones_per_period / len(one.period)
    else:
        ctx.digit_frequency_estimate = float(np.mean(one.prefix(one.available)))
    return ctx


def _reduce(seq: DigitSequence) -> DigitSequence:
    """Shortest (preperiod, period) description of an eventually periodic word."""
    if not seq.is_periodic:
        return seq
    k, p = len(seq.preperiod), len(seq.period)
    window = seq.prefix(2 * (k + p) + 2 * p)
    found = detect_period(window, max_pre=k, max_per=p)
    if found is None:
        return seq
    pre_len, ell = found
    return DigitSequence(tuple(window[:pre_len]), tuple(window[pre_len:pre_len + ell]))


def _coerce_spec(spec) -> BetaSpec:
    if isinstance(spec, BetaSpec):
        return spec
    if isinstance(spec, str):
        try:
            float(spec)
        except ValueError:
            return BetaSpec.from_tag(spec)
        return BetaSpec(value=spec)
    if isinstance(spec, DigitSequence):
        return BetaSpec(digits=spec)
    return BetaSpec(value=float(spec))


def quasi_greedy_of_one(spec, max_len: int = DEFAULT_DIGITS) -> DigitSequence:
    """Quasi-greedy digits of 1 for a beta description."""
    return make_context(spec, max_len).one_digits


# ---------------------------------------------------------------------------
# Digits of arbitrary points
# ---------------------------------------------------------------------------


@lru_cache(maxsize=65536)
def _orbit_digits(ctx: BetaContext, x: float, n: int):
    """Greedy digits of ``x`` plus the index where the orbit hits ``1/beta``.

    The second value is the 1-based position ``S`` of the digit that ends a
    finite expansion (orbit point within the drift tolerance of ``1/beta``);
    digits after it are zero. ``None`` when no hit occurred within ``n``.
    """
    digits = np.zeros(n, dtype=np.int8)
    if x == 0.0:
        return digits, None
    if ctx.is_dyadic:
        # binary64 doubling is exact
        y = float(x)
        for i in range(n):
            y *= 2.0
            if y >= 1.0:
                digits[i] = 1
                if y == 1.0:
                    return digits, i + 1
                y -= 1.0
        return digits, None
    prec = int(n * math.log2(ctx.beta)) + 96
    with mpmath.workprec(prec):
        beta = +ctx.beta_mp(prec)
        inv = 1 / beta
        y = mpmath.mpf(float(x))
        for i in range(n):
            if abs(y - inv) < DRIFT_TOL:
                digits[i] = 1
                return digits, i + 1
            y = y * beta
            if y >= 1:
                digits[i] = 1
                y -= 1
    return digits, None


def finite_expansion_length(ctx: BetaContext, x: float, n: int) -> int | None:
    """Length of the greedy expansion of ``x`` if it terminates within ``n`` digits.

    Returns the position of the last nonzero digit for points whose orbit
    reaches ``1/beta`` (and 0 for ``x = 0``), ``None`` otherwise.
    """
    x = _check_unit(x)
    if x == 0.0:
        return 0
    if x == 1.0 and ctx.is_dyadic:
        return None
    return _orbit_digits(ctx, x, int(n))[1]


def _check_unit(x) -> float:
    x = float(x)
    if not (0.0 <= x <= 1.0) or math.isnan(x):
        raise DomainError(f"x={x} is outside [0, 1]")
    return x


def greedy_digits(ctx: BetaContext, x: float, n: int) -> np.ndarray:
    """First ``n`` greedy digits of ``x`` in base ``beta``.

    Digits are capped at 1, so at ``beta = 2`` the point 1 expands as
    ``111...``. An orbit point within ``1e-11`` of ``1/beta`` is treated as
    equal to it: the expansion terminates there with digit 1.

    Parameters
    ----------
    ctx : BetaContext
    x : float in [0, 1]
    n : int

    Returns
    -------
    numpy.ndarray of int8
    """
    x = _check_unit(x)
    if n < 1:
        raise DomainError("n must be positive")
    if x == 1.0 and ctx.is_dyadic:
        return np.ones(n, dtype=np.int8)
    digits, _ = _orbit_digits(ctx, x, int(n))
    return digits.copy()


def quasi_greedy_digits(ctx: BetaContext, x: float, n: int) -> np.ndarray:
    """First ``n`` quasi-greedy digits of ``x`` in ``(0, 1]``.

    Identical to the greedy digits unless the orbit of ``x`` reaches
    ``1/beta`` at step ``S``; then digit ``S`` becomes 0 and the digits of 1
    follow.
    """
    x = float(x)
    if not (0.0 < x <= 1.0):
        raise DomainError(f"x={x} is outside (0, 1]")
    if x == 1.0:
        return ctx.one_digits.prefix(n)
    digits, hit = _orbit_digits(ctx, x, int(n))
    if hit is None:
        return digits.copy()
    out = digits.copy()
    out[hit - 1] = 0
    rest = n - hit
    if rest > 0:
        out[hit:] = ctx.one_digits.prefix(rest)
    return out


# ---------------------------------------------------------------------------
# Admissibility and the coding map
# ---------------------------------------------------------------------------


def _advance_state(q: np.ndarray, k: int, d: int, one: DigitSequence) -> int:
    """One step of the admissibility automaton; -1 on violation.

    The state is the length of the longest suffix equal to a prefix of the
    digits of 1. A digit below the matching digit of 1 resets the state to 0
    (every shorter tie breaks too), an equal digit extends the tie, a larger
    one is a violation.
    """
    target = q[k]
    if d < target:
        return 0
    if d > target:
        return -1
    k += 1
    if one.is_periodic and k >= len(one.preperiod) + len(one.period):
        k -= len(one.period)
    return k


def automaton_table(one: DigitSequence, max_state: int) -> np.ndarray:
    """Digits of 1 laid out so ``table[k]`` is the digit after a tie of length ``k``."""
    if one.is_periodic:
        size = len(one.preperiod) + len(one.period)
    else:
        size = max_state
    return one.prefix(max(size, 1))


def first_violation(ctx: BetaContext, word) -> int | None:
    """Start index of the first suffix that exceeds the digits of 1.

    Returns ``None`` for admissible words; otherwise the 0-based position
    where an offending suffix begins.
    """
    w = [int(d) for d in word]
    q = automaton_table(ctx.one_digits, len(w) + 1)
    k = 0
    for i, d in enumerate(w):
        nxt = _advance_state(q, k, d, ctx.one_digits)
        if nxt < 0:
            return i - k
        k = nxt
    return None


def is_admissible(ctx: BetaContext, word) -> bool:
    """Whether every suffix of ``word`` is at most the matching prefix of 1's digits."""
    if len(word) == 0:
        raise DomainError("word must be nonempty")
    return first_violation(ctx, word) is None


def pi_beta(ctx: BetaContext, seq) -> float:
    """Value ``sum a_n beta^-n`` of a digit sequence or finite word.

    Eventually periodic sequences are summed in closed form. For a truncated
    sequence of ``L`` digits the omitted tail is below ``beta^-L / (beta-1)``.
    """
    beta = ctx.beta
    if isinstance(seq, DigitSequence):
        pre = np.asarray(seq.preperiod, dtype=float)
        head = _horner(pre, beta)
        if not seq.is_periodic:
            return head
        per = np.asarray(seq.period, dtype=float)
        p = len(per)
        block = _horner(per, beta) / (1.0 - beta ** (-p))
        return head + block * beta ** (-len(pre))
    return _horner(np.asarray(word_to_array(seq), dtype=float), beta)


def _horner(digits: np.ndarray, beta: float) -> float:
    acc = 0.0
    for d in digits[::-1]:
        acc = (acc + d) / beta
    return acc


def word_to_array(word) -> np.ndarray:
    if isinstance(word, str):
        return np.frombuffer(word.encode(), dtype=np.uint8).astype(np.int8) - ord("0")
    return np.asarray(word, dtype=np.int8)
