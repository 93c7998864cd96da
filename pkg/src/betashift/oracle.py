"""Brute-force and identity-based checks independent of the series engine.

Admissible words are generated by the Parry automaton (the state is the
length of the longest suffix that agrees with a prefix of the digits of 1),
pressures come from cylinder sums over those words, and the eigenfunctional
and eigenfunction are evaluated from their own digit series so that the
recursions they satisfy can be checked on random inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .eigen import leading_lambda
from .errors import DivergenceError, DomainError, SizeError
from .kernel import BetaContext, DigitSequence, compare, first_violation

#: Largest word length for explicit enumeration.
ENUMERATION_GUARD = 26

#: Largest word length for the cylinder-sum recursion.
PRESSURE_GUARD = 100_000


# ---------------------------------------------------------------------------
# The admissibility automaton
# ---------------------------------------------------------------------------


class _Automaton:
    """Transition table of the admissibility automaton for words up to length ``n``."""

    def __init__(self, one: DigitSequence, n: int):
        if one.is_periodic:
            size = len(one.preperiod) + len(one.period)
            wrap = len(one.period)
        else:
            size = n + 1
            wrap = 0
            if one.available < size:
                raise DomainError(f"digits of 1 are known to {one.available} places only")
        self.size = size
        self.q = one.prefix(size)
        nxt = np.arange(1, size + 1)
        if wrap:
            nxt[nxt >= size] -= wrap
        else:
            # state n is only reached by the last digit of an n-word
            nxt[-1] = size - 1
        # digit 0: tie continues if q_k = 0, otherwise restart at 0
        self.on0 = np.where(self.q == 0, nxt, 0)
        # digit 1: allowed only where q_k = 1
        self.on1 = np.where(self.q == 1, nxt, -1)


def _walk(ctx: BetaContext, word) -> int:
    aut = _Automaton(ctx.one_digits, len(word))
    k = 0
    for d in word:
        k = aut.on1[k] if d else aut.on0[k]
        if k < 0:
            return -1
    return int(k)


@dataclass(frozen=True)
class AdmissibleWordSet:
    """All admissible words of one length.

    ``words`` packs each word into an integer, first digit most significant.
    """

    n: int
    words: np.ndarray
    digit_sums: np.ndarray

    def __len__(self) -> int:
        return int(self.words.size)

    def as_strings(self) -> list[str]:
        return [format(int(w), f"0{self.n}b") for w in self.words]


def enumerate_admissible(ctx: BetaContext, n: int) -> AdmissibleWordSet:
    """Breadth-first generation of every admissible word of length ``n``.

    Raises
    ------
    SizeError
        If ``n`` exceeds the enumeration guard of 26.
    """
    n = int(n)
    if n < 1:
        raise DomainError("n must be positive")
    if n > ENUMERATION_GUARD:
        raise SizeError(f"n={n} exceeds the enumeration guard {ENUMERATION_GUARD}")
    aut = _Automaton(ctx.one_digits, n)
    words = np.zeros(1, dtype=np.int64)
    states = np.zeros(1, dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        s0 = aut.on0[states]
        s1 = aut.on1[states]
        ok = s1 >= 0
        words = np.concatenate([words << 1, (words[ok] << 1) | 1])
        sums = np.concatenate([sums, sums[ok] + 1])
        states = np.concatenate([s0, s1[ok]])
    order = np.argsort(words)
    return AdmissibleWordSet(n, words[order], sums[order])


def count_by_digit_sum(ctx: BetaContext, n: int) -> np.ndarray:
    """Number of admissible ``n``-words with each digit sum ``0..n``.

    Dynamic programming over automaton states; exact integer arithmetic.
    """
    n = int(n)
    aut = _Automaton(ctx.one_digits, n)
    counts = np.zeros((aut.size, n + 1), dtype=object)
    counts[0, 0] = 1
    for _ in range(n):
        new = np.zeros_like(counts)
        for k in range(aut.size):
            row = counts[k]
            if not any(row):
                continue
            new[aut.on0[k]] += row
            if aut.on1[k] >= 0:
                new[aut.on1[k], 1:] += row[:-1]
        counts = new
    return counts.sum(axis=0).astype(object)


def brute_pressure(ctx: BetaContext, t: float, n: int) -> float:
    """Cylinder-sum pressure ``(1/n) log sum_w exp(t * digitsum(w))``.

    The sum runs over admissible words of length ``n``; the potential is
    constant on each cylinder, so no supremum is needed. The weighted count
    is propagated through the automaton with per-step rescaling.
    """
    n = int(n)
    if n < 1:
        raise DomainError("n must be positive")
    if n > PRESSURE_GUARD:
        raise SizeError(f"n={n} exceeds the guard {PRESSURE_GUARD}")
    aut = _Automaton(ctx.one_digits, n)
    w1 = math.exp(t)
    mass = np.zeros(aut.size)
    mass[0] = 1.0
    log_scale = 0.0
    allowed = aut.on1 >= 0
    for _ in range(n):
        new = np.zeros_like(mass)
        np.add.at(new, aut.on0, mass)
        np.add.at(new, aut.on1[allowed], w1 * mass[allowed])
        total = new.sum()
        log_scale += math.log(total)
        mass = new / total
    return log_scale / n


def random_admissible(ctx: BetaContext, n: int, rng: np.random.Generator) -> DigitSequence:
    """Uniform choice among allowed digits at each step, then zeros forever."""
    aut = _Automaton(ctx.one_digits, n)
    k, word = 0, []
    for _ in range(n):
        if aut.on1[k] >= 0 and rng.random() < 0.5:
            word.append(1)
            k = aut.on1[k]
        else:
            word.append(0)
            k = aut.on0[k]
    return DigitSequence.finite(word)


# ---------------------------------------------------------------------------
# Eigenfunctional and eigenfunction
# ---------------------------------------------------------------------------


def _sequence_sum(seq: DigitSequence, t: float, u: float, depth: int):
    """``sum_n a_n exp(t*(a_1+...+a_{n-1}) - n*u)`` and a tail bound.

    Closed form over the period when there is one; otherwise a partial sum
    over ``depth`` digits with tail at most ``exp(t*S_N - N*u)`` (valid at
    the leading eigenvalue, where the functional is at most 1).
    """
    if seq.is_periodic:
        pre = np.asarray(seq.preperiod, dtype=np.int8)
        per = np.asarray(seq.period, dtype=np.int8)
        head = np.flatnonzero(pre) + 1.0
        block = np.flatnonzero(per) + 1.0 + pre.size
        kh = np.arange(head.size, dtype=float)
        kb = np.arange(head.size, head.size + block.size, dtype=float)
        value = float(np.exp(t * kh - head * u).sum())
        if block.size:
            log_rho = t * block.size - per.size * u
            if log_rho >= 0:
                raise DivergenceError("sequence sum diverges")
            value += float(np.exp(t * kb - block * u).sum()) / -math.expm1(log_rho)
        return value, 0.0
    n = min(int(depth), int(seq.available))
    digits = seq.prefix(n)
    pos = np.flatnonzero(digits) + 1.0
    k = np.arange(pos.size, dtype=float)
    value = float(np.exp(t * k - pos * u).sum())
    return value, math.exp(t * pos.size - n * u)


def nu_value(ctx: BetaContext, t: float, seq, depth: int = 4096) -> float:
    """Eigenmeasure of the cylinder interval ``[0, a]``.

    ``sum_n a_n H_{n-1}(t, a) / lambda_t^n`` for an admissible sequence
    ``a`` (a finite word is extended by zeros).
    """
    seq = _as_sequence(seq)
    eig = leading_lambda(ctx, float(t))
    return _sequence_sum(seq, eig.t, eig.log_lam, depth)[0]


def nu_tail(ctx: BetaContext, t: float, seq, depth: int = 4096) -> float:
    """Truncation bound that accompanies :func:`nu_value`."""
    seq = _as_sequence(seq)
    eig = leading_lambda(ctx, float(t))
    return _sequence_sum(seq, eig.t, eig.log_lam, depth)[1]


def nu_recursion_check(ctx: BetaContext, t: float, seq, depth: int = 4096) -> float:
    """Residual of the transfer-operator recursion for the eigenfunctional.

    ``|nu(a) - (a_1 nu(one) + l(a_1) nu(shift a)) / lambda|`` with
    ``l(0) = 1`` and ``l(1) = e^t``.
    """
    seq = _as_sequence(seq)
    eig = leading_lambda(ctx, float(t))
    a1 = seq.digit(1)
    lhs = nu_value(ctx, t, seq, depth)
    one = nu_value(ctx, t, ctx.one_digits, depth)
    rest = nu_value(ctx, t, seq.shift(1), depth)
    weight = math.exp(eig.t) if a1 else 1.0
    return abs(lhs - (a1 * one + weight * rest) / eig.lam)


def _indicators(ctx: BetaContext, y: DigitSequence, count: int) -> np.ndarray:
    """``[y <= shift^n(one)]`` for ``n = 0 .. count-1``."""
    one = ctx.one_digits
    return np.array([compare(y, one.shift(n)) <= 0 for n in range(count)], dtype=float)


def h_value(ctx: BetaContext, t: float, y, depth: int = 4096) -> float:
    """Leading eigenfunction, unnormalized, at an admissible sequence ``y``.

    ``sum_{n>=0} H_n(t, one) / lambda^n [y <= shift^n(one)]``; summed in
    closed form when the digits of 1 are periodic (the indicator is then
    periodic in ``n`` past the preperiod).
    """
    y = _as_sequence(y)
    eig = leading_lambda(ctx, float(t))
    tt, u = eig.t, eig.log_lam
    one = ctx.one_digits
    if one.is_periodic:
        pre, p = len(one.preperiod), len(one.period)
        count = pre + p
        digits = one.prefix(count)
        s_n = np.concatenate([[0.0], np.cumsum(digits, dtype=float)])[:count]
        ind = _indicators(ctx, y, count)
        terms = ind * np.exp(tt * s_n - np.arange(count) * u)
        log_rho = tt * sum(one.period) - p * u
        return float(terms[:pre].sum() + terms[pre:].sum() / -math.expm1(log_rho))
    width = _comparison_width(y)
    count = min(int(depth), int(one.available) - width)
    digits = one.prefix(count + width)
    s_n = np.concatenate([[0.0], np.cumsum(digits[:count], dtype=float)])[:count]
    ind = _window_indicators(digits, y.prefix(width), count)
    return float((ind * np.exp(tt * s_n - np.arange(count) * u)).sum())


def _comparison_width(y: DigitSequence) -> int:
    # a word followed by zeros is decided by the word alone
    if y.is_periodic and set(y.period) == {0}:
        return max(len(y.preperiod), 1)
    return len(y.preperiod) + 64 * len(y.period)


def _window_indicators(digits: np.ndarray, yv: np.ndarray, count: int) -> np.ndarray:
    """``[y <= shift^n(digits)]`` from the first ``len(yv)`` places, ties counted as ``<=``."""
    windows = np.lib.stride_tricks.sliding_window_view(digits, yv.size)[:count]
    diff = windows != yv
    first = diff.argmax(axis=1)
    rows = np.arange(count)
    below = yv[first] < windows[rows, first]
    return np.where(diff.any(axis=1), below, True).astype(float)


def eigen_equation_check(ctx: BetaContext, t: float, y, depth: int = 4096) -> float:
    """Residual ``|h(0y) + [y <= shift(one)] e^t h(1y) - lambda h(y)|``."""
    y = _as_sequence(y)
    eig = leading_lambda(ctx, float(t))
    zero_y = DigitSequence((0,) + y.preperiod, y.period)
    one_y = DigitSequence((1,) + y.preperiod, y.period)
    lhs = h_value(ctx, t, zero_y, depth)
    if compare(y, ctx.one_digits.shift(1)) <= 0:
        lhs += math.exp(eig.t) * h_value(ctx, t, one_y, depth)
    return abs(lhs - eig.lam * h_value(ctx, t, y, depth))


def _as_sequence(seq) -> DigitSequence:
    if isinstance(seq, DigitSequence):
        return seq
    if isinstance(seq, str):
        return DigitSequence.finite([int(c) for c in seq])
    return DigitSequence.finite(seq)


# ---------------------------------------------------------------------------
# Suite
# ---------------------------------------------------------------------------


@dataclass
class OracleResult:
    name: str
    passed: bool
    detail: str


@dataclass
class OracleReport:
    label: str
    results: list[OracleResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, name: str, passed: bool, detail: str) -> None:
        self.results.append(OracleResult(name, bool(passed), detail))

    def lines(self) -> list[str]:
        out = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in self.results]
        out.append(f"{'PASS' if self.passed else 'FAIL'}  overall ({self.label})")
        return out


def self_admissibility(ctx: BetaContext, length: int = 512) -> int | None:
    """First shift ``n`` with ``shift^n(one) > one``, or ``None`` if there is none.

    Exact for eventually periodic digits; checks ``length`` digits otherwise.
    """
    one = ctx.one_digits
    if one.is_periodic:
        for n in range(1, len(one.preperiod) + len(one.period)):
            if compare(one.shift(n), one) > 0:
                return n
        return None
    return first_violation(ctx, one.prefix(min(length, int(one.available))))


def run_oracle_suite(ctx: BetaContext, temperatures=(-2.0, 0.0, 2.0), samples: int = 100,
                     seed: int = 0) -> OracleReport:
    """Run every brute-force and identity check and collect pass/fail lines."""
    report = OracleReport(ctx.spec.label())
    bad = self_admissibility(ctx)
    if bad is not None:
        word = "".join(map(str, ctx.one_digits.prefix(bad + 16)))
        report.add("digits of 1 admissible", False,
                   f"suffix starting at position {bad + 1} exceeds the sequence: "
                   f"{word[bad:]}... > {word[:16]}...")
        return report
    report.add("digits of 1 admissible", True, "every shift is at most the sequence")

    n = 12
    listed = enumerate_admissible(ctx, n)
    brute = sum(1 for w in range(2**n) if first_violation(ctx, _bits(w, n)) is None)
    counted = int(sum(count_by_digit_sum(ctx, n)))
    report.add("word counts", len(listed) == brute == counted,
               f"n={n}: enumeration {len(listed)}, filtering {brute}, recursion {counted}")

    for t in temperatures:
        exact = leading_lambda(ctx, t).log_lam
        gaps = [abs(brute_pressure(ctx, t, m) - exact) for m in (12, 18, 24)]
        if ctx.is_dyadic:
            ok = max(gaps) <= 1e-12
        else:
            ok = gaps[0] > gaps[1] > gaps[2] and all(g <= 3 / m for g, m in zip(gaps, (12, 18, 24)))
        report.add(f"cylinder pressure t={t:g}", ok,
                   "gaps " + ", ".join(f"{g:.3e}" for g in gaps))

    rng = np.random.default_rng(seed)
    for t in temperatures:
        unit = nu_value(ctx, t, ctx.one_digits)
        report.add(f"functional at one t={t:g}", abs(unit - 1) <= 1e-10, f"{unit!r}")
        seqs = [random_admissible(ctx, int(rng.integers(1, 40)), rng) for _ in range(samples)]
        worst_nu = max(nu_recursion_check(ctx, t, s) for s in seqs)
        worst_h = max(eigen_equation_check(ctx, t, s) for s in seqs)
        report.add(f"functional recursion t={t:g}", worst_nu <= 1e-8, f"max residual {worst_nu:.3e}")
        report.add(f"eigen-equation t={t:g}", worst_h <= 1e-8, f"max residual {worst_h:.3e}")
    return report


def _bits(w: int, n: int) -> list[int]:
    return [(w >> (n - 1 - i)) & 1 for i in range(n)]
