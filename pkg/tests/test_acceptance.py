"""The fifteen acceptance criteria, each at its stated tolerance and runtime.

Every criterion builds fresh contexts so cached work from other tests does
not flatter the timings. Run under pytest (a summary line per criterion is
printed at the end of the session) or directly with ``python``.
"""

import math
import sys
import time

import numpy as np
import pytest

from betashift import (D_t, F_p, G_beta, alpha_fd, alpha_of_t, besicovitch, brute_pressure,
                       c_beta_report, dim_of_alpha, eigen_equation_check, fan_zhu,
                       fd_hata_yamaguchi, lebesgue_singular, leading_lambda, make_context,
                       nu_recursion_check, nu_value, parry_closed_form, random_admissible,
                       rationalize_phi, subleading_zeros, takagi_grid, takagi_oracle)

FIVE_BETAS = ("dyadic", "golden", "tribonacci", "parry:2", 1.8)
RESULTS: dict[int, tuple[bool, str]] = {}


class Check:
    """Collects the worst deviation and the failure reasons of one criterion."""

    def __init__(self):
        self.worst = 0.0
        self.problems: list[str] = []

    def within(self, value: float, tol: float, what: str) -> None:
        if not math.isfinite(value):
            self.problems.append(f"{what}: non-finite")
            return
        self.worst = max(self.worst, value)
        if value > tol:
            self.problems.append(f"{what}: {value:.3e} > {tol:g}")

    def require(self, ok: bool, what: str) -> None:
        if not ok:
            self.problems.append(what)


def timed(limit: float):
    def wrap(func):
        def run():
            start = time.perf_counter()
            check = Check()
            func(check)
            elapsed = time.perf_counter() - start
            check.require(elapsed < limit, f"runtime {elapsed:.2f} s >= {limit:g} s")
            detail = f"worst {check.worst:.2e}, {elapsed:.2f} s (limit {limit:g} s)"
            if check.problems:
                detail += "; " + "; ".join(check.problems[:3])
            return not check.problems, detail
        run.__name__ = func.__name__
        run.__doc__ = func.__doc__
        return run
    return wrap


@timed(1.0)
def lambda_full_shift(c):
    """eigenvalue equals 1 + e^t for beta = 2"""
    ctx = make_context("dyadic")
    for t in np.arange(-10, 11, dtype=float):
        c.within(abs(leading_lambda(ctx, t).lam - (1 + math.exp(t))), 1e-10, f"t={t:g}")


@timed(1.0)
def lambda_at_zero(c):
    """eigenvalue at t = 0 equals beta"""
    for tag in FIVE_BETAS:
        ctx = make_context(tag)
        c.within(abs(leading_lambda(ctx, 0.0).lam - ctx.beta), 1e-9, str(tag))


@timed(1.0)
def parry_eigen_polynomial(c):
    """lambda^(N+1) - lambda^N = e^t for the parry family"""
    for n in (1, 2, 3):
        ctx = make_context(f"parry:{n}")
        for t in (-3.0, 0.0, 3.0):
            lam = leading_lambda(ctx, t).lam
            c.within(abs(lam ** (n + 1) - lam ** n - math.exp(t)), 1e-9, f"N={n} t={t:g}")


@timed(10.0)
def besicovitch_spectrum(c):
    """spectrum of the full shift is the binary entropy"""
    ctx = make_context("dyadic")
    for a in np.linspace(0.01, 0.99, 101):
        c.within(abs(dim_of_alpha(ctx, a) - besicovitch(a)), 1e-8, f"alpha={a:.3f}")


@timed(10.0)
def golden_spectrum(c):
    """golden-ratio spectrum and its vanishing beyond 1/2"""
    ctx = make_context("golden")
    for a in np.linspace(0.01, 0.49, 101):
        c.within(abs(dim_of_alpha(ctx, a) - fan_zhu(a)), 1e-8, f"alpha={a:.3f}")
    for a in (0.5, 0.6, 0.9):
        c.within(abs(dim_of_alpha(ctx, a)), 1e-8, f"alpha={a} outside the support")


@timed(30.0)
def parry_spectrum(c):
    """parry-family spectrum closed form"""
    for n in (1, 2, 3):
        ctx = make_context(f"parry:{n}")
        for a in np.linspace(0.01, 1 / (n + 1) - 0.01, 51):
            c.within(abs(dim_of_alpha(ctx, a) - parry_closed_form(n, a)), 1e-8, f"N={n} alpha={a:.3f}")


@timed(30.0)
def pressure_derivative(c):
    """frequency series equals the derivative of the pressure"""
    for tag in FIVE_BETAS:
        ctx = make_context(tag)
        for t in np.linspace(-5, 5, 41):
            c.within(abs(alpha_of_t(ctx, t) - alpha_fd(ctx, t, 1e-4)), 1e-6, f"{tag} t={t:g}")


@timed(120.0)
def cylinder_pressure(c):
    """cylinder sums converge to the pressure"""
    ns = (12, 18, 24)
    for tag in ("golden", "tribonacci"):
        ctx = make_context(tag)
        for t in (-2.0, 0.0, 2.0):
            exact = leading_lambda(ctx, t).log_lam
            gaps = [abs(brute_pressure(ctx, t, n) - exact) for n in ns]
            c.require(gaps[0] > gaps[1] > gaps[2], f"{tag} t={t:g}: gaps not decreasing {gaps}")
            for g, n in zip(gaps, ns):
                c.require(g <= 3 / n, f"{tag} t={t:g} n={n}: gap {g:.3e} > 3/n")
    ctx = make_context("dyadic")
    for t in (-2.0, 0.0, 2.0):
        exact = leading_lambda(ctx, t).log_lam
        for n in ns:
            c.within(abs(brute_pressure(ctx, t, n) - exact), 1e-12, f"dyadic t={t:g} n={n}")


@timed(10.0)
def supremum_frequency(c):
    """exact supremum frequencies and the run-length bounds"""
    for tag, exact in (("tribonacci", 2 / 3), ("parry:2", 1 / 3)):
        ctx = make_context(tag)
        r = c_beta_report(ctx)
        c.require(r.exact is not None and abs(r.exact - exact) <= 1e-15, f"{tag}: exact {r.exact}")
        c.within(abs(alpha_of_t(ctx, 30.0) - exact), 1e-4, f"{tag}: alpha(30)")
        c.require(r.lower <= exact <= r.upper, f"{tag}: exact outside bounds")
    for beta in (1.7, 1.8, 1.9):
        r = c_beta_report(make_context(beta))
        c.require(r.lower <= r.numeric_estimate + 1e-6 and r.numeric_estimate <= r.upper + 1e-6,
                  f"beta={beta}: estimate {r.numeric_estimate} outside [{r.lower}, {r.upper}]")


@timed(30.0)
def eigen_identities(c):
    """eigenfunctional normalization, its recursion and the eigen-equation"""
    rng = np.random.default_rng(20240601)
    for tag in FIVE_BETAS:
        ctx = make_context(tag)
        for t in (-2.0, 0.0, 2.0):
            c.within(abs(nu_value(ctx, t, ctx.one_digits) - 1), 1e-10, f"{tag} t={t:g} nu(1)")
            for _ in range(100):
                y = random_admissible(ctx, int(rng.integers(1, 48)), rng)
                c.within(nu_recursion_check(ctx, t, y), 1e-8, f"{tag} t={t:g} recursion {y}")
                c.within(eigen_equation_check(ctx, t, y), 1e-8, f"{tag} t={t:g} eigen-equation {y}")


@timed(5.0)
def takagi_identity(c):
    """generalized Takagi function is the classical one for beta = 2"""
    ctx = make_context("dyadic")
    xs = np.linspace(0, 1, 1024)
    grid = takagi_grid(ctx, xs, depth=64)
    oracle = np.array([takagi_oracle(x, 64) for x in xs])
    c.within(float(np.max(np.abs(grid.ys - oracle))), 1e-9, "1024-point grid")


@timed(60.0)
def takagi_derivative(c):
    """Takagi function as the parameter derivative of the distribution function"""
    rng = np.random.default_rng(64)
    for tag in ("golden", "tribonacci", "parry:2"):
        ctx = make_context(tag)
        for x in rng.uniform(0, 1, 64):
            c.within(abs(fd_hata_yamaguchi(ctx, x, 1e-4) - G_beta(ctx, x)), 5e-4, f"{tag} x={x:.4f}")


@timed(5.0)
def lebesgue_identity(c):
    """distribution function is the Lebesgue singular function for beta = 2"""
    ctx = make_context("dyadic")
    for p in np.linspace(0.05, 0.95, 21):
        for x in np.linspace(0, 1, 21):
            c.within(abs(F_p(ctx, p, x) - lebesgue_singular(p, x)), 1e-10, f"p={p:.2f} x={x:.2f}")


@timed(1.0)
def takagi_lattice(c):
    """Takagi values at negative powers of beta"""
    for tag in FIVE_BETAS:
        ctx = make_context(tag)
        for m in range(1, 11):
            x = ctx.beta ** -m
            c.within(abs(G_beta(ctx, x) - m * x), 1e-9, f"{tag} M={m}")


@timed(1.0)
def subleading_zero_sanity(c):
    """determinant zeros beyond the leading one"""
    ctx = make_context("dyadic")
    c.require(len(subleading_zeros(ctx, 0.0)) == 0, "beta = 2 returned zeros")
    ctx = make_context("parry:1")
    zs = subleading_zeros(ctx, 0.0)
    expected = -(1 + math.sqrt(5)) / 2
    c.require(len(zs) == 1, f"parry:1 returned {len(zs)} zeros")
    if len(zs):
        z = zs[0]
        c.within(abs(z - expected), 1e-10, "root of z^2 + z - 1")
        c.require(abs(z) > zs.eta, "zero inside the leading radius")
        c.within(abs(1 - rationalize_phi(ctx).evaluate(0.0, z)), 1e-8, "residual")


CRITERIA = [lambda_full_shift, lambda_at_zero, parry_eigen_polynomial, besicovitch_spectrum,
            golden_spectrum, parry_spectrum, pressure_derivative, cylinder_pressure,
            supremum_frequency, eigen_identities, takagi_identity, takagi_derivative,
            lebesgue_identity, takagi_lattice, subleading_zero_sanity]


def summary_lines() -> list[str]:
    lines = []
    for i, crit in enumerate(CRITERIA, start=1):
        if i in RESULTS:
            ok, detail = RESULTS[i]
            lines.append(f"{'PASS' if ok else 'FAIL'}  {i:2d}. {crit.__doc__}: {detail}")
    return lines


@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1),
                         ids=[c.__name__ for c in CRITERIA])
def test_criterion(index):
    ok, detail = CRITERIA[index - 1]()
    RESULTS[index] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  {index:2d}. {CRITERIA[index - 1].__doc__}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    for i, crit in enumerate(CRITERIA, start=1):
        RESULTS[i] = crit()
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
