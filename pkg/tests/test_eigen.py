import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betashift import (DivergenceError, UnsupportedError, leading_lambda, mixing_rate_bound,
                       normalizer_F, phi_eval, pressure, rationalize_phi, subleading_zeros)
from conftest import GOLDEN, TEST_BETAS


def golden_lambda(t):
    # largest root of l^2 - l - e^t
    return (1 + math.sqrt(1 + 4 * math.exp(t))) / 2


def poly_root(coeffs):
    roots = np.roots(coeffs)
    real = roots[np.abs(roots.imag) < 1e-9].real
    return float(real.max())


def tribonacci_lambda(t):
    # (z + w z^2) / (1 - w^2 z^3) = 1 at z = 1/l, w = e^t
    w = math.exp(t)
    return poly_root([1, -1, -w, -w * w])


def parry_lambda(m, t):
    c = np.zeros(m + 2)
    c[0], c[1], c[-1] = 1.0, -1.0, -math.exp(t)
    return poly_root(c)


# --- phi evaluation --------------------------------------------------------


def test_phi_dyadic_geometric(dyadic):
    value, err = phi_eval(dyadic, 0.0, 0.5)
    assert value == pytest.approx(1.0, abs=1e-15)
    for t, z in [(1.0, 0.2), (-2.0, 0.7), (0.5, 0.5)]:
        value, err = phi_eval(dyadic, t, z)
        assert value == pytest.approx(z / (1 - math.exp(t) * z), rel=1e-14)
        assert err <= 1e-13


def test_phi_golden_at_inverse_beta(golden):
    value, _ = phi_eval(golden, 0.0, 1 / GOLDEN)
    assert value == pytest.approx(1.0, abs=1e-12)


def test_phi_matches_high_precision_sum_for_numeric_beta(contexts):
    ctx = contexts[1.8]
    q = ctx.one_digits.prefix(600)
    for t, z in [(0.0, 0.5), (1.0, 0.3), (-1.0, 0.6)]:
        mpmath.mp.dps = 40
        total, ones = mpmath.mpf(0), 0
        for n, d in enumerate(q, start=1):
            if d:
                total += mpmath.e ** (t * ones) * mpmath.mpf(z) ** n
                ones += 1
        value, err = phi_eval(ctx, t, z)
        assert abs(value - float(total)) <= max(err, 1e-14)


def test_phi_divergence_is_reported(golden):
    with pytest.raises(DivergenceError):
        phi_eval(golden, 2.0, 0.9)


# --- leading eigenvalue ----------------------------------------------------


@pytest.mark.parametrize("t", [-10.0, -3.0, -1.0, 0.0, 0.5, 1.0, 3.0, 10.0])
def test_lambda_dyadic_closed_form(dyadic, t):
    assert leading_lambda(dyadic, t).lam == pytest.approx(1 + math.exp(t), rel=1e-14)


@pytest.mark.parametrize("t", [-5.0, -1.0, 0.0, 1.0, 5.0, 15.0])
def test_lambda_family_polynomials(golden, tribonacci, parry2, contexts, t):
    assert leading_lambda(golden, t).lam == pytest.approx(golden_lambda(t), rel=1e-13)
    assert leading_lambda(tribonacci, t).lam == pytest.approx(tribonacci_lambda(t), rel=1e-12)
    assert leading_lambda(parry2, t).lam == pytest.approx(parry_lambda(2, t), rel=1e-12)
    assert leading_lambda(contexts["parry:3"], t).lam == pytest.approx(parry_lambda(3, t), rel=1e-12)


@pytest.mark.parametrize("tag", TEST_BETAS)
def test_lambda_at_zero_is_beta(contexts, tag):
    ctx = contexts[tag]
    assert leading_lambda(ctx, 0.0).lam == pytest.approx(ctx.beta, abs=1e-13)
    assert pressure(ctx, 0.0) == pytest.approx(math.log(ctx.beta), abs=1e-13)


def test_pressure_examples(dyadic):
    assert pressure(dyadic, 0.0) == pytest.approx(math.log(2), abs=1e-15)
    assert pressure(dyadic, 1.0) == pytest.approx(math.log1p(math.e), abs=1e-15)


def test_lambda_numeric_beta_solves_series(contexts):
    ctx = contexts[1.8]
    for t in (-2.0, 0.7, 3.0):
        eig = leading_lambda(ctx, t)
        mpmath.mp.dps = 40
        q = ctx.one_digits.prefix(3000)
        z = mpmath.mpf(eig.eta)
        total, ones = mpmath.mpf(0), 0
        for n, d in enumerate(q, start=1):
            if d:
                total += mpmath.e ** (t * ones) * z ** n
                ones += 1
        assert abs(float(total) - 1) <= 1e-12


def test_lambda_tends_to_one(contexts):
    for tag in TEST_BETAS:
        lam = leading_lambda(contexts[tag], -30.0).lam
        assert 1.0 <= lam <= 1 + math.exp(-30) + 1e-10


@given(t=st.floats(-20, 20), tag=st.sampled_from(TEST_BETAS))
def test_lambda_bounds_and_residual(contexts, t, tag):
    ctx = contexts[tag]
    eig = leading_lambda(ctx, t)
    assert 1.0 < eig.lam <= (1 + math.exp(t)) * (1 + 1e-14)
    assert eig.F_t > 0
    assert eig.eta == pytest.approx(1 / eig.lam, rel=1e-15)
    value, err = phi_eval(ctx, t, eig.eta, tol=1e-12)
    assert abs(value - 1) <= eig.err_bound + err + 1e-13


@given(a=st.floats(-15, 15), b=st.floats(-15, 15), tag=st.sampled_from(TEST_BETAS))
def test_lambda_increasing(contexts, a, b, tag):
    if abs(a - b) < 1e-6:
        return
    lo, hi = sorted((a, b))
    assert leading_lambda(contexts[tag], lo).lam < leading_lambda(contexts[tag], hi).lam


# --- normalizer ------------------------------------------------------------


@pytest.mark.parametrize("t", [-2.0, 0.0, 1.5])
def test_normalizer_dyadic(dyadic, t):
    assert normalizer_F(dyadic, leading_lambda(dyadic, t)) == pytest.approx(1 + math.exp(t), rel=1e-13)


def test_normalizer_golden_two_ways(golden):
    for t in (0.0, 1.0, -2.0):
        eig = leading_lambda(golden, t)
        z, w = eig.eta, math.exp(t)
        # z phi'(z) for phi = z / (1 - w z^2)
        closed = z * (1 + w * z * z) / (1 - w * z * z) ** 2
        assert normalizer_F(golden, eig) == pytest.approx(closed, abs=1e-10)


# --- rational form ---------------------------------------------------------


def test_rational_examples(dyadic, parry2):
    r = rationalize_phi(dyadic)
    assert r.evaluate(0.3, 0.4) == pytest.approx(0.4 / (1 - math.exp(0.3) * 0.4), rel=1e-15)
    r = rationalize_phi(parry2)
    assert r.evaluate(0.3, 0.4) == pytest.approx(0.4 / (1 - math.exp(0.3) * 0.4 ** 3), rel=1e-15)


@pytest.mark.parametrize("tag", ["golden", "tribonacci", "parry:2", "parry:3"])
def test_rational_agrees_with_series(contexts, tag):
    ctx = contexts[tag]
    rational = rationalize_phi(ctx)
    rng = np.random.default_rng(7)
    for _ in range(50):
        t = rng.uniform(-3, 3)
        z = rng.uniform(0, 0.95) / leading_lambda(ctx, t).lam * 1.0
        value, err = phi_eval(ctx, t, z)
        assert abs(rational.evaluate(t, z) - value) <= 1e-12 + err


def test_rational_unsupported_without_period(contexts):
    with pytest.raises(UnsupportedError):
        rationalize_phi(contexts[1.8])


# --- subleading zeros ------------------------------------------------------


@pytest.mark.parametrize("t", [-1.0, 0.0, 2.0])
def test_dyadic_has_no_subleading_zeros(dyadic, t):
    assert len(subleading_zeros(dyadic, t)) == 0


def test_golden_second_zero(golden):
    zs = subleading_zeros(golden, 0.0)
    assert len(zs) == 1
    assert zs[0] == pytest.approx(-GOLDEN, abs=1e-12)
    assert abs(zs[0]) > zs.eta


def test_tribonacci_zeros_match_polynomial(tribonacci):
    zs = subleading_zeros(tribonacci, 0.0)
    roots = np.roots([-1, -1, -1, 1])  # 1 - z - z^2 - z^3
    others = sorted((r for r in roots if abs(r - 1 / tribonacci.beta) > 1e-9), key=lambda z: z.imag)
    got = sorted(zs, key=lambda z: z.imag)
    assert len(got) == 2
    for a, b in zip(got, others):
        assert abs(a - b) <= 1e-12


@given(t=st.floats(-4, 4), tag=st.sampled_from(["golden", "tribonacci", "parry:2", "parry:3"]))
def test_zeros_outside_leading_and_solve(contexts, t, tag):
    ctx = contexts[tag]
    zs = subleading_zeros(ctx, t)
    rational = rationalize_phi(ctx)
    for z in zs:
        assert abs(z) > zs.eta
        assert abs(1 - rational.evaluate(t, z)) <= 1e-8


def test_zeros_general_case_flagged_approximate(contexts):
    zs = subleading_zeros(contexts[1.8], 0.0)
    assert zs.approximate
    assert all(abs(z) > zs.eta for z in zs)


def test_modulus_cap(tribonacci):
    assert len(subleading_zeros(tribonacci, 0.0, modulus_cap=0.5)) == 0


def test_mixing_rate_examples(dyadic, golden):
    assert mixing_rate_bound(dyadic, 0.0) == pytest.approx(0.5, abs=1e-15)
    assert mixing_rate_bound(golden, 0.0) == pytest.approx(max(1.0, 2 / (1 + math.sqrt(5))) / GOLDEN,
                                                           abs=1e-14)


@settings(max_examples=15)
@given(t=st.floats(-5, 5), tag=st.sampled_from(TEST_BETAS))
def test_mixing_rate_in_unit_interval(contexts, t, tag):
    assert 0.0 <= mixing_rate_bound(contexts[tag], t) < 1.0
