import itertools
import math
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from betashift import (BetaSpec, DigitSequence, SizeError, alpha_of_t, brute_pressure,
                       count_by_digit_sum, eigen_equation_check, enumerate_admissible, h_value,
                       is_admissible, leading_lambda, make_context, nu_recursion_check, nu_value,
                       random_admissible, run_oracle_suite)
from betashift.oracle import self_admissibility
from conftest import TEST_BETAS


def avoiding_run_count(n, run):
    """Binary words of length n with no run of `run` consecutive ones."""
    # f(n) = f(n-1) + ... + f(n-run), f(0..run-1) = 2^n
    f = [2 ** i for i in range(run)]
    for i in range(run, n + 1):
        f.append(sum(f[i - run:i]))
    return f[n]


# --- enumeration -----------------------------------------------------------


def test_enumeration_examples(dyadic, golden, tribonacci):
    assert len(enumerate_admissible(dyadic, 4)) == 16
    assert len(enumerate_admissible(golden, 4)) == 8
    assert len(enumerate_admissible(tribonacci, 4)) == 13


@pytest.mark.parametrize("n", [1, 5, 10, 16])
def test_run_length_recurrences(golden, tribonacci, dyadic, n):
    assert len(enumerate_admissible(golden, n)) == avoiding_run_count(n, 2)
    assert len(enumerate_admissible(tribonacci, n)) == avoiding_run_count(n, 3)
    assert len(enumerate_admissible(dyadic, n)) == 2 ** n


@pytest.mark.parametrize("tag", TEST_BETAS + ("parry:3",))
def test_enumeration_matches_filtering(contexts, tag):
    ctx = contexts[tag]
    for n in (1, 6, 12):
        listed = enumerate_admissible(ctx, n)
        strings = listed.as_strings()
        brute = ["".join(map(str, w)) for w in itertools.product((0, 1), repeat=n)
                 if is_admissible(ctx, w)]
        assert strings == brute
        assert list(listed.digit_sums) == [s.count("1") for s in strings]


def test_enumeration_guard(golden):
    with pytest.raises(SizeError):
        enumerate_admissible(golden, 27)


def test_counts_by_digit_sum(golden, dyadic, parry2):
    assert list(count_by_digit_sum(golden, 4)) == [1, 4, 3, 0, 0]
    n = 15
    assert list(count_by_digit_sum(dyadic, n)) == [comb(n, k) for k in range(n + 1)]
    # k isolated ones in a golden word of length n: C(n - k + 1, k)
    assert list(count_by_digit_sum(golden, n)) == [comb(n - k + 1, k) for k in range(n + 1)]
    listed = enumerate_admissible(parry2, 14)
    expected = np.bincount(listed.digit_sums, minlength=15)
    assert list(count_by_digit_sum(parry2, 14)) == list(expected)


# --- cylinder pressure -----------------------------------------------------


@pytest.mark.parametrize("t", [-3.0, 0.0, 1.0, 4.0])
@pytest.mark.parametrize("n", [1, 12, 24])
def test_brute_pressure_dyadic_exact(dyadic, t, n):
    assert abs(brute_pressure(dyadic, t, n) - math.log1p(math.exp(t))) <= 1e-12


def test_brute_pressure_zero_temperature_counts(golden):
    n = 20
    assert brute_pressure(golden, 0.0, n) == pytest.approx(
        math.log(avoiding_run_count(n, 2)) / n, rel=1e-14)


def test_brute_pressure_matches_enumeration(tribonacci):
    n, t = 14, 0.7
    listed = enumerate_admissible(tribonacci, n)
    direct = math.log(np.exp(t * listed.digit_sums.astype(float)).sum()) / n
    assert brute_pressure(tribonacci, t, n) == pytest.approx(direct, rel=1e-14)


def test_brute_pressure_golden_converges(golden):
    exact = leading_lambda(golden, 1.0).log_lam
    gaps = [abs(brute_pressure(golden, 1.0, n) - exact) for n in (10, 15, 20)]
    assert gaps[2] <= 0.15
    assert gaps[0] > gaps[1] > gaps[2]


@pytest.mark.parametrize("tag", ["golden", "tribonacci", "parry:2", 1.8])
def test_brute_pressure_derivative_approaches_alpha(contexts, tag):
    ctx = contexts[tag]
    t, h = 0.5, 1e-4
    gaps = []
    for n in (12, 18, 24):
        fd = (brute_pressure(ctx, t + h, n) - brute_pressure(ctx, t - h, n)) / (2 * h)
        gaps.append(abs(fd - alpha_of_t(ctx, t)))
    assert gaps[0] > gaps[1] > gaps[2]


# --- eigenfunctional -------------------------------------------------------


@pytest.mark.parametrize("tag", TEST_BETAS)
@pytest.mark.parametrize("t", [-2.0, 0.0, 2.0])
def test_functional_examples(contexts, tag, t):
    ctx = contexts[tag]
    lam = leading_lambda(ctx, t).lam
    assert nu_value(ctx, t, ctx.one_digits) == pytest.approx(1.0, abs=1e-10)
    assert nu_value(ctx, t, DigitSequence.finite([0])) == 0.0
    assert nu_value(ctx, t, "1") == pytest.approx(1 / lam, rel=1e-14)


def test_functional_recursion_examples(dyadic, golden, tribonacci):
    assert nu_recursion_check(dyadic, 1.0, "1") <= 1e-12
    assert nu_recursion_check(golden, 0.0, DigitSequence.parse("(10)")) <= 1e-10
    assert nu_recursion_check(tribonacci, 0.5, DigitSequence.parse("(0)")) == 0.0


def test_functional_is_monotone(golden):
    words = enumerate_admissible(golden, 10).as_strings()
    values = [nu_value(golden, 0.8, w) for w in words]
    assert all(a < b for a, b in zip(values, values[1:]))


# --- eigenfunction ---------------------------------------------------------


@pytest.mark.parametrize("tag", TEST_BETAS)
@pytest.mark.parametrize("t", [-1.0, 0.5])
def test_eigenfunction_at_one_zero_zero(contexts, tag, t):
    ctx = contexts[tag]
    assert h_value(ctx, t, "1") == pytest.approx(leading_lambda(ctx, t).lam, rel=1e-12)


@given(w=st.lists(st.integers(0, 1), min_size=1, max_size=20), t=st.floats(-3, 3))
def test_eigenfunction_dyadic_constant(dyadic, w, t):
    assert h_value(dyadic, t, w) == pytest.approx(1 + math.exp(t), rel=1e-12)


def test_eigenfunction_at_one_digits(golden):
    # for (10)^inf the shifts dominating it are the even ones
    t = 0.3
    eig = leading_lambda(golden, t)
    z = math.exp(t) / eig.lam ** 2
    assert h_value(golden, t, golden.one_digits) == pytest.approx(1 / (1 - z), rel=1e-13)


def test_eigen_equation_examples(dyadic, golden, tribonacci):
    rng = np.random.default_rng(3)
    for _ in range(10):
        assert eigen_equation_check(dyadic, 0.0, random_admissible(dyadic, 12, rng)) <= 1e-10
    for _ in range(32):
        assert eigen_equation_check(golden, 1.0, random_admissible(golden, 16, rng)) <= 1e-8
    assert eigen_equation_check(tribonacci, -2.0, DigitSequence.parse("(0)")) <= 1e-8


@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 40), t=st.floats(-3, 3),
       tag=st.sampled_from(TEST_BETAS))
def test_identities_on_random_words(contexts, seed, n, t, tag):
    ctx = contexts[tag]
    y = random_admissible(ctx, n, np.random.default_rng(seed))
    assert is_admissible(ctx, y.preperiod)
    assert nu_recursion_check(ctx, t, y) <= 1e-8
    assert eigen_equation_check(ctx, t, y) <= 1e-8


# --- suite -----------------------------------------------------------------


def test_suite_passes_for_golden(golden):
    report = run_oracle_suite(golden, samples=20)
    assert report.passed, "\n".join(report.lines())
    assert report.lines()[-1].startswith("PASS")


def test_corrupted_digits_are_reported():
    ctx = make_context(BetaSpec(digits=DigitSequence.parse("(1011)")))
    assert self_admissibility(ctx) == 2
    report = run_oracle_suite(ctx)
    assert not report.passed
    assert "position 3" in report.lines()[0]
