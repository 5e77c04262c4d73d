import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from alphaharm.errors import DomainError
from alphaharm.special import (AlphaParam, beta, c_alpha, gamma, gamma_ratio, gamma_ratios,
                               p_alpha_k, p_alpha_k_table)

mp.mp.dps = 30


def p_oracle(alpha, k, w):
    return float(mp.quad(lambda t: t ** (k - 1) * (1 - t * w) ** alpha, [0, 1]))


@pytest.mark.parametrize("bad", [-1.0, -2.5, math.nan, math.inf])
def test_alpha_param_rejects(bad):
    with pytest.raises(DomainError):
        AlphaParam(bad)


def test_alpha_param_accepts_just_above_minus_one():
    assert AlphaParam(-0.999) == -0.999


def test_gamma_classical_values():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma(1.0) == 1.0
    assert gamma(5.0) == 24.0


def test_gamma_against_defining_integral():
    oracle = mp.quad(lambda t: t ** 1.7 * mp.exp(-t), [0, 1, 10, mp.inf])
    assert gamma(2.7) == pytest.approx(float(oracle), rel=1e-13)


@pytest.mark.parametrize("s", [0.01, 0.3, 1.5, 7.25, 23.9, 50.0])
def test_gamma_relative_error(s):
    assert gamma(s) == pytest.approx(float(mp.gamma(s)), rel=1e-13)


@pytest.mark.parametrize("s", [0.0, -1.0, -0.5])
def test_gamma_domain(s):
    with pytest.raises(DomainError):
        gamma(s)


def test_beta_small_cases():
    for k in range(1, 11):
        assert beta(k, 1) == pytest.approx(1.0 / k, rel=1e-15)
    assert beta(1, 1) == 1.0


def test_beta_against_quadrature():
    oracle = mp.quad(lambda x: x ** 2 * (1 - x) ** 1.5, [0, 1])
    assert beta(3, 2.5) == pytest.approx(float(oracle), rel=1e-13)


def test_beta_large_arguments_use_logs():
    assert beta(150.0, 40.5) == pytest.approx(float(mp.beta(150.0, 40.5)), rel=1e-11)


@pytest.mark.parametrize("p,q", [(0.0, 1.0), (1.0, -2.0)])
def test_beta_domain(p, q):
    with pytest.raises(DomainError):
        beta(p, q)


@given(st.floats(0.05, 30), st.floats(0.05, 30))
def test_beta_symmetric(p, q):
    assert beta(p, q) == pytest.approx(beta(q, p), rel=1e-14)


def test_c_alpha_values():
    assert abs(c_alpha(0.0) - 1.0) <= 1e-14
    assert c_alpha(2.0) == pytest.approx(0.5, rel=1e-15)
    assert c_alpha(1.0) == pytest.approx(math.pi / 4, rel=1e-15)


@given(st.floats(0.0, 40.0))
def test_c_alpha_in_unit_interval(alpha):
    assert 0.0 < c_alpha(alpha) <= 1.0 + 1e-15


def test_gamma_ratio_value():
    # Gamma(6)/(Gamma(2) Gamma(4)) = 120/6
    assert gamma_ratio(2, 3.0) == pytest.approx(20.0, rel=1e-15)
    assert gamma_ratio(1, 0.0) == 1.0
    assert gamma_ratio(7, 0.0) == pytest.approx(7.0)


@pytest.mark.parametrize("alpha", [-0.5, 0.7, 2.5])
def test_gamma_ratios_match_mpmath(alpha):
    r = gamma_ratios(40, alpha)
    for k in (1, 5, 17, 40):
        ref = mp.gamma(k + alpha + 1) / (mp.gamma(k) * mp.gamma(alpha + 1))
        assert r[k - 1] == pytest.approx(float(ref), rel=1e-13)


def test_p_alpha_zero_is_one_over_k():
    for k in (1, 3, 9):
        for w in (0.0, 0.3, 0.7, 0.95):
            e = p_alpha_k(0.0, k, w)
            assert e.value == pytest.approx(1.0 / k, rel=1e-14)
            assert abs(e.derivative) <= 1e-13


@pytest.mark.parametrize("alpha", [-0.7, 0.4, 3.0])
def test_p_at_zero(alpha):
    for k in (1, 2, 6):
        e = p_alpha_k(alpha, k, 0.0)
        assert e.value == pytest.approx(1.0 / k, rel=1e-15)
        assert e.derivative == pytest.approx(-alpha / (k + 1), rel=1e-14)


def test_p_closed_form_case():
    assert p_alpha_k(1.0, 1, 0.5).value == pytest.approx(0.75, rel=1e-15)
    assert p_alpha_k(1.0, 1, 0.5).value == pytest.approx(p_oracle(1.0, 1, 0.5), rel=1e-14)


@pytest.mark.parametrize("alpha", [-0.9, -0.5, 0.3, 1.5, 4.2])
@pytest.mark.parametrize("k", [1, 2, 7, 30])
@pytest.mark.parametrize("w", [0.01, 0.3, 0.5, 0.51, 0.8, 0.99, 0.9999])
def test_p_against_mpmath(alpha, k, w):
    assert p_alpha_k(alpha, k, w).value == pytest.approx(p_oracle(alpha, k, w), rel=1e-12)


@pytest.mark.parametrize("alpha", [-0.5, 1.0, 2.5])
@pytest.mark.parametrize("k", [1, 3, 8])
def test_p_limit_is_beta(alpha, k):
    ws = [1 - 10.0 ** -j for j in (4, 6, 8)]
    gaps = [abs(p_alpha_k(alpha, k, w).value - beta(k, alpha + 1)) for w in ws]
    assert gaps[0] > gaps[1] > gaps[2] or gaps[2] < 1e-12
    # P - B(k, alpha+1) = O((1-w)^min(1, alpha+1))
    assert gaps[2] <= 3 * (1e-8) ** min(1.0, alpha + 1) * k


@pytest.mark.parametrize("alpha", [-0.5, 0.5, 2.0])
@pytest.mark.parametrize("k", [1, 4])
def test_derivative_identity_and_fd(alpha, k):
    h = 1e-6
    for w in np.arange(1, 10) / 10:
        e = p_alpha_k(alpha, k, w)
        ident = -(k / w) * e.value + (1 - w) ** alpha / w
        fd = (p_alpha_k(alpha, k, w + h).value - p_alpha_k(alpha, k, w - h).value) / (2 * h)
        assert abs(e.derivative - ident) <= 1e-12 * max(1.0, abs(ident))
        assert abs(e.derivative - fd) <= 1e-6


def test_switch_is_continuous():
    for alpha in (-0.5, 1.3):
        lo = p_alpha_k(alpha, 3, 0.5, switch=0.6)
        hi = p_alpha_k(alpha, 3, 0.5, switch=0.4)
        assert lo.value == pytest.approx(hi.value, rel=1e-14)
        assert lo.derivative == pytest.approx(hi.derivative, rel=1e-12)


@given(st.floats(0.0, 6.0), st.integers(1, 25), st.floats(0.0, 0.999))
def test_monotone_and_bracketed(alpha, k, w):
    e = p_alpha_k(alpha, k, w)
    assert beta(k, alpha + 1) * (1 - 1e-13) <= e.value <= (1.0 / k) * (1 + 1e-14)
    assert e.derivative <= 1e-14


@given(st.floats(-0.99, -0.01), st.integers(1, 25), st.floats(0.0, 0.999))
def test_negative_alpha_reverses(alpha, k, w):
    assert p_alpha_k(alpha, k, w).value >= (1.0 / k) * (1 - 1e-14)


def test_table_matches_scalar():
    w = np.array([0.0, 0.2, 0.6, 0.97])
    vals, ders = p_alpha_k_table(1.7, 5, w)
    for i, wi in enumerate(w):
        for k in range(1, 6):
            e = p_alpha_k(1.7, k, wi)
            assert vals[i, k - 1] == e.value
            assert ders[i, k - 1] == e.derivative


@pytest.mark.parametrize("k,w", [(0, 0.5), (2, 1.0), (2, -0.1), (2, math.nan)])
def test_p_domain(k, w):
    with pytest.raises(DomainError):
        p_alpha_k(1.0, k, w)
