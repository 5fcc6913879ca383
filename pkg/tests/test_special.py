import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mtbounds.errors import DomainError
from mtbounds.special import (Tolerance, g_breakpoint, g_inv, h, h_inv, h_inv_envelopes, phi,
                              phi_minus_quadratic, phi_prime, rho, underline_log, upsilon, z_threshold)

moderate = st.floats(min_value=-30, max_value=30, allow_nan=False)
positive_u = st.floats(min_value=1e-8, max_value=1e8, allow_nan=False)


def test_phi_known_values():
    assert phi(0.0) == 0.0
    assert phi(1.0) == pytest.approx(math.e - 2, rel=1e-15)
    assert phi(-1.0) == pytest.approx(math.exp(-1), rel=1e-15)
    assert phi(1e-6) == pytest.approx(5.000001666667083e-13, rel=1e-12)
    assert phi(800.0) == math.inf
    assert phi_prime(1.0) == pytest.approx(math.e - 1)


def test_phi_rejects_nonfinite():
    with pytest.raises(DomainError):
        phi(float("nan"))


@given(moderate)
def test_phi_minus_quadratic_matches_difference(t):
    # away from 0 the closed form is accurate; compare with a high-order series near 0
    ref = phi(t) - t * t / 2 if abs(t) > 1 else sum(t ** k / math.factorial(k) for k in range(3, 30))
    assert phi_minus_quadratic(t) == pytest.approx(ref, rel=1e-10, abs=1e-300)


def test_h_known_values():
    assert h(0.0) == 0.0
    assert h(1.0) == pytest.approx(2 * math.log(2) - 1, rel=1e-15)
    assert h(1e-6) == pytest.approx(1e-12 / 2 - 1e-18 / 6, rel=1e-10)
    with pytest.raises(DomainError):
        h(-1.0)


@settings(max_examples=200)
@given(positive_u)
def test_h_inv_round_trip(u):
    t = h_inv(u)
    assert abs(h(t) - u) <= 1e-10 * (1 + u)


@given(positive_u)
def test_h_inv_between_sqrt_and_envelopes(u):
    t = h_inv(u)
    e1, e2 = h_inv_envelopes(u)
    assert math.sqrt(2 * u) * (1 - 1e-14) <= t <= min(e1, e2) * (1 + 1e-14)


@given(st.floats(min_value=1e-6, max_value=1e6), st.floats(min_value=1.0001, max_value=10))
def test_h_inv_increasing(u, factor):
    assert h_inv(u * factor) > h_inv(u)


def test_h_inv_edges():
    assert h_inv(0.0) == 0.0
    assert h_inv(math.inf) == math.inf
    with pytest.raises(DomainError):
        h_inv(-1e-3)


def test_tolerance_validation():
    with pytest.raises(DomainError):
        Tolerance(abs=0.0)
    with pytest.raises(DomainError):
        Tolerance(max_iter=0)


def test_underline_log():
    assert underline_log(1.0) == 1.0
    assert underline_log(math.e ** 3) == pytest.approx(3.0)
    assert underline_log(0.01) == 1.0
    with pytest.raises(DomainError):
        underline_log(0.0)


def test_upsilon_value_at_zero_and_continuity():
    assert upsilon(0.0) == 3.0
    for t in (1e-3, 1.0):
        assert upsilon(t * (1 - 1e-9)) == pytest.approx(upsilon(t * (1 + 1e-9)), rel=1e-7)


@given(moderate)
def test_upsilon_cap_and_floor(t):
    v = upsilon(t)
    assert 2.0 < v <= max(4.0, 1.5 * t) + 1e-12


@given(st.floats(min_value=-20, max_value=20), st.floats(min_value=1e-3, max_value=1.0))
def test_upsilon_increasing(t, step):
    assert upsilon(t + step) > upsilon(t)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0, 2.0, 4.0])
@pytest.mark.parametrize("ratio", [0.5, 1.0, 10.0, 1e3])
def test_z_threshold_guarantee(alpha, ratio):
    z = z_threshold(ratio, 1.0, alpha)
    assert alpha * z ** alpha >= 4 * (1 - 1e-12)
    # e^{z^a} >= (e^4/16) (U z / sigma)^2
    assert z ** alpha >= 4 - math.log(16) + 2 * math.log(ratio * z) - 1e-9


def test_z_threshold_examples():
    assert z_threshold(1.0, 1.0, 1.0) == pytest.approx(4.0)
    assert z_threshold(1.0, 1.0, 2.0) == pytest.approx(2.0)
    assert z_threshold(1.0, 1.0, 0.5) == pytest.approx((8 * math.log(2 * math.e)) ** 2)
    with pytest.raises(DomainError):
        z_threshold(0.0, 1.0, 1.0)


def test_z_threshold_homogeneous_in_scale():
    assert z_threshold(3.0, 2.0, 1.5) == pytest.approx(z_threshold(30.0, 20.0, 1.5), rel=1e-14)


@pytest.mark.parametrize("lam0", [0.1, 0.5, math.log(2), 1.0, 2.0, 5.0])
def test_g_inv_piecewise(lam0):
    x0, t0 = g_breakpoint(lam0)
    assert t0 == pytest.approx(math.expm1(lam0))
    assert h_inv(x0) == pytest.approx(t0, rel=1e-10)
    assert abs(g_inv(lam0, x0 * (1 + 1e-12)) - g_inv(lam0, x0)) <= 1e-8
    for x in (0.5 * x0, x0, 2 * x0, 10 * x0 + 1):
        val = g_inv(lam0, x)
        if x > x0:
            assert val == pytest.approx(t0 + (x - x0) / lam0)
            assert val <= 2 * x / lam0
        else:
            assert val == pytest.approx(h_inv(x))


def test_rho_zero_and_domain():
    assert rho(1.0, 1.0, 0.0) == 0.0
    with pytest.raises(DomainError):
        rho(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        rho(1.0, 1.0, -1.0)


@pytest.mark.parametrize("lam,alpha,x", [(1.0, 1.0, 2.0), (0.5, 1.0, 5.0), (1.0, 2.0, 0.7), (2.0, 0.5, 3.0)])
def test_rho_derivative_sign(lam, alpha, x):
    step = 1e-5
    fd = (rho(lam, alpha, x + step) - rho(lam, alpha, x - step)) / (2 * step)
    assert np.sign(fd) == np.sign(upsilon(lam * x) - alpha * x ** alpha)


def test_rho_large_argument_is_finite_or_inf():
    assert rho(1.0, 2.0, 800.0) == 0.0 or math.isfinite(rho(1.0, 2.0, 800.0))
    assert rho(2.0, 1.0, 800.0) == math.inf
