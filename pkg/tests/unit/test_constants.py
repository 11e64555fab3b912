import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from src.inference.constants import (
    alpha_ball,
    alpha_cube,
    band_statistic,
    critical_value,
    gumbel_cdf,
    gumbel_quantile,
    omega,
    p_value,
    u_statistic,
)
from src.models.errors import InvalidDimension, InvalidParams
from src.models.parameters import LimitParams

rtol = 1e-10


def test_omega_closed_forms():
    assert_allclose(omega(1), 2.0, rtol=1e-14)
    assert_allclose(omega(2), math.pi, rtol=1e-14)
    assert_allclose(omega(3), 4.0 * math.pi / 3.0, rtol=1e-14)


def test_alpha_ball_closed_forms():
    assert_allclose(alpha_ball(1), 1.0, rtol=rtol)
    assert_allclose(alpha_ball(2), 1.0, rtol=rtol)
    assert_allclose(alpha_ball(3), 3.0 * math.pi ** 2 / 32.0, rtol=rtol)


@pytest.mark.parametrize("d", range(1, 11))
def test_alpha_cube_is_exactly_one(d):
    assert alpha_cube(d) == 1.0


@pytest.mark.parametrize("d", range(1, 21))
def test_alpha_ball_inverts_its_formula(d):
    ratio = math.gamma((d + 1) / 2) / (math.sqrt(math.pi) * math.gamma(d / 2 + 1))
    assert_allclose(alpha_ball(d) * math.factorial(d) * ratio ** (d - 1), 1.0, rtol=1e-10)


@pytest.mark.parametrize("func", [omega, alpha_ball, alpha_cube])
def test_dimension_below_one_is_rejected(func):
    with pytest.raises(InvalidDimension):
        func(0)


def test_critical_value_examples():
    assert_allclose(critical_value(LimitParams(n=100, gamma_level=0.05)), 0.0910255, rtol=1e-6)
    gamma = 1.0 - math.exp(-1.0)
    expected = (math.log(100) + math.log(math.log(100))) / 100
    assert_allclose(critical_value(LimitParams(n=100, gamma_level=gamma)), expected, rtol=1e-12)
    assert_allclose(critical_value(LimitParams(n=3, d=1, gamma_level=0.5)), 0.488375, rtol=1e-5)


def test_critical_value_needs_n_at_least_three():
    with pytest.raises(InvalidParams):
        critical_value(LimitParams(n=2))


@pytest.mark.parametrize("gamma", [0.0, 1.0, -0.1, 1.5])
def test_invalid_level_is_rejected(gamma):
    with pytest.raises(InvalidParams):
        LimitParams(n=100, gamma_level=gamma)


def test_u_statistic_examples():
    assert_allclose(u_statistic(100, 0.0910255), 2.9702, atol=1e-4)
    assert_allclose(u_statistic(100, 0.0), -6.13235, atol=1e-5)


def test_u_statistic_rejects_small_n():
    with pytest.raises(InvalidParams):
        u_statistic(2, 0.1)


def test_gumbel_cdf_values():
    assert_allclose(gumbel_cdf(0.0), math.exp(-1.0), rtol=1e-15)
    assert abs(gumbel_cdf(50.0) - 1.0) < 1e-15
    assert_allclose(gumbel_cdf(-math.log(-math.log(0.95))), 0.95, rtol=1e-12)
    values = gumbel_cdf(np.linspace(-5.0, 5.0, 101))
    assert isinstance(values, np.ndarray)
    assert np.all(np.diff(values) > 0.0)


@pytest.mark.parametrize("q", np.linspace(0.01, 0.99, 99))
def test_gumbel_quantile_round_trip(q):
    assert_allclose(gumbel_cdf(gumbel_quantile(q)), q, atol=1e-12)


@pytest.mark.parametrize("n", [3, 10, 100, 1000, 10**6])
@pytest.mark.parametrize("gamma", [0.01, 0.05, 0.1, 0.5])
def test_statistic_at_critical_value_has_p_value_gamma(n, gamma):
    params = LimitParams.for_ball(n, gamma_level=gamma)
    c = critical_value(params)
    u = u_statistic(n, c, 2, params.alpha)
    assert_allclose(u, -math.log(-math.log(1.0 - gamma)), atol=1e-9 * max(1.0, n * c))
    assert_allclose(p_value(u), gamma, rtol=1e-7)


@given(st.integers(min_value=3, max_value=10**6), st.floats(0.001, 0.498), st.floats(0.001, 0.5))
def test_critical_value_decreases_with_gamma(n, gamma, step):
    strict = critical_value(LimitParams(n=n, gamma_level=gamma))
    lenient = critical_value(LimitParams(n=n, gamma_level=gamma + step))
    assert lenient < strict


def test_p_value_tail_accuracy():
    # 1 − exp(−e^{−40}) ≈ e^{−40}, lost entirely by naive subtraction
    assert_allclose(p_value(40.0), math.exp(-40.0), rtol=1e-12)
    assert_allclose(p_value(0.0), 1.0 - math.exp(-1.0), rtol=1e-14)


def test_band_statistic():
    n = 2000
    V = (2.0 * math.log(math.log(n)) + math.log(n)) / n
    assert_allclose(band_statistic(n, V), 2.0, rtol=1e-12)
