from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate, special

from src.asymptotics import (
    ball_exponential_integral,
    cone_region_estimate,
    g_m,
    i0,
    i1,
    log_g_m,
    log_normalized_g_m,
    normalized_g_m,
    predicted_shape,
    region_sweep,
    shifted_cone_ball_ratio,
)
from src.asymptotics.gm import log_normalized_leading, scaled_g_m
from src.asymptotics.region import simplex_exponential_integral

XS = [0.1, 0.5, 1.0, 2.0, 5.0, 7.9, 8.0, 10.0, 14.9, 15.0, 15.1, 20.0, 30.0]


@pytest.mark.parametrize("x", XS)
def test_bessel_against_scipy(x):
    assert i0(x) == pytest.approx(special.i0(x), rel=1e-10)
    assert i1(x) == pytest.approx(special.i1(x), rel=1e-10)


def test_bessel_at_zero():
    assert i0(0.0) == 1.0
    assert i1(0.0) == 0.0


def test_g0_closed_form():
    assert g_m(0, 1.0) == pytest.approx(2 * math.sinh(1.0), rel=1e-14)
    assert g_m(0, 1.0) == pytest.approx(2.3504, abs=1e-4)


@pytest.mark.parametrize("x", [0.5, 2.0, 10.0])
def test_recursion_m3(x):
    lhs = x * x * g_m(3, x)
    assert abs(lhs + 6 * g_m(1, x) - 3 * g_m(-1, x)) < 1e-8 * lhs


@pytest.mark.parametrize("x", XS)
def test_recursion_residuals(x):
    for m in range(3, 11):
        lhs = x * x * g_m(m, x)
        rhs = -m * (m - 1) * g_m(m - 2, x) + m * (m - 2) * g_m(m - 4, x)
        assert abs(lhs - rhs) < 1e-8 * lhs


def _quadrature_scaled(m: int, x: float) -> float:
    # e^{−x} g_m(x) with the endpoint behaviour handled by the algebraic weight
    value, _ = integrate.quad(
        lambda s: math.exp(x * (s - 1.0)),
        -1.0,
        1.0,
        weight="alg",
        wvar=(0.5 * m, 0.5 * m),
        epsabs=0.0,
        epsrel=1e-13,
        limit=200,
    )
    return value


@pytest.mark.parametrize("m", list(range(-1, 11)))
def test_g_m_against_quadrature(m):
    for x in XS:
        assert scaled_g_m(m, x) == pytest.approx(_quadrature_scaled(m, x), rel=1e-9)


@pytest.mark.parametrize("x", XS)
def test_g1_is_bessel(x):
    assert g_m(1, x) == pytest.approx(math.pi / x * special.i1(x), rel=1e-9)
    assert g_m(-1, x) == pytest.approx(math.pi * special.i0(x), rel=1e-9)


@pytest.mark.parametrize("x", [0.7, 3.0, 12.0])
def test_normalized_recursion(x):
    for m in range(3, 9):
        expected = -(m - 1) * normalized_g_m(m - 2, x) + x * x * normalized_g_m(m - 4, x)
        assert normalized_g_m(m, x) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("m", list(range(-1, 7)))
def test_normalized_leading_term(m):
    x = 5000.0
    assert abs(log_normalized_g_m(m, x) - log_normalized_leading(m, x)) < 0.02


def test_log_space_past_float_range():
    # Laplace leading term at s = 1: x + log(2^{3/2} Γ(5/2)) − (5/2) log x
    leading = 1000.0 + math.log(2**1.5 * math.gamma(2.5)) - 2.5 * math.log(1000.0)
    assert log_g_m(3, 1000.0) == pytest.approx(leading, abs=0.01)
    assert log_g_m(3, 600.0) == pytest.approx(math.log(g_m(3, 600.0)), rel=1e-12)
    with pytest.raises(OverflowError):
        g_m(3, 1000.0)


def test_g_m_domain_errors():
    with pytest.raises(ValueError):
        g_m(-2, 1.0)
    with pytest.raises(ValueError):
        g_m(2, 0.0)


# -------------
# Ball integral
# -------------


def test_ball_dimension_one():
    ball = ball_exponential_integral([2.0], R=1.5)
    assert ball.exact_value == pytest.approx(2 * math.sinh(3.0) / 2.0, rel=1e-12)


def test_ball_dimension_two_against_g1():
    ball = ball_exponential_integral([1.0, 0.0], R=10.0)
    assert ball.exact_value == pytest.approx(2 * 100 * g_m(1, 10.0), rel=1e-12)
    assert 0.9 < ball.ratio < 1.0


def test_ball_against_dblquad():
    v = (1.0, 0.5)
    R = 3.0
    value, _ = integrate.dblquad(
        lambda y2, y1: math.exp(v[0] * y1 + v[1] * y2),
        -R,
        R,
        lambda y1: -math.sqrt(max(R * R - y1 * y1, 0.0)),
        lambda y1: math.sqrt(max(R * R - y1 * y1, 0.0)),
        epsrel=1e-11,
    )
    assert ball_exponential_integral(v, R=R).exact_value == pytest.approx(value, rel=1e-8)


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("norm", [1.0, 3.0])
def test_ball_ratio_monotone_to_one(n, norm):
    v = np.zeros(n)
    v[0] = norm
    ratios = [ball_exponential_integral(v, R=R).ratio for R in (5, 10, 20, 40, 80, 160)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert all(r < 1.0 for r in ratios)
    far = ball_exponential_integral(v, R=100.0 / norm + 1.0)
    assert far.ratio > 0.95


def test_ball_log_space_large_argument():
    ball = ball_exponential_integral([1.0, 0.0, 0.0], R=2000.0)
    assert ball.exact_value == math.inf
    assert 0.99 < ball.ratio < 1.0


def test_ball_rotation_invariance():
    a = ball_exponential_integral([3.0, 4.0, 0.0], R=2.0)
    b = ball_exponential_integral([0.0, 0.0, 5.0], R=2.0)
    assert a.exact_value == pytest.approx(b.exact_value, rel=1e-14)


def test_ball_rejects_zero_vector():
    with pytest.raises(ValueError):
        ball_exponential_integral([0.0, 0.0], R=1.0)


def test_shifted_cone_ratio_tends_to_one():
    ratios = [
        shifted_cone_ball_ratio([1.0, 0.0], [-1.0, 2.0], math.pi / 6, R)
        for R in (5.0, 20.0, 60.0)
    ]
    assert ratios[0] < ratios[1] < ratios[2] <= 1.0
    assert ratios[2] > 0.97


# -------------
# Region growth
# -------------


def test_region_one_dimensional_closed_form():
    T = 1e3
    est = cone_region_estimate([2], [1], T)
    assert est.value == pytest.approx((T * T - 1) / 2, rel=1e-12)
    assert est.predicted_a == 2 and est.predicted_b == 1


def test_region_grid_against_divided_differences():
    T = 1e4
    est = cone_region_estimate([2, 3], [1, 1], T)
    exact = simplex_exponential_integral([2.0, 3.0], math.log(T))
    assert est.value == pytest.approx(exact, rel=5e-4)


def test_region_anticanonical_shape():
    a, b, const = predicted_shape([2, 2], [2, 2])
    assert (a, b) == (1, 2)
    assert const == pytest.approx(0.25)
    T = 1e6
    L = math.log(T)
    est = cone_region_estimate([2, 2], [2, 2], T)
    assert est.value == pytest.approx(0.25 * ((L - 1) * T + 1), rel=5e-4)


def test_region_leading_constant():
    est = cone_region_estimate([2, 1], [1, 1], 1e8)
    assert est.value / est.predicted_value == pytest.approx(1.0, rel=1e-3)


def test_region_shift_rescales_constant():
    T = 1e8
    y = (0.3, -0.2)
    base = cone_region_estimate([2, 1], [1, 1], T)
    shifted = cone_region_estimate([2, 1], [1, 1], T, y=y)
    assert (shifted.predicted_a, shifted.predicted_b) == (base.predicted_a, base.predicted_b)
    assert shifted.value / base.value == pytest.approx(shifted.shift_factor, rel=1e-3)


@pytest.mark.parametrize(
    "m, c, T",
    [([2], [1], 50.0), ([2, 2], [2, 2], 1e3), ([2, 3], [1, 2], 1e3), ([1, 2, 3], [1, 1, 2], 200.0)],
)
def test_grid_and_monte_carlo_agree(m, c, T):
    grid = cone_region_estimate(m, c, T, mode="grid")
    mc = cone_region_estimate(m, c, T, mode="monte_carlo", samples=40_000, seed=3)
    combined = math.sqrt(grid.stderr**2 + mc.stderr**2)
    assert abs(grid.value - mc.value) <= 3 * combined + 1e-12 * grid.value


def test_monte_carlo_independent_of_jobs():
    one = cone_region_estimate([2, 3], [1, 2], 1e3, mode="monte_carlo", samples=5000, seed=9)
    two = cone_region_estimate(
        [2, 3], [1, 2], 1e3, mode="monte_carlo", samples=5000, seed=9, jobs=2
    )
    assert one.value == two.value and one.stderr == two.stderr


def test_region_degenerate_threshold():
    assert cone_region_estimate([1, 1], [1, 1], 1.0).value == 0.0
    assert cone_region_estimate([1], [1], 10.0, y=[5.0]).value == 0.0


def test_region_rejects_bad_coefficients():
    with pytest.raises(ValueError):
        cone_region_estimate([0, 1], [1, 1], 10.0)
    with pytest.raises(ValueError):
        cone_region_estimate([1, 1], [1], 10.0)
    with pytest.raises(ValueError):
        cone_region_estimate([1], [1], 10.0, mode="exact")


def test_region_sweep_recovers_exponents():
    Ts = [2.0**k for k in range(4, 21, 2)]
    _, fit = region_sweep([2, 2], [2, 2], Ts)
    assert fit.exponents["a"] == pytest.approx(1.0)
    assert fit.exponents["b"] == pytest.approx(2.0, abs=0.3)
