"""The weighted exponential integral and its series, against independent
quadrature (mpmath at 40 digits)."""

import math

import mpmath
import pytest

from enstrophy_bounds.logscalar import LogScalar
from enstrophy_bounds.specfun import (gamma_series_factor,
                                      gamma_series_truncated,
                                      weighted_exp_integral,
                                      weighted_exp_integral_ln)

mpmath.mp.dps = 40


def g_oracle(alpha: float, x: float) -> float:
    # t = u^(1/alpha) removes the t^(alpha-1) endpoint singularity exactly;
    # without it tanh-sinh quadrature visibly misses for alpha near 0
    if alpha <= 1.0:
        inv = mpmath.mpf(1.0) / alpha
        val = mpmath.quad(lambda u: mpmath.e ** (x * u ** inv), [0, 1]) * inv
    else:
        val = mpmath.quad(lambda t: t ** (alpha - 1) * mpmath.e ** (x * t),
                          [0, 1])
    return float(val)


@pytest.mark.parametrize("alpha", [0.03, 0.5, 0.97, 1.5])
@pytest.mark.parametrize("x", [0.0, 1.0, 10.0, 48.0, 100.0])
def test_series_matches_quadrature(alpha, x):
    got = gamma_series_factor(alpha, x).to_float()
    assert got == pytest.approx(g_oracle(alpha, x), rel=1e-12)


def test_series_value_near_regime_corner():
    # large-argument spot value; the series needs ~130 terms here
    got = gamma_series_factor(0.97, 48.0).to_float()
    assert got == pytest.approx(1.4627541107092349e+19, rel=1e-10)
    assert got == pytest.approx(g_oracle(0.97, 48.0), rel=1e-12)


def test_series_at_zero_argument():
    # only the first term survives: g(alpha, 0) = 1/alpha
    for alpha in (0.03, 0.7, 2.5):
        assert gamma_series_factor(alpha, 0.0).to_float() \
            == pytest.approx(1.0 / alpha, rel=1e-15)


def test_series_parts_recurrence():
    # integration by parts: alpha g(alpha, x) + x g(alpha+1, x) = e^x
    for alpha, x in [(0.3, 7.0), (0.97, 48.0), (1.2, 3.0)]:
        lhs = LogScalar.from_float(alpha) * gamma_series_factor(alpha, x) \
            + LogScalar.from_float(x) * gamma_series_factor(alpha + 1.0, x)
        assert lhs.to_float() == pytest.approx(math.exp(x), rel=1e-12)


def test_series_monotone_in_x():
    vals = [gamma_series_factor(0.5, x).to_float()
            for x in (0.0, 1.0, 5.0, 20.0)]
    assert vals == sorted(vals)


def test_truncated_converges_to_full():
    full = gamma_series_factor(0.97, 48.0)
    errs = [abs((gamma_series_truncated(0.97, 48.0, n) - full)
                / full).to_float()
            for n in (20, 40, 80, 200)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[3] < 1e-12


def test_truncated_n1_is_first_term():
    got = gamma_series_truncated(0.25, 9.0, 1).to_float()
    assert got == pytest.approx(1.0 / 0.25, rel=1e-15)


def test_weighted_integral_b_zero_closed_form():
    # b = 0: plain power integral (hi^(1-a) - lo^(1-a))/(1-a)
    got = weighted_exp_integral(0.5, 0.0, 0.25, 4.0).to_float()
    assert got == pytest.approx(2.0 * (2.0 - 0.5), rel=1e-13)


def test_weighted_integral_against_quadrature():
    for a, b, lo, hi in [(0.03, 1.2, 0.001, 4.0),
                         (0.5, 10.0, 0.5, 2.0),
                         (0.9, 0.3, 1e-6, 1.0)]:
        oracle = float(mpmath.quad(
            lambda s: s ** (-a) * mpmath.e ** (b * s), [lo, hi]))
        assert weighted_exp_integral(a, b, lo, hi).to_float() \
            == pytest.approx(oracle, rel=1e-10)


def test_weighted_integral_ln_bounds_below_float_range():
    # lower bound e^-6000 is not a float; the tail below any representable
    # number contributes (1-a)^-1 * lo^(1-a) which is itself ~e^-300
    a, b = 0.03, 1.0
    got = weighted_exp_integral_ln(a, b, -6000.0, 0.0)
    oracle = float(mpmath.quad(
        lambda s: s ** (-a) * mpmath.e ** (b * s), [0, 1]))
    assert got.to_float() == pytest.approx(oracle, rel=1e-10)


def test_weighted_integral_tiny_b_branch():
    # b*hi ~ 1e-9 hits the expm1 expansion path
    a, b, lo, hi = 0.4, 1e-9, 0.5, 1.0
    oracle = float(mpmath.quad(
        lambda s: s ** (-a) * mpmath.e ** (b * s), [lo, hi]))
    assert weighted_exp_integral(a, b, lo, hi).to_float() \
        == pytest.approx(oracle, rel=1e-11)


def test_weighted_integral_nearby_bounds():
    a, b = 0.3, 2.0
    lo, hi = 1.0, 1.0 + 1e-10
    oracle = hi ** (-a) * math.exp(b) * (hi - lo)  # midpoint to O(h^2)
    assert weighted_exp_integral(a, b, lo, hi).to_float() \
        == pytest.approx(oracle, rel=1e-6)


def test_weighted_integral_rejects_bad_exponent():
    with pytest.raises(ValueError):
        weighted_exp_integral_ln(1.5, 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        weighted_exp_integral_ln(0.5, -1.0, 0.0, 1.0)
