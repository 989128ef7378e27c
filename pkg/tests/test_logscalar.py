"""Sign/ln arithmetic underneath every curve evaluation."""

import math

import pytest
from hypothesis import given, strategies as st

from enstrophy_bounds import LogScalar, ls_sum
from enstrophy_bounds.logscalar import ONE, ZERO

finite = st.floats(min_value=-1e12, max_value=1e12,
                   allow_nan=False, allow_infinity=False)
nonzero = finite.filter(lambda x: abs(x) > 1e-12)


def close(a: float, b: float, rel: float = 1e-13) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=1e-300)


def test_float_round_trip():
    # the trip costs |ln x| * eps relative, ~2e-14 at the float range edge
    for x in (1.0, -3.5, 0.0025, 1e300, -1e-300, 7.0):
        assert LogScalar.from_float(x).to_float() == pytest.approx(x, rel=1e-13)
    assert LogScalar.from_float(0.0) is ZERO
    assert ZERO.to_float() == 0.0


def test_from_float_rejects_nan():
    with pytest.raises(ValueError):
        LogScalar.from_float(math.nan)


def test_overflow_to_float_saturates():
    huge = LogScalar.from_ln(5000.0)
    assert huge.to_float() == math.inf
    assert (-huge).to_float() == -math.inf
    assert huge.log10() == pytest.approx(5000.0 / math.log(10.0))


def test_mul_div_pow_exact_in_ln():
    a = LogScalar.from_ln(1234.5)
    b = LogScalar.from_ln(-987.25, sign=-1)
    assert (a * b).ln == 1234.5 - 987.25
    assert (a * b).sign == -1
    assert (a / b).sign == -1
    assert (a ** 3.0).ln == 3.0 * 1234.5
    assert ((-a) ** 3.0).sign == -1
    assert ((-a) ** 2.0).sign == 1


def test_pow_edge_cases():
    assert (ZERO ** 2.0) is ZERO
    assert (ZERO ** 0.0) == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO ** -1.0
    with pytest.raises(ValueError):
        (-ONE) ** 0.5
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_add_sub_against_floats():
    pairs = [(3.0, 4.0), (1e10, -1.0), (-2.5, -2.5), (1e-30, 1e30),
             (5.0, -3.0)]
    for x, y in pairs:
        got = (LogScalar.from_float(x) + LogScalar.from_float(y)).to_float()
        assert got == pytest.approx(x + y, rel=1e-13, abs=1e-280)
        got = (LogScalar.from_float(x) - LogScalar.from_float(y)).to_float()
        assert got == pytest.approx(x - y, rel=1e-13, abs=1e-280)


def test_exact_cancellation_reports_infinite_loss():
    a = LogScalar.from_ln(42.0)
    res, lost = a.add_with_cancellation(-a)
    assert res is ZERO and lost == math.inf


def test_cancellation_digit_count():
    a = LogScalar.from_float(1.0)
    b = LogScalar.from_float(-(1.0 - 1e-6))
    res, lost = a.add_with_cancellation(b)
    assert res.to_float() == pytest.approx(1e-6, rel=1e-9)
    assert lost == pytest.approx(6.0, abs=0.1)


def test_same_sign_add_lossless():
    _, lost = LogScalar.from_float(1.0).add_with_cancellation(
        LogScalar.from_float(1e-200))
    assert lost == 0.0


@given(finite, finite)
def test_hypothesis_add_commutes(x, y):
    a, b = LogScalar.from_float(x), LogScalar.from_float(y)
    assert close((a + b).to_float(), (b + a).to_float())


@given(nonzero, nonzero, nonzero)
def test_hypothesis_add_associates(x, y, z):
    a, b, c = (LogScalar.from_float(v) for v in (x, y, z))
    left = ((a + b) + c).to_float()
    right = (a + (b + c)).to_float()
    # associativity holds to roundoff unless the sum cancels to ~0
    scale = abs(x) + abs(y) + abs(z)
    assert abs(left - right) <= 1e-12 * scale


@given(nonzero, nonzero)
def test_hypothesis_mul_matches_floats(x, y):
    got = (LogScalar.from_float(x) * LogScalar.from_float(y)).to_float()
    assert close(got, x * y, rel=1e-12)


@given(st.lists(finite, min_size=0, max_size=20))
def test_hypothesis_ls_sum(xs):
    got = ls_sum(LogScalar.from_float(x) for x in xs).to_float()
    scale = sum(abs(x) for x in xs) or 1.0
    assert abs(got - sum(xs)) <= 1e-11 * scale


def test_ordering_including_negatives():
    vals = [-3.0, -1.0, 0.0, 0.5, 2.0]
    scalars = [LogScalar.from_float(v) for v in vals]
    assert sorted(scalars) == scalars
    assert LogScalar.from_float(-5.0) < LogScalar.from_float(-4.0)
    assert max(scalars).to_float() == 2.0


def test_sci_string_format():
    # 17 significant digits, the last 1-2 subject to the ln round trip
    s = LogScalar.from_float(0.0025).to_sci_string()
    assert s.startswith("2.50000000000000") and s.endswith("e-03")
    assert len(s) == len("2.5000000000000000e-03")
    s = LogScalar.from_float(-4.0).to_sci_string()
    assert s.startswith("-") and s.endswith("e+00")
    assert float(s) == pytest.approx(-4.0, rel=1e-14)
    assert ZERO.to_sci_string() == "0.0"
    # way outside float range: exponent computed from the log directly
    tiny = LogScalar.from_ln(-8248.908704754842)
    assert tiny.to_sci_string().endswith("e-3583")


def test_sci_string_round_trip():
    cases = [LogScalar.from_float(0.0025),
             LogScalar.from_float(-123.456),
             LogScalar.from_ln(1e5),
             LogScalar.from_ln(-8248.9087),
             LogScalar.from_ln(255.4961)]
    for v in cases:
        back = LogScalar.from_sci_string(v.to_sci_string())
        assert back.sign == v.sign
        assert back.ln == pytest.approx(v.ln, rel=1e-13, abs=1e-12)
    assert LogScalar.from_sci_string("0.0") is ZERO
    assert LogScalar.from_sci_string(" 1e3 ").to_float() \
        == pytest.approx(1000.0, rel=1e-14)


def test_from_sci_string_rejects_garbage():
    # "1e" is tolerated (empty exponent reads as 0), per the docstring's
    # any-float-style-literal promise; these are not
    for bad in ("", "abc", "--1e3", "1e+", "nan", "inf"):
        with pytest.raises(ValueError):
            LogScalar.from_sci_string(bad)


@given(st.floats(min_value=-5000.0, max_value=5000.0,
                 allow_nan=False, allow_infinity=False),
       st.sampled_from([-1, 1]))
def test_hypothesis_sci_round_trip_in_ln(ln, sign):
    v = LogScalar.from_ln(ln, sign)
    back = LogScalar.from_sci_string(v.to_sci_string())
    assert back.sign == sign
    assert abs(back.ln - ln) <= 1e-13 * max(1.0, abs(ln))
