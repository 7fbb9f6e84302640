from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from qzeta.qcore import DomainError, PoleError, PrecisionContext
from qzeta.qfunctions import (
    E_q,
    abs_E_imag,
    cos_q,
    cos_q_prime,
    e_q,
    epsilon_q,
    imag_axis,
    jackson_bessel2,
    jackson_bessel2_prime,
    sin_q,
    sin_q_prime,
    sinh_q,
    tan_q,
    trig_pair,
)

CTX = PrecisionContext(Fraction(1, 2), 30)
EPS = CTX.mp.mpf(10) ** -35

xs = st.decimals(min_value="-40", max_value="40", places=3, allow_nan=False, allow_infinity=False)


def test_E_and_e_are_reciprocal():
    mp = CTX.mp
    for z in (mp.mpf("0.3"), mp.mpf("-1.7"), mp.mpc("2", "-3")):
        assert abs(E_q(z, CTX).value * e_q(-z, CTX).value - 1) < EPS


def test_E_q_against_series():
    # E_q(z) = sum q^(n(n-1)/2) z^n / [n]!
    mp = CTX.mp
    q = CTX.qm
    z = mp.mpf("1.3")
    s = mp.nsum(lambda n: q ** (n * (n - 1) / 2) * z ** n / mp.qp(q, q, n) * (1 - q) ** n, [0, mp.inf])
    assert abs(E_q(z, CTX).value - s) < EPS


def test_e_q_pole():
    # poles at q^-k/(1-q)
    with pytest.raises(PoleError):
        e_q(Fraction(8) / (1 - Fraction(1, 2)), CTX)


def test_epsilon_symmetry():
    mp = CTX.mp
    z = mp.mpf("0.9")
    assert abs(epsilon_q(z, CTX).value * epsilon_q(-z, CTX).value - 1) < EPS


@settings(max_examples=40, deadline=None)
@given(xs)
def test_series_and_product_routes_agree(x):
    mp = CTX.mp
    x = mp.mpf(str(x))
    S, C, dS, dC = trig_pair(x, CTX)
    scale = abs_E_imag(x, CTX) + 1
    for series, prod in ((sin_q(x, CTX).value, S), (cos_q(x, CTX).value, C),
                         (sin_q_prime(x, CTX).value, dS), (cos_q_prime(x, CTX).value, dC)):
        assert abs(series - prod) < mp.mpf(10) ** -28 * scale


def test_complex_argument_routes_agree():
    mp = CTX.mp
    z = mp.mpc("1.25", "0.75")
    S, C, _, _ = trig_pair(z, CTX)
    assert abs(sin_q(z, CTX).value - S) < EPS * 100
    assert abs(cos_q(z, CTX).value - C) < EPS * 100


def test_parity_and_values_at_zero():
    mp = CTX.mp
    x = mp.mpf("2.2")
    assert sin_q(0, CTX).value == 0 and cos_q(0, CTX).value == 1
    assert abs(sin_q(-x, CTX).value + sin_q(x, CTX).value) < EPS
    assert abs(cos_q(-x, CTX).value - cos_q(x, CTX).value) < EPS
    assert abs(sinh_q(x, CTX).value - mp.im(sin_q(mp.mpc(0, 1) * x, CTX).value)) < EPS * 10


def test_tan_q_ratio():
    mp = CTX.mp
    x = mp.mpf("0.4")
    assert abs(tan_q(x, CTX).value - sin_q(x, CTX).value / cos_q(x, CTX).value) < EPS


def test_cancellation_is_reported():
    ctx = PrecisionContext(Fraction(9, 10), 30)
    r = sin_q(ctx.mp.mpf(20), ctx)
    assert r.cancellation_digits >= 2
    assert abs(r.value - trig_pair(ctx.mp.mpf(20), ctx)[0]) < ctx.mp.mpf(10) ** -30 * 100


@pytest.mark.parametrize("x", ["0.5", "3", "17.5", "250"])
def test_imag_axis_phase_and_modulus(x):
    mp = CTX.mp
    x = mp.mpf(x)
    th, dth, la = imag_axis(x, CTX)
    S, C, _, _ = trig_pair(x, CTX)
    assert abs(mp.exp(2 * la) - (S * S + C * C)) < mp.mpf(10) ** -30 * (S * S + C * C)
    assert abs(mp.cos(th) * mp.exp(la) - C) < mp.mpf(10) ** -30 * mp.exp(la)
    assert abs(mp.sin(th) * mp.exp(la) - S) < mp.mpf(10) ** -30 * mp.exp(la)
    # theta' by central difference
    h = mp.mpf(10) ** -12
    num = (imag_axis(x + h, CTX)[0] - imag_axis(x - h, CTX)[0]) / (2 * h)
    assert abs(num - dth) < mp.mpf(10) ** -18


def test_phase_direct_sum():
    mp = CTX.mp
    x = mp.mpf(7)
    q = CTX.qm
    direct = mp.fsum(mp.atan((1 - q) * q ** j * x) for j in range(300))
    assert abs(imag_axis(x, CTX)[0] - direct) < EPS


def _bessel_reference(x, nu, q):
    with mpmath.workdps(60):
        x, nu = mpmath.mpf(x), mpmath.mpf(nu)
        Q = mpmath.mpf(q) ** 2
        pref = mpmath.qp(Q ** (nu + 1), Q) / mpmath.qp(Q, Q)
        s = mpmath.nsum(lambda n: (-1) ** n * Q ** (n * (n + nu)) * (x / 2) ** (2 * n + nu)
                        / (mpmath.qp(Q, Q, n) * mpmath.qp(Q ** (nu + 1), Q, n)), [0, mpmath.inf])
        return pref * s


@pytest.mark.parametrize("nu", ["-0.5", "0.5", "1", "2.5"])
@pytest.mark.parametrize("x", ["0.3", "4", "21"])
def test_jackson_bessel_against_direct_sum(nu, x):
    mp = CTX.mp
    ref = _bessel_reference(x, nu, "0.5")
    got = jackson_bessel2(mp.mpf(x), Fraction(nu), CTX).value
    assert abs(got - mp.convert(ref)) < mp.mpf(10) ** -28 * max(1, abs(ref))


def test_jackson_bessel_derivative():
    mp = CTX.mp
    x = mp.mpf("3.3")
    nu = Fraction(1, 2)
    h = mp.mpf(10) ** -12
    num = (jackson_bessel2(x + h, nu, CTX).value - jackson_bessel2(x - h, nu, CTX).value) / (2 * h)
    assert abs(num - jackson_bessel2_prime(x, nu, CTX).value) < mp.mpf(10) ** -18


def test_jackson_bessel_domain():
    with pytest.raises(DomainError):
        jackson_bessel2(1, Fraction(-3, 2), CTX)
    with pytest.raises(DomainError):
        jackson_bessel2(0, Fraction(1, 2), CTX)


def test_classical_limit_of_sin():
    ctx = PrecisionContext(Fraction(999, 1000), 20)
    mp = ctx.mp
    x = mp.mpf("1.1")
    assert abs(sin_q(x, ctx).value - mp.sin(x)) < 1e-2
