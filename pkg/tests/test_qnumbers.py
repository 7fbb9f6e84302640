import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qzeta.qcore import DomainError, PrecisionContext, q_binomial, q_factorial_exact
from qzeta.qfunctions import epsilon_q
from qzeta.qnumbers import (
    RationalFunctionQ,
    bernoulli_closed_forms,
    eval_rf,
    family_to_json,
    q_bernoulli_numbers,
    q_bernoulli_numbers_by_division,
    q_bernoulli_poly,
    q_euler_numbers_by_division,
    q_euler_poly,
    q_euler_polys_and_numbers,
)

q = RationalFunctionQ.q()


def bracket(n):
    return RationalFunctionQ.from_coeffs([1] * n)


def classical_bernoulli(N):
    # sum_(k=0)^n C(n+1, k) B_k = 0, B_1 = -1/2
    B = [Fraction(1)]
    for n in range(1, N + 1):
        B.append(-sum(math.comb(n + 1, k) * B[k] for k in range(n)) / (n + 1))
    return B


def test_low_order_values():
    beta = q_bernoulli_numbers(8)
    assert beta[0] == RationalFunctionQ(1)
    assert beta[1] == RationalFunctionQ(Fraction(-1, 2))
    assert beta[3].is_zero() and beta[5].is_zero() and beta[7].is_zero()
    assert beta[2] == q * (1 + q) / (4 * bracket(3))
    assert beta[2](Fraction(1, 2)) == Fraction(3, 28)
    assert beta[2](1) == Fraction(1, 6)


def test_closed_forms():
    beta = q_bernoulli_numbers(6)
    for n, cf in bernoulli_closed_forms().items():
        assert beta[n] == cf


def test_two_routes_agree():
    assert q_bernoulli_numbers(12) == q_bernoulli_numbers_by_division(12)
    assert q_euler_polys_and_numbers(12)["tilde"] == q_euler_numbers_by_division(12)


def test_classical_limit():
    beta = q_bernoulli_numbers(10)
    B = classical_bernoulli(10)
    for n in range(11):
        assert beta[n](1) == B[n]


@pytest.mark.parametrize("n", range(0, 11))
def test_polynomial_binomial_expansion(n):
    beta = q_bernoulli_numbers(n)
    coeffs = q_bernoulli_poly(n, "b").coeffs()
    for k in range(n + 1):
        assert coeffs[k] == q_binomial(n, k) * beta[n - k]


def test_polynomial_special_values():
    half = Fraction(1, 2)
    assert q_bernoulli_poly(1, "b")(q) == q - Fraction(1, 2)
    assert q_bernoulli_poly(2, "b")(half) == -(q ** 3) / (4 * bracket(3))
    beta = q_bernoulli_numbers(8)
    for n in range(9):
        assert q_bernoulli_poly(n, "b")(0) == beta[n]
        assert q_bernoulli_poly(n, "B")(0) == beta[n]
    assert q_euler_poly(0, "e")(half) == RationalFunctionQ(1)


def test_euler_genocchi():
    ev = q_euler_polys_and_numbers(9)
    t = ev["tilde"]
    assert t[0] == RationalFunctionQ(1) and t[1] == RationalFunctionQ(Fraction(-1, 2))
    assert all(t[n].is_zero() for n in (2, 4, 6, 8))
    for n in range(1, 9):
        assert ev["genocchi"][n] == bracket(n) * t[n - 1]
        assert q_euler_poly(n, "e")(0) == t[n] == q_euler_poly(n, "E")(0)


@settings(max_examples=20, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10), max_value=Fraction(9, 10)))
def test_generating_function_taylor_probe(qv):
    # t/(eps_q(t) - 1) = sum beta_n t^n/[n]! to O(t^(N+1))
    ctx = PrecisionContext(qv, 40)
    mp = ctx.mp
    N = 16
    beta = q_bernoulli_numbers(N)
    t = mp.mpf(1) / 50
    series = mp.fsum(eval_rf(beta[n], ctx) * t ** n / eval_rf(RationalFunctionQ(q_factorial_exact(n, qv)), ctx)
                     for n in range(N + 1))
    direct = t / (epsilon_q(t, ctx).value - 1)
    assert abs(series - direct) < t ** (N - 1)


def test_json_round_trip():
    beta = q_bernoulli_numbers(6)
    doc = json.loads(family_to_json("beta", beta, q=Fraction(1, 2), digits=20))
    assert doc["family"] == "beta" and doc["q"] == "1/2"
    back = [RationalFunctionQ.from_json(e) for e in doc["entries"]]
    assert back == beta
    assert doc["entries"][2]["value"].startswith("0.10714285714285714")


def test_order_limits():
    with pytest.raises(DomainError):
        q_bernoulli_numbers(-1)
    with pytest.raises(DomainError):
        q_bernoulli_numbers(10 ** 3)
    with pytest.raises(DomainError):
        (1 / (1 - q))(1)
