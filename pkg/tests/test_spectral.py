from fractions import Fraction

import pytest

from qzeta import spectral as sp
from qzeta.qcore import DomainError, PoleError, PrecisionContext, q_factorial_exact
from qzeta.qnumbers import q_bernoulli_numbers, q_bernoulli_poly

HALF = Fraction(1, 2)


def close(a, b, tol):
    return abs(a - b) < tol * max(1, abs(b))


def mpq(mp, f):
    f = Fraction(f)
    return mp.mpf(f.numerator) / f.denominator


def test_exact_values_at_half(sc_half):
    mp = sc_half.mp
    assert close(sp.zeta_q(2, sc_half).value, mp.mpf(1) / 7, 1e-19)
    assert close(sp.eta_q(2, sc_half).value, mp.mpf(1) / 42, 1e-19)
    assert close(sp.zeta_q_star(2, sc_half).value, mp.mpf(1) / 2, 1e-19)
    assert close(sp.sum_inv_sin_prime(sc_half).value, -mp.mpf(1) / 2, 1e-19)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_even_values_from_bernoulli_numbers(sc_grid, n):
    beta = q_bernoulli_numbers(2 * n)
    for q, sc in sc_grid.items():
        mp = sc.mp
        rhs = (-1) ** (n - 1) * 2 ** (2 * n - 1) * mpq(mp, beta[2 * n](q) / q_factorial_exact(2 * n, q))
        assert close(sp.zeta_q(2 * n, sc).value, rhs, 1e-18)


def test_eta_closed_form_and_trivial_zeros(sc_grid):
    for q, sc in sc_grid.items():
        mp = sc.mp
        q3 = mpq(mp, q ** 3 / (2 * q_factorial_exact(3, q)))
        assert close(sp.eta_q(2, sc).value, q3, 1e-18)
        assert abs(sp.eta_q(0, sc).value - mp.mpf(1) / 2) < 1e-18
        assert abs(sp.eta_q(-2, sc).value) < 1e-18
        assert abs(sp.eta_q(-4, sc).value) < 1e-18


def test_eta_from_bernoulli_polynomial_at_half(sc_half):
    mp = sc_half.mp
    for n in (2, 3):
        b = q_bernoulli_poly(2 * n, "b")(HALF)(HALF)
        rhs = 2 ** (2 * n - 1) * (-1) ** n * mpq(mp, b / q_factorial_exact(2 * n, HALF))
        assert close(sp.eta_q(2 * n, sc_half).value, rhs, 1e-18)


def test_complex_argument_conjugation(sc_half):
    mp = sc_half.mp
    s = mp.mpc(3, 2)
    a = sp.zeta_q(s, sc_half).value
    b = sp.zeta_q(mp.conj(s), sc_half).value
    assert abs(a - mp.conj(b)) < 1e-19


def test_series_domains(sc_half):
    with pytest.raises(DomainError):
        sp.zeta_q(1, sc_half)
    with pytest.raises(DomainError):
        sp.zeta_q_star("0.5", sc_half)


def test_continuation_integer_values(sc_half):
    mp = sc_half.mp
    assert abs(sp.continued_zeta_q(0, sc_half) + mp.mpf(1) / 2) < 1e-18
    assert abs(sp.continued_zeta_q(-2, sc_half)) < 1e-18
    assert abs(sp.continued_zeta_q_star(0, sc_half)) < 1e-18
    with pytest.raises(PoleError):
        sp.continued_zeta_q(1, sc_half)
    with pytest.raises(DomainError):
        sp.continued_zeta_q(-1, sc_half)
    with pytest.raises(DomainError):
        sp.continued_zeta_q("0.5", sc_half)


# ------------------------------------------------------------- Rayleigh sums


@pytest.mark.parametrize("nu", ["1/2", "-1/2", "1"])
@pytest.mark.parametrize("n", [1, 2])
def test_rayleigh_zero_sum_matches_taylor(sc_half, nu, n):
    z = sp.rayleigh_sigma(n, nu, sc_half).value
    t = sp.rayleigh_sigma_taylor(n, nu, sc_half.ctx)
    assert close(z, t, 1e-15 * abs(t))


@pytest.mark.parametrize("nu", ["1/2", "-1/2"])
def test_rayleigh_rescaled_trig_route(sc_half, nu):
    z = sp.rayleigh_sigma(2, nu, sc_half).value
    r = sp.rayleigh_sigma_rescaled(2, nu, sc_half).value
    assert close(z, r, 1e-15 * abs(r))


def test_rayleigh_sigma_two_value_at_half(sc_half):
    # sigma_2(1/2) = zeta_q(2) / (2q(1-q)) and zeta_q(2) = 1/7 at q = 1/2
    assert close(sp.rayleigh_sigma_taylor(1, HALF, sc_half.ctx), sc_half.mp.mpf(2) / 7, 1e-30)


def test_rayleigh_domain(sc_half):
    with pytest.raises(DomainError):
        sp.rayleigh_sigma(0, HALF, sc_half)
    with pytest.raises(DomainError):
        sp.rayleigh_sigma_taylor(1, -1, sc_half.ctx)
    with pytest.raises(DomainError):
        sp.rayleigh_sigma_rescaled(1, 1, sc_half)


# ----------------------------------------------------------- H_q, I_q, F_q


def _bernoulli_side(mp, n, a, q):
    # H_q(n, a) = -b_(1-n)(a) / [1-n]!
    m = 1 - n
    return -mpq(mp, q_bernoulli_poly(m, "b")(Fraction(a))(q) / q_factorial_exact(m, q))


@pytest.mark.parametrize("a", ["1/4", "3/4", "1/3"])
@pytest.mark.parametrize("n", [-2, 0, 1])
def test_H_integer_three_routes(sc_half, n, a):
    mp = sc_half.mp
    exact = _bernoulli_side(mp, n, a, HALF)
    assert close(sp.H_q_series(n, a, sc_half).value, exact, 1e-18)
    assert close(sp.H_q_contour_integer(n, a, sc_half), exact, 1e-18)


def test_H_vanishes_at_integers_above_one(sc_half):
    for n in (2, 3):
        assert abs(sp.H_q_contour_integer(n, "1/4", sc_half)) < 1e-18
        assert abs(sp.H_q_series(n, "1/4", sc_half).value) < 1e-18


def test_I_integer_values(sc_half):
    assert close(sp.I_q_contour_integer(0, "1/4", sc_half), -1, 1e-18)
    assert close(sp.I_q_series(0, "1/4", sc_half).value, -1, 1e-18)
    assert abs(sp.I_q_contour_integer(1, "1/4", sc_half)) < 1e-18


def test_H_series_matches_integral(sc_half):
    s = sc_half.mp.mpf("2.5")
    a = "3/4"
    assert close(sp.H_q_series(s, a, sc_half).value, sp.H_q_integral(s, a, sc_half.ctx), 1e-15)


def test_I_series_matches_integral(sc_half):
    s = sc_half.mp.mpf("1.5")
    assert close(sp.I_q_series(s, "1/4", sc_half).value, sp.I_q_integral(s, "1/4", sc_half.ctx), 1e-15)


def test_dirichlet_decomposition(sc_half):
    mp = sc_half.mp
    s = mp.mpf("2.5")
    target = sp.H_q_series(1 - s, "3/4", sc_half).value
    assert close(sp.H_q_from_dirichlet(s, "3/4", sc_half), target, 1e-16)
    # the variant with exponent s-1 and no 1/(q;q)_k weights does not reproduce H_q
    assert not close(sp.H_q_from_dirichlet_unweighted(s, "3/4", sc_half), target, 1e-6)


def test_F_small_a_limit(sc_half):
    # e_q(2ia xi) -> 1 as a -> 0, so F_q(s, a) -> zeta_q(s)
    mp = sc_half.mp
    f = sp.F_q(3, mp.mpf(10) ** -25, sc_half).value
    assert abs(f - sp.zeta_q(3, sc_half).value) < 1e-18
    with pytest.raises(DomainError):
        sp.F_q(3, 0, sc_half)


def test_integral_domains(sc_half):
    with pytest.raises(DomainError):
        sp.H_q_integral(1, "1/2", sc_half.ctx)
    with pytest.raises(DomainError):
        sp.I_q_integral(0, "1/2", sc_half.ctx)
    with pytest.raises(DomainError):
        sp.H_q_series(2.5, "-1/2", sc_half)
    with pytest.raises(DomainError):
        sp.H_q_contour_integer(0, "-1/2", sc_half)


# -------------------------------------------------------------- Hurwitz


def test_hurwitz_pole_and_residue(sc_half):
    mp = sc_half.mp
    with pytest.raises(PoleError):
        sp.hurwitz_zeta_q(1, "1/2", sc_half)
    target = -(1 - sc_half.ctx.qm) / mp.log(sc_half.ctx.qm)
    h = mp.mpf(10) ** -6
    for s in (1 + h, 1 - h):
        assert close((s - 1) * sp.hurwitz_zeta_q(s, "1/2", sc_half), target, 1e-4)


def test_hurwitz_integer_limit_is_continuous(sc_half):
    mp = sc_half.mp
    v = sp.hurwitz_zeta_q(2, "1/2", sc_half)
    w = sp.hurwitz_zeta_q(2 + mp.mpf(10) ** -12, "1/2", sc_half)
    assert close(v, w, 1e-9)


def test_value_record_format(ctx_half):
    rec = sp.value_record("zeta_q", 2, None, ctx_half, ctx_half.mp.mpf(1) / 7, ctx_half.mp.mpf(10) ** -21, 32)
    assert rec["q"] == "1/2" and rec["K_used"] == 32 and rec["digits"] == 30
    assert rec["value"]["re"].startswith("0.142857142857")
