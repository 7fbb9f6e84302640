"""Acceptance criteria 1-9, each checked at its stated tolerance.

Every test records a single PASS/FAIL line (see the "acceptance criteria"
section of the pytest summary) and then asserts the criterion as stated.
"""
from fractions import Fraction
import math

import pytest

from qzeta import spectral as sp
from qzeta import verify as V
from qzeta.qcore import PrecisionContext, q_binomial, q_factorial_exact
from qzeta.qnumbers import bernoulli_closed_forms, q_bernoulli_numbers, q_bernoulli_poly, q_euler_polys_and_numbers
from qzeta.zeros import _constant, locate_zeros

GRID = (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10))
HALF = Fraction(1, 2)


def mpq(mp, f):
    f = Fraction(f)
    return mp.mpf(f.numerator) / f.denominator


def e(x):
    return f"{float(x):.2e}"


@pytest.fixture(scope="module")
def grid50():
    return V.build_contexts(GRID, digits=50, K=10)


def test_criterion_1_exact_values(grid50, criterion):
    sc = grid50[HALF]
    mp = sc.mp
    checks = {
        "zeta_q(2)=1/7": (sp.zeta_q(2, sc).value, Fraction(1, 7)),
        "eta_q(2)=1/42": (sp.eta_q(2, sc).value, Fraction(1, 42)),
        "zeta_q*(2)=1/2": (sp.zeta_q_star(2, sc).value, Fraction(1, 2)),
        "sigma_2(1/2;1/4)=4/7": (sp.rayleigh_sigma(1, HALF, sc).value, Fraction(4, 7)),
        "sum 1/Sin_q'=-1/2": (sp.sum_inv_sin_prime(sc).value, Fraction(-1, 2)),
    }
    errs = {k: abs(v - mpq(mp, r)) for k, (v, r) in checks.items()}
    ok = all(x < mp.mpf(10) ** -25 for x in errs.values())
    sigma = checks["sigma_2(1/2;1/4)=4/7"][0]
    detail = "; ".join(f"{k} err {e(x)}" for k, x in errs.items()) + f"; sigma_2 computed {mp.nstr(sigma, 12)}"
    criterion(1, ok, detail)
    assert ok, detail


def test_criterion_2_even_values(grid50, criterion):
    beta = q_bernoulli_numbers(6)
    tilde = q_euler_polys_and_numbers(6)["tilde"]
    worst_z = worst_s = 0
    wrong_candidate_fails = []
    for q, sc in grid50.items():
        mp = sc.mp
        for n in (1, 2, 3):
            rz = (-1) ** (n - 1) * 2 ** (2 * n - 1) * mpq(mp, beta[2 * n](q) / q_factorial_exact(2 * n, q))
            z = sp.zeta_q(2 * n, sc).value
            worst_z = max(worst_z, abs(z - rz) / abs(rz))
            base = (-1) ** n * mpq(mp, tilde[2 * n - 1](q) / q_factorial_exact(2 * n - 1, q))
            zs = sp.zeta_q_star(2 * n, sc).value
            worst_s = max(worst_s, abs(zs - 2 ** (2 * n - 2) * base) / abs(2 ** (2 * n - 2) * base))
            alt = 2 ** (2 * n - 1) * base
            wrong_candidate_fails.append(abs(zs - alt) / abs(alt) >= 1e-25)
    ok = worst_z < 1e-25 and worst_s < 1e-25 and all(wrong_candidate_fails)
    detail = (f"max rel err zeta_q(2n) {e(worst_z)}, zeta_q*(2n) with 2^(2n-2) {e(worst_s)}; "
              f"2^(2n-1) candidate fails at {sum(wrong_candidate_fails)}/{len(wrong_candidate_fails)} points")
    criterion(2, ok, detail)
    assert ok, detail


def classical_bernoulli(N):
    B = [Fraction(1)]
    for n in range(1, N + 1):
        B.append(-sum(math.comb(n + 1, k) * B[k] for k in range(n)) / (n + 1))
    return B


def test_criterion_3_symbolic_layer(criterion):
    beta = q_bernoulli_numbers(10)
    forms = bernoulli_closed_forms()
    closed = all(beta[n] == forms[n] for n in forms) and all(beta[n].is_zero() for n in (3, 5))
    expansion = all(
        q_bernoulli_poly(n, "b").coeffs()[k] == q_binomial(n, k) * beta[n - k]
        for n in range(11) for k in range(n + 1)
    )
    B = classical_bernoulli(10)
    limit = all(beta[n](1) == B[n] for n in range(11))
    ok = closed and expansion and limit
    detail = f"closed forms n<=6 {closed}; b_n(x) binomial expansion n<=10 {expansion}; beta_n(1)=B_n n<=10 {limit}"
    criterion(3, ok, detail)
    assert ok, detail


def test_criterion_4_three_route_H(criterion):
    sc = V.build_contexts([HALF], digits=50, K=10)[HALF]
    mp = sc.mp
    worst = 0
    for n in (-2, -1, 0, 1):
        for a in ("1/4", "3/4"):
            m = 1 - n
            exact = -mpq(mp, q_bernoulli_poly(m, "b")(Fraction(a))(HALF) / q_factorial_exact(m, HALF))
            ser = sp.H_q_series(n, a, sc).value
            con = sp.H_q_contour_integer(n, a, sc)
            worst = max(worst, abs(ser - con), abs(ser - exact), abs(con - exact))
    worst_int = 0
    for s in ("2.5", "3.5"):
        for a in ("1/4", "3/4"):
            ser = sp.H_q_series(mp.mpf(s), a, sc).value
            itg = sp.H_q_integral(mp.mpf(s), a, sc.ctx)
            worst_int = max(worst_int, abs(ser - itg))
    ok = worst < 1e-20 and worst_int < 1e-15
    detail = f"max pairwise diff at integers {e(worst)}; series vs integral {e(worst_int)}"
    criterion(4, ok, detail)
    assert ok, detail


def test_criterion_5_rayleigh_cross_route(criterion):
    worst = 0
    for q in (HALF, Fraction(7, 10)):
        sc = V.build_contexts([q], digits=30, K=10)[q]
        for nu in (Fraction(-1, 2), HALF):
            for n in (1, 2):
                t = sp.rayleigh_sigma_taylor(n, nu, sc.ctx)
                z = sp.rayleigh_sigma(n, nu, sc, tol=abs(t) * mpq(sc.mp, Fraction(1, 10 ** 18))).value
                worst = max(worst, abs(z - t) / abs(t))
    ok = worst < 1e-15
    detail = f"max rel err zero sum vs Taylor coefficient {e(worst)}"
    criterion(5, ok, detail)
    assert ok, detail


def test_criterion_6_recurrence_chain(grid50, criterion):
    sc = grid50[HALF]
    mp = sc.mp
    z2 = sp.zeta_q(2, sc).value
    z0 = sp.continued_zeta_q(0, sc)
    chain = mp.mpf(1) / 2 - z2 + z0 / mpq(mp, q_factorial_exact(2, HALF))
    e1p = abs(chain - mp.mpf(1) / 42)
    eta2 = abs(sp.eta_q(2, sc).value - mp.mpf(1) / 42)
    reps = V.check_recurrences(grid50, n_max=3)

    def status(prefix):
        sel = [r for r in reps if r.identity.startswith(prefix)]
        return sum(r.passed for r in sel), len(sel)

    groups = {
        "r1:ze1": status("zeta_q(2n)=sum_j"),
        "r2:ze2 (factor 1/2)": status("zeta_q*(2n)=1/2*"),
        "e1p": status("eta_q(2n)=(-1)^(n+1)"),
        "e2p (sign (-1)^(n-1))": status("eta_q*(2n+1)=(-1)^(n-1)"),
    }
    corrected = {"r2:ze2 with factor 1": status("zeta_q*(2n)=1*"), "e2p with sign (-1)^n": status("eta_q*(2n+1)=(-1)^n/")}
    ok = e1p < 1e-25 and eta2 < 1e-25 and all(p == t for p, t in groups.values())
    detail = (f"e1p at n=1 err {e(e1p)}; " + "; ".join(f"{k} {p}/{t}" for k, (p, t) in groups.items())
              + " | " + "; ".join(f"{k} {p}/{t}" for k, (p, t) in corrected.items()))
    criterion(6, ok, detail)
    assert ok, detail


def test_criterion_7_zero_layer(criterion):
    results = []
    for q in GRID:
        ctx = PrecisionContext(q, 50)
        mp = ctx.mp
        st = locate_zeros("sin", 11, ctx)
        ct = locate_zeros("cos", 11, ctx)
        xs, ys = st.values, ct.values
        inter = all(ys[k - 1] < xs[k - 1] < ys[k] for k in range(1, 11))
        A = _constant("sin", q, mp)
        dev = [abs(x * ctx.qm ** (2 * k) / A - 1) for k, x in enumerate(xs, start=1)]
        dec = all(b < a for a, b in zip(dev[3:], dev[4:]))
        res = all(en.residual <= en.bound for en in st.entries + ct.entries)
        results.append((q, inter, dec, res))
    ok = all(all(r[1:]) for r in results)
    detail = "; ".join(f"q={q}: interlacing {i}, deviation decreasing {d}, residual<=bound {r}"
                       for q, i, d, r in results)
    criterion(7, ok, detail)
    assert ok, detail


def test_criterion_8_classical_trends(criterion):
    reps = V.check_classical_limits(n_set=(1,), eta_star_probe=False)
    sel = [r for r in reps if r.identity.startswith(("|pi^2n zeta_q(2n)", "|pi^2n eta_q(2n)"))]
    ok = len(sel) == 2 and all(r.passed for r in sel)
    detail = "; ".join(f"{r.identity.split(' decreasing')[0]}: " + ", ".join(e(x) for x in r.lhs) for r in sel)
    criterion(8, ok, detail)
    assert ok, detail


def test_criterion_9_hurwitz_pole(criterion):
    sc = V.build_contexts([HALF], digits=30, K=10)[HALF]
    mp = sc.mp
    q = sc.ctx.qm
    target = -(1 - q) / mp.log(q)
    h = mp.mpf(10) ** -6
    above = h * sp.hurwitz_zeta_q(1 + h, "1/2", sc)
    below = -h * sp.hurwitz_zeta_q(1 - h, "1/2", sc)
    rel = [abs(v - target) / target for v in (above, below)]
    brackets = (above - target) * (below - target) < 0
    ok = brackets and max(rel) < 1e-4
    detail = (f"(s-1)zeta_q(s,1/2) = {mp.nstr(above, 9)} / {mp.nstr(below, 9)} around {mp.nstr(target, 9)}, "
              f"max rel {e(max(rel))}")
    criterion(9, ok, detail)
    assert ok, detail
