"""Identity harness: both sides of every identity over a (q, n) grid.

Each check returns a list of :class:`IdentityReport`.  Reports come in three
kinds:

``identity``  an undisputed identity; a failure makes ``verify`` exit with 1.
``disputed``  one of several candidate forms of the same relation (differing
              constant factors or signs).  Never gates; ``adjudicate`` names
              the candidate that passes everywhere.
``report``    numerical observation without an asserted outcome.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .qcore import PrecisionContext, q_factorial_exact, q_gamma, parse_q
from .qnumbers import (
    RationalFunctionQ,
    bernoulli_closed_forms,
    q_bernoulli_numbers,
    q_bernoulli_poly,
    q_euler_polys_and_numbers,
)
from .qfunctions import cos_q, cosh_q, jackson_bessel2, sin_q, sinh_q, tan_q
from . import spectral as sp

DEFAULT_GRID = (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10))
CLASSICAL_LADDER = (Fraction(9, 10), Fraction(99, 100), Fraction(999, 1000))


@dataclass
class IdentityReport:
    identity: str
    q: Fraction
    param: str
    lhs: object
    rhs: object
    abs_err: object
    rel_err: object
    passed: bool
    kind: str = "identity"
    note: str = ""
    digits: int = 30

    @property
    def gating(self) -> bool:
        return self.kind == "identity"

    def sort_key(self):
        return (self.identity, self.q, self.param)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "q": f"{self.q.numerator}/{self.q.denominator}",
            "param": self.param,
            "lhs": _fmt(self.lhs, self.digits),
            "rhs": _fmt(self.rhs, self.digits),
            "abs_err": _fmt(self.abs_err, 5),
            "rel_err": _fmt(self.rel_err, 5),
            "pass": self.passed,
            "kind": self.kind,
            "note": self.note,
        }


def _fmt(x, digits):
    if x is None:
        return None
    if isinstance(x, (bool, str)):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [_fmt(v, digits) for v in x]
    from mpmath import mp as _mp

    return _mp.nstr(x, digits, strip_zeros=False) if _mp.im(x) == 0 else _mp.nstr(x, digits)


def compare(identity, ctx: PrecisionContext, param, lhs, rhs, kind="identity", note="", tol=None) -> IdentityReport:
    """Report with pass iff |lhs - rhs| < tol * max(1, |rhs|), tol = ctx.pass_tol by default."""
    mp = ctx.mp
    lhs = mp.convert(lhs)
    rhs = mp.convert(rhs)
    err = abs(lhs - rhs)
    rel = err / abs(rhs) if rhs != 0 else err
    tl = ctx.pass_tol if tol is None else mp.convert(tol)
    ok = bool(err < tl * max(1, abs(rhs)))
    return IdentityReport(identity, ctx.q, str(param), _real(mp, lhs), _real(mp, rhs), err, rel, ok, kind, note,
                          ctx.digits)


def _real(mp, x):
    return mp.re(x) if mp.im(x) == 0 else x


def _num(ctx: PrecisionContext, rf):
    """Exact evaluation of a rational function (or Fraction) at ctx.q, as an mpf."""
    if isinstance(rf, RationalFunctionQ):
        rf = rf(ctx.q)
    rf = Fraction(rf)
    return ctx.mp.mpf(rf.numerator) / rf.denominator


def _qfact(ctx, n):
    return _num(ctx, q_factorial_exact(n, ctx.q))


def build_contexts(q_grid, digits=50, K=10, threads=1, tol=None) -> dict:
    return {Fraction(q): sp.SpectralContext(PrecisionContext(parse_q(q), digits, tol), K=K, threads=threads)
            for q in q_grid}


# ------------------------------------------------------------- even values


def check_even_values(sctxs: dict, n_max: int = 3) -> list[IdentityReport]:
    """zeta_q(2n) against beta_2n and zeta_q*(2n) against E~_(2n-1) with both prefactors."""
    if n_max > 4:
        raise ValueError("n_max must be <= 4")
    beta = q_bernoulli_numbers(2 * n_max)
    tilde = q_euler_polys_and_numbers(2 * n_max)["tilde"]
    out = []
    for q, sc in sorted(sctxs.items()):
        ctx = sc.ctx
        for n in range(1, n_max + 1):
            z = sp.zeta_q(2 * n, sc).value
            rhs = (-1) ** (n - 1) * 2 ** (2 * n - 1) * _num(ctx, beta[2 * n]) / _qfact(ctx, 2 * n)
            out.append(compare("zeta_q(2n)=(-1)^(n-1)2^(2n-1)beta_2n/[2n]!", ctx, f"n={n}", z, rhs))
            zs = sp.zeta_q_star(2 * n, sc).value
            base = (-1) ** n * _num(ctx, tilde[2 * n - 1]) / _qfact(ctx, 2 * n - 1)
            for e, label in ((2 * n - 2, "2^(2n-2)"), (2 * n - 1, "2^(2n-1)")):
                out.append(compare(f"zeta_q*(2n)=(-1)^n {label} E~_(2n-1)/[2n-1]!", ctx, f"n={n}", zs,
                                   2 ** e * base, kind="disputed", note="prefactor candidates for zeta_q*(2n)"))
    return out


# --------------------------------------------------------------- eta values


def check_eta_values(sctxs: dict, n_max: int = 3) -> list[IdentityReport]:
    ev = q_euler_polys_and_numbers(2 * n_max)
    out = []
    for q, sc in sorted(sctxs.items()):
        ctx = sc.ctx
        mp = ctx.mp
        half = Fraction(1, 2)
        s = sp.sum_inv_sin_prime(sc).value
        out.append(compare("sum_k 1/Sin_q'(xi_k)=-1/2", ctx, "-", s, Fraction(-1, 2)))
        for n in range(0, n_max + 1):
            val = sp.eta_q(2 * n, sc).value
            b = q_bernoulli_poly(2 * n, "b")(half)
            rhs = 2 ** (2 * n - 1) * (-1) ** n * _num(ctx, b) / _qfact(ctx, 2 * n) if n else mp.mpf(1) / 2
            out.append(compare("eta_q(2n)=2^(2n-1)(-1)^n b_2n(1/2)/[2n]!", ctx, f"n={n}", val, rhs))
            if n >= 1:
                out.append(compare("eta_q(-2n)=0", ctx, f"n={n}", sp.eta_q(-2 * n, sc).value, 0))
                bodd = q_bernoulli_poly(2 * n + 1, "b")(half)
                zero = mp.zero
                out.append(IdentityReport("b_(2n+1)(1/2)=0 exactly", ctx.q, f"n={n}", _num(ctx, bodd), zero,
                                          abs(_num(ctx, bodd)), None, bodd == 0, digits=ctx.digits))
                out.append(IdentityReport("eta_q(2n)>0", ctx.q, f"n={n}", val, 0, None, None, bool(val > 0),
                                          digits=ctx.digits))
            # eta_q*(2n+1) with e_2n(1/2) = (2^2n e_2n(1/2)) / 2^2n
            e2n = _num(ctx, ev["e_half"][2 * n]) / mp.mpf(2) ** (2 * n)
            lhs = sp.eta_q_star(2 * n + 1, sc).value
            for e, label in ((2 * n - 1, "2^(2n-1)"), (2 * n + 1, "2^(2n+1)")):
                rhs = mp.mpf(2) ** e * (-1) ** n * e2n / _qfact(ctx, 2 * n)
                out.append(compare(f"eta_q*(2n+1)={label}(-1)^n e_2n(1/2)/[2n]!", ctx, f"n={n}", lhs, rhs,
                                   kind="disputed", note="prefactor candidates for eta_q*(2n+1)"))
        q3 = ctx.qm ** 3 / (2 * _qfact(ctx, 3))
        out.append(compare("eta_q(2)=q^3/(2[3]!)", ctx, "-", sp.eta_q(2, sc).value, q3))
    return out


# ---------------------------------------------------------------- recurrences


def check_recurrences(sctxs: dict, n_max: int = 3) -> list[IdentityReport]:
    out = []
    for q, sc in sorted(sctxs.items()):
        ctx = sc.ctx
        mp = ctx.mp
        qm = ctx.qm
        eta = {m: sp.eta_q(m, sc).value for m in range(0, 2 * n_max + 1, 2)}
        eta_s = {m: sp.eta_q_star(m, sc).value for m in range(1, 2 * n_max + 2, 2)}
        zeta = {m: sp.continued_zeta_q(m, sc) for m in range(0, 2 * n_max + 1, 2)}
        zeta_s = {m: sp.zeta_q_star(m, sc).value for m in range(2, 2 * n_max + 1, 2)}
        for n in range(1, n_max + 1):
            # zeta_q(2n) from eta_q at even arguments
            rhs = sum((-1) ** (j + 1) / _qfact(ctx, 2 * j) * qm ** (j * (2 * j - 1)) * eta[2 * n - 2 * j]
                      for j in range(n + 1))
            out.append(compare("zeta_q(2n)=sum_j (-1)^(j+1) q^(j(2j-1)) eta_q(2n-2j)/[2j]!", ctx, f"n={n}",
                               zeta[2 * n], rhs))
            # zeta_q*(2n) from eta_q* at odd arguments, with and without the factor 1/2
            core = sum((-1) ** j / _qfact(ctx, 2 * j + 1) * qm ** (j * (2 * j + 1)) * eta_s[2 * n - 2 * j - 1]
                       for j in range(n))
            for c, label in ((mp.one, "1"), (mp.one / 2, "1/2")):
                out.append(compare(f"zeta_q*(2n)={label}*sum_j (-1)^j q^(j(2j+1)) eta_q*(2n-2j-1)/[2j+1]!", ctx,
                                   f"n={n}", zeta_s[2 * n], c * core, kind="disputed",
                                   note="overall factor candidates"))
            # eta_q(2n) from zeta_q, zeta_q(0) through continuation
            rhs = (-1) ** (n + 1) / (2 * _qfact(ctx, 2 * n - 1)) + sum(
                (-1) ** (k + 1) / _qfact(ctx, 2 * k) * zeta[2 * n - 2 * k] for k in range(n + 1))
            out.append(compare("eta_q(2n)=(-1)^(n+1)/(2[2n-1]!)+sum_k (-1)^(k+1) zeta_q(2n-2k)/[2k]!", ctx,
                               f"n={n}", eta[2 * n], rhs))
        for n in range(1, n_max + 1):
            tail = sum((-1) ** k / _qfact(ctx, 2 * k + 1) * zeta_s[2 * n - 2 * k] for k in range(n))
            for sgn, label in ((n, "(-1)^n"), (n - 1, "(-1)^(n-1)")):
                rhs = (-1) ** sgn / (2 * _qfact(ctx, 2 * n)) + tail
                out.append(compare(f"eta_q*(2n+1)={label}/(2[2n]!)+sum_k (-1)^k zeta_q*(2n-2k)/[2k+1]!", ctx,
                                   f"n={n}", eta_s[2 * n + 1], rhs,
                                   kind="disputed", note="sign candidates of the constant term"))
    return out


# ----------------------------------------------------------- classical limits


def _trend(identity, errors, ladder, ctx, note=""):
    """Passes when the error sequence strictly decreases (or is identically negligible)."""
    mp = ctx.mp
    tiny = all(e < ctx.pass_tol for e in errors)
    dec = all(b < a for a, b in zip(errors, errors[1:]))
    param = "q=" + ",".join(f"{q.numerator}/{q.denominator}" for q in ladder)
    return IdentityReport(identity, ladder[-1], param, list(errors), None, errors[-1], None, bool(dec or tiny),
                          note=note, digits=8)


def eta_star_one_accelerated(q, digits: int = 20, K: int = 40, threads: int = 1):
    """eta_q*(1) from K zeros of Cos_q, accelerated by repeated averaging of partial sums.

    The terms alternate and for q close to 1 decay slowly before their
    eventual super-geometric drop, which is the regime where averaging helps.
    Returns (value, K).
    """
    ctx = PrecisionContext(parse_q(q), digits)
    sc = sp.SpectralContext(ctx, K=K, threads=threads)
    mp = ctx.mp
    partial = []
    acc = mp.zero
    for k in range(1, K + 1):
        acc += -mp.power(sc.point("cos", k).x, -1) * sc.inv_cos_prime(k)
        partial.append(acc)
    level = partial
    while len(level) > 1:
        level = [(a + b) / 2 for a, b in zip(level, level[1:])]
    return level[0], K


def check_classical_limits(ladder=CLASSICAL_LADDER, n_set=(1, 2), digits: int = 30,
                           eta_star_probe: bool = True, probe_K: int = 40, threads: int = 1) -> list[IdentityReport]:
    """Errors of pi^2n zeta_q(2n), pi^2n eta_q(2n), pi^2n zeta_q*(2n)/(2^2n - 1) against zeta(2n), eta(2n).

    The q-side uses the exact even-value formulas (q-Bernoulli and q-Euler
    data), so no zero tables are needed near q = 1.
    """
    N = 2 * max(n_set)
    beta = q_bernoulli_numbers(N)
    tilde = q_euler_polys_and_numbers(N)["tilde"]
    out = []
    ctx0 = PrecisionContext(ladder[0], digits)
    mp = ctx0.mp
    for n in n_set:
        z_cl = mp.zeta(2 * n)
        e_cl = (1 - mp.mpf(2) ** (1 - 2 * n)) * z_cl
        pz, pe, ps = [], [], []
        for q in ladder:
            ctx = PrecisionContext(q, digits)
            pi = mp.pi ** (2 * n)
            zq = (-1) ** (n - 1) * 2 ** (2 * n - 1) * _num(ctx, beta[2 * n]) / _qfact(ctx, 2 * n)
            b = q_bernoulli_poly(2 * n, "b")(Fraction(1, 2))
            eq = 2 ** (2 * n - 1) * (-1) ** n * _num(ctx, b) / _qfact(ctx, 2 * n)
            zs = (-1) ** n * 2 ** (2 * n - 2) * _num(ctx, tilde[2 * n - 1]) / _qfact(ctx, 2 * n - 1)
            pz.append(abs(pi * zq - z_cl))
            pe.append(abs(pi * eq - e_cl))
            ps.append(abs(pi * zs / (2 ** (2 * n) - 1) - z_cl))
        out.append(_trend("|pi^2n zeta_q(2n) - zeta(2n)| decreasing", pz, ladder, ctx0, f"n={n}"))
        out.append(_trend("|pi^2n eta_q(2n) - eta(2n)| decreasing", pe, ladder, ctx0, f"n={n}"))
        out.append(_trend("|pi^2n zeta_q*(2n)/(2^2n-1) - zeta(2n)| decreasing", ps, ladder, ctx0, f"n={n}"))
    if eta_star_probe:
        q = ladder[-1]
        val, K = eta_star_one_accelerated(q, K=probe_K, threads=threads)
        ctx = PrecisionContext(q, 20)
        out.append(IdentityReport("eta_q*(1) observed near q=1", Fraction(q), f"K={K}", val,
                                  [ctx.mp.mpf(1) / 2, ctx.mp.log(2) / ctx.mp.pi], None, None, True, kind="report",
                                  note="candidates: 1/2 (recurrence chain), log(2)/pi (eta(1)/pi)", digits=12))
    return out


# --------------------------------------------------------------- Bessel layer


def check_bessel_layer(sctxs: dict, n_max: int = 2, x="1/10") -> list[IdentityReport]:
    """Rayleigh sums by zeros, by Taylor coefficients and by the trigonometric series;
    the tangent/cotangent expansions; the half-integer Bessel relations."""
    out = []
    half = Fraction(1, 2)
    beta = q_bernoulli_numbers(2 * n_max)
    gen = q_euler_polys_and_numbers(2 * n_max)["genocchi"]
    for q, sc in sorted(sctxs.items()):
        ctx = sc.ctx
        mp = ctx.mp
        qm = ctx.qm
        sig = {}
        for nu in (half, -half):
            for n in range(1, n_max + 1):
                ty = sp.rayleigh_sigma_taylor(n, nu, ctx)
                # large Bessel zeros need hundreds of digits; sum only as far as the comparison needs
                zs = sp.rayleigh_sigma(n, nu, sc, tol=ctx.pass_tol * abs(ty) / 1000).value
                rs = sp.rayleigh_sigma_rescaled(n, nu, sc).value
                sig[(nu, n)] = ty
                out.append(compare("sigma_2n(nu) zero sum = Taylor coefficient", ctx, f"nu={nu},n={n}", zs, ty))
                out.append(compare("sigma_2n(nu) zero sum = trigonometric series", ctx, f"nu={nu},n={n}", zs, rs))
                # candidate with 2^(2-2n) in place of 2^(1-2n)
                out.append(compare("sigma_2n(nu) = 2^(2-2n)(1-q)^(1-2n)[q^-1] trigonometric sum", ctx,
                                   f"nu={nu},n={n}", zs, 2 * rs, kind="disputed",
                                   note="factor-2 candidate of the rescaled route"))
                out.append(compare("sigma_2n(nu) = 2^(1-2n)(1-q)^(1-2n)[q^-1] trigonometric sum", ctx,
                                   f"nu={nu},n={n}", zs, rs, kind="disputed",
                                   note="factor-2 candidate of the rescaled route"))
            for n in range(1, n_max + 1):
                if nu == half:
                    rhs = 2 * (-1) ** (n - 1) / qm * (1 - qm) ** (1 - 2 * n) * _num(ctx, beta[2 * n]) / _qfact(ctx, 2 * n)
                    lab = "sigma_2n(1/2) = {c}(-1)^(n-1) q^-1 (1-q)^(1-2n) beta_2n/[2n]!"
                else:
                    rhs = (-1) ** n * (1 - qm) ** (1 - 2 * n) * _num(ctx, gen[2 * n]) / _qfact(ctx, 2 * n)
                    lab = "sigma_2n(-1/2) = {c}(-1)^n (1-q)^(1-2n) G_2n/[2n]!"
                for c, cl in ((1, "2*"), (half, "")):
                    out.append(compare(lab.format(c=cl), ctx, f"n={n}", sig[(nu, n)], rhs * _num(ctx, c),
                                       kind="disputed", note=f"normalisation of sigma_2n({nu}) in closed form"))
        # expansions in the doubled normalisation sigma' = 2 sigma
        xm = mp.mpf(Fraction(x).numerator) / Fraction(x).denominator
        y = xm / (2 * (1 - qm))
        # truncate once sigma_2n x^2n is far below the pass tolerance (sigma_2n ~ j_1^-2n)
        sm, sp_ = [], []
        for n in range(1, 200):
            sm.append(sp.rayleigh_sigma_taylor(n, -half, ctx))
            sp_.append(sp.rayleigh_sigma_taylor(n, half, ctx))
            if n > 2 and max(abs(sm[-1]), abs(sp_[-1])) * xm ** (2 * n - 1) < ctx.pass_tol * mp.mpf(10) ** -5:
                break
        M = len(sm)
        tan = tan_q(y, ctx).value
        rhs = sum(2 * sm[n - 1] * xm ** (2 * n - 1) for n in range(1, M + 1))
        out.append(compare("Tan_q(x/(2(1-q))) = sum 2 sigma_2n(-1/2) x^(2n-1)", ctx, f"x={x}", tan, rhs))
        lhs = xm / (1 - qm) * cosh_q(y, ctx).value / sinh_q(y, ctx).value
        rhs = 2 - qm / (1 - qm) * sum((-1) ** n * xm ** (2 * n) * 2 * sp_[n - 1] for n in range(1, M + 1))
        out.append(compare("x/(1-q) Cosh_q/Sinh_q(x/(2(1-q))) = 2 - q/(1-q) sum (-1)^n x^2n 2 sigma_2n(1/2)",
                           ctx, f"x={x}", lhs, rhs))
        # half-integer order relations, bare prefactor and the one scaled by (1 - q^2)
        xb = mp.mpf(1) / 4
        yb = xb / (2 * (1 - qm))
        g = q_gamma(mp.mpf(1) / 2, ctx.with_q(ctx.q ** 2))
        pre = mp.sqrt(2 / (xb * (1 - qm ** 2))) / g
        j12 = jackson_bessel2(xb, mp.mpf(1) / 2, ctx).value
        j32 = jackson_bessel2(xb, mp.mpf(3) / 2, ctx).value
        s_, c_ = sin_q(yb, ctx).value, cos_q(yb, ctx).value
        for f, lab in ((1, "without (1-q^2)"), (1 - qm ** 2, "times (1-q^2)")):
            out.append(compare(f"J_1/2 = Sin_q relation, prefactor {lab}", ctx, "x=1/4", j12, f * pre * s_,
                               kind="disputed", note="prefactor of the J_1/2 relation"))
            out.append(compare(f"J_3/2 = Sin_q, Cos_q relation, prefactor {lab}", ctx, "x=1/4", j32,
                               f * pre / qm * (s_ / yb - c_), kind="disputed",
                               note="prefactor of the J_3/2 relation"))
        # zeros of J_1/2(.; q^2) and of Sin_q
        jt = sc.table("bessel", 3, nu=half)
        for k in (1, 2, 3):
            for f, lab in ((((1 - qm) / 2), "j_k,1/2 (1-q)/2"), (1 / (2 * (1 - qm)), "j_k,1/2 / (2(1-q))")):
                out.append(compare(f"xi_k = {lab}", ctx, f"k={k}", sc.point("sin", k).x, jt.value(k) * f,
                                   kind="disputed", note="scaling between xi_k and j_k,1/2"))
        # spot check of a non half-integer order
        ty = sp.rayleigh_sigma_taylor(1, 1, ctx)
        out.append(compare("sigma_2(1) zero sum = Taylor coefficient", ctx, "nu=1,n=1",
                           sp.rayleigh_sigma(1, 1, sc, tol=ctx.pass_tol * abs(ty) / 1000).value, ty))
    return out


# ------------------------------------------------------ contour and Hurwitz


def _b_value(ctx, n, a):
    """-b_(1-n)(a)/[1-n]! exactly (n <= 1)."""
    m = 1 - n
    return -_num(ctx, q_bernoulli_poly(m, "b")(Fraction(a))) / _qfact(ctx, m)


def _e_value(ctx, n, a):
    """-e_(-n)(a)/[-n]! exactly (n <= 0)."""
    from .qnumbers import q_euler_poly

    m = -n
    return -_num(ctx, q_euler_poly(m, "e")(Fraction(a))) / _qfact(ctx, m)


def check_contour_layer(sctxs: dict, a_values=("1/4", "3/4"), s_values=("5/2", "7/2")) -> list[IdentityReport]:
    out = []
    for q, sc in sorted(sctxs.items()):
        ctx = sc.ctx
        mp = ctx.mp
        qm = ctx.qm
        for a_ in a_values:
            a = Fraction(a_)
            for n in (-2, -1, 0, 1):
                ex = _b_value(ctx, n, a)
                hs = sp.H_q_series(n, a, sc).value
                hc = sp.H_q_contour_integer(n, a, sc)
                out.append(compare("H_q(n,a) series = -b_(1-n)(a)/[1-n]!", ctx, f"n={n},a={a}", hs, ex))
                out.append(compare("H_q(n,a) contour = -b_(1-n)(a)/[1-n]!", ctx, f"n={n},a={a}", hc, ex))
                out.append(compare("H_q(n,a) series = contour", ctx, f"n={n},a={a}", hs, hc))
            for n in (2, 3):
                out.append(compare("H_q(n,a)=0, n>=2", ctx, f"n={n},a={a}", sp.H_q_contour_integer(n, a, sc), 0))
            for n in (-2, -1, 0):
                ex = _e_value(ctx, n, a)
                out.append(compare("I_q(n,a) contour = -e_(-n)(a)/[-n]!", ctx, f"n={n},a={a}",
                                   sp.I_q_contour_integer(n, a, sc), ex))
                out.append(compare("I_q(n,a) series = -e_(-n)(a)/[-n]!", ctx, f"n={n},a={a}",
                                   sp.I_q_series(n, a, sc).value, ex))
            for n in (1, 2):
                out.append(compare("I_q(n,a)=0, n>=1", ctx, f"n={n},a={a}", sp.I_q_contour_integer(n, a, sc), 0))
            for s_ in s_values:
                s = mp.mpf(Fraction(s_).numerator) / Fraction(s_).denominator
                out.append(compare("H_q(s,a) series = integral", ctx, f"s={s_},a={a}",
                                   sp.H_q_series(s, a, sc).value, sp.H_q_integral(s, a, ctx)))
                out.append(compare("I_q(s,a) series = integral", ctx, f"s={s_},a={a}",
                                   sp.I_q_series(s, a, sc).value, sp.I_q_integral(s, a, ctx)))
            # Dirichlet-type decomposition at s = 3
            hs = sp.H_q_series(-2, a, sc).value
            out.append(compare("H_q(1-s,a) = (2i)^-s F_q(s,a) + (-2i)^-s F_q(s,-a) - R_q(s,a)", ctx,
                               f"s=3,a={a}", sp.H_q_from_dirichlet(3, a, sc), hs, kind="disputed",
                               note="exponent and remainder candidates of the Dirichlet-type decomposition"))
            out.append(compare("H_q(1-s,a) = (2i)^(s-1) F_q(s,a) + (-2i)^(s-1) F_q(s,-a) - R_q(s,a)", ctx,
                               f"s=3,a={a}", sp.H_q_from_dirichlet_unweighted(3, a, sc), hs, kind="disputed",
                               note="exponent and remainder candidates of the Dirichlet-type decomposition"))
            # scaling of F_q in a, m = 1
            s = mp.mpf(3)
            lhs = sp.F_q(s, a * q, sc).value
            am = _num(ctx, a)
            for with_1mq, lab in ((True, "(-2ia(1-q))^j"), (False, "(-2ia)^j")):
                c = -2 * mp.mpc(0, 1) * am * ((1 - qm) if with_1mq else 1)
                rhs = sp.F_q(s, a, sc).value + c * sp.F_q(s - 1, a, sc).value
                out.append(compare(f"F_q(s,qa) = sum_j qbinom(1,j) q^C(j,2) {lab} F_q(s-j,a)", ctx,
                                   f"s=3,a={a}", lhs, rhs, kind="disputed", note="scaling factor candidates"))
        # Hurwitz: pole, reflection with eta_q at a = 1/2
        a = Fraction(3, 4)
        res = -(1 - qm) / mp.log(qm)
        h = mp.mpf(10) ** -6
        lo = -h * sp.hurwitz_zeta_q(1 - h, a, sc)
        hi = h * sp.hurwitz_zeta_q(1 + h, a, sc)
        out.append(compare("(s-1) zeta_q(s,a) -> -(1-q)/log q at s=1-1e-6", ctx, "a=3/4", lo, res, tol=mp.mpf(10) ** -4))
        out.append(compare("(s-1) zeta_q(s,a) -> -(1-q)/log q at s=1+1e-6", ctx, "a=3/4", hi, res, tol=mp.mpf(10) ** -4))
        out.append(IdentityReport("(s-1) zeta_q(s,a) brackets the residue", ctx.q, "a=3/4", [lo, hi], res, None, None,
                                  bool(min(lo, hi) <= res <= max(lo, hi)), digits=12))
        for s in (2, 4):
            lhs = sp.hurwitz_zeta_q(1 - s, Fraction(1, 2), sc)
            rhs = -mp.power(2, 1 - s) * mp.cos(mp.pi * s / 2) * q_gamma(s, ctx) * sp.eta_q(s, sc).value
            out.append(compare("zeta_q(1-s,1/2) = -2^(1-s) cos(pi s/2) Gamma_q(s) eta_q(s)", ctx, f"s={s}", lhs, rhs))
        # continuation at integers, and the a = 0 values of H_q and I_q
        out.append(compare("zeta_q(0) = -1/2", ctx, "-", sp.continued_zeta_q(0, sc), Fraction(-1, 2)))
        out.append(compare("zeta_q(-2) = 0", ctx, "-", sp.continued_zeta_q(-2, sc), 0))
        out.append(compare("zeta_q*(0) = 0", ctx, "-", sp.continued_zeta_q_star(0, sc), 0))
        out.append(compare("zeta_q(2) continuation = series", ctx, "-", sp.continued_zeta_q(2, sc),
                           sp.zeta_q(2, sc).value))
        h10 = sp.H_q_contour_integer(1, 0, sc)
        i00 = sp.I_q_contour_integer(0, 0, sc)
        for v, lab in ((-1, "-1"), (1, "+1")):
            out.append(compare(f"H_q(1,0) = {lab}", ctx, "-", h10, v, kind="disputed", note="sign of H_q(1,0)"))
        for v, lab in ((-1, "-1"), (2, "2")):
            out.append(compare(f"I_q(0,0) = {lab}", ctx, "-", i00, v, kind="disputed", note="value of I_q(0,0)"))
    return out


# ------------------------------------------------------------------ zeros


def check_zero_layer(sctxs: dict, K: int = 10) -> list[IdentityReport]:
    from .zeros import asymptotic_diagnostics

    out = []
    for q, sc in sorted(sctxs.items()):
        ctx = sc.ctx
        st = sc.table("sin", K)
        ct = sc.table("cos", K + 1)
        xs, ys = st.values[:K], ct.values[:K + 1]
        inter = all(ys[i] < xs[i] < ys[i + 1] for i in range(K))
        out.append(IdentityReport("eta_k < xi_k < eta_(k+1)", ctx.q, f"k<={K}", None, None, None, None, inter,
                                  digits=ctx.digits))
        res_ok = all(e.residual <= e.bound for t in (st, ct) for e in t.entries)
        out.append(IdentityReport("zero residual <= certified bound", ctx.q, f"k<={K}", None, None, None, None, res_ok,
                                  digits=ctx.digits))
        diag = asymptotic_diagnostics(st, ct, ctx)
        out.append(IdentityReport("|xi_k q^2k/A - 1| decreasing for k>=4", ctx.q, f"k<={K}",
                                  diag["scaled_sin_zeros"], None, None, None, diag["deviation_decreasing"],
                                  digits=ctx.digits))
        out.append(IdentityReport("xi_k q^2k within 25% of A", ctx.q, f"k<={K}", diag["scaled_sin_zeros"], None,
                                  None, None, all(diag["within_25pct_of_A"]), kind="report",
                                  note="diagnostic band; xi_k q^2k/A tends to q^2"))
        out.append(IdentityReport("xi_k q^2k / (A q^2) -> 1", ctx.q, f"k<={K}", diag["scaled_by_q2"], None, None,
                                  None, True, kind="report"))
        for key, lab in (("cos_over_sin_prime_positive", "Cos_q/Sin_q'(xi_k) > 0"),
                         ("sin_prime_sign_alternates", "sign Sin_q'(xi_k) = (-1)^k"),
                         ("sin_weight_bounded", "q^2k Cos_q/Sin_q'(xi_k) bounded"),
                         ("cos_weight_bounded", "q^2k Sin_q/Cos_q'(eta_k) bounded"),
                         ("interlacing", "interlacing (diagnostics)")):
            out.append(IdentityReport(lab, ctx.q, f"k<={K}", None, None, None, None, bool(diag[key]),
                                      digits=ctx.digits))
        ratios_ok = all(diag["ratios_within_delta"])
        out.append(IdentityReport("xi_(k+1)/xi_k within 5% of q^-2 after burn-in", ctx.q, f"k<={K}",
                                  diag["ratios"], None, None, None, ratios_ok, digits=ctx.digits))
    return out


def check_symbolic_layer(N: int = 10) -> list[IdentityReport]:
    """Exact identities over Q(q); q is recorded as 1 (they hold for all q)."""
    from .qnumbers import q_bernoulli_numbers_by_division, q_euler_numbers_by_division

    out = []
    one = Fraction(1)
    beta = q_bernoulli_numbers(N)
    for n, cf in sorted(bernoulli_closed_forms().items()):
        out.append(IdentityReport("beta_n closed form", one, f"n={n}", str(beta[n]), str(cf), None, None,
                                  beta[n] == cf, digits=30))
    out.append(IdentityReport("beta_n recurrence = series division", one, f"n<={N}", None, None, None, None,
                              beta == q_bernoulli_numbers_by_division(N), digits=30))
    ev = q_euler_polys_and_numbers(N)
    out.append(IdentityReport("E~_n recurrence = series division", one, f"n<={N}", None, None, None, None,
                              ev["tilde"] == q_euler_numbers_by_division(N), digits=30))
    out.append(IdentityReport("beta_(2k+1) = 0, E~_(2k) = 0", one, f"k>=1,n<={N}", None, None, None, None,
                              all(beta[n].is_zero() for n in range(3, N + 1, 2))
                              and all(ev["tilde"][n].is_zero() for n in range(2, N + 1, 2)), digits=30))
    return out


# -------------------------------------------------------------- adjudication


def adjudicate(reports: list[IdentityReport]) -> dict:
    """For every group of disputed candidates, the candidates that pass at every grid point."""
    groups: dict = {}
    for r in reports:
        if r.kind != "disputed":
            continue
        g = groups.setdefault(r.note, {})
        g.setdefault(r.identity, []).append(r.passed)
    out = {}
    for note, cands in sorted(groups.items()):
        winners = sorted(c for c, flags in cands.items() if all(flags))
        out[note] = {"candidates": sorted(cands), "winners": winners, "unique": len(winners) == 1}
    return out


@dataclass
class VerifyConfig:
    q_grid: tuple = DEFAULT_GRID
    digits: int = 50
    K: int = 10
    n_max: int = 3
    tol: object = None
    threads: int = 1
    ladder: tuple = CLASSICAL_LADDER
    sections: tuple = ("symbolic", "zeros", "even", "eta", "recurrences", "bessel", "contour", "limits")
    eta_star_probe: bool = True


def run_verify(cfg: VerifyConfig) -> tuple[list[IdentityReport], dict]:
    sctxs = build_contexts(cfg.q_grid, cfg.digits, cfg.K, cfg.threads, cfg.tol)
    reports: list[IdentityReport] = []
    sec = set(cfg.sections)
    if "symbolic" in sec:
        reports += check_symbolic_layer()
    if "zeros" in sec:
        reports += check_zero_layer(sctxs, cfg.K)
    if "even" in sec:
        reports += check_even_values(sctxs, cfg.n_max)
    if "eta" in sec:
        reports += check_eta_values(sctxs, cfg.n_max)
    if "recurrences" in sec:
        reports += check_recurrences(sctxs, cfg.n_max)
    if "bessel" in sec:
        reports += check_bessel_layer(sctxs, min(cfg.n_max, 2))
    if "contour" in sec:
        reports += check_contour_layer(sctxs)
    if "limits" in sec:
        reports += check_classical_limits(cfg.ladder, eta_star_probe=cfg.eta_star_probe, threads=cfg.threads)
    reports.sort(key=lambda r: r.sort_key())
    return reports, adjudicate(reports)


def exit_status(reports) -> int:
    """0 when every gating identity passes, else 1."""
    return 0 if all(r.passed for r in reports if r.gating) else 1


def report_json(reports, adjudication, cfg: VerifyConfig | None = None) -> str:
    doc = {
        "config": None if cfg is None else {
            "q_grid": [f"{Fraction(q).numerator}/{Fraction(q).denominator}" for q in cfg.q_grid],
            "digits": cfg.digits,
            "K": cfg.K,
            "n_max": cfg.n_max,
            "tol": None if cfg.tol is None else str(cfg.tol),
        },
        "summary": {
            "total": len(reports),
            "gating_failures": sum(1 for r in reports if r.gating and not r.passed),
            "disputed": adjudication,
        },
        "reports": [r.to_dict() for r in reports],
    }
    return json.dumps(doc, indent=2)
