"""q-exponentials, q-trigonometric functions and the second Jackson q-Bessel function.

Two independent evaluation routes are provided for Sin_q / Cos_q:

* power series with adaptive precision (``sin_q``, ``cos_q``...), which report
  how many digits were lost to cancellation;
* the product route through E_q(ix) = Cos_q(x) + i Sin_q(x) for real x
  (``trig_pair``), which is cancellation free and used for zero finding.

For real x, E_q(ix) = |E_q(ix)| exp(i*theta(x)) where
theta(x) = sum_j atan((1-q) q^j x) increases strictly from 0 to infinity.
``imag_axis`` returns theta, theta' and log|E_q(ix)|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qcore import (
    DomainError,
    PoleError,
    PrecisionContext,
    mp_context,
    qprod,
    qprod_logderiv,
    tail_switch,
)


@dataclass(frozen=True)
class EvalResult:
    """Numeric value plus bookkeeping from the evaluation."""

    value: object
    terms_used: int
    cancellation_digits: int = 0


def _conv(mp, z):
    return mp.convert(z)


# ---------------------------------------------------------------- exponentials


def E_q(z, ctx: PrecisionContext) -> EvalResult:
    """Big q-exponential E_q(z) = (-(1-q)z; q)_inf, entire in z."""
    mp = ctx.mp
    z = _conv(mp, z)
    qm = ctx.qm
    b = (1 - qm) * z
    v = qprod(mp, b, qm)
    n = 0 if b == 0 else max(1, int(math.log(float(abs(b)) + 1e-300 + 1) / -math.log(float(ctx.q))) + 1)
    return EvalResult(v, n)


def _on_small_e_pole(mp, w, q) -> int | None:
    """Index k when w = q^-k for an integer k >= 0, else None."""
    if mp.im(w) != 0:
        return None
    w = mp.re(w)
    if w < 1:
        return None
    k = int(mp.nint(mp.log(w) / -mp.log(q)))
    if k >= 0 and abs(w * q ** k - 1) < mp.mpf(10) ** (-(mp.dps - 5)):
        return k
    return None


def e_q(z, ctx: PrecisionContext) -> EvalResult:
    """Small q-exponential e_q(z) = 1/((1-q)z; q)_inf.

    Poles sit at z = q^-k/(1-q), k >= 0.
    """
    mp = ctx.mp
    z = _conv(mp, z)
    qm = ctx.qm
    w = (1 - qm) * z
    k = _on_small_e_pole(mp, w, qm)
    if k is not None:
        raise PoleError(f"e_q has a pole at z = q^-{k}/(1-q)")
    d = qprod(mp, -w, qm)
    return EvalResult(1 / d, E_q(-z, ctx).terms_used)


def epsilon_q(z, ctx: PrecisionContext) -> EvalResult:
    """eps_q(z) = e_q(z/2) E_q(z/2) = E_q(z/2) / E_q(-z/2)."""
    mp = ctx.mp
    z = _conv(mp, z)
    h = z / 2
    a = e_q(h, ctx)
    b = E_q(h, ctx)
    return EvalResult(a.value * b.value, a.terms_used + b.terms_used)


# --------------------------------------------------------- series evaluation


def _log10_bracket_fact(n: int, q: float) -> float:
    return sum(math.log10((1 - q ** j) / (1 - q)) for j in range(1, n + 1))


def _series(z, ctx: PrecisionContext, parity: int, alternating: bool, derivative: bool) -> EvalResult:
    """sum over n = parity mod 2 of sign * q^(n(n-1)/2) z^n / [n]!  (or its z-derivative).

    Working precision is raised by the size of the largest term so that the
    final absolute error stays near 10^-dps.
    """
    qf = float(ctx.q)
    mp0 = ctx.mp
    z = _conv(mp0, z)
    az = float(abs(z)) if z != 0 else 0.0
    if az == 0.0:
        v = mp0.zero
        if (parity == 0 and not derivative) or (parity == 1 and derivative):
            v = mp0.one
        return EvalResult(v, 1)
    lz = math.log10(az)
    lq = math.log10(qf)
    # scan log10 |term_n| to find the peak and the cut-off
    peak = -math.inf
    lf = 0.0
    n = 0
    stop = None
    target = -(ctx.dps + 5)
    while True:
        if n > 0:
            lf += math.log10((1 - qf ** n) / (1 - qf))
        lt = n * (n - 1) / 2 * lq + n * lz - lf
        if derivative and n > 0:
            lt += math.log10(n) - lz
        peak = max(peak, lt)
        if n > 2 and lt < target and lt < peak:
            stop = n
            break
        n += 1
    extra = max(0, int(math.ceil(peak))) + 5
    mp = mp_context(ctx.dps + extra)
    q = mp.mpf(ctx.q.numerator) / ctx.q.denominator
    zz = mp.convert(z)
    total = mp.zero
    term = mp.one  # q^(n(n-1)/2) z^n / [n]!
    qpow = mp.one  # q^(n-1) at step n
    bigterm = mp.zero
    used = 0
    for n in range(stop + 1):
        if n > 0:
            term = term * zz * qpow * (1 - q) / (1 - qpow * q)
            qpow *= q
        if n % 2 != parity or (derivative and n == 0):
            continue
        sgn = -1 if (alternating and (n // 2) % 2) else 1
        t = sgn * (n * term / zz if derivative else term)
        total += t
        bigterm = max(bigterm, abs(t))
        used += 1
    v = mp0.convert(total)
    if total == 0:
        canc = ctx.dps
    else:
        canc = max(0, int(math.floor(float(mp.log10(bigterm / abs(total))))))
    return EvalResult(v, used, canc)


def sin_q(z, ctx: PrecisionContext) -> EvalResult:
    """Sin_q(z) = sum_k (-1)^k q^(k(2k+1)) z^(2k+1) / [2k+1]!."""
    return _series(z, ctx, 1, True, False)


def cos_q(z, ctx: PrecisionContext) -> EvalResult:
    """Cos_q(z) = sum_k (-1)^k q^(k(2k-1)) z^(2k) / [2k]!."""
    return _series(z, ctx, 0, True, False)


def sinh_q(z, ctx: PrecisionContext) -> EvalResult:
    return _series(z, ctx, 1, False, False)


def cosh_q(z, ctx: PrecisionContext) -> EvalResult:
    return _series(z, ctx, 0, False, False)


def sin_q_prime(z, ctx: PrecisionContext) -> EvalResult:
    return _series(z, ctx, 1, True, True)


def cos_q_prime(z, ctx: PrecisionContext) -> EvalResult:
    return _series(z, ctx, 0, True, True)


def tan_q(z, ctx: PrecisionContext) -> EvalResult:
    s = sin_q(z, ctx)
    c = cos_q(z, ctx)
    if c.value == 0:
        raise PoleError("Tan_q pole")
    return EvalResult(s.value / c.value, s.terms_used + c.terms_used, max(s.cancellation_digits, c.cancellation_digits))


# ------------------------------------------------------------ product route


def trig_values(x, ctx: PrecisionContext, mp=None):
    """(Sin_q x, Cos_q x) for real x from the single product E_q(ix)."""
    mp = mp or ctx.mp
    x = mp.convert(x)
    q = mp.mpf(ctx.q.numerator) / ctx.q.denominator
    Ep = qprod(mp, mp.mpc(0, 1) * (1 - q) * x, q)
    return mp.im(Ep), mp.re(Ep)


def trig_pair(x, ctx: PrecisionContext, mp=None):
    """(Sin_q, Cos_q, Sin_q', Cos_q') at x through the product for E_q(ix).

    Valid for any complex x; cancellation free on the real axis, where
    E_q(-ix) is the conjugate of E_q(ix).
    """
    mp = mp or ctx.mp
    x = mp.convert(x)
    q = mp.mpf(ctx.q.numerator) / ctx.q.denominator
    c = 1 - q
    I = mp.mpc(0, 1)
    Ep = qprod(mp, I * c * x, q)
    # d/dx log E_q(+-ix) = +-i c L(+-i c x)
    Lp = qprod_logderiv(mp, I * c * x, q)
    dEp = Ep * I * c * Lp
    if mp.im(x) == 0:
        return mp.im(Ep), mp.re(Ep), mp.im(dEp), mp.re(dEp)
    Em = qprod(mp, -I * c * x, q)
    Lm = qprod_logderiv(mp, -I * c * x, q)
    dEm = -Em * I * c * Lm
    C = (Ep + Em) / 2
    S = (Ep - Em) / (2 * I)
    dC = (dEp + dEm) / 2
    dS = (dEp - dEm) / (2 * I)
    return S, C, dS, dC


def imag_axis(x, ctx: PrecisionContext, mp=None):
    """(theta(x), theta'(x), log|E_q(ix)|) for real x >= 0.

    Factors with t = (1-q) q^j x above a switch point are handled directly (two
    at a time, so one atan2 covers a pair); the remaining tail uses
      sum_j atan(t q^j)       = sum_m (-1)^m t^(2m+1) / ((2m+1)(1 - q^(2m+1)))
      sum_j log(1 + t^2 q^2j) = sum_m (-1)^(m+1) t^(2m) / (m (1 - q^(2m)))
    """
    mp = mp or ctx.mp
    x = mp.convert(x)
    if x < 0:
        th, dth, la = imag_axis(-x, ctx, mp)
        return -th, dth, la
    q = mp.mpf(ctx.q.numerator) / ctx.q.denominator
    if x == 0:
        return mp.zero, mp.one, mp.zero
    t = (1 - q) * x
    sw = tail_switch(mp, q)
    th = mp.zero
    dsum = mp.zero
    mod2 = mp.one
    while t > sw:
        u = t * q
        if u > sw:
            th += mp.atan2(t + u, 1 - t * u)
            dsum += t / (1 + t * t) + u / (1 + u * u)
            mod2 *= (1 + t * t) * (1 + u * u)
            t = u * q
        else:
            th += mp.atan(t)
            dsum += t / (1 + t * t)
            mod2 *= 1 + t * t
            t = u
    la = mp.log(mod2) / 2
    dth = dsum / x
    eps = mp.mpf(10) ** (-(mp.dps + 5))
    t2 = t * t
    p = t  # t^(2m+1)
    m = 0
    qo = q  # q^(2m+1)
    while True:
        a = p / ((2 * m + 1) * (1 - qo))
        d = p / (1 - qo)
        if m % 2:
            th -= a
            dth -= d / x
        else:
            th += a
            dth += d / x
        if m >= 1:
            lt = (p / t) / (m * (1 - qo / q))  # t^(2m) / (m (1 - q^(2m)))
            la += lt / 2 if m % 2 else -lt / 2
        if abs(p) < eps and m >= 1:
            break
        p *= t2
        qo *= q * q
        m += 1
    return th, dth, la


def abs_E_imag(x, ctx: PrecisionContext, mp=None):
    return (mp or ctx.mp).exp(imag_axis(x, ctx, mp)[2])


# -------------------------------------------------------- Hadamard products


def _coverage(z, values, ctx):
    if len(values) < 2:
        raise DomainError("zero table needs at least two entries")
    mp = ctx.mp
    last, prev = values[-1], values[-2]
    r = (prev / last) ** 2
    if r >= 1:
        return mp.inf
    return abs(z) ** 2 / last ** 2 * r / (1 - r)


def sin_q_product(z, table, ctx: PrecisionContext):
    """z * prod_k (1 - z^2 / xi_k^2) over a Sin_q zero table."""
    from .qcore import CoverageError

    mp = ctx.mp
    z = mp.convert(z)
    vals = [mp.convert(v) for v in table.values]
    tail = _coverage(z, vals, ctx)
    if tail > ctx.tol_mp:
        raise CoverageError(f"zero table of {len(vals)} entries leaves a tail of {mp.nstr(tail, 3)}")
    out = z
    for v in vals:
        out *= 1 - z * z / (v * v)
    return out


def cos_q_product(z, table, ctx: PrecisionContext):
    from .qcore import CoverageError

    mp = ctx.mp
    z = mp.convert(z)
    vals = [mp.convert(v) for v in table.values]
    tail = _coverage(z, vals, ctx)
    if tail > ctx.tol_mp:
        raise CoverageError(f"zero table of {len(vals)} entries leaves a tail of {mp.nstr(tail, 3)}")
    out = mp.one
    for v in vals:
        out *= 1 - z * z / (v * v)
    return out


def sin_q_prime_at_zero_product(n: int, table, ctx: PrecisionContext):
    """-2 prod_(k != n) (1 - xi_n^2 / xi_k^2), the derivative of Sin_q at its n-th zero."""
    from .qcore import CoverageError

    mp = ctx.mp
    vals = [mp.convert(v) for v in table.values]
    xn = vals[n - 1]
    tail = _coverage(xn, vals, ctx)
    if tail > ctx.tol_mp:
        raise CoverageError("zero table too short for the requested index")
    out = mp.mpf(-2)
    for k, v in enumerate(vals, start=1):
        if k != n:
            out *= 1 - xn * xn / (v * v)
    return out


# --------------------------------------------------- Jackson q-Bessel (second)


@lru_cache(maxsize=256)
def _bessel_prefactor(dps: int, q: Fraction, nu: str):
    """(Q^(nu+1); Q)_inf / (Q; Q)_inf with Q = q^2; nu is an exact decimal or rational string."""
    mp = mp_context(dps)
    Q = (mp.mpf(q.numerator) / q.denominator) ** 2
    f = Fraction(nu)
    return qprod(mp, -Q ** (mp.mpf(f.numerator) / f.denominator + 1), Q) / qprod(mp, -Q, Q)


def _bessel_terms(x, nu, ctx, derivative=False):
    """J_nu^(2)(x; q^2) with dynamic precision; returns (value, terms, cancellation)."""
    Qf = float(ctx.q) ** 2
    mp0 = ctx.mp
    x = mp0.convert(x)
    nu_mp = mp0.convert(nu)
    if x == 0:
        raise DomainError("q-Bessel evaluation at x = 0 is not supported")
    ax = float(abs(x))
    lx = math.log10(ax / 2)
    lQ = math.log10(Qf)
    nuf = float(nu)
    peak = -math.inf
    lden = 0.0
    n = 0
    target = -(ctx.dps + 5)
    while True:
        if n > 0:
            lden += math.log10(1 - Qf ** n) + math.log10(abs(1 - Qf ** (nuf + n)))
        lt = n * (n + nuf) * lQ + 2 * n * lx - lden
        peak = max(peak, lt)
        if n > 2 and lt < target and lt < peak:
            stop = n
            break
        n += 1
    extra = max(0, int(math.ceil(peak))) + 5
    mp = mp_context(ctx.dps + extra)
    q = mp.mpf(ctx.q.numerator) / ctx.q.denominator
    Q = q * q
    nu_ = mp.convert(nu)
    xx = mp.convert(x)
    h = xx / 2
    Qnu1 = Q ** (nu_ + 1)
    pref = _bessel_prefactor(mp.dps, ctx.q, str(nu))
    total = mp.zero
    dtotal = mp.zero
    big = mp.zero
    term = mp.one  # (-1)^n Q^(n(n+nu)) h^(2n) / ((Q;Q)_n (Q^(nu+1);Q)_n)
    Qn = mp.one
    for n in range(stop + 1):
        if n > 0:
            Qn = Qn * Q  # Q^n
            term = -term * Q ** (2 * n - 1) * Q ** nu_ * h * h / ((1 - Qn) * (1 - Qnu1 * Qn / Q))
        total += term
        dtotal += term * (2 * n + nu_)
        big = max(big, abs(term))
    hp = h ** nu_
    val = pref * hp * total
    dval = pref * hp * dtotal / xx
    canc = 0 if total == 0 else max(0, int(math.floor(float(mp.log10(big / abs(total))))))
    out = dval if derivative else val
    return mp0.convert(out), stop + 1, canc


def jackson_bessel2(x, nu, ctx: PrecisionContext) -> EvalResult:
    """Second Jackson q-Bessel function J_nu^(2)(x; q^2) for nu > -1.

    J = (Q^(nu+1);Q)_inf/(Q;Q)_inf * sum_n (-1)^n Q^(n(n+nu)) (x/2)^(2n+nu)
        / ((Q;Q)_n (Q^(nu+1);Q)_n),   Q = q^2.
    """
    if float(nu) <= -1:
        raise DomainError("order nu must exceed -1")
    v, n, c = _bessel_terms(x, nu, ctx)
    return EvalResult(v, n, c)


def jackson_bessel2_prime(x, nu, ctx: PrecisionContext) -> EvalResult:
    if float(nu) <= -1:
        raise DomainError("order nu must exceed -1")
    v, n, c = _bessel_terms(x, nu, ctx, derivative=True)
    return EvalResult(v, n, c)
