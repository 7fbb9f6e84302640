"""Zeta-type series over the zeros of Sin_q, Cos_q and the q-Bessel function.

Weights at the zeros come from the phase representation
E_q(ix) = |E_q(ix)| exp(i theta(x)):

    Cos_q(xi_k) / Sin_q'(xi_k)  =  1 / theta'(xi_k)
    1 / Sin_q'(xi_k)            =  (-1)^k / (|E_q(i xi_k)| theta'(xi_k))
    Sin_q(eta_k) / Cos_q'(eta_k) = -1 / theta'(eta_k)
    1 / Cos_q'(eta_k)           =  (-1)^k / (|E_q(i eta_k)| theta'(eta_k))

so none of the weights is obtained by cancellation.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction

from .qcore import (
    CoverageError,
    DomainError,
    PoleError,
    PrecisionContext,
    QuadratureError,
    mp_context,
    q_gamma,
    qprod,
    to_fraction,
)
from .qfunctions import imag_axis, jackson_bessel2, jackson_bessel2_prime, sinh_q
from .zeros import ZeroTable, locate_zeros

MAX_ZEROS = 4000


@dataclass(frozen=True)
class SeriesValue:
    value: object
    tail_bound: object
    K_used: int


@dataclass(frozen=True)
class ZeroPoint:
    """Data attached to one zero: location, theta', log|E_q(ix)|."""

    k: int
    x: object
    dtheta: object
    log_abs_E: object


class SpectralContext:
    """Precision context plus lazily extended zero tables and weight caches.

    Tables start with ``K`` zeros and grow (by a quarter) whenever a truncated sum
    needs more, up to ``max_zeros``.  Growth happens under a lock, so one
    context can be shared between threads.
    """

    def __init__(self, ctx: PrecisionContext, K: int = 10, threads: int = 1, max_zeros: int = MAX_ZEROS):
        self.ctx = ctx
        self.threads = threads
        self.max_zeros = max_zeros
        self._lock = threading.RLock()
        self._tables: dict = {}
        self._points: dict = {"sin": [], "cos": []}
        for kind in ("sin", "cos"):
            self.table(kind, K)

    @property
    def mp(self):
        return self.ctx.mp

    def table(self, kind: str, n: int, nu=None) -> ZeroTable:
        """Zero table of ``kind`` with at least ``n`` entries."""
        key = kind if kind != "bessel" else ("bessel", Fraction(nu))
        with self._lock:
            t = self._tables.get(key)
            if t is not None and len(t) >= n:
                return t
            if n > self.max_zeros:
                raise CoverageError(f"more than {self.max_zeros} zeros of {kind} would be needed")
            target = n if t is None else min(self.max_zeros, max(n, len(t) + max(4, len(t) // 4)))
            t = locate_zeros(kind, target, self.ctx, nu=nu, threads=self.threads, start=t)
            self._tables[key] = t
            return t

    def point(self, kind: str, k: int) -> ZeroPoint:
        pts = self._points[kind]
        if k <= len(pts):
            return pts[k - 1]
        with self._lock:
            tab = self.table(kind, k)
            while len(pts) < k:
                j = len(pts) + 1
                x = tab.value(j)
                _, dth, la = imag_axis(x, self.ctx)
                pts.append(ZeroPoint(j, x, dth, la))
            return pts[k - 1]

    # weights -------------------------------------------------------------
    def cos_over_sin_prime(self, k):
        return 1 / self.point("sin", k).dtheta

    def inv_sin_prime(self, k):
        p = self.point("sin", k)
        return (-1) ** k * self.mp.exp(-p.log_abs_E) / p.dtheta

    def sin_over_cos_prime(self, k):
        return -1 / self.point("cos", k).dtheta

    def inv_cos_prime(self, k):
        p = self.point("cos", k)
        return (-1) ** k * self.mp.exp(-p.log_abs_E) / p.dtheta


# ------------------------------------------------------------ summation core


def _cx(mp, s):
    return mp.convert(s)


def _sum_geometric(term, ratio_limit, tol, mp, max_k):
    """Sum term(k), k >= 1, whose terms decay geometrically with ratio -> ratio_limit.

    Truncates when 2 |t_K| r / (1 - r) < tol with r the larger of the observed
    and the limiting ratio.  The ratios may approach their limit from above
    (by O(q^2k)), hence the factor 2 on the geometric tail.
    """
    total = mp.zero
    prev = None
    for k in range(1, max_k + 1):
        t = term(k)
        total += t
        if prev is not None and prev != 0 and k >= 3:
            r = max(abs(t / prev), ratio_limit)
            if r < 1:
                tail = 2 * abs(t) * r / (1 - r)
                if tail < tol:
                    return SeriesValue(total, tail, k)
        prev = t
    raise CoverageError(f"series did not reach tolerance within {max_k} terms")


def _sum_fast(term, tol, mp, max_k, min_k: int = 2):
    """Sum a super-geometrically decaying series until |t_k| < tol * scale."""
    total = mp.zero
    big = mp.zero
    prev = None
    for k in range(1, max_k + 1):
        t = term(k)
        total += t
        at = abs(t)
        big = max(big, at)
        scale = max(abs(total), min(mp.one, big))
        if k >= min_k and prev is not None and at <= prev and at < tol * scale:
            return SeriesValue(total, 2 * at, k)
        prev = at
    raise CoverageError(f"series did not reach tolerance within {max_k} terms")


def _tol(sctx, tol):
    mp = sctx.mp
    if tol is None:
        return sctx.ctx.tol_mp
    return mp.convert(tol)


# ------------------------------------------------------------ four series


def zeta_q(s, sctx: SpectralContext, tol=None) -> SeriesValue:
    """sum_k (Cos_q xi_k / Sin_q' xi_k) xi_k^-s, Re s > 1."""
    mp = sctx.mp
    s = _cx(mp, s)
    if mp.re(s) <= 1:
        raise DomainError("zeta_q series needs Re s > 1; use continued_zeta_q for other s")
    r = sctx.ctx.qm ** (2 * (mp.re(s) - 1))

    def term(k):
        p = sctx.point("sin", k)
        return mp.power(p.x, -s) / p.dtheta

    return _sum_geometric(term, r, _tol(sctx, tol), mp, sctx.max_zeros)


def zeta_q_star(s, sctx: SpectralContext, tol=None) -> SeriesValue:
    """-sum_k (Sin_q eta_k / Cos_q' eta_k) eta_k^-s, Re s > 1."""
    mp = sctx.mp
    s = _cx(mp, s)
    if mp.re(s) <= 1:
        raise DomainError("zeta_q_star series needs Re s > 1; use continued_zeta_q_star for other s")
    r = sctx.ctx.qm ** (2 * (mp.re(s) - 1))

    def term(k):
        p = sctx.point("cos", k)
        return mp.power(p.x, -s) / p.dtheta

    return _sum_geometric(term, r, _tol(sctx, tol), mp, sctx.max_zeros)


def eta_q(s, sctx: SpectralContext, tol=None) -> SeriesValue:
    """-sum_k xi_k^-s / Sin_q'(xi_k); converges for every s."""
    mp = sctx.mp
    s = _cx(mp, s)

    def term(k):
        return -mp.power(sctx.point("sin", k).x, -s) * sctx.inv_sin_prime(k)

    return _sum_fast(term, _tol(sctx, tol), mp, sctx.max_zeros)


def eta_q_star(s, sctx: SpectralContext, tol=None) -> SeriesValue:
    """-sum_k eta_k^-s / Cos_q'(eta_k); converges for every s."""
    mp = sctx.mp
    s = _cx(mp, s)

    def term(k):
        return -mp.power(sctx.point("cos", k).x, -s) * sctx.inv_cos_prime(k)

    return _sum_fast(term, _tol(sctx, tol), mp, sctx.max_zeros)


def sum_inv_sin_prime(sctx: SpectralContext, tol=None) -> SeriesValue:
    """sum_k 1/Sin_q'(xi_k)."""
    return _sum_fast(sctx.inv_sin_prime, _tol(sctx, tol), sctx.mp, sctx.max_zeros)


# ------------------------------------------------------------ Rayleigh sums


def _nu_fraction(nu) -> Fraction:
    f = to_fraction(nu)
    if f is None:
        f = Fraction(str(nu))
    if f <= -1:
        raise DomainError("order nu must exceed -1")
    return f


def rayleigh_sigma(n: int, nu, sctx: SpectralContext, tol=None) -> SeriesValue:
    """Zero sum  -sum_k J_(nu+1)(j_k) / J_nu'(j_k) * j_k^(-2n)  over the zeros of J_nu^(2)(.; q^2)."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    nu = _nu_fraction(nu)
    mp = sctx.mp
    ctx = sctx.ctx
    nu_mp = mp.mpf(nu.numerator) / nu.denominator
    cache: dict = {}

    def term(k):
        if k not in cache:
            j = sctx.table("bessel", k, nu=nu).value(k)
            num = jackson_bessel2(j, nu_mp + 1, ctx).value
            den = jackson_bessel2_prime(j, nu_mp, ctx).value
            cache[k] = -num / den
        return cache[k] * mp.power(sctx.table("bessel", k, nu=nu).value(k), -2 * n)

    r = ctx.qm ** (4 * n - 2)
    return _sum_geometric(term, r, _tol(sctx, tol), mp, sctx.max_zeros)


def rayleigh_sigma_taylor(n: int, nu, ctx: PrecisionContext):
    """Half the coefficient of z^(2n-1) in J_(nu+1)^(2)(z)/J_nu^(2)(z).

    With J_nu = c_nu (z/2)^nu sum_m a_m (z/2)^(2m) the quotient is
    (z/2) / (1 - Q^(nu+1)) * sum_m d_m (z/2)^(2m), Q = q^2, where d = b/a is
    a plain power-series division.
    """
    if n < 1:
        raise DomainError("n must be a positive integer")
    nu = _nu_fraction(nu)
    mp = ctx.mp
    q = ctx.qm
    Q = q * q
    nu_ = mp.mpf(nu.numerator) / nu.denominator

    def coeffs(v):
        out = []
        c = mp.one
        Qv1 = Q ** (v + 1)
        for m in range(n):
            if m > 0:
                c = -c * Q ** (2 * m - 1 + v) / ((1 - Q ** m) * (1 - Qv1 * Q ** (m - 1)))
            out.append(c)
        return out

    a = coeffs(nu_)
    b = coeffs(nu_ + 1)
    d = []
    for m in range(n):
        acc = b[m]
        for k in range(m):
            acc -= d[k] * a[m - k]
        d.append(acc / a[0])
    coef = d[n - 1] / (mp.mpf(2) ** (2 * n - 1) * (1 - Q ** (nu_ + 1)))
    return coef / 2


def rayleigh_sigma_rescaled(n: int, nu, sctx: SpectralContext, tol=None) -> SeriesValue:
    """Half-integer orders through the trigonometric zeta series.

    sigma_2n(1/2)  = q^-1 2^(1-2n) (1-q)^(1-2n) zeta_q(2n)
    sigma_2n(-1/2) =      2^(1-2n) (1-q)^(1-2n) zeta_q*(2n)
    """
    nu = _nu_fraction(nu)
    mp = sctx.mp
    q = sctx.ctx.qm
    f = mp.mpf(2) ** (1 - 2 * n) * (1 - q) ** (1 - 2 * n)
    if nu == Fraction(1, 2):
        z = zeta_q(2 * n, sctx, tol)
        return SeriesValue(f / q * z.value, f / q * z.tail_bound, z.K_used)
    if nu == Fraction(-1, 2):
        z = zeta_q_star(2 * n, sctx, tol)
        return SeriesValue(f * z.value, f * z.tail_bound, z.K_used)
    raise DomainError("rescaled route exists only for nu = 1/2 and nu = -1/2")


# ------------------------------------------------------ remainder terms


def _grid_exponent(a, q: Fraction, mp):
    """Integer m with q^m = 2a when it exists (exactly for rational a), else None."""
    fa = to_fraction(a)
    if fa is not None:
        if fa <= 0:
            return None
        target = 2 * fa
        qf = q
        m = 0
        # walk towards target; q^m is monotone in m
        if target <= 1:
            val = Fraction(1)
            while val > target:
                val *= qf
                m += 1
            return m if val == target else None
        val = Fraction(1)
        while val < target:
            val /= qf
            m -= 1
        return m if val == target else None
    a = mp.convert(a)
    if mp.im(a) != 0 or mp.re(a) <= 0:
        return None
    qm = mp.mpf(q.numerator) / q.denominator
    m = int(mp.nint(mp.log(2 * a) / mp.log(qm)))
    if abs(qm ** m / (2 * a) - 1) < mp.mpf(10) ** (-(mp.dps - 5)):
        return m
    return None


def _ratio_E(mp, x, q):
    """rho(x) = E_q(-x)/E_q(x) = prod_j (1 - t_j)/(1 + t_j), t_j = (1-q) x q^j."""
    return qprod(mp, -(1 - q) * x, q) / qprod(mp, (1 - q) * x, q)


def _remainder(s, a, ctx: PrecisionContext, tol, hyperbolic: str):
    """sum_k (-1)^k q^(k(k+1)/2)/(q;q)_k z_k^s E_q(-z_k/2)/Sinh_q(z_k/2)   (hyperbolic="sinh")
    or the same with Cosh_q, z_k = q^-k/(a(1-q)).  Terms where E_q(-z_k/2)
    vanishes exactly are skipped.
    """
    mp = ctx.mp
    q = ctx.qm
    s = mp.convert(s)
    m0 = _grid_exponent(a, ctx.q, mp)
    am = _a_mp(mp, a)
    total = mp.zero
    big = mp.zero
    qk = mp.one  # (q;q)_k
    prev = None
    sre = mp.re(s)
    k = 0
    while True:
        if k > 0:
            qk *= 1 - q ** k
        if m0 is not None and k >= -m0:
            t = mp.zero
        else:
            z = q ** (-k) / (am * (1 - q))
            rho = _ratio_E(mp, z / 2, q)
            ratio = 2 * rho / (1 - rho) if hyperbolic == "sinh" else 2 * rho / (1 + rho)
            t = (-1) ** k * q ** (k * (k + 1) // 2) / qk * mp.power(z, s) * ratio
        total += t
        at = abs(t)
        big = max(big, at)
        if k > sre + 2 and prev is not None and at <= prev and at < tol * max(abs(total), min(mp.one, big)):
            break
        if m0 is not None and k >= -m0 and k > sre + 2:
            break
        prev = at
        k += 1
        if k > 10000:
            raise CoverageError("remainder series did not converge")
    return total, k + 1


def _poch_q_inf(mp, q):
    return qprod(mp, -q, q)


def R_q(s, a, sctx_or_ctx, tol=None) -> SeriesValue:
    """Remainder of the Dirichlet-series form of H_q(1-s, a):

        R_q(s,a) = 1/(2 (q;q)_inf) sum_k (-1)^k q^(k(k+1)/2)/(q;q)_k
                   z_k^(1-s) E_q(-z_k/2)/Sinh_q(z_k/2),   z_k = q^-k/(a(1-q)).
    """
    ctx = sctx_or_ctx.ctx if isinstance(sctx_or_ctx, SpectralContext) else sctx_or_ctx
    mp = ctx.mp
    tl = ctx.tol_mp if tol is None else mp.convert(tol)
    if _is_zero(a, mp):
        raise DomainError("R_q needs a != 0")
    val, K = _remainder(1 - mp.convert(s), a, ctx, tl, "sinh")
    return SeriesValue(val / (2 * _poch_q_inf(mp, ctx.qm)), tl, K)


def _is_zero(a, mp):
    return _a_mp(mp, a) == 0


def _a_mp(mp, a):
    fa = to_fraction(a)
    if fa is not None:
        return mp.mpf(fa.numerator) / fa.denominator
    return mp.convert(a)


# ---------------------------------------------------- H_q, I_q, F_q series


def _check_a(a, mp):
    av = _a_mp(mp, a)
    if mp.im(av) != 0 or mp.re(av) <= 0:
        raise DomainError("a must be a positive real number")
    return mp.re(av)


def _e_small_imag(mp, a, x, q):
    """e_q(2iax) = 1/E_q(-2iax)."""
    return 1 / qprod(mp, -mp.mpc(0, 1) * 2 * a * x * (1 - q), q)


def _trig_weighted(s, a, sctx, kind, tol):
    mp = sctx.mp
    q = sctx.ctx.qm
    sn = mp.sin(mp.pi * s / 2)
    cs = mp.cos(mp.pi * s / 2)

    def term(k):
        p = sctx.point(kind, k)
        e = _e_small_imag(mp, a, p.x, q)
        return mp.power(p.x, s - 1) * (sn * mp.re(e) + cs * mp.im(e)) / p.dtheta

    return _sum_fast(term, tol, mp, sctx.max_zeros)


def H_q_series(s, a, sctx: SpectralContext, tol=None) -> SeriesValue:
    """H_q(s,a) from the residues at +-2i xi_k and at the poles of e_q(az):

        2^s sum_k xi_k^(s-1) [sin(pi s/2) Re e_q(2ia xi_k) + cos(pi s/2) Im e_q(2ia xi_k)] Cos_q/Sin_q'(xi_k)
        - 1/(2 (q;q)_inf) sum_k (-1)^k q^(k(k+1)/2)/(q;q)_k z_k^s E_q(-z_k/2)/Sinh_q(z_k/2)
    """
    mp = sctx.mp
    s = mp.convert(s)
    am = _check_a(a, mp)
    tl = _tol(sctx, tol)
    main = _trig_weighted(s, am, sctx, "sin", tl)
    rem, _ = _remainder(s, a, sctx.ctx, tl, "sinh")
    val = mp.power(2, s) * main.value - rem / (2 * _poch_q_inf(mp, sctx.ctx.qm))
    return SeriesValue(_real_if(mp, val, s), main.tail_bound * abs(mp.power(2, s)) + tl, main.K_used)


def I_q_series(s, a, sctx: SpectralContext, tol=None) -> SeriesValue:
    """I_q(s,a), the analogue of H_q_series over the zeros of Cos_q:

        2^(s+1) sum_k eta_k^(s-1) [sin(pi s/2) Re e_q(2ia eta_k) + cos(pi s/2) Im e_q(2ia eta_k)] Sin_q/Cos_q'(eta_k)
        - 1/(q;q)_inf sum_k (-1)^k q^(k(k+1)/2)/(q;q)_k z_k^s E_q(-z_k/2)/Cosh_q(z_k/2)
    """
    mp = sctx.mp
    s = mp.convert(s)
    am = _check_a(a, mp)
    tl = _tol(sctx, tol)
    main = _trig_weighted(s, am, sctx, "cos", tl)
    rem, _ = _remainder(s, a, sctx.ctx, tl, "cosh")
    # Sin_q/Cos_q' = -1/theta'
    val = -mp.power(2, s + 1) * main.value - rem / _poch_q_inf(mp, sctx.ctx.qm)
    return SeriesValue(_real_if(mp, val, s), main.tail_bound * abs(mp.power(2, s + 1)) + tl, main.K_used)


def _real_if(mp, val, s):
    if mp.im(s) == 0 and isinstance(val, type(mp.mpc(0))):
        return mp.re(val)
    return val


def F_q(s, a, sctx: SpectralContext, tol=None) -> SeriesValue:
    """Dirichlet-type series sum_k e_q(2ia xi_k) xi_k^-s Cos_q/Sin_q'(xi_k), a real and nonzero."""
    mp = sctx.mp
    s = mp.convert(s)
    am = _a_mp(mp, a)
    if am == 0:
        raise DomainError("F_q needs a != 0")
    q = sctx.ctx.qm

    def term(k):
        p = sctx.point("sin", k)
        return _e_small_imag(mp, am, p.x, q) * mp.power(p.x, -s) / p.dtheta

    return _sum_fast(term, _tol(sctx, tol), mp, sctx.max_zeros)


def H_q_from_dirichlet(s, a, sctx: SpectralContext, tol=None):
    """H_q(1-s, a) = (2i)^-s F_q(s,a) + (-2i)^-s F_q(s,-a) - R_q(s,a)."""
    mp = sctx.mp
    s = mp.convert(s)
    neg = -_a_mp(mp, a)
    I2 = 2 * mp.mpc(0, 1)
    val = mp.power(I2, -s) * F_q(s, a, sctx, tol).value + mp.power(-I2, -s) * F_q(s, neg, sctx, tol).value
    return val - R_q(s, a, sctx, tol).value


def H_q_from_dirichlet_unweighted(s, a, sctx: SpectralContext, tol=None):
    """The same combination with the exponents s-1 and the remainder written as
    1/(2(q;q)_inf) sum (-1)^k q^(k(k+1)/2) z_k^-s E_q(-z_k/2)/Sinh_q(z_k/2)."""
    mp = sctx.mp
    s = mp.convert(s)
    neg = -_a_mp(mp, a)
    I2 = 2 * mp.mpc(0, 1)
    val = mp.power(I2, s - 1) * F_q(s, a, sctx, tol).value + mp.power(-I2, s - 1) * F_q(s, neg, sctx, tol).value
    ctx = sctx.ctx
    q = ctx.qm
    m0 = _grid_exponent(a, ctx.q, mp)
    am = _a_mp(mp, a)
    rem = mp.zero
    tl = _tol(sctx, tol)
    for k in range(0, 400):
        if m0 is not None and k >= -m0:
            break
        z = q ** (-k) / (am * (1 - q))
        rho = _ratio_E(mp, z / 2, q)
        t = (-1) ** k * q ** (k * (k + 1) // 2) * mp.power(z, -s) * 2 * rho / (1 - rho)
        rem += t
        if abs(t) < tl and k > 2:
            break
    return val - rem / (2 * _poch_q_inf(mp, q))


# ----------------------------------------------------------- integrals


def _panels(f, mp, tol):
    """Integrate f over (0, inf).

    [0, 1] goes to one tanh-sinh call, which copes with the algebraic
    behaviour r^(s-2) at the origin.  On [1, inf) the substitution r = e^u
    turns the super-geometric decay into a smooth profile, integrated by
    Gauss-Legendre on panels of width 2 in u until two consecutive panels
    contribute < tol/10.
    """
    total, err = mp.quad(f, [0, 1], method="tanh-sinh", error=True)

    def g(u):
        r = mp.exp(u)
        return f(r) * r

    small_run = 0
    for k in range(400):
        v, e = mp.quad(g, [2 * k, 2 * k + 2], method="gauss-legendre", error=True)
        total += v
        err += e
        small_run = small_run + 1 if abs(v) < tol / 10 else 0
        if small_run >= 2:
            return total, err
    raise QuadratureError("integrand does not decay")


def _one_minus_eps_neg(mp, r, q, ctx):
    """1 - eps_q(-r) = 2 Sinh_q(r/2)/E_q(r/2)."""
    if r < 1:
        return 2 * mp.convert(sinh_q(r / 2, ctx).value) / qprod(mp, (1 - q) * r / 2, q)
    return 1 - _ratio_E(mp, r / 2, q)


def H_q_integral(s, a, ctx: PrecisionContext, tol=None):
    """(sin(pi s)/pi) int_0^inf r^(s-1) e_q(-ar) / (1 - eps_q(-r)) dr, Re s > 1."""
    mp = ctx.mp
    s = mp.convert(s)
    if mp.re(s) <= 1:
        raise DomainError("integral representation needs Re s > 1")
    am = _check_a(a, mp)
    q = ctx.qm
    tl = ctx.tol_mp if tol is None else mp.convert(tol)
    pref = mp.sin(mp.pi * s) / mp.pi

    def f(r):
        return mp.power(r, s - 1) / (qprod(mp, (1 - q) * am * r, q) * _one_minus_eps_neg(mp, r, q, ctx))

    val, err = _panels(f, mp, tl)
    if err > max(tl, tl * abs(val)) * 1e3:
        raise QuadratureError(f"quadrature error estimate {mp.nstr(err, 3)} too large")
    return _real_if(mp, pref * val, s)


def I_q_integral(s, a, ctx: PrecisionContext, tol=None):
    """(2 sin(pi(s-1))/pi) int_0^inf r^(s-1) e_q(-ar) / (eps_q(-r) + 1) dr, Re s > 0."""
    mp = ctx.mp
    s = mp.convert(s)
    if mp.re(s) <= 0:
        raise DomainError("integral representation needs Re s > 0")
    am = _check_a(a, mp)
    q = ctx.qm
    tl = ctx.tol_mp if tol is None else mp.convert(tol)
    pref = 2 * mp.sin(mp.pi * (s - 1)) / mp.pi

    def f(r):
        return mp.power(r, s - 1) / (qprod(mp, (1 - q) * am * r, q) * (1 + _ratio_E(mp, r / 2, q)))

    val, err = _panels(f, mp, tl)
    if err > max(tl, tl * abs(val)) * 1e3:
        raise QuadratureError(f"quadrature error estimate {mp.nstr(err, 3)} too large")
    return _real_if(mp, pref * val, s)


# ------------------------------------------------------ contour integrals

RADIUS_FACTOR = 0.5


def _circle(fun, n: int, radius, mp, tol):
    """-(1/N) sum_j z_j^n fun(z_j) on |z| = radius, N doubled until stable.

    This is the negatively oriented contour integral of z^(n-1) fun(z)/(2 pi i).
    ``fun`` must satisfy fun(conj z) = conj fun(z), so only the closed upper
    half circle is sampled, and each doubling evaluates only the new nodes.
    """
    def node(j, N):
        z = radius * mp.expjpi(mp.mpf(2 * j) / N)
        return mp.power(z, n) * fun(z)

    N = 64
    # acc = sum over all N nodes, assembled from the upper half by symmetry
    acc = mp.re(node(0, N)) + mp.re(node(N // 2, N))
    acc += 2 * sum(mp.re(node(j, N)) for j in range(1, N // 2))
    prev = -acc / N
    while N <= 1 << 14:
        new = 2 * sum(mp.re(node(2 * j + 1, 2 * N)) for j in range(N // 2))
        acc += new
        N *= 2
        val = -acc / N
        if abs(val - prev) < tol * max(1, abs(val)):
            return val
        prev = val
    raise QuadratureError("contour quadrature did not settle")


def _radius(sctx, kind, a):
    mp = sctx.mp
    q = sctx.ctx.qm
    c = 2 * sctx.point(kind, 1).x
    if a is not None and a != 0:
        c = min(c, 1 / (a * (1 - q)))
    return RADIUS_FACTOR * c


def H_q_contour_integer(n: int, a, sctx: SpectralContext, tol=None):
    """H_q(n, a) for integer n from a circle around the origin (a = 0 allowed)."""
    mp = sctx.mp
    q = sctx.ctx.qm
    am = _a_mp(mp, a)
    if am < 0:
        raise DomainError("a must be >= 0")
    tl = _tol(sctx, tol)

    def g(z):
        Em = qprod(mp, -(1 - q) * z / 2, q)
        Ep = qprod(mp, (1 - q) * z / 2, q)
        e = 1 / qprod(mp, -(1 - q) * am * z, q) if am != 0 else 1
        return e * Em / (Ep - Em)

    v = _circle(g, int(n), _radius(sctx, "sin", am), mp, tl)
    return mp.re(v) if abs(mp.im(v)) < tl else v


def I_q_contour_integer(n: int, a, sctx: SpectralContext, tol=None):
    """I_q(n, a) for integer n from a circle around the origin (a = 0 allowed)."""
    mp = sctx.mp
    q = sctx.ctx.qm
    am = _a_mp(mp, a)
    if am < 0:
        raise DomainError("a must be >= 0")
    tl = _tol(sctx, tol)

    def g(z):
        Em = qprod(mp, -(1 - q) * z / 2, q)
        Ep = qprod(mp, (1 - q) * z / 2, q)
        e = 1 / qprod(mp, -(1 - q) * am * z, q) if am != 0 else 1
        return 2 * e * Em / (Ep + Em)

    v = _circle(g, int(n), _radius(sctx, "cos", am), mp, tl)
    return mp.re(v) if abs(mp.im(v)) < tl else v


# ------------------------------------------------------------- Hurwitz


def hurwitz_zeta_q(s, a, sctx: SpectralContext, tol=None):
    """zeta_q(s, a) = Gamma_q(1-s) H_q(s, a).

    At integers s >= 2 both factors degenerate (pole times zero); there the
    limit of Gamma_q(1-s) sin(pi s)/pi,
        -(1-q)^s q^(s(s-1)/2) / (log q (q;q)_(s-1)),
    multiplies the integral of the integrand of ``H_q_integral``.
    """
    mp = sctx.mp
    ctx = sctx.ctx
    s = mp.convert(s)
    if s == 1:
        raise PoleError("zeta_q(s, a) has a simple pole at s = 1")
    if mp.im(s) == 0 and mp.re(s) == mp.floor(mp.re(s)) and mp.re(s) >= 2:
        n = int(mp.re(s))
        q = ctx.qm
        qn = mp.one
        for j in range(1, n):
            qn *= 1 - q ** j
        lim = -(1 - q) ** n * q ** (n * (n - 1) // 2) / (mp.log(q) * qn)
        am = _check_a(a, mp)
        tl = _tol(sctx, tol)

        def f(r):
            return mp.power(r, n - 1) / (qprod(mp, (1 - q) * am * r, q) * _one_minus_eps_neg(mp, r, q, ctx))

        val, _ = _panels(f, mp, tl)
        return lim * val
    return q_gamma(1 - s, ctx) * H_q_series(s, a, sctx, tol).value


# --------------------------------------------------------- continuation


def _is_int(mp, s):
    return mp.im(s) == 0 and mp.re(s) == mp.floor(mp.re(s))


def continued_zeta_q(s, sctx: SpectralContext, tol=None):
    """zeta_q(s) on Re s > 1 (series) and at integers s <= 1 through
    H_q(1-s, 0) = 2^(1-s) sin(pi(1-s)/2) zeta_q(s)."""
    mp = sctx.mp
    s = mp.convert(s)
    if mp.re(s) > 1:
        return zeta_q(s, sctx, tol).value
    if not _is_int(mp, s):
        raise DomainError("zeta_q is available for Re s > 1 and at integers s <= 0 only")
    n = int(mp.re(s))
    if n == 1:
        raise PoleError("zeta_q has a pole at s = 1")
    pref = mp.power(2, 1 - n) * mp.sin(mp.pi * (1 - n) / 2)
    if abs(pref) < mp.mpf(10) ** (-(mp.dps // 2)):
        raise DomainError(f"zeta_q({n}) is not determined by the contour relation (0/0)")
    return H_q_contour_integer(1 - n, 0, sctx, tol) / pref


def continued_zeta_q_star(s, sctx: SpectralContext, tol=None):
    """zeta_q*(s) on Re s > 1 (series) and at integers s <= 1 through
    I_q(1-s, 0) = -2^(2-s) sin(pi(1-s)/2) zeta_q*(s)."""
    mp = sctx.mp
    s = mp.convert(s)
    if mp.re(s) > 1:
        return zeta_q_star(s, sctx, tol).value
    if not _is_int(mp, s):
        raise DomainError("zeta_q_star is available for Re s > 1 and at integers s <= 0 only")
    n = int(mp.re(s))
    pref = -mp.power(2, 2 - n) * mp.sin(mp.pi * (1 - n) / 2)
    if abs(pref) < mp.mpf(10) ** (-(mp.dps // 2)):
        if n == 1:
            raise PoleError("zeta_q_star has a pole at s = 1")
        raise DomainError(f"zeta_q_star({n}) is not determined by the contour relation (0/0)")
    return I_q_contour_integer(1 - n, 0, sctx, tol) / pref


# ---------------------------------------------------------------- output


def _num_str(mp, x, digits):
    return mp.nstr(x, digits, strip_zeros=False)


def value_record(function: str, s, a, ctx: PrecisionContext, value, tail_bound=None, K_used=None) -> dict:
    mp = ctx.mp
    s = mp.convert(s)
    v = mp.convert(value)
    rec = {
        "function": function,
        "s": {"re": _num_str(mp, mp.re(s), ctx.digits), "im": _num_str(mp, mp.im(s), ctx.digits)},
        "a": None if a is None else str(a),
        "q": f"{ctx.q.numerator}/{ctx.q.denominator}",
        "value": {"re": _num_str(mp, mp.re(v), ctx.digits), "im": _num_str(mp, mp.im(v), ctx.digits)},
        "tail_bound": None if tail_bound is None else mp.nstr(tail_bound, 5),
        "K_used": K_used,
        "digits": ctx.digits,
    }
    return rec


def records_to_json(records) -> str:
    return json.dumps(records, indent=2)
