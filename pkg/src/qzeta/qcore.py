"""Precision handling, error types and elementary q-calculus primitives.

Every evaluation is driven by a :class:`PrecisionContext`.  The context owns a
private ``mpmath.MPContext`` (one per working precision, shared and never
mutated) so that evaluations running in different threads cannot disturb each
other's precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

Number = Union[int, float, complex, "mpmath.mpf", "mpmath.mpc"]


class QZetaError(Exception):
    """Base class for all package errors."""

    exit_code = 3


class DomainError(QZetaError, ValueError):
    """Argument outside the region where an evaluator is defined."""


class PoleError(DomainError):
    """Argument sits on a pole of the evaluated function."""


class CoverageError(QZetaError):
    """A zero table is too short for the requested accuracy."""


class LocalizationError(QZetaError):
    """A zero could not be bracketed or its index could not be certified."""


class QuadratureError(QZetaError):
    """Numerical integration did not reach the requested tolerance."""


class ConfigError(QZetaError, ValueError):
    """Invalid user configuration (bad q, digits, tolerance...)."""

    exit_code = 2


def parse_q(value) -> Fraction:
    """Turn ``value`` into an exact rational in (0, 1).

    Accepts a Fraction, an int pair string like ``"1/2"``, a decimal string
    like ``"0.7"`` or a float (taken through its shortest repr, so ``0.7``
    becomes ``7/10``).

    >>> parse_q("1/2"), parse_q("0.999"), parse_q(0.7)
    (Fraction(1, 2), Fraction(999, 1000), Fraction(7, 10))
    """
    try:
        if isinstance(value, Fraction):
            q = value
        elif isinstance(value, float):
            q = Fraction(repr(value))
        else:
            q = Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse q={value!r}") from exc
    if not 0 < q < 1:
        raise ConfigError(f"q must satisfy 0 < q < 1, got {q}")
    return q


def parse_tol(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse tolerance {value!r}") from exc


@lru_cache(maxsize=None)
def mp_context(dps: int) -> mpmath.ctx_mp.MPContext:
    """Shared multiprecision context with ``dps`` decimal digits.

    Callers must never change ``dps`` on the returned object.
    """
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


@dataclass(frozen=True)
class PrecisionContext:
    """Base ``q``, target accuracy and derived working precision.

    ``digits`` is the number of correct decimal digits aimed for; internal
    arithmetic runs at ``digits + guard``.  ``tol`` is the absolute tolerance
    used by truncated sums and defaults to ``10**(10 - digits)``.
    """

    q: Fraction
    digits: int = 50
    tol: Fraction | None = None
    guard: int = 15
    product_cutoff: int = 5

    def __post_init__(self):
        object.__setattr__(self, "q", parse_q(self.q))
        if not isinstance(self.digits, int) or self.digits < 20:
            raise ConfigError(f"digits must be an integer >= 20, got {self.digits!r}")
        if self.tol is None:
            tol = Fraction(1, 10 ** (self.digits - 10))
        else:
            tol = parse_tol(self.tol)
        if tol <= 0:
            raise ConfigError("tolerance must be positive")
        if tol < Fraction(1, 10 ** self.digits):
            raise ConfigError(f"tolerance {float(tol):.3g} is below 10^-{self.digits}")
        object.__setattr__(self, "tol", tol)

    @property
    def dps(self) -> int:
        return self.digits + self.guard

    @property
    def mp(self):
        return mp_context(self.dps)

    def at(self, extra: int):
        """Multiprecision context with ``extra`` more digits than the working one."""
        return mp_context(self.dps + max(0, int(extra)))

    @property
    def qm(self):
        return self.mp.mpf(self.q.numerator) / self.q.denominator

    @property
    def tol_mp(self):
        return self.mp.mpf(self.tol.numerator) / self.tol.denominator

    @property
    def pass_tol(self):
        """Tolerance used to declare an identity satisfied."""
        return self.mp.mpf(10) ** (-(self.digits // 2))

    def with_digits(self, digits: int, tol=None) -> "PrecisionContext":
        return replace(self, digits=digits, tol=tol)

    def with_q(self, q) -> "PrecisionContext":
        return replace(self, q=parse_q(q), tol=self.tol)


def q_of(mp, q: Fraction):
    return mp.mpf(q.numerator) / q.denominator


def q_bracket_exact(n: int, q: Fraction) -> Fraction:
    """[n]_q = 1 + q + ... + q^(n-1) as an exact rational."""
    if n < 0:
        return (1 - q ** n) / (1 - q)
    return sum((q ** j for j in range(n)), Fraction(0))


def q_bracket(n: int, ctx: PrecisionContext):
    """Numeric q-number (1 - q^n)/(1 - q)."""
    r = q_bracket_exact(n, ctx.q)
    return ctx.mp.mpf(r.numerator) / r.denominator


def q_factorial_exact(n: int, q: Fraction) -> Fraction:
    if n < 0:
        raise DomainError("q-factorial needs n >= 0")
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= q_bracket_exact(k, q)
    return out


def q_factorial(n: int, ctx: PrecisionContext):
    r = q_factorial_exact(n, ctx.q)
    return ctx.mp.mpf(r.numerator) / r.denominator


@lru_cache(maxsize=None)
def _gaussian_row(n: int) -> tuple:
    if n == 0:
        return ((1,),)
    prev = _gaussian_row(n - 1)
    new = []
    # [n,k] = [n-1,k-1] + q^k [n-1,k]
    for k in range(n + 1):
        a = prev[k - 1] if k >= 1 else (0,)
        b = prev[k] if k < n else (0,)
        c = [0] * max(len(a), len(b) + k)
        for i, v in enumerate(a):
            c[i] += v
        for i, v in enumerate(b):
            c[i + k] += v
        new.append(tuple(c))
    return tuple(new)


def gaussian_binomial_coeffs(n: int, k: int) -> list[int]:
    """Integer coefficients (ascending powers of q) of the Gaussian binomial."""
    if k < 0 or k > n:
        return [0]
    return list(_gaussian_row(n)[k])


def q_binomial_exact(n: int, k: int, q: Fraction) -> Fraction:
    if k < 0 or k > n:
        return Fraction(0)
    num = Fraction(1)
    for j in range(k):
        num *= (1 - q ** (n - j)) / (1 - q ** (j + 1))
    return num


def q_binomial(n: int, k: int, ctx: PrecisionContext | None = None):
    """Gaussian binomial coefficient.

    With a context the numeric value is returned; without one the result is
    the exact polynomial in q as a ``RationalFunctionQ``.
    """
    if ctx is None:
        from .qnumbers import RationalFunctionQ

        return RationalFunctionQ.from_coeffs(gaussian_binomial_coeffs(n, k))
    r = q_binomial_exact(n, k, ctx.q)
    return ctx.mp.mpf(r.numerator) / r.denominator


def _as_mp(mp, a):
    if isinstance(a, Fraction):
        return mp.mpf(a.numerator) / a.denominator
    if isinstance(a, complex):
        return mp.mpc(a)
    if isinstance(a, (mpmath.mpf, mpmath.mpc)):
        return mp.convert(a)
    return mp.convert(a)


def q_pochhammer(a, n, ctx: PrecisionContext):
    """(a; q)_n for finite ``n`` or ``n=None`` / ``math.inf`` (infinite product).

    The infinite product stops once |a| q^N drops below
    10^-(dps + product_cutoff).
    """
    mp = ctx.mp
    a = _as_mp(mp, a)
    qm = ctx.qm
    if n is not None and n != math.inf:
        n = int(n)
        if n < 0:
            # (a;q)_{-n} = 1/(a q^{-n}; q)_n
            return 1 / q_pochhammer(a * qm ** n, -n, ctx)
        out = mp.mpf(1)
        t = a
        for _ in range(n):
            out *= 1 - t
            t *= qm
        return out
    eps = mp.mpf(10) ** (-(ctx.dps + ctx.product_cutoff))
    out = mp.mpf(1)
    t = a
    while abs(t) >= eps:
        out *= 1 - t
        t *= qm
    return out


def tail_switch(mp, q, extra: int = 5):
    """|argument| below which q-product tails switch from factors to the log series.

    Balances the number of direct factors, log(t0/t)/log(1/q), against the
    number of series terms, D/log10(1/t), with D the working digits.
    """
    lq = -float(mp.log10(q))
    u = ((mp.dps + extra) * lq) ** 0.5
    return min(mp.mpf(1) / 2, mp.mpf(10) ** (-u))


def qprod(mp, b, q, extra: int = 5):
    """Pi_{j>=0} (1 + b q^j) with a closed-form tail.

    Factors with |b q^j| above ``tail_switch`` are multiplied directly; the rest is summed
    through log Pi (1 + c q^i) = sum_m (-1)^(m+1) c^m / (m (1 - q^m)).
    Returns an exact zero when a factor vanishes.
    """
    out = mp.mpf(1)
    t = b
    half = tail_switch(mp, q, extra)
    while abs(t) > half:
        f = 1 + t
        if f == 0:
            return mp.zero
        out *= f
        t *= q
    if t == 0:
        return out
    eps = mp.mpf(10) ** (-(mp.dps + extra))
    s = mp.zero
    tm = t
    qm_ = q
    m = 1
    while True:
        term = tm / (m * (1 - qm_))
        s += term if m % 2 else -term
        if abs(term) < eps:
            break
        m += 1
        tm *= t
        qm_ *= q
    return out * mp.exp(s)


def qprod_logderiv(mp, b, q, extra: int = 5):
    """sum_{j>=0} q^j / (1 + b q^j), the derivative of log Pi (1 + b q^j) in b."""
    s = mp.zero
    t = b
    qj = mp.mpf(1)
    half = tail_switch(mp, q, extra)
    while abs(t) > half:
        s += qj / (1 + t)
        t *= q
        qj *= q
    if t == 0:
        return s + qj / (1 - q)
    # sum_i q^(J+i)/(1 + t q^i) = q^J sum_m (-t)^m / (1 - q^(m+1))
    eps = mp.mpf(10) ** (-(mp.dps + extra))
    acc = mp.zero
    tm = mp.mpf(1)
    qm_ = q
    while True:
        term = tm / (1 - qm_)
        acc += term
        if abs(term) < eps:
            break
        tm *= -t
        qm_ *= q
    return s + qj * acc


def q_gamma(x, ctx: PrecisionContext):
    """Jackson's q-gamma function (q;q)_inf/(q^x;q)_inf * (1-q)^(1-x)."""
    mp = ctx.mp
    x = _as_mp(mp, x)
    qm = ctx.qm
    if mp.im(x) == 0:
        xr = mp.re(x)
        if xr <= 0 and xr == mp.floor(xr):
            raise PoleError(f"q-gamma has a pole at x={mp.nstr(xr, 10)}")
    num = qprod(mp, -qm, qm)
    den = qprod(mp, -qm ** x, qm)
    if den == 0:
        raise PoleError("q-gamma pole")
    return num / den * (1 - qm) ** (1 - x)


def to_fraction(x) -> Fraction | None:
    """Exact rational for ints, Fractions and rational strings, else None."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            return None
    return None
