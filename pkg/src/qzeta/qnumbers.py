"""Exact q-Bernoulli and q-Euler numbers and polynomials.

Coefficients live in the field Q(q) of rational functions.  Generating
functions are written in the normalized form ``sum_n c_n t^n / [n]_q!`` and
multiplied with the q-binomial Cauchy rule.

    >>> b = q_bernoulli_numbers(4)
    >>> str(b[2])
    'q*(q + 1)/(4*(q**2 + q + 1))'
"""
from __future__ import annotations

import json
import threading
from fractions import Fraction
from functools import lru_cache

from sympy import QQ, factor
from sympy.polys.fields import field
from sympy.polys.rings import ring

from .qcore import DomainError, PrecisionContext, gaussian_binomial_coeffs, mp_context

_K, _q = field("q", QQ)
_D = _K.to_domain()
_R, _x = ring("x", _D)
_P, _qp = ring("q", QQ)

MAX_ORDER = 64


def _qq(v) -> "QQ":
    if isinstance(v, Fraction):
        return QQ(v.numerator, v.denominator)
    return QQ(v)


class RationalFunctionQ:
    """Reduced rational function of q with rational coefficients.

    Equality is exact.  ``num_coeffs``/``den_coeffs`` are ascending-power
    Fraction lists with the denominator scaled to leading coefficient one.
    """

    __slots__ = ("_f",)

    def __init__(self, f):
        if isinstance(f, RationalFunctionQ):
            f = f._f
        elif not hasattr(f, "numer"):
            f = _K(_qq(f)) if isinstance(f, (int, Fraction)) else _K(f)
        self._f = f

    @classmethod
    def from_coeffs(cls, num, den=(1,)) -> "RationalFunctionQ":
        n = sum((_K(_qq(Fraction(c))) * _q ** i for i, c in enumerate(num)), _K.zero)
        d = sum((_K(_qq(Fraction(c))) * _q ** i for i, c in enumerate(den)), _K.zero)
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        return cls(n / d)

    @classmethod
    def q(cls) -> "RationalFunctionQ":
        return cls(_q)

    # arithmetic
    def _wrap(self, other):
        if isinstance(other, RationalFunctionQ):
            return other._f
        if isinstance(other, (int, Fraction)):
            return _K(_qq(other))
        return NotImplemented

    def __add__(self, o):
        o = self._wrap(o)
        return NotImplemented if o is NotImplemented else RationalFunctionQ(self._f + o)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._wrap(o)
        return NotImplemented if o is NotImplemented else RationalFunctionQ(self._f - o)

    def __rsub__(self, o):
        o = self._wrap(o)
        return NotImplemented if o is NotImplemented else RationalFunctionQ(o - self._f)

    def __mul__(self, o):
        o = self._wrap(o)
        return NotImplemented if o is NotImplemented else RationalFunctionQ(self._f * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._wrap(o)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunctionQ(self._f / o)

    def __rtruediv__(self, o):
        o = self._wrap(o)
        return NotImplemented if o is NotImplemented else RationalFunctionQ(o / self._f)

    def __neg__(self):
        return RationalFunctionQ(-self._f)

    def __pow__(self, n: int):
        return RationalFunctionQ(self._f ** n)

    def __eq__(self, o):
        o = self._wrap(o)
        return False if o is NotImplemented else self._f == o

    def __hash__(self):
        return hash((tuple(self.num_coeffs), tuple(self.den_coeffs)))

    def is_zero(self) -> bool:
        return self._f == 0

    # views
    def _coeffs(self, poly) -> list[Fraction]:
        deg = poly.degree()
        out = [Fraction(0)] * (max(deg, 0) + 1)
        for (e,), c in poly.terms():
            out[e] = Fraction(int(c.numerator), int(c.denominator))
        return out

    def _normalized(self):
        num = self._coeffs(self._f.numer)
        den = self._coeffs(self._f.denom)
        lead = den[-1]
        return [c / lead for c in num], [c / lead for c in den]

    @property
    def num_coeffs(self) -> list[Fraction]:
        return self._normalized()[0]

    @property
    def den_coeffs(self) -> list[Fraction]:
        return self._normalized()[1]

    def __call__(self, q):
        """Exact value at a rational q, or numeric value at an mp number."""
        num, den = self._normalized()
        if isinstance(q, (int, Fraction)):
            q = Fraction(q)
            d = sum((c * q ** i for i, c in enumerate(den)), Fraction(0))
            if d == 0:
                raise DomainError(f"denominator vanishes at q={q}")
            return sum((c * q ** i for i, c in enumerate(num)), Fraction(0)) / d
        return _horner(num, q) / _horner(den, q)

    def as_expr(self):
        return self._f.as_expr()

    def __str__(self):
        return str(factor(self._f.as_expr()))

    def __repr__(self):
        return f"RationalFunctionQ({self})"

    def to_json(self) -> dict:
        num, den = self._normalized()
        return {
            "num_coeffs": [_frac_str(c) for c in num],
            "den_coeffs": [_frac_str(c) for c in den],
            "text": str(self),
        }

    @classmethod
    def from_json(cls, d: dict) -> "RationalFunctionQ":
        return cls.from_coeffs([Fraction(c) for c in d["num_coeffs"]], [Fraction(c) for c in d["den_coeffs"]])


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + (x.context.mpf(c.numerator) / c.denominator if hasattr(x, "context") else c)
    return acc


def eval_rf(rf: RationalFunctionQ, ctx: PrecisionContext):
    """Value of ``rf`` at the context's q, computed exactly then rounded."""
    v = rf(ctx.q)
    return ctx.mp.mpf(v.numerator) / v.denominator


class XPoly:
    """Polynomial in x whose coefficients are rational functions of q."""

    __slots__ = ("_p",)

    def __init__(self, p):
        self._p = p

    @property
    def degree(self) -> int:
        return max(self._p.degree(), 0)

    def coeffs(self) -> list[RationalFunctionQ]:
        out = [RationalFunctionQ(_K.zero) for _ in range(self.degree + 1)]
        for (e,), c in self._p.terms():
            out[e] = RationalFunctionQ(_D.convert(c))
        return out

    def __call__(self, x) -> RationalFunctionQ:
        """Substitute an exact x (int, Fraction or RationalFunctionQ)."""
        if isinstance(x, RationalFunctionQ):
            xv = x._f
        else:
            xv = _K(_qq(Fraction(x)))
        acc = _K.zero
        for c in reversed(self.coeffs()):
            acc = acc * xv + c._f
        return RationalFunctionQ(acc)

    def numeric(self, x, ctx: PrecisionContext):
        mp = ctx.mp
        acc = mp.zero
        for c in reversed(self.coeffs()):
            acc = acc * x + eval_rf(c, ctx)
        return acc

    def __eq__(self, o):
        return isinstance(o, XPoly) and self._p == o._p

    def __str__(self):
        return str(self._p.as_expr())

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self.coeffs()]}


class QPowerSeries:
    """Truncated series sum_n c_n t^n / [n]_q! with coefficients in Q(q)[x]."""

    def __init__(self, coeffs):
        self.coeffs = [_R(c) if not hasattr(c, "ring") else c for c in coeffs]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: "QPowerSeries") -> "QPowerSeries":
        n = min(self.order, other.order)
        out = []
        for m in range(n):
            acc = _R.zero
            for k in range(m + 1):
                acc += _qbinom(m, k) * self.coeffs[k] * other.coeffs[m - k]
            out.append(acc)
        return QPowerSeries(out)


@lru_cache(maxsize=None)
def _qfact(n: int):
    out = _D.one
    for k in range(1, n + 1):
        out = out * _D.convert(sum((_q ** j for j in range(k)), _K.zero))
    return out


@lru_cache(maxsize=None)
def _qbinom(n: int, k: int):
    cs = gaussian_binomial_coeffs(n, k)
    return _D.convert(sum((_K(c) * _q ** i for i, c in enumerate(cs)), _K.zero))


def series_divide(num: QPowerSeries, den: QPowerSeries, order: int) -> QPowerSeries:
    """Quotient num/den up to t^(order-1) in the normalized basis.

    Leading zero coefficients common to both series are cancelled first, which
    is what makes t / (eps(t) - 1) well defined.
    """
    a = [c * _R(_D.one / _qfact(n)) for n, c in enumerate(num.coeffs)]
    b = [c * _R(_D.one / _qfact(n)) for n, c in enumerate(den.coeffs)]
    shift = 0
    while shift < len(b) and b[shift] == 0:
        if a[shift] != 0:
            raise DomainError("quotient has a pole at t = 0")
        shift += 1
    if shift == len(b):
        raise DomainError("division by a zero series")
    a, b = a[shift:], b[shift:]
    if len(a) < order or len(b) < order:
        raise DomainError("series too short for the requested order")
    b0 = b[0]
    if b0.is_ground:
        inv0 = _R(_D.one / b0.LC)
    else:
        raise DomainError("leading coefficient must not depend on x")
    out = []
    for n in range(order):
        acc = a[n]
        for k in range(n):
            acc -= out[k] * b[n - k]
        out.append(acc * inv0)
    return QPowerSeries([c * _R(_qfact(n)) for n, c in enumerate(out)])


def _eps_coeffs(order: int) -> list:
    # eps(t) = e_q(t/2) E_q(t/2): normalized coefficients 2^-n sum_k [n,k] q^(k(k-1)/2)
    out = []
    for n in range(order):
        s = _K.zero
        for k in range(n + 1):
            cs = gaussian_binomial_coeffs(n, k)
            s += sum((_K(c) * _q ** i for i, c in enumerate(cs)), _K.zero) * _q ** (k * (k - 1) // 2)
        out.append(_R(_D.convert(s / 2 ** n)))
    return out


def series_for_eps_minus_one(order: int) -> QPowerSeries:
    c = _eps_coeffs(order)
    c[0] = c[0] - 1
    return QPowerSeries(c)


def series_for_eps_plus_one(order: int) -> QPowerSeries:
    c = _eps_coeffs(order)
    c[0] = c[0] + 1
    return QPowerSeries(c)


def _check_order(N: int):
    if not isinstance(N, int) or N < 0:
        raise DomainError("order must be a non-negative integer")
    if N > MAX_ORDER:
        raise DomainError(f"order {N} exceeds the supported maximum {MAX_ORDER}")


_LOCK = threading.RLock()
_BETA: list = []
_TILDE: list = []


def _qbinom_field(n: int, k: int):
    return _K(_qbinom(n, k))


@lru_cache(maxsize=None)
def _qbinom_poly(n: int, k: int):
    return sum((c * _qp ** i for i, c in enumerate(gaussian_binomial_coeffs(n, k))), _P.zero)


@lru_cache(maxsize=None)
def _eps_coeff_poly(n: int):
    return sum((_qbinom_poly(n, k) * _qp ** (k * (k - 1) // 2) for k in range(n + 1)), _P.zero)


def _extend_bernoulli(N: int):
    # (eps - 1) * B(t) = t, read off coefficient of t^(m+1)/[m+1]!
    while len(_BETA) <= N:
        m = len(_BETA)
        acc = _K.one if m == 0 else _K.zero
        for k in range(m):
            if _BETA[k] == 0:
                continue
            w = _qbinom_poly(m + 1, k) * _eps_coeff_poly(m + 1 - k) * QQ(1, 2 ** (m + 1 - k))
            acc -= _K(w) * _BETA[k]
        _BETA.append(acc / _K(sum((_qp ** j for j in range(m + 1)), _P.zero)))


def _extend_tilde(N: int):
    # (eps + 1) * E~(t) = 2; every E~_n is a polynomial in q, so stay in Q[q]
    while len(_TILDE) <= N:
        n = len(_TILDE)
        acc = _P(2) if n == 0 else _P.zero
        for k in range(n):
            if _TILDE[k] == 0:
                continue
            acc -= _qbinom_poly(n, k) * _eps_coeff_poly(n - k) * _TILDE[k] * QQ(1, 2 ** (n - k))
        _TILDE.append(acc * QQ(1, 2))


def _tilde_field(N: int) -> list:
    with _LOCK:
        _extend_tilde(N)
        return [_K(t) for t in _TILDE[: N + 1]]


def q_bernoulli_numbers(N: int) -> list[RationalFunctionQ]:
    """beta_0 .. beta_N from t/(eps(t) - 1) = sum beta_n t^n/[n]!."""
    _check_order(N)
    with _LOCK:
        _extend_bernoulli(N)
        return [RationalFunctionQ(b) for b in _BETA[: N + 1]]


def q_bernoulli_numbers_by_division(N: int) -> list[RationalFunctionQ]:
    """Same numbers through generic series division (slower, independent route)."""
    _check_order(N)
    t_series = QPowerSeries([_R.zero, _R.one] + [_R.zero] * N)
    gen = series_divide(t_series, series_for_eps_minus_one(N + 2), N + 1)
    return [RationalFunctionQ(_D.convert(c.LC) if c != 0 else _K.zero) for c in gen.coeffs[: N + 1]]


def _binomial_poly(n: int, numbers, big: bool) -> XPoly:
    p = _R.zero
    for k in range(n + 1):
        c = _qbinom_field(n, k) * numbers[n - k]
        if big:
            c = c * _q ** (k * (k - 1) // 2)
        p += _R(_D.convert(c)) * _x ** k
    return XPoly(p)


@lru_cache(maxsize=None)
def _poly_cached(n: int, which: str) -> XPoly:
    if which not in ("b", "B"):
        raise DomainError("which must be 'b' or 'B'")
    with _LOCK:
        _extend_bernoulli(n)
        return _binomial_poly(n, _BETA, which == "B")


def q_bernoulli_poly(n: int, which: str = "b") -> XPoly:
    """q-Bernoulli polynomial of degree n.

    ``"b"`` comes from t e_q(xt)/(eps(t) - 1), ``"B"`` from t E_q(xt)/(eps(t) - 1).
    """
    _check_order(n)
    return _poly_cached(n, which)


@lru_cache(maxsize=None)
def _euler_poly_cached(n: int, which: str) -> XPoly:
    return _binomial_poly(n, _tilde_field(n), which == "E")


def q_euler_poly(n: int, which: str = "e") -> XPoly:
    """q-Euler polynomial: ``"e"`` from 2e_q(xt)/(eps+1), ``"E"`` from 2E_q(xt)/(eps+1)."""
    _check_order(n)
    if which not in ("e", "E"):
        raise DomainError("which must be 'e' or 'E'")
    return _euler_poly_cached(n, which)


def q_euler_numbers_by_division(N: int) -> list[RationalFunctionQ]:
    _check_order(N)
    two = QPowerSeries([_R(2)] + [_R.zero] * N)
    gen = series_divide(two, series_for_eps_plus_one(N + 1), N + 1)
    return [RationalFunctionQ(_D.convert(c.LC) if c != 0 else _K.zero) for c in gen.coeffs[: N + 1]]


def q_euler_polys_and_numbers(N: int, with_polys: bool = False) -> dict:
    """Euler-type families up to order N.

    Returns a dict with
      ``tilde``   : E~_n = e_n(0), the Taylor data of 2/(eps+1)
      ``genocchi``: G_n = [n] E~_(n-1)  (G_0 = 0)
      ``e_half``  : 2^n e_n(1/2)
      ``E_half``  : 2^n E_n(1/2)
    and, when ``with_polys`` is set, ``e_polys`` / ``E_polys``.
    """
    _check_order(N)
    with _LOCK:
        _extend_tilde(N)
        tl = list(_TILDE[: N + 1])
    e_half, E_half = [], []
    for n in range(N + 1):
        a = b = _P.zero
        for k in range(n + 1):
            c = _qbinom_poly(n, k) * tl[n - k] * 2 ** (n - k)
            a += c
            b += c * _qp ** (k * (k - 1) // 2)
        e_half.append(RationalFunctionQ(_K(a)))
        E_half.append(RationalFunctionQ(_K(b)))
    tilde = [RationalFunctionQ(_K(t)) for t in tl]
    out = {
        "tilde": tilde,
        "genocchi": [RationalFunctionQ(0)]
        + [RationalFunctionQ.from_coeffs([1] * n) * tilde[n - 1] for n in range(1, N + 1)],
        "e_half": e_half,
        "E_half": E_half,
    }
    if with_polys:
        out["e_polys"] = [q_euler_poly(n, "e") for n in range(N + 1)]
        out["E_polys"] = [q_euler_poly(n, "E") for n in range(N + 1)]
    return out


def bernoulli_closed_forms() -> dict[int, RationalFunctionQ]:
    """Known closed forms of beta_1, beta_2, beta_4, beta_6 (regression oracles)."""
    qq = RationalFunctionQ.q()

    def br(n):
        return RationalFunctionQ.from_coeffs([1] * n)

    def neg_poch(n):
        out = RationalFunctionQ(1)
        for j in range(1, n + 1):
            out = out * (1 + qq ** j)
        return out

    return {
        1: RationalFunctionQ(Fraction(-1, 2)),
        2: qq * neg_poch(1) / (4 * br(3)),
        4: -(qq ** 4) * neg_poch(2) * br(2) / (16 * br(3) * br(5)),
        6: qq ** 7 * neg_poch(3) * br(4) / (64 * br(3) * br(7)),
    }


def family_to_json(name: str, values, q=None, digits: int = 30) -> str:
    """JSON document for a list of RationalFunctionQ (optionally with numeric values)."""
    entries = []
    for n, v in enumerate(values):
        rec = {"n": n, **v.to_json()}
        if q is not None:
            mp = mp_context(digits + 10)
            rec["value"] = mp.nstr(mp.mpf(v(q).numerator) / v(q).denominator, digits)
        entries.append(rec)
    doc = {"family": name, "entries": entries}
    if q is not None:
        doc["q"] = _frac_str(Fraction(q))
    return json.dumps(doc, indent=2)
