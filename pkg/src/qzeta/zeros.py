"""Certified positive zeros of Sin_q, Cos_q and the second Jackson q-Bessel function.

For Sin_q and Cos_q the phase theta(x) of E_q(ix) is strictly increasing, and
the k-th positive zero of Sin_q (Cos_q) is the unique solution of
theta = k*pi (theta = (k - 1/2)*pi).  Brackets are therefore located and the
index of every refined zero is certified through the phase, independently of
the sign-change bookkeeping.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .qcore import DomainError, LocalizationError, PrecisionContext, mp_context, parse_q
from .qfunctions import imag_axis, jackson_bessel2, jackson_bessel2_prime, trig_pair, trig_values

BURN_IN = 3


@dataclass(frozen=True)
class ZeroEntry:
    k: int
    value: object
    residual: object  # |f(value)|
    bound: object  # |f'(value)| times the certified bracket half-width


@dataclass(frozen=True)
class ZeroTable:
    """Ordered positive zeros of one function at one q."""

    kind: str  # "sin", "cos" or "bessel"
    q: Fraction
    digits: int
    entries: tuple
    nu: Fraction | None = None
    asymptotic_constant: object = None

    def __len__(self):
        return len(self.entries)

    @property
    def values(self) -> list:
        return [e.value for e in self.entries]

    def value(self, k: int):
        """k-th zero, 1-based."""
        return self.entries[k - 1].value

    @property
    def label(self) -> str:
        return f"bessel({self.nu})" if self.kind == "bessel" else self.kind

    def to_csv(self, stream=None) -> str:
        out = stream or io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["kind", "q", "k", "zero", "residual", "digits"])
        mp = mp_context(self.digits + 15)
        for e in self.entries:
            w.writerow([self.label, f"{self.q.numerator}/{self.q.denominator}", e.k,
                        mp.nstr(e.value, self.digits + 5, strip_zeros=False),
                        mp.nstr(e.residual, 5), self.digits])
        return out.getvalue() if stream is None else ""

    @classmethod
    def from_csv(cls, text: str) -> "ZeroTable":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise DomainError("empty zero table")
        label = rows[0]["kind"]
        digits = int(rows[0]["digits"])
        mp = mp_context(digits + 15)
        nu = None
        kind = label
        if label.startswith("bessel("):
            kind = "bessel"
            nu = Fraction(label[len("bessel("):-1])
        q = parse_q(rows[0]["q"])
        entries = tuple(
            ZeroEntry(int(r["k"]), mp.mpf(r["zero"]), mp.mpf(r["residual"]), mp.mpf(r["residual"]))
            for r in rows
        )
        return cls(kind, q, digits, entries, nu, _constant(kind, q, mp))

    def to_records(self) -> list[dict]:
        mp = mp_context(self.digits + 15)
        return [
            {"k": e.k, "zero": mp.nstr(e.value, self.digits), "residual": mp.nstr(e.residual, 5),
             "bound": mp.nstr(e.bound, 5)}
            for e in self.entries
        ]


def _constant(kind, q: Fraction, mp):
    qm = mp.mpf(q.numerator) / q.denominator
    if kind == "sin":
        return qm ** (-mp.mpf(3) / 2) / (1 - qm)
    if kind == "cos":
        return qm ** (-mp.mpf(1) / 2) / (1 - qm)
    return None


# ----------------------------------------------------------------- refinement


def refine_zero(bracket, f: Callable, ctx: PrecisionContext, fprime: Callable | None = None):
    """Shrink a sign-change bracket around a simple zero.

    With a derivative, safeguarded Newton runs from the midpoint: any step
    that leaves the current bracket is replaced by a bisection step, and the
    bracket shrinks with every evaluation.  Without one, plain bisection.
    The result is accepted only if f changes sign across
    [v(1 - h), v(1 + h)] with h = 10^-digits / 2.

    Returns (value, |f(value)|, |f'(value)| * h * value).
    """
    mp = ctx.mp
    lo, hi = (mp.convert(b) for b in bracket)
    if lo > hi:
        lo, hi = hi, lo
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo, mp.zero, mp.zero
    if fhi == 0:
        return hi, mp.zero, mp.zero
    if flo * fhi > 0:
        raise DomainError("invalid bracket: no sign change")
    h = mp.mpf(10) ** (-ctx.digits) / 2
    if fprime is None:
        while (hi - lo) / 2 > h * abs(lo + hi) / 2:
            mid = (lo + hi) / 2
            fm = f(mid)
            if fm == 0:
                return mid, mp.zero, mp.zero
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi, fhi = mid, fm
        v = (lo + hi) / 2
    else:
        v = (lo + hi) / 2
        for _ in range(20 * ctx.dps):
            fv = f(v)
            if fv == 0:
                return v, mp.zero, mp.zero
            if (fv > 0) == (flo > 0):
                lo, flo = v, fv
            else:
                hi, fhi = v, fv
            d = fprime(v)
            if d != 0 and abs(fv / d) < h * abs(v) / 10:
                v = v - fv / d
                break
            nv = v - fv / d if d != 0 else lo - 1
            v = nv if lo < nv < hi else (lo + hi) / 2
            if (hi - lo) < h * abs(v):
                break
    # certify
    for _ in range(200):
        a, b = v * (1 - h), v * (1 + h)
        fa, fb = f(a), f(b)
        if fa == 0 or fb == 0 or (fa > 0) != (fb > 0):
            break
        # Newton landed off; finish by bisection
        if (fa > 0) == (flo > 0):
            lo, flo = b, fb
        else:
            hi, fhi = a, fa
        v = (lo + hi) / 2
    else:
        raise LocalizationError("could not certify the refined zero")
    fv = f(v)
    dv = fprime(v) if fprime is not None else (fb - fa) / (b - a)
    return v, abs(fv), abs(dv) * h * abs(v)


# -------------------------------------------------------------- sin and cos


def _phase_target(kind: str, k: int, mp):
    return mp.pi * k if kind == "sin" else mp.pi * (k - mp.mpf(1) / 2)


def _phase_index(kind: str, theta, mp) -> int:
    r = theta / mp.pi
    return int(mp.nint(r)) if kind == "sin" else int(mp.nint(r + mp.mpf(1) / 2))


def _scan_phase(kind, k, ctx, start):
    """Walk up from ``start`` until the phase passes the k-th target."""
    mp = ctx.mp
    T = _phase_target(kind, k, mp)
    lo = mp.convert(start)
    th, dth, _ = imag_axis(lo, ctx)
    if th >= T:
        raise LocalizationError("scan start already past the target phase")
    hi = lo
    for _ in range(100000):
        step = max(2 * (T - th) / dth, hi / 1000, mp.mpf("1e-3"))
        nxt = hi + step
        th, dth, _ = imag_axis(nxt, ctx)
        if th > T:
            return hi, nxt
        hi = nxt
    raise LocalizationError(f"phase scan did not reach zero {k}")


def _isolate(kind, k, lo, hi, ctx):
    """Phase bisection until theta stays within pi/2 of the k-th target on [lo, hi]."""
    mp = ctx.mp
    T = _phase_target(kind, k, mp)
    half = mp.pi / 2
    tlo, thi = imag_axis(lo, ctx)[0], imag_axis(hi, ctx)[0]
    while tlo < T - half or thi > T + half:
        mid = (lo + hi) / 2
        tm = imag_axis(mid, ctx)[0]
        if tm < T:
            lo, tlo = mid, tm
        else:
            hi, thi = mid, tm
    return lo, hi


def _bracket_sin_cos(kind, k, ctx, prev):
    """Bracket the k-th zero: asymptotic guess first, phase scan as fallback."""
    mp = ctx.mp
    T = _phase_target(kind, k, mp)
    qm = ctx.qm
    if k > BURN_IN:
        # observed onset of the geometric regime: xi_k ~ A q^(2-2k)
        g = _constant(kind, ctx.q, mp) * qm ** (2 - 2 * k)
        rho = (1 - qm * qm) / 2
        for _ in range(8):
            lo, hi = g / (1 + rho), g * (1 + rho)
            if prev is not None and lo <= prev:
                break
            if imag_axis(lo, ctx)[0] < T < imag_axis(hi, ctx)[0]:
                return _isolate(kind, k, lo, hi, ctx)
            rho *= 2
    start = prev if prev is not None else mp.mpf("1e-6")
    return _isolate(kind, k, *_scan_phase(kind, k, ctx, start), ctx)


def _sin_cos_funcs(kind, ctx):
    idx = 0 if kind == "sin" else 1

    def f(x):
        return trig_values(x, ctx)[idx]

    def fp(x):
        return trig_pair(x, ctx)[idx + 2]

    return f, fp


def _phase_newton(kind, k, lo, hi, ctx):
    """Safeguarded Newton on theta(x) = target inside [lo, hi]."""
    mp = ctx.mp
    T = _phase_target(kind, k, mp)
    x = (lo + hi) / 2
    tol = mp.mpf(10) ** (-(ctx.digits + 5))
    for _ in range(200):
        th, dth, _ = imag_axis(x, ctx)
        if th < T:
            lo = x
        else:
            hi = x
        nx = x - (th - T) / dth
        if not lo < nx < hi:
            nx = (lo + hi) / 2
        if abs(nx - x) <= tol * x:
            return nx
        x = nx
    return x


def _refine_sin_cos(kind, k, br, ctx):
    mp = ctx.mp
    f, fp = _sin_cos_funcs(kind, ctx)
    v0 = _phase_newton(kind, k, br[0], br[1], ctx)
    w = mp.mpf(10) ** (-(ctx.digits // 2))
    narrow = (v0 * (1 - w), v0 * (1 + w))
    if f(narrow[0]) * f(narrow[1]) < 0:
        br = narrow
    v, res, bound = refine_zero(br, f, ctx, fp)
    got = _phase_index(kind, imag_axis(v, ctx)[0], mp)
    if got != k:
        raise LocalizationError(f"{kind} zero {k}: phase certifies index {got}")
    return ZeroEntry(k, v, res, bound)


# ----------------------------------------------------------------- bessel


def _bessel_funcs(nu, ctx):
    def f(x):
        return jackson_bessel2(x, nu, ctx).value

    def fp(x):
        return jackson_bessel2_prime(x, nu, ctx).value

    return f, fp


def _bracket_bessel(k, nu, ctx, found):
    mp = ctx.mp
    f, _ = _bessel_funcs(nu, ctx)
    qm = ctx.qm
    if k > BURN_IN and len(found) >= 2:
        a, b = found[-2], found[-1]
        g = b * b / a
        rho = (1 - qm * qm) / 2
        for _ in range(8):
            lo, hi = max(g / (1 + rho), b * (1 + mp.mpf("1e-6"))), g * (1 + rho)
            if f(lo) * f(hi) < 0:
                return lo, hi
            rho *= 2
    # geometric grid sign scan
    if found:
        x = found[-1] * (1 + mp.mpf("1e-6"))
    else:
        # the term ratio t_1/t_0 bounds all later ones, so J_nu > 0 while it is below 1
        Q = qm * qm
        nu_ = mp.convert(nu)
        x = 2 * mp.sqrt((1 - Q) * (1 - Q ** (nu_ + 1)) / Q ** (nu_ + 1)) * mp.mpf("0.999")
    fx = f(x)
    r = mp.mpf("1.01")
    for _ in range(20000):
        nx = x * r
        fn = f(nx)
        if fx * fn < 0:
            return x, nx
        x, fx = nx, fn
    raise LocalizationError(f"no sign change found for bessel zero {k}")


# ------------------------------------------------------------------- driver


def locate_zeros(kind: str, K: int, ctx: PrecisionContext, nu=None, threads: int = 1,
                 start: ZeroTable | None = None) -> ZeroTable:
    """First K positive zeros of Sin_q ("sin"), Cos_q ("cos") or J_nu^(2)(.; q^2) ("bessel").

    Brackets are fixed sequentially; refinement of distinct zeros may run on
    ``threads`` workers and the table is assembled in index order.  An
    existing ``start`` table is reused and extended.
    """
    if K < 1:
        raise DomainError("K must be at least 1")
    if kind not in ("sin", "cos", "bessel"):
        raise DomainError(f"unknown zero kind {kind!r}")
    if kind == "bessel":
        if nu is None:
            raise DomainError("bessel zeros need an order nu")
        nu = Fraction(nu) if not isinstance(nu, Fraction) else nu
        if nu <= -1:
            raise DomainError("order nu must exceed -1")
    mp = ctx.mp
    done = list(start.entries[:K]) if start is not None else []
    if done and (start.digits < ctx.digits or start.q != ctx.q):
        done = []
    nu_mp = None if nu is None else mp.mpf(nu.numerator) / nu.denominator
    entries = list(done)
    if kind == "bessel":
        f, fp = _bessel_funcs(nu_mp, ctx)
        found = [e.value for e in entries]
        for k in range(len(entries) + 1, K + 1):
            br = _bracket_bessel(k, nu_mp, ctx, found)
            v, res, bound = refine_zero(br, f, ctx, fp)
            if found and v <= found[-1]:
                raise LocalizationError(f"bessel zero {k} not beyond zero {k - 1}")
            found.append(v)
            entries.append(ZeroEntry(k, v, res, bound))
    else:
        brackets = []
        prev = entries[-1].value if entries else None
        for k in range(len(entries) + 1, K + 1):
            br = _bracket_sin_cos(kind, k, ctx, prev)
            brackets.append((k, br))
            prev = br[0]
        if threads > 1 and len(brackets) > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                new = list(ex.map(lambda kb: _refine_sin_cos(kind, kb[0], kb[1], ctx), brackets))
        else:
            new = [_refine_sin_cos(kind, k, br, ctx) for k, br in brackets]
        entries.extend(new)
    values = [e.value for e in entries]
    if any(b <= a for a, b in zip(values, values[1:])):
        raise LocalizationError("zero table is not strictly increasing")
    return ZeroTable(kind, ctx.q, ctx.digits, tuple(entries), nu, _constant(kind, ctx.q, mp))


# --------------------------------------------------------------- diagnostics


def asymptotic_diagnostics(sin_table: ZeroTable, cos_table: ZeroTable | None, ctx: PrecisionContext,
                           delta: float = 0.05) -> dict:
    """Numerical report on growth, interlacing and the bounded weight sequences.

    Nothing here raises; every item is returned as data.
    """
    mp = ctx.mp
    if len(sin_table) < 4:
        raise DomainError("diagnostics need at least 4 zeros")
    qm = ctx.qm
    A = _constant("sin", ctx.q, mp)
    xs = sin_table.values
    scaled = [x * qm ** (2 * k) / A for k, x in enumerate(xs, start=1)]
    dev = [abs(s - 1) for s in scaled]
    ratios = [b / a for a, b in zip(xs, xs[1:])]
    weights = []
    for k, x in enumerate(xs, start=1):
        S, C, dS, dC = trig_pair(x, ctx)
        weights.append((C / dS, dS))
    rep = {
        "scaled_sin_zeros": [mp.nstr(s, 12) for s in scaled],
        "within_25pct_of_A": [bool(d < mp.mpf("0.25")) for d in dev],
        "deviation_decreasing": all(b < a for a, b in zip(dev[BURN_IN - 1:], dev[BURN_IN:])),
        "scaled_by_q2": [mp.nstr(s / (qm * qm), 12) for s in scaled],
        "ratios": [mp.nstr(r, 12) for r in ratios],
        "ratios_within_delta": [bool(abs(r * qm * qm - 1) < delta) for r in ratios[BURN_IN - 1:]],
        "cos_over_sin_prime_positive": all(w > 0 for w, _ in weights),
        "sin_prime_sign_alternates": all((d > 0) == (k % 2 == 0) for k, (_, d) in enumerate(weights, start=1)),
        "sin_weight_sequence": [mp.nstr(qm ** (2 * k) * w, 12) for k, (w, _) in enumerate(weights, start=1)],
    }
    seq = [abs(qm ** (2 * k) * w) for k, (w, _) in enumerate(weights, start=1)]
    rep["sin_weight_bounded"] = bool(max(seq) < 10 * max(seq[:BURN_IN + 1]))
    if cos_table is not None:
        ys = cos_table.values
        n = min(len(xs), len(ys))
        inter = all(ys[i] < xs[i] for i in range(n)) and all(xs[i] < ys[i + 1] for i in range(n - 1))
        rep["interlacing"] = bool(inter)
        cw = []
        for k, y in enumerate(ys, start=1):
            S, C, dS, dC = trig_pair(y, ctx)
            cw.append(qm ** (2 * k) * S / dC)
        rep["cos_weight_sequence"] = [mp.nstr(c, 12) for c in cw]
        seqc = [abs(c) for c in cw]
        rep["cos_weight_bounded"] = bool(max(seqc) < 10 * max(seqc[:BURN_IN + 1]))
    return rep
