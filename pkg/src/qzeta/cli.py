"""Command line front end: ``qzeta {zeros,numbers,eval,verify,limits}``.

Exit codes: 0 success, 1 identity failure, 2 configuration error,
3 domain / numerical error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .qcore import ConfigError, PrecisionContext, QZetaError, parse_q, parse_tol

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_DOMAIN = 0, 1, 2, 3

FUNCTIONS = ("zeta_q", "zeta_q_star", "eta_q", "eta_q_star", "F_q", "H_q", "I_q", "hurwitz", "sigma")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _common(p, q_default="1/2"):
    p.add_argument("--q", default=q_default, help="base q in (0,1), rational '1/2' or decimal '0.5'")
    p.add_argument("--digits", type=int, default=50, help="target decimal digits (default 50)")
    p.add_argument("--K", type=int, default=10, help="initial number of zeros (default 10)")
    p.add_argument("--tol", default=None, help="truncation tolerance (default 10^(10-digits))")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--threads", type=int, default=1, help="threads for zero refinement")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qzeta", description="q-zeta functions from zeros of q-trigonometric functions")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    z = sub.add_parser("zeros", help="table of zeros of Sin_q, Cos_q or J_nu^(2)(.; q^2)")
    _common(z)
    z.add_argument("--kind", choices=("sin", "cos", "bessel"), default="sin")
    z.add_argument("--nu", default="1/2", help="Bessel order (kind=bessel)")
    z.set_defaults(format="csv")

    n = sub.add_parser("numbers", help="exact q-Bernoulli / q-Euler / q-Genocchi numbers")
    _common(n)
    n.add_argument("--N", type=int, default=16)
    n.add_argument("--what", choices=("bernoulli", "euler", "genocchi"), default="bernoulli")
    n.add_argument("--values", action="store_true", help="also print values at --q")

    e = sub.add_parser("eval", help="evaluate one function")
    _common(e)
    e.add_argument("function", choices=FUNCTIONS)
    e.add_argument("--s", default="2", help="argument s (real or complex, e.g. '2.5' or '2+1j')")
    e.add_argument("--a", default=None, help="second argument a (H_q, I_q, F_q, hurwitz)")
    e.add_argument("--n", type=int, default=1, help="index n (sigma)")
    e.add_argument("--nu", default="1/2", help="order nu (sigma)")
    e.add_argument("--route", default=None,
                   help="H_q/I_q: series|integral|contour; sigma: zeros|taylor|trig")

    v = sub.add_parser("verify", help="run the identity suite")
    _common(v, q_default="3/10,1/2,7/10")
    v.add_argument("--n-max", type=int, default=3)
    v.add_argument("--sections", default=None, help="comma separated subset of sections")
    v.add_argument("--no-probe", action="store_true", help="skip the eta_q*(1) probe near q=1")

    lim = sub.add_parser("limits", help="classical-limit trends as q -> 1")
    _common(lim, q_default="9/10,99/100,999/1000")
    lim.add_argument("--no-probe", action="store_true")
    lim.set_defaults(digits=30)
    return p


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _ctx(args, q=None) -> PrecisionContext:
    return PrecisionContext(parse_q(args.q if q is None else q), args.digits,
                            None if args.tol is None else parse_tol(args.tol))


def _check_common(args):
    if args.K < 1:
        raise ConfigError("--K must be >= 1")
    if args.threads < 1:
        raise ConfigError("--threads must be >= 1")


def cmd_zeros(args) -> int:
    from .zeros import asymptotic_diagnostics, locate_zeros

    ctx = _ctx(args)
    nu = Fraction(args.nu) if args.kind == "bessel" else None
    tab = locate_zeros(args.kind, args.K, ctx, nu=nu, threads=args.threads)
    if args.format == "csv":
        _emit(tab.to_csv(), args.out)
    else:
        _emit(json.dumps({"kind": tab.label, "q": str(ctx.q), "digits": ctx.digits,
                          "zeros": tab.to_records()}, indent=2), args.out)
    if args.kind in ("sin", "cos") and args.K >= 4:
        other = locate_zeros("cos" if args.kind == "sin" else "sin", args.K, ctx, threads=args.threads)
        st, ct = (tab, other) if args.kind == "sin" else (other, tab)
        diag = asymptotic_diagnostics(st, ct, ctx)
        keep = ("interlacing", "deviation_decreasing", "scaled_sin_zeros", "ratios",
                "cos_over_sin_prime_positive", "sin_weight_bounded", "cos_weight_bounded")
        sys.stderr.write(json.dumps({k: diag[k] for k in keep if k in diag}, indent=2) + "\n")
    return EXIT_OK


def cmd_numbers(args) -> int:
    from .qnumbers import family_to_json, q_bernoulli_numbers, q_euler_polys_and_numbers

    if not 0 <= args.N <= 32:
        raise ConfigError("--N must be between 0 and 32")
    if args.what == "bernoulli":
        vals, name = q_bernoulli_numbers(args.N), "beta"
    else:
        fam = q_euler_polys_and_numbers(args.N)
        vals, name = (fam["tilde"], "E_tilde") if args.what == "euler" else (fam["genocchi"], "G")
    q = parse_q(args.q) if args.values else None
    _emit(family_to_json(name, vals, q=q, digits=args.digits), args.out)
    return EXIT_OK


def _parse_s(mp, text: str):
    """'2', '2.5', '1/2', '2+1j', '0.5-14.1i' -> mpf / mpc, decimal parts kept exact."""
    t = text.replace(" ", "").lower()
    try:
        if t.endswith(("j", "i")):
            body = t[:-1]
            cut = max(i for i, ch in enumerate(body) if ch in "+-" and (i == 0 or body[i - 1] != "e"))
            re_part, im_part = body[:cut] or "0", body[cut:]
            if im_part in ("+", "-"):
                im_part += "1"
            return mp.mpc(_real(mp, re_part), _real(mp, im_part))
        return _real(mp, t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse s={text!r}") from exc


def _real(mp, t):
    if "/" in t:
        f = Fraction(t)
        return mp.mpf(f.numerator) / f.denominator
    return mp.mpf(t)


def _parse_a(text):
    if text is None:
        return None
    try:
        return Fraction(text)
    except ValueError as exc:
        raise ConfigError(f"cannot parse a={text!r}") from exc


def cmd_eval(args) -> int:
    from . import spectral as sp

    ctx = _ctx(args)
    mp = ctx.mp
    s = _parse_s(mp, args.s)
    a = _parse_a(args.a)
    f = args.function
    if f in ("F_q", "H_q", "I_q", "hurwitz") and a is None:
        raise ConfigError(f"{f} needs --a")
    sc = sp.SpectralContext(ctx, K=args.K, threads=args.threads)
    tail, K_used = None, None
    route = args.route
    if f == "zeta_q":
        if mp.re(s) > 1:
            r = sp.zeta_q(s, sc)
            val, tail, K_used = r.value, r.tail_bound, r.K_used
        else:
            val = sp.continued_zeta_q(s, sc)
    elif f == "zeta_q_star":
        if mp.re(s) > 1:
            r = sp.zeta_q_star(s, sc)
            val, tail, K_used = r.value, r.tail_bound, r.K_used
        else:
            val = sp.continued_zeta_q_star(s, sc)
    elif f in ("eta_q", "eta_q_star", "F_q"):
        fn = {"eta_q": sp.eta_q, "eta_q_star": sp.eta_q_star}.get(f)
        r = fn(s, sc) if fn else sp.F_q(s, a, sc)
        val, tail, K_used = r.value, r.tail_bound, r.K_used
    elif f in ("H_q", "I_q"):
        route = route or "series"
        if route == "series":
            r = (sp.H_q_series if f == "H_q" else sp.I_q_series)(s, a, sc)
            val, tail, K_used = r.value, r.tail_bound, r.K_used
        elif route == "integral":
            val = (sp.H_q_integral if f == "H_q" else sp.I_q_integral)(s, a, ctx)
        elif route == "contour":
            if mp.im(s) != 0 or mp.re(s) != int(mp.re(s)):
                raise ConfigError("contour route needs an integer s")
            val = (sp.H_q_contour_integer if f == "H_q" else sp.I_q_contour_integer)(int(mp.re(s)), a, sc)
        else:
            raise ConfigError(f"unknown route {route!r}")
    elif f == "hurwitz":
        val = sp.hurwitz_zeta_q(s, a, sc)
    else:  # sigma
        route = route or "zeros"
        nu = Fraction(args.nu)
        if route == "zeros":
            r = sp.rayleigh_sigma(args.n, nu, sc)
            val, tail, K_used = r.value, r.tail_bound, r.K_used
        elif route == "taylor":
            val = sp.rayleigh_sigma_taylor(args.n, nu, ctx)
        elif route == "trig":
            r = sp.rayleigh_sigma_rescaled(args.n, nu, sc)
            val, tail, K_used = r.value, r.tail_bound, r.K_used
        else:
            raise ConfigError(f"unknown route {route!r}")
        s = mp.mpf(2 * args.n)
    rec = sp.value_record(f, s, a, ctx, val, tail, K_used)
    if route:
        rec["route"] = route
    if f == "sigma":
        rec["nu"] = args.nu
    _emit(json.dumps(rec, indent=2), args.out)
    return EXIT_OK


def _q_list(text):
    return tuple(parse_q(t) for t in text.split(",") if t.strip())


def cmd_verify(args) -> int:
    from . import verify as vf

    grid = _q_list(args.q)
    cfg = vf.VerifyConfig(q_grid=grid, digits=args.digits, K=args.K, n_max=args.n_max, tol=args.tol,
                          threads=args.threads, eta_star_probe=not args.no_probe)
    if args.sections:
        secs = tuple(x.strip() for x in args.sections.split(","))
        bad = set(secs) - set(vf.VerifyConfig.sections)
        if bad:
            raise ConfigError(f"unknown sections: {sorted(bad)}")
        cfg.sections = secs
    # validate the config once before the long run
    for q in grid:
        PrecisionContext(q, args.digits, None if args.tol is None else parse_tol(args.tol))
    reports, adj = vf.run_verify(cfg)
    _emit(vf.report_json(reports, adj, cfg), args.out)
    status = vf.exit_status(reports)
    failed = [r for r in reports if r.gating and not r.passed]
    sys.stderr.write(f"{len(reports)} checks, {len(failed)} gating failures\n")
    for r in failed:
        sys.stderr.write(f"FAIL {r.identity} q={r.q} {r.param}\n")
    return status


def cmd_limits(args) -> int:
    from . import verify as vf

    ladder = _q_list(args.q)
    PrecisionContext(ladder[0], args.digits)
    reports = vf.check_classical_limits(ladder, digits=args.digits, eta_star_probe=not args.no_probe,
                                        threads=args.threads)
    _emit(vf.report_json(reports, vf.adjudicate(reports)), args.out)
    return vf.exit_status(reports)


COMMANDS = {"zeros": cmd_zeros, "numbers": cmd_numbers, "eval": cmd_eval, "verify": cmd_verify,
            "limits": cmd_limits}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _check_common(args)
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG
    except QZetaError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
