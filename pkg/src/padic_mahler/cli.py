"""Command-line front end.

Exit status: 0 on success (or PASS), 1 on usage and parse errors, 2 on
mathematical domain errors, 3 when a verification runs but fails.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from fractions import Fraction

from .closedform import main1_rhs, main2_rhs, main3_rhs, rv_rhs
from .hoffman import WordPoly, compositions, harmonic_product, main1_word
from .laurent import LaurentPoly, from_rationals, substitute_monomials
from .measure import (
    higher_mahler,
    radius_bound,
    shnirelman_average,
    zeta_mahler,
    zeta_mahler_jet,
)
from .padic import INFINITY, DomainError, PadicContext, agreement, parse_literal
from .series import SJet, double_constrained_sum, hypergeometric, multipolylog

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_FAIL = 0, 1, 2, 3

# digits below the target precision tolerated by each verification
VERIFY_SLACK = {"thm1": 5, "thm2": 8, "thm3": 10, "rv": 8, "lemma35": 12, "invariance": 10}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# input helpers


def _context(args) -> PadicContext:
    try:
        return PadicContext(args.p, args.prec, args.guard)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _load_poly(args, ctx) -> LaurentPoly:
    if not args.poly:
        raise UsageError("--poly is required")
    text = args.poly
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc}") from None
    try:
        return LaurentPoly.from_json(json.loads(text), ctx)
    except json.JSONDecodeError as exc:
        raise UsageError(f"polynomial is not valid JSON: {exc}") from None
    except (ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"bad polynomial: {exc}") from None


def _literal(text, ctx, name):
    if text is None:
        raise UsageError(f"--{name} is required")
    try:
        return parse_literal(text, ctx)
    except DomainError:
        raise
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from None


def _need_k(args):
    if args.k is None:
        raise UsageError("-k is required")
    if args.k < 0:
        raise UsageError("-k must be nonnegative")
    return args.k


def _shown(x, digits):
    """Render a scalar at min(certified, requested) precision."""
    return x.add_bigoh(min(digits, x.abs_precision)).expansion()


def _emit(args, text_lines, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _jsonable(x):
    if x == INFINITY:
        return "inf"
    if isinstance(x, Fraction):
        return str(x)
    return x


# ---------------------------------------------------------------------------
# subcommands


def run_measure(args) -> int:
    ctx = _context(args)
    f = _load_poly(args, ctx)
    k = _need_k(args)
    res = higher_mahler(f, k)
    prec = min(res.certified_abs_precision, ctx.target_precision)
    value = _shown(res.value, prec)
    _emit(args, [f"m_{{p,{k}}}(f) = {value}", f"certified digits: {prec}"],
          {"value": value, "precision": prec, "method": res.method, "k": k})
    return EXIT_OK


def run_zeta(args) -> int:
    ctx = _context(args)
    f = _load_poly(args, ctx)
    if args.jet is not None:
        res = zeta_mahler_jet(f, args.jet)
        prec = min(res.certified_abs_precision, ctx.target_precision)
        coeffs = [_shown(c, prec) for c in res.value.coeffs]
        measures = [_shown(c * math.factorial(i), prec) for i, c in enumerate(res.value.coeffs)]
        lines = [f"coeff[{i}] = {c}" for i, c in enumerate(coeffs)]
        lines += [f"m_{{p,{i}}}(f) = {m}" for i, m in enumerate(measures)]
        lines.append(f"certified digits: {prec}")
        _emit(args, lines, {"coefficients": coeffs, "measures": measures, "precision": prec,
                            "method": res.method})
        return EXIT_OK
    s = _literal(args.s, ctx, "s")
    res = zeta_mahler(f, s)
    prec = min(res.certified_abs_precision, ctx.target_precision)
    value = _shown(res.value, prec)
    _emit(args, [f"Z_p(s, f) = {value}", f"certified digits: {prec}"],
          {"value": value, "precision": prec, "method": res.method})
    return EXIT_OK


def run_average(args) -> int:
    ctx = _context(args)
    f = _load_poly(args, ctx)
    k = _need_k(args)
    if not args.N:
        raise UsageError("--N is required")
    engine = higher_mahler(f, k).value
    rows = []
    for N in args.N:
        res = shnirelman_average(f, k, args.tower_degree, N)
        if hasattr(res.value, "expansion"):
            agree = agreement(res.value, engine)
            shown = _shown(res.value, ctx.target_precision)
        else:
            agree = None
            shown = repr(res.value)
        rows.append({"N": N, "average": shown, "agreement": agree,
                     "predicted": _jsonable(res.diagnostics["predicted_agreement"])})
    lines = [f"{'N':>4}  {'agree':>5}  {'pred':>5}  average"]
    for r in rows:
        lines.append(f"{r['N']:>4}  {str(r['agreement']):>5}  {str(r['predicted']):>5}  {r['average']}")
    _emit(args, lines, {"rows": rows, "engine": _shown(engine, ctx.target_precision)})
    return EXIT_OK


def run_radius(args) -> int:
    ctx = _context(args)
    f = _load_poly(args, ctx)
    rb = radius_bound(f)
    lines = [f"C = {rb.C}", f"log_p(radius) = {rb.log_radius}",
             f"closed unit disc criterion: {'met' if rb.closed_disc_criterion else 'not met'}"]
    _emit(args, lines, {"C": _jsonable(rb.C), "log_radius": _jsonable(rb.log_radius),
                        "criterion_met": rb.closed_disc_criterion})
    return EXIT_OK


def _parse_index(text):
    try:
        idx = tuple(int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad index {text!r}") from None
    if not idx or any(k < 1 for k in idx):
        raise UsageError("index entries must be positive integers")
    return idx


def run_polylog(args) -> int:
    ctx = _context(args)
    if not args.index:
        raise UsageError("--index is required")
    idx = _parse_index(args.index)
    t = _literal(args.t, ctx, "t")
    value = multipolylog(idx, t)
    shown = _shown(value, ctx.target_precision)
    _emit(args, [f"Li_{idx}(t) = {shown}"], {"index": list(idx), "value": shown})
    return EXIT_OK


def run_hyper(args) -> int:
    ctx = _context(args)
    upper = [_literal(x, ctx, "upper") for x in (args.upper or "").split(",") if x.strip()]
    try:
        lower = [Fraction(x) for x in (args.lower or "").split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"--lower: {exc}") from None
    z = _literal(args.z, ctx, "z")
    value = hypergeometric(upper, lower, z)
    shown = _shown(value, ctx.target_precision)
    _emit(args, [f"F = {shown}"], {"value": shown})
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification


def _threshold(args, ctx, target):
    if args.min_digits is not None:
        return args.min_digits
    return ctx.target_precision - VERIFY_SLACK[target]


def _quadratic(alpha, beta, ctx):
    a, b = alpha.lift(), beta.lift()
    return from_rationals(1, {(2,): 1, (1,): -(a + b), (0,): a * b}, ctx)


def _torus_quartic(c, ctx):
    return from_rationals(2, {(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1, (0, 0): c.lift()}, ctx)


def _verify_thm1(args, ctx):
    alpha = _literal(args.alpha, ctx, "alpha")
    beta = _literal(args.beta, ctx, "beta")
    f = _quadratic(alpha, beta, ctx)
    ks = [args.k] if args.k is not None else [1, 2, 3, 4]
    rows = []
    for k in ks:
        rows.append((f"k={k}", higher_mahler(f, k).value, main1_rhs(alpha, beta, k)))
    return rows


def _verify_thm2(args, ctx):
    alpha = _literal(args.alpha, ctx, "alpha")
    beta = _literal(args.beta, ctx, "beta")
    f = _quadratic(alpha, beta, ctx)
    if args.jet is not None:
        jet = zeta_mahler_jet(f, args.jet).value
        rhs = main2_rhs(alpha, beta, SJet.generator(ctx, args.jet))
        return [(f"coeff {i}", jet[i], rhs[i]) for i in range(args.jet + 1)]
    s = _literal(args.s or "1", ctx, "s")
    return [(f"s={s.expansion()}", zeta_mahler(f, s).value, main2_rhs(alpha, beta, s))]


def _verify_thm3(args, ctx):
    c = _literal(args.c, ctx, "c")
    f = _torus_quartic(c, ctx)
    s = _literal(args.s or "1", ctx, "s")
    return [(f"s={s.expansion()}", zeta_mahler(f, s).value, main3_rhs(c, s))]


def _verify_rv(args, ctx):
    c = _literal(args.c, ctx, "c")
    f = _torus_quartic(c, ctx)
    return [("m_p(f)", higher_mahler(f, 1).value, rv_rhs(c))]


def _verify_lemma35(args, ctx):
    rows = []
    for t in (ctx.p, ctx.p**2):
        tt = ctx(t)
        for k in range(1, 5):
            for l in range(1, 5):
                rows.append((f"t={t} k={k} l={l}", multipolylog(main1_word(k, l), tt),
                             double_constrained_sum(k, l, tt)))
    return rows


def _verify_invariance(args, ctx):
    f = _load_poly(args, ctx)
    k = args.k if args.k is not None else 1
    if f.n_vars == 1:
        mats = [[[1]], [[-1]]]
    elif f.n_vars == 2:
        mats = [[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 1], [0, 1]]]
    else:
        n = f.n_vars
        mats = [[[int(i == j) for j in range(n)] for i in range(n)]]
    base = higher_mahler(f, k).value
    return [(f"S={m}", higher_mahler(substitute_monomials(f, m), k).value, base) for m in mats]


def _verify_hoffman(args):
    w = args.max_weight
    monos = [WordPoly.index(idx) for n in range(1, w + 1) for idx in compositions(n)]
    ok = True
    for a, b in itertools.combinations_with_replacement(monos, 2):
        if a.weight + b.weight <= w and harmonic_product(a, b) != harmonic_product(b, a):
            ok = False
    for a, b, c in itertools.product(monos, repeat=3):
        if a.weight + b.weight + c.weight <= w:
            if harmonic_product(harmonic_product(a, b), c) != harmonic_product(a, harmonic_product(b, c)):
                ok = False
    return ok


def _verify_radius(args, ctx):
    f = _load_poly(args, ctx)
    rb = radius_bound(f)
    lines, ok = [f"C = {rb.C}, log_p(radius) = {rb.log_radius}"], True
    for k in range(1, 7):
        v = higher_mahler(f, k).value
        val = v.abs_precision if v.is_zero() else v.valuation
        good = val >= rb.C * k
        ok = ok and good
        lines.append(f"k={k}: valuation {val} >= {rb.C * k}: {'yes' if good else 'no'}")
    return ok, lines


def run_verify(args) -> int:
    target = args.target
    if target == "hoffman":
        ok = _verify_hoffman(args)
        verdict = "PASS" if ok else "FAIL"
        _emit(args, [f"hoffman (weight <= {args.max_weight}): {verdict}"],
              {"target": target, "pass": ok})
        return EXIT_OK if ok else EXIT_FAIL
    ctx = _context(args)
    if target == "radius":
        ok, lines = _verify_radius(args, ctx)
        lines.append("PASS" if ok else "FAIL")
        _emit(args, lines, {"target": target, "pass": ok})
        return EXIT_OK if ok else EXIT_FAIL
    runner = {
        "thm1": _verify_thm1, "thm2": _verify_thm2, "thm3": _verify_thm3, "rv": _verify_rv,
        "lemma35": _verify_lemma35, "invariance": _verify_invariance,
    }[target]
    threshold = _threshold(args, ctx, target)
    rows = runner(args, ctx)
    ok = True
    lines, payload = [], []
    for label, engine, closed in rows:
        digits = agreement(engine, closed)
        good = digits >= threshold
        ok = ok and good
        lines.append(f"{label}: engine {_shown(engine, ctx.target_precision)}")
        lines.append(f"{' ' * len(label)}  closed {_shown(closed, ctx.target_precision)}")
        lines.append(f"{' ' * len(label)}  agreement {digits} (need {threshold}) "
                     f"{'PASS' if good else 'FAIL'}")
        payload.append({"case": label, "agreement": _jsonable(digits), "pass": good})
    lines.append("PASS" if ok else "FAIL")
    _emit(args, lines, {"target": target, "threshold": threshold, "cases": payload, "pass": ok})
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=int, default=5, help="odd prime (default 5)")
    common.add_argument("--prec", type=int, default=30, help="target digits (default 30)")
    common.add_argument("--guard", type=int, default=10, help="guard digits (default 10)")
    common.add_argument("--tower-degree", type=int, default=1, dest="tower_degree")
    common.add_argument("--poly", help="polynomial JSON, inline or @file")
    common.add_argument("-k", "--k", type=int, dest="k")
    common.add_argument("--format", choices=["text", "json"], default="text")

    parser = _Parser(prog="mahler", description="p-adic higher and zeta Mahler measures")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("measure", parents=[common], help="higher Mahler measure m_{p,k}(f)")

    z = sub.add_parser("zeta", parents=[common], help="zeta Mahler measure Z_p(s, f)")
    group = z.add_mutually_exclusive_group(required=True)
    group.add_argument("--s", help="p-adic literal with |s| <= 1")
    group.add_argument("--jet", type=int, help="Taylor coefficients up to this order")

    a = sub.add_parser("average", parents=[common], help="finite averages over roots of unity")
    a.add_argument("--N", type=int, nargs="+")

    sub.add_parser("radius", parents=[common], help="growth bound and convergence radius")

    pl = sub.add_parser("polylog", parents=[common], help="multiple polylogarithm")
    pl.add_argument("--index", help="comma-separated index, e.g. 1,2")
    pl.add_argument("--t", help="p-adic literal with valuation >= 1")

    hy = sub.add_parser("hyper", parents=[common], help="generalized hypergeometric series")
    hy.add_argument("--upper", help="comma-separated p-adic literals")
    hy.add_argument("--lower", help="comma-separated rationals")
    hy.add_argument("--z", help="p-adic literal")

    v = sub.add_parser("verify", parents=[common], help="engine versus closed forms")
    v.add_argument("target", choices=["thm1", "thm2", "thm3", "rv", "hoffman", "lemma35",
                                      "invariance", "radius"])
    v.add_argument("--alpha")
    v.add_argument("--beta")
    v.add_argument("--c")
    v.add_argument("--s")
    v.add_argument("--jet", type=int)
    v.add_argument("--max-weight", type=int, default=5, dest="max_weight")
    v.add_argument("--min-digits", type=int, dest="min_digits")
    return parser


COMMANDS = {
    "measure": run_measure, "zeta": run_zeta, "verify": run_verify, "average": run_average,
    "radius": run_radius, "polylog": run_polylog, "hyper": run_hyper,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"mahler: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ZeroDivisionError) as exc:
        print(f"mahler: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"mahler: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
