"""Shnirelman integrals of log^k f and of exp(s log f).

For f = a t^l (1 + g) the integral of log^k f only sees the constant terms
b_j = [L^j]_0 with L = log(1 + g), because log of a root of unity vanishes.
L^j is a power series in g, so

    b_j = sum_m [Lambda^j]_m * [g^m]_0,   Lambda(X) = log(1 + X),

and [Lambda^j]_m / j! = s(m, j) / m! with s the signed Stirling numbers of
the first kind.  The engine therefore needs only the moments [g^m]_0, which
come from repeated multiplication by g.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .extension import ExtScalar, eval_laurent, ext_log, make_unramified, roots_of_unity
from .laurent import LaurentPoly, decompose_unit, laurent_mul
from .padic import (
    INFINITY,
    DomainError,
    PadicContext,
    PadicScalar,
    angle_power,
    factorial_valuation,
    floor_log,
    padic_log,
    tail_cutoff,
)
from .series import SJet, jet_exp

ENGINE = "constant_term_engine"
CLOSED_FORM = "closed_form"
FINITE_AVERAGE = "finite_average"


@dataclass(frozen=True)
class MeasureResult:
    value: object
    certified_abs_precision: int
    method: str
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, SJet):
            shown = [c.expansion() for c in v.coeffs]
        elif hasattr(v, "expansion"):
            shown = v.expansion()
        else:
            shown = repr(v)
        return {
            "value": shown,
            "precision": self.certified_abs_precision,
            "method": self.method,
            "diagnostics": {k: _jsonable(x) for k, x in self.diagnostics.items()},
        }


def _jsonable(x):
    if isinstance(x, PadicScalar):
        return x.expansion()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, tuple):
        return list(x)
    return x


def context_of(f: LaurentPoly) -> PadicContext:
    for c in f.terms.values():
        return c.context
    raise DomainError("cannot infer a p-adic context from the zero polynomial")


def _log(a):
    return ext_log(a) if isinstance(a, ExtScalar) else padic_log(a)


def _cap(x, prec):
    return min(x, prec) if x != INFINITY else prec


# ---------------------------------------------------------------------------
# the log series and constant terms of its powers


def truncated_log_series(g: LaurentPoly, target_prec) -> LaurentPoly:
    """L_M = sum_{m<=M} (-1)^(m+1) g^m / m, every omitted term O(p^target_prec)."""
    if g.is_zero():
        return g
    vg = g.gauss_valuation()
    if vg < 1:
        raise DomainError("log series needs Gauss valuation >= 1")
    p = context_of(g).p
    M = tail_cutoff(lambda m: m * vg - floor_log(m, p), target_prec, p, vg, 1)
    L = LaurentPoly(g.n_vars)
    power = LaurentPoly.monomial((0,) * g.n_vars, context_of(g).one)
    for m in range(1, M + 1):
        power = power * g
        term = power.scale(Fraction((-1) ** (m + 1), m))
        L = L + term
    return L.truncate(target_prec)


def constant_terms_of_powers(L: LaurentPoly, K: int, ctx: PadicContext) -> list:
    """[L^j]_0 for j = 0..K by explicit sparse products."""
    origin = (0,) * L.n_vars
    out = [ctx.one]
    power = LaurentPoly.monomial(origin, ctx.one)
    for _ in range(K):
        power = power * L
        out.append(power.terms.get(origin, ctx.zero))
    return out


@lru_cache(maxsize=32)
def stirling_over_factorial(M: int) -> tuple:
    """Table T[m][j] = s(m, j) / m! (signed Stirling numbers, first kind)."""
    rows = [[1]]
    for m in range(M):
        prev = rows[-1]
        new = [0] * (m + 2)
        for j in range(m + 2):
            a = prev[j - 1] if j >= 1 else 0
            b = prev[j] if j <= m else 0
            new[j] = a - m * b
        rows.append(new)
    return tuple(
        tuple(Fraction(s, math.factorial(m)) for s in row) for m, row in enumerate(rows)
    )


def moments(g: LaurentPoly, M: int, prec) -> list:
    """[g^m]_0 for m = 0..M.  Terms that cannot return to the origin within
    the remaining multiplications are discarded early."""
    ctx = context_of(g)
    n = g.n_vars
    reach = [max((abs(e[i]) for e in g.terms), default=0) for i in range(n)]
    out = [ctx.one]
    power = LaurentPoly.monomial((0,) * n, ctx.one)
    origin = (0,) * n
    for m in range(1, M + 1):
        left = M - m

        def keep(e, left=left):
            return all(abs(x) <= left * r for x, r in zip(e, reach))

        power = laurent_mul(power, g, keep).truncate(prec)
        c = power.terms.get(origin)
        if c is None:
            # a cancelled constant term is only known to the dropped precision
            c = ctx.zero if power.big_oh == INFINITY else ctx.zero.add_bigoh(power.big_oh)
        out.append(c)
    return out


def scaled_power_constants(g: LaurentPoly, K: int, M: int, prec) -> list:
    """D_j = [L^j]_0 / j! for j = 0..K, with the g-expansion cut at degree M."""
    ctx = context_of(g)
    T = stirling_over_factorial(M)
    extra = factorial_valuation(M, ctx.p)
    mu = moments(g, M, prec + extra)
    out = [ctx.one]
    for j in range(1, K + 1):
        acc = ctx.zero
        for m in range(j, M + 1):
            c = T[m][j]
            if c and not mu[m].is_exact_zero():
                acc = acc + mu[m] * c
        out.append(acc)
    return out


def _engine_cutoff(vg, K: int, p: int, prec, divided: bool) -> int:
    """Degree in g past which every omitted contribution is O(p^prec)."""
    if K == 0:
        return 0
    lossK = factorial_valuation(K, p) if divided else 0
    return tail_cutoff(lambda m: m * vg - K * floor_log(m, p) - lossK, prec, p, vg, K, lossK)


# ---------------------------------------------------------------------------
# public operations


def higher_mahler(f: LaurentPoly, k: int) -> MeasureResult:
    """m_{p,k}(f) = sum_i C(k,i) log^i(a) b_{k-i}."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    ctx = context_of(f)
    prec = ctx.working_precision
    dec = decompose_unit(f)
    if k == 0:
        return MeasureResult(ctx.one, prec, ENGINE, {"k": 0})
    la = _log(dec.a)
    g = dec.g
    if g.is_zero():
        b = [ctx.one] + [ctx.zero] * k
        M = 0
    else:
        vg = g.gauss_valuation()
        M = _engine_cutoff(vg, k, ctx.p, prec, divided=False)
        D = scaled_power_constants(g, k, M, prec)
        b = [D[j] * math.factorial(j) for j in range(k + 1)]
    value = ctx.zero
    for i in range(k + 1):
        value = value + la**i * b[k - i] * math.comb(k, i)
    cert = _cap(value.abs_precision, prec)
    return MeasureResult(
        value.add_bigoh(cert), cert, ENGINE,
        {"k": k, "g_degree_cutoff": M, "dominant_exponent": dec.l, "log_a": la},
    )


def _angle_power_any(a, s):
    if isinstance(a, PadicScalar):
        return angle_power(a, s)
    # unramified coefficients: <a>^s = exp(s log a), |s log a| < p^(-1/(p-1))
    x = _log(a) * s
    ctx = a.context
    total = a.field.one
    term = total
    p = ctx.p
    vx = x.valuation
    if vx == INFINITY:
        return total
    M = tail_cutoff(lambda m: m * vx - Fraction(m - 1, p - 1), ctx.working_precision, p,
                    vx - Fraction(1, p - 1))
    for n in range(1, M + 1):
        term = term * x / n
        total = total + term
    return total.add_bigoh(ctx.working_precision)


def zeta_mahler(f: LaurentPoly, s) -> MeasureResult:
    """Z_p(s, f) = <a>^s * [exp(s L)]_0 for |s| <= 1."""
    ctx = context_of(f)
    prec = ctx.working_precision
    s = ctx(s)
    if not s.is_exact_zero() and s.valuation < 0:
        raise DomainError("s outside closed unit disc")
    dec = decompose_unit(f)
    if s.is_exact_zero():
        return MeasureResult(ctx.one, prec, ENGINE, {"s": "0"})
    A = _angle_power_any(dec.a, s)
    g = dec.g
    if g.is_zero():
        inner, M = ctx.one, 0
    else:
        vg = g.gauss_valuation()
        # omitted part: sum_{m>M} [g^m]_0 binom(s, m), binom(s, m) in Z_p
        M = tail_cutoff(lambda m: m * vg, prec, ctx.p, vg)
        D = scaled_power_constants(g, M, M, prec)
        inner = ctx.zero
        for d in reversed(D):
            inner = inner * s + d
    value = A * inner
    cert = _cap(value.abs_precision, prec)
    return MeasureResult(value.add_bigoh(cert), cert, ENGINE, {"g_degree_cutoff": M})


def zeta_mahler_jet(f: LaurentPoly, K: int) -> MeasureResult:
    """Z_p(X, f) mod X^(K+1); coefficient k is m_{p,k}(f) / k!."""
    if K < 1:
        raise DomainError("jet order must be at least 1")
    ctx = context_of(f)
    prec = ctx.working_precision
    dec = decompose_unit(f)
    if not isinstance(dec.a, PadicScalar):
        raise DomainError("jet mode supports Q_p coefficients")
    s = SJet.generator(ctx, K)
    A = jet_exp(s * _log(dec.a))
    g = dec.g
    if g.is_zero():
        inner, M = SJet.constant(ctx, K, 1), 0
    else:
        vg = g.gauss_valuation()
        M = _engine_cutoff(vg, K, ctx.p, prec, divided=True)
        inner = SJet(ctx, scaled_power_constants(g, K, M, prec))
    value = A * inner
    cert = _cap(value.abs_precision, prec)
    return MeasureResult(value.add_bigoh(cert), cert, ENGINE, {"order": K, "g_degree_cutoff": M})


# ---------------------------------------------------------------------------
# finite averages over roots of unity


def finite_average(func, field, N: int, n_vars: int):
    """(1/N^n) * sum of func(zeta) over zeta in mu_N^n inside ``field``."""
    roots = roots_of_unity(field, N)
    total = field.zero
    for point in itertools.product(roots, repeat=n_vars):
        total = total + func(point)
    return total / (N**n_vars)


def _min_tail_valuation(vg, j: int, m0: int, p: int):
    """min over m >= m0 of m*vg - j*floor(log_p m)."""
    best = INFINITY
    m = max(m0, 1)
    m_mono = j / (vg * math.log(p)) if vg > 0 else INFINITY
    while True:
        val = m * vg - j * floor_log(m, p)
        best = min(best, val)
        if m >= m_mono and m * vg - j * math.log(m, p) >= best:
            return best
        m += 1


def predicted_agreement(f: LaurentPoly, k: int, N: int):
    """Lower bound for v(average over mu_N^n - m_{p,k}(f)).

    Averaging over mu_N^n keeps the exponents divisible by N; a nonzero such
    exponent needs total g-degree m >= N / deg(g), and L^j collects that
    degree with valuation >= m v_g - j floor(log_p m).
    """
    ctx = context_of(f)
    prec = ctx.working_precision
    dec = decompose_unit(f)
    g = dec.g
    if k == 0 or g.is_zero():
        return prec
    la = _log(dec.a)
    vla = INFINITY if la.is_zero() else la.valuation
    vg = g.gauss_valuation()
    m0 = -(-N // g.degree_bound())
    best = INFINITY
    for j in range(1, k + 1):
        cand = (k - j) * vla + _min_tail_valuation(vg, j, m0, ctx.p) if j < k else \
            _min_tail_valuation(vg, j, m0, ctx.p)
        best = min(best, cand)
    return _cap(best, prec)


def shnirelman_average(f: LaurentPoly, k: int, tower_degree: int, N: int) -> MeasureResult:
    """Average of log^k f over mu_N^n in the degree-``tower_degree`` unramified field."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    ctx = context_of(f)
    prec = ctx.working_precision
    decompose_unit(f)
    field = make_unramified(ctx, tower_degree)
    avg = finite_average(lambda z: ext_log(eval_laurent(f, z)) ** k, field, N, f.n_vars)
    value = avg
    if all(c.is_zero() for c in avg.coeffs[1:]):
        value = avg.coeffs[0]
    cert = _cap(avg.abs_precision, prec)
    return MeasureResult(
        value.add_bigoh(cert), cert, FINITE_AVERAGE,
        {"N": N, "tower_degree": tower_degree, "predicted_agreement": predicted_agreement(f, k, N)},
    )


# ---------------------------------------------------------------------------
# convergence radius


@dataclass(frozen=True)
class RadiusBound:
    """|m_{p,k}(f)| <= p^(-C k); Z_p(X, f) converges for v(X) > -log_radius."""

    C: object
    log_radius: object
    closed_disc_criterion: bool


def radius_bound(f: LaurentPoly) -> RadiusBound:
    ctx = context_of(f)
    p = ctx.p
    dec = decompose_unit(f)
    la = _log(dec.a)
    c_log = INFINITY if la.is_zero() else la.valuation
    g = dec.g
    if g.is_zero():
        c_g = INFINITY
    else:
        c_g = _min_tail_valuation(g.gauss_valuation(), 1, 1, p)
    C = min(c_log, c_g)
    if C == INFINITY:
        return RadiusBound(INFINITY, INFINITY, True)
    C = Fraction(C)
    log_r = C - Fraction(1, p - 1)
    return RadiusBound(C, log_r, C > Fraction(1, p - 1))
