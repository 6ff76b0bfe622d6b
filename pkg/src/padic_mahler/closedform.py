"""Closed-form right-hand sides for two families of polynomials.

* ``(t - alpha)(t - beta)`` with |beta| < 1 < |alpha|: higher measures as
  polylogarithms of beta/alpha, the zeta measure as a 2F1.
* ``t1 + 1/t1 + t2 + 1/t2 + c`` with |c| > 1: the zeta measure as a 3F2 and
  the plain measure as log c minus a 4F3 correction.

These evaluators share no code with the constant-term engine beyond scalar
arithmetic, so agreement between the two is a meaningful check.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .hoffman import main1_word
from .padic import DomainError, PadicScalar, angle_power, padic_log
from .series import SJet, hypergeometric, jet_exp, multipolylog


def _check_pair(alpha: PadicScalar, beta: PadicScalar):
    if beta.is_zero() or beta.valuation < 1:
        raise DomainError("need 0 < |beta| < 1 (valuation(beta) >= 1)")
    if alpha.is_zero() or alpha.valuation > -1:
        raise DomainError("need |alpha| > 1 (valuation(alpha) <= -1)")


def _check_c(c: PadicScalar):
    if c.is_zero() or c.valuation > -1:
        raise DomainError("need |c| > 1 (valuation(c) <= -1)")


def _angle_power_or_jet(a: PadicScalar, s):
    if isinstance(s, SJet):
        return jet_exp(s * padic_log(a))
    return angle_power(a, s)


def _scalar_s(ctx, s):
    if isinstance(s, SJet):
        return s
    s = ctx(s)
    if not s.is_exact_zero() and s.valuation < 0:
        raise DomainError("s outside closed unit disc")
    return s


def main1_rhs(alpha, beta, k: int) -> PadicScalar:
    """log^k(alpha) + sum over i, j >= 1, i + j <= k of
    (-1)^(i+j) k!/(k-i-j)! log^(k-i-j)(alpha) Li_{({1}^(i-1) * {1}^(j-1), 2)}(beta/alpha)."""
    ctx = alpha.context
    alpha, beta = ctx(alpha), ctx(beta)
    _check_pair(alpha, beta)
    if k < 1:
        raise DomainError("k must be positive")
    la = padic_log(alpha)
    z = beta / alpha
    total = la**k
    for i in range(1, k):
        for j in range(1, k - i + 1):
            r = k - i - j
            coeff = (-1) ** (i + j) * (math.factorial(k) // math.factorial(r))
            total = total + la**r * multipolylog(main1_word(i, j), z) * coeff
    return total.add_bigoh(ctx.working_precision)


def main2_rhs(alpha, beta, s):
    """<alpha>^s 2F1(-s, -s; 1; beta/alpha); ``s`` may be a jet."""
    ctx = alpha.context
    alpha, beta = ctx(alpha), ctx(beta)
    _check_pair(alpha, beta)
    s = _scalar_s(ctx, s)
    if isinstance(s, PadicScalar) and s.is_exact_zero():
        return ctx.one
    z = beta / alpha
    return _angle_power_or_jet(alpha, s) * hypergeometric([-s, -s], [1], z)


def main3_rhs(c, s):
    """<c>^s 3F2(1/2, -s/2, (1-s)/2; 1, 1; 16/c^2); ``s`` may be a jet."""
    ctx = c.context
    c = ctx(c)
    _check_c(c)
    s = _scalar_s(ctx, s)
    if isinstance(s, PadicScalar) and s.is_exact_zero():
        return ctx.one
    z = 16 / (c * c)
    upper = [Fraction(1, 2), -s / 2, (1 - s) / 2]
    return _angle_power_or_jet(c, s) * hypergeometric(upper, [1, 1], z)


def rv_rhs(c) -> PadicScalar:
    """log c - (2/c^2) 4F3(3/2, 3/2, 1, 1; 2, 2, 2; 16/c^2)."""
    ctx = c.context
    c = ctx(c)
    _check_c(c)
    z = 16 / (c * c)
    h = hypergeometric([Fraction(3, 2), Fraction(3, 2), 1, 1], [2, 2, 2], z)
    return (padic_log(c) - h * 2 / (c * c)).add_bigoh(ctx.working_precision)
