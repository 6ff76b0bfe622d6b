"""Certified evaluation of multiple polylogarithms and hypergeometric series.

All evaluators are generic in the coefficient ring: any object with ``+``,
``-``, ``*``, division by integers and a ``valuation`` attribute works
(PadicScalar, ExtScalar, SJet).  Polylogarithm coefficients are computed
over exact rationals and embedded only when multiplied by powers of t.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .hoffman import WordPoly
from .padic import DomainError, PadicContext, PadicScalar, floor_log, tail_cutoff, valuation_int


class SJet:
    """Truncated polynomial c_0 + c_1 s + ... + c_K s^K in a formal s."""

    __slots__ = ("context", "coeffs")

    def __init__(self, context: PadicContext, coeffs):
        self.context = context
        self.coeffs = tuple(context(c) for c in coeffs)

    @classmethod
    def generator(cls, ctx: PadicContext, order: int) -> SJet:
        if order < 1:
            raise DomainError("jet order must be at least 1")
        return cls(ctx, [0, 1] + [0] * (order - 1))

    @classmethod
    def constant(cls, ctx: PadicContext, order: int, c) -> SJet:
        return cls(ctx, [c] + [0] * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def valuation(self):
        return min(c.valuation for c in self.coeffs)

    @property
    def abs_precision(self):
        return min(c.abs_precision for c in self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _coerce(self, other):
        if isinstance(other, SJet):
            if other.order != self.order:
                raise DomainError("jets of different orders")
            return other
        if isinstance(other, (int, Fraction, PadicScalar)):
            return SJet.constant(self.context, self.order, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SJet(self.context, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return SJet(self.context, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            return SJet(self.context, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        K = self.order
        zero = self.context.zero
        out = [zero] * (K + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_exact_zero():
                continue
            for j in range(K + 1 - i):
                b = other.coeffs[j]
                if not b.is_exact_zero():
                    out[i + j] = out[i + j] + a * b
        return SJet(self.context, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            return SJet(self.context, [a / other for a in self.coeffs])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def inverse(self) -> SJet:
        c0 = self.coeffs[0]
        if not c0.is_unit():
            raise DomainError("jet inverse needs a unit constant term")
        inv0 = c0.inverse()
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = self.context.zero
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * inv0)
        return SJet(self.context, out)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = SJet.constant(self.context, self.order, 1)
        for _ in range(n):
            result = result * self
        return result

    def evaluate(self, s):
        """Sum of c_k s^k at a scalar s."""
        total = self.context.zero
        for c in reversed(self.coeffs):
            total = total * s + c
        return total

    def add_bigoh(self, n) -> SJet:
        return SJet(self.context, [c.add_bigoh(n) for c in self.coeffs])

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return "SJet[" + ", ".join(c.compact() for c in self.coeffs) + "]"


def jet_exp(x: SJet) -> SJet:
    """exp of a jet with zero constant term (a nilpotent element)."""
    if not x.coeffs[0].is_zero():
        raise DomainError("jet exp needs a zero constant term")
    total = SJet.constant(x.context, x.order, 1)
    term = total
    for n in range(1, x.order + 1):
        term = term * x / n
        total = total + term
    return total


# ---------------------------------------------------------------------------
# multiple polylogarithms


def _as_wordpoly(idx) -> WordPoly:
    if isinstance(idx, WordPoly):
        return idx
    return WordPoly.index(tuple(idx))


def polylog_coefficients(idx, degree: int) -> list[Fraction]:
    """Coefficients of t^0..t^degree of Li_idx(t) as exact rationals.

    Runs the nested-sum recursion S_0 = 1,
    S_j(m) = sum_{m' < m} S_{j-1}(m') / m'^{k_j}; the t^m coefficient is
    S_{r-1}-prefix(m) / m^{k_r}.
    """
    out = [Fraction(0)] * (degree + 1)
    for index, c in _as_wordpoly(idx).terms.items():
        coeffs = _single_polylog_coefficients(index, degree)
        for m, a in enumerate(coeffs):
            out[m] += c * a
    return out


def partial_sum_coefficients(idx, degree: int) -> list[Fraction]:
    """Coefficients of Li_idx(t) / (1 - t), i.e. the truncated nested sums
    S_idx(N) = sum over 0 < m_1 < ... < m_r <= N.  The harmonic product is
    multiplicative for these coefficientwise (Hadamard product)."""
    out = []
    acc = Fraction(0)
    for c in polylog_coefficients(idx, degree):
        acc += c
        out.append(acc)
    return out


@lru_cache(maxsize=256)
def _single_polylog_coefficients(index: tuple, degree: int) -> tuple:
    if not index:
        return (Fraction(1),) + (Fraction(0),) * degree
    # row[m] = sum over 0 < m_1 < ... < m_j = m of prod 1/m_i^{k_i}
    row = [Fraction(0)] + [Fraction(1, m ** index[0]) for m in range(1, degree + 1)]
    for k in index[1:]:
        new = [Fraction(0)] * (degree + 1)
        prefix = Fraction(0)
        for m in range(1, degree + 1):
            new[m] = prefix / m**k
            prefix += row[m]
        row = new
    return tuple(row)


def _polylog_terms(coeffs, t, M):
    total = None
    power = None
    for m in range(1, M + 1):
        power = t if power is None else power * t
        a = coeffs[m]
        if a:
            term = power * a
            total = term if total is None else total + term
    return total


def _disc_check(t):
    if t.is_zero() and getattr(t, "is_exact_zero", lambda: False)():
        return
    if t.valuation < 1:
        raise DomainError("outside polylog disc (need valuation(t) >= 1)")


def multipolylog(idx, t, target_prec=None):
    """Li_idx(t) for an index or a WordPoly, at t with valuation >= 1."""
    ctx = t.context
    prec = ctx.working_precision if target_prec is None else target_prec
    wp = _as_wordpoly(idx)
    zero = t * 0
    if t.is_zero() and t.valuation == math.inf:
        return zero + wp.terms.get((), 0)
    _disc_check(t)
    vt = t.valuation
    p = ctx.p
    wt = max(wp.weight, 1)
    M = tail_cutoff(lambda m: m * vt - wt * floor_log(m, p), prec, p, vt, wt)
    coeffs = polylog_coefficients(wp, M)
    total = _polylog_terms(coeffs, t, M)
    result = zero + coeffs[0] if total is None else total + coeffs[0]
    return result.add_bigoh(prec)


def _harmonic_prefix(depth: int, degree: int) -> list[Fraction]:
    """H[m] = sum over 0 < m_1 < ... < m_depth < m of 1/(m_1 ... m_depth)."""
    H = [Fraction(1)] * (degree + 1)
    for _ in range(depth):
        new = [Fraction(0)] * (degree + 1)
        acc = Fraction(0)
        for m in range(1, degree + 1):
            new[m] = acc
            acc += H[m] / m
        H = new
    return H


def double_constrained_sum(k: int, l: int, t, target_prec=None):
    """Sum over chains 0<m_1<...<m_{k-1}<m and 0<n_1<...<n_{l-1}<m of
    t^m / (m_1...m_{k-1} n_1...n_{l-1} m^2), via two independent prefix
    tables multiplied pointwise."""
    if k < 1 or l < 1:
        raise DomainError("k and l must be positive")
    ctx = t.context
    prec = ctx.working_precision if target_prec is None else target_prec
    if t.is_zero() and t.valuation == math.inf:
        return t * 0
    _disc_check(t)
    vt = t.valuation
    p = ctx.p
    wt = k + l
    M = tail_cutoff(lambda m: m * vt - wt * floor_log(m, p), prec, p, vt, wt)
    A = _harmonic_prefix(k - 1, M)
    B = _harmonic_prefix(l - 1, M)
    coeffs = [Fraction(0)] + [A[m] * B[m] / (m * m) for m in range(1, M + 1)]
    total = _polylog_terms(coeffs, t, M)
    return (t * 0 if total is None else total).add_bigoh(prec)


def polylog_series_product(a: list, b: list) -> list:
    """Product of two truncated power series (same length)."""
    n = len(a)
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


# ---------------------------------------------------------------------------
# hypergeometric series


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)."""
    if n < 0:
        raise DomainError("negative Pochhammer length")
    out = 1
    for i in range(n):
        out = out * (a + i)
    return out


def _upper_is_integral(a, p: int) -> bool:
    if isinstance(a, int):
        return True
    if isinstance(a, Fraction):
        return a.denominator % p != 0
    return a.valuation >= 0


def _lower_rise_bound(b: Fraction, p: int):
    """Constant c with v_p((b)_n) < n/(p-1) + log_p(n) + c for all n >= 1."""
    u, d = abs(b.numerator), b.denominator
    # v((b)_n) <= sum_{j <= J} ceil(n / p^j) < n/(p-1) + J, J = log_p(u + n d)
    return math.log(u + d, p)


def hypergeometric(upper, lower, z, target_prec=None):
    """_{r+1}F_r(upper; lower; z) with a certified truncation point.

    Upper parameters may be ring elements (scalars or jets) and must be
    p-adic integers; lower parameters must be int/Fraction p-adic integers
    that are not nonpositive integers.
    """
    ctx = z.context
    p = ctx.p
    prec = ctx.working_precision if target_prec is None else target_prec
    upper = list(upper)
    lower = [Fraction(b) for b in lower]
    for a in upper:
        if not _upper_is_integral(a, p):
            raise DomainError("upper parameters must be p-adic integers")
    for b in lower:
        if b.denominator % p == 0:
            raise DomainError("lower parameters must be p-adic integers")
        if b.denominator == 1 and b <= 0:
            raise DomainError("lower parameter is a nonpositive integer")
    one = ctx.one
    for a in upper:
        if isinstance(a, SJet):
            one = SJet.constant(ctx, a.order, 1)
            break
    if z.is_zero() and z.valuation == math.inf:
        return one
    vz = z.valuation
    dens = lower + [Fraction(1)]
    consts = [_lower_rise_bound(b, p) for b in dens]
    n_den = len(dens)

    def bound(n):
        loss = 0
        for b, c in zip(dens, consts):
            loss += _rise_valuation_exact_bound(b, n, p)
        return n * vz - loss

    rate = vz - Fraction(n_den, p - 1)
    if rate <= 0:
        raise DomainError("series not certifiably convergent at z")
    M = tail_cutoff(bound, prec, p, rate, n_den, sum(consts))
    total = one
    term = one
    for n in range(M):
        factor = 1
        for a in upper:
            factor = factor * (a + n)
        denom = Fraction(n + 1)
        for b in lower:
            denom *= b + n
        term = term * factor * z / denom
        total = total + term
    return total.add_bigoh(prec)


def _rise_valuation_exact_bound(b: Fraction, n: int, p: int) -> int:
    """Upper bound for v_p((b)_n); exact when b is a positive integer."""
    if b.denominator == 1 and b > 0:
        bi = int(b)
        return _fact_val(bi + n - 1, p) - _fact_val(bi - 1, p)
    total = 0
    u, d = b.numerator, b.denominator
    for i in range(n):
        total += valuation_int(u + i * d, p)
    return total


def _fact_val(n: int, p: int) -> int:
    v = 0
    q = p
    while q <= n:
        v += n // q
        q *= p
    return v
