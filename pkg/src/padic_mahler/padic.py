"""Capped-precision arithmetic in Q_p.

A nonzero element is stored as ``p^v * u + O(p^(v + r))`` with ``u`` a unit
modulo ``p^r``.  Precision follows the usual rules: sums keep the smaller
absolute precision, products keep the smaller relative precision.  Exact
zero is a separate state; a value that is merely zero to the known digits
is an *inexact* zero whose valuation equals its absolute precision.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import sympy

INFINITY = math.inf


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


def valuation_int(n: int, p: int) -> int | float:
    if n == 0:
        return INFINITY
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def floor_log(m: int, p: int) -> int:
    """Largest e with p^e <= m (m >= 1)."""
    e = 0
    q = p
    while q <= m:
        q *= p
        e += 1
    return e


def factorial_valuation(n: int, p: int) -> int:
    v = 0
    q = p
    while q <= n:
        v += n // q
        q *= p
    return v


def tail_cutoff(bound, prec, p, rate, log_weight=0, const=0):
    """Smallest M such that ``bound(m) >= prec`` for every m > M.

    ``bound(m)`` is a lower bound for the valuation of the m-th series term
    and must dominate ``rate*m - log_weight*log_p(m) - const`` for all
    m >= 1.  That minorant increases once ``m > log_weight/(rate*ln p)``, so
    the first m past that point where it reaches ``prec`` certifies the tail.
    """
    if rate <= 0:
        raise DomainError("series not certifiably convergent")
    rate = float(rate)
    m_mono = log_weight / (rate * math.log(p))
    last_fail = 0
    m = 1
    while True:
        if bound(m) < prec:
            last_fail = m
        if m >= m_mono and rate * m - log_weight * math.log(m, p) - float(const) >= prec + 1e-9:
            return last_fail
        m += 1


@dataclass(frozen=True)
class PadicContext:
    """Prime and precision budget shared by all scalars of one computation."""

    p: int
    target_precision: int = 30
    guard_digits: int = 10

    def __post_init__(self):
        if not isinstance(self.p, int) or not sympy.isprime(self.p):
            raise DomainError(f"p must be prime, got {self.p!r}")
        if self.p == 2:
            raise DomainError("p = 2 is not supported")
        if self.target_precision < 1:
            raise DomainError("target precision must be positive")
        if self.guard_digits < 0:
            raise DomainError("guard digits must be nonnegative")

    @property
    def working_precision(self) -> int:
        return self.target_precision + self.guard_digits

    @property
    def zero(self) -> PadicScalar:
        return PadicScalar(self, INFINITY, 0, 0)

    @property
    def one(self) -> PadicScalar:
        return from_rational(1, 1, self)

    def __call__(self, x) -> PadicScalar:
        if isinstance(x, PadicScalar):
            if x.context != self:
                raise DomainError("scalars from different contexts")
            return x
        if isinstance(x, str):
            return parse_literal(x, self)
        if isinstance(x, int):
            return from_rational(x, 1, self)
        if isinstance(x, Fraction):
            return from_rational(x.numerator, x.denominator, self)
        raise TypeError(f"cannot coerce {type(x).__name__} to a p-adic scalar")


def from_rational(num: int, den: int, ctx: PadicContext) -> PadicScalar:
    if den == 0:
        raise DomainError("zero denominator")
    if num == 0:
        return ctx.zero
    p = ctx.p
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    r = ctx.working_precision
    mod = p**r
    return PadicScalar(ctx, v, num * pow(den, -1, mod) % mod, r)


def _from_digits(ctx: PadicContext, v, s: int, abs_prec) -> PadicScalar:
    """Normalize ``p^v * s`` known modulo ``p^abs_prec``."""
    p = ctx.p
    width = abs_prec - v
    if width <= 0:
        return PadicScalar(ctx, abs_prec, 0, 0)
    s %= p**width
    if s == 0:
        return PadicScalar(ctx, abs_prec, 0, 0)
    while s % p == 0:
        s //= p
        v += 1
    return PadicScalar(ctx, v, s, abs_prec - v)


class PadicScalar:
    """Element of Q_p with tracked precision.  Immutable."""

    __slots__ = ("context", "valuation", "unit", "rel_precision")

    def __init__(self, context: PadicContext, valuation, unit: int, rel_precision: int):
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "rel_precision", rel_precision)

    def __setattr__(self, name, value):
        raise AttributeError("PadicScalar is immutable")

    # -- basic predicates ------------------------------------------------

    @property
    def p(self) -> int:
        return self.context.p

    @property
    def abs_precision(self):
        if self.valuation == INFINITY:
            return INFINITY
        return self.valuation + self.rel_precision

    def is_exact_zero(self) -> bool:
        return self.valuation == INFINITY

    def is_zero(self) -> bool:
        return self.unit == 0

    def is_unit(self) -> bool:
        return self.unit != 0 and self.valuation == 0

    def add_bigoh(self, n) -> PadicScalar:
        """Forget every digit at or beyond p^n."""
        if n >= self.abs_precision:
            return self
        if self.unit == 0 or n <= self.valuation:
            return PadicScalar(self.context, n, 0, 0)
        r = n - self.valuation
        return PadicScalar(self.context, self.valuation, self.unit % self.p**r, r)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            if other.context != self.context:
                raise DomainError("scalars from different contexts")
            return other
        if isinstance(other, int):
            return from_rational(other, 1, self.context)
        if isinstance(other, Fraction):
            return from_rational(other.numerator, other.denominator, self.context)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.valuation == INFINITY:
            return other
        if other.valuation == INFINITY:
            return self
        p = self.p
        v = min(self.valuation, other.valuation)
        prec = min(self.abs_precision, other.abs_precision)
        s = self.unit * p ** (self.valuation - v) + other.unit * p ** (other.valuation - v)
        return _from_digits(self.context, v, s, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicScalar(self.context, self.valuation, (-self.unit) % self.p**self.rel_precision,
                           self.rel_precision)

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
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.valuation == INFINITY or other.valuation == INFINITY:
            return self.context.zero
        r = min(self.rel_precision, other.rel_precision)
        v = self.valuation + other.valuation
        if r == 0:
            return PadicScalar(self.context, v, 0, 0)
        return PadicScalar(self.context, v, self.unit * other.unit % self.p**r, r)

    __rmul__ = __mul__

    def inverse(self) -> PadicScalar:
        if self.unit == 0:
            raise ZeroDivisionError("division by a p-adic zero")
        r = self.rel_precision
        return PadicScalar(self.context, -self.valuation, pow(self.unit, -1, self.p**r), r)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.context.one
        if self.valuation == INFINITY:
            return self
        r = self.rel_precision
        v = self.valuation * n
        if r == 0:
            return PadicScalar(self.context, v, 0, 0)
        return PadicScalar(self.context, v, pow(self.unit, n, self.p**r), r)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- conversions -----------------------------------------------------

    def lift(self) -> Fraction:
        """The rational ``p^v * u`` with ``0 <= u < p^r`` (0 for zeros)."""
        if self.unit == 0:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def residue(self) -> int:
        """Reduction mod p of an integral element."""
        if self.valuation < 0:
            raise DomainError("element is not integral")
        if self.valuation > 0 or self.unit == 0:
            return 0
        return self.unit % self.p

    def digits(self) -> list[int]:
        out = []
        u = self.unit
        for _ in range(self.rel_precision):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    def expansion(self) -> str:
        if self.valuation == INFINITY:
            return "0"
        p = self.p
        parts = []
        for i, d in enumerate(self.digits()):
            if d == 0:
                continue
            e = self.valuation + i
            if e == 0:
                parts.append(str(d))
            elif e == 1:
                parts.append(f"{d}*{p}")
            else:
                parts.append(f"{d}*{p}^{e}")
        parts.append(f"O({p}^{self.abs_precision})")
        return " + ".join(parts)

    def compact(self) -> str:
        if self.valuation == INFINITY:
            return "0"
        return f"({self.valuation}, {self.unit} mod {self.p}^{self.rel_precision})"

    def __str__(self):
        return self.expansion()

    def __repr__(self):
        return f"PadicScalar<p={self.p}>{self.compact()}"


# ---------------------------------------------------------------------------
# literals

_TERM_RE = [
    ("bigoh", re.compile(r"^O\((?:p|(\d+))\^(-?\d+)\)$")),
    ("frac", re.compile(r"^(-?\d+)/(\d+)$")),
    ("int", re.compile(r"^-?\d+$")),
    ("ppow", re.compile(r"^p\^(-?\d+)(?:\*(-?\d+))?$")),
    ("digit", re.compile(r"^(-?\d+)\*(?:p|(\d+))(?:\^(-?\d+))?$")),
]


def parse_literal(text: str, ctx: PadicContext) -> PadicScalar:
    """Parse ``<int>``, ``<int>/<int>``, ``p^<v>*<int>`` or a ``+``-separated
    sum of such terms, digit terms ``d*P^k`` and an optional ``O(P^N)``
    (the expansion format printed by :meth:`PadicScalar.expansion`)."""
    total = Fraction(0)
    bigoh = None
    pieces = [t.strip() for t in text.replace(" ", "").split("+")]
    if not pieces or any(t == "" for t in pieces):
        raise ValueError(f"malformed p-adic literal: {text!r}")
    for term in pieces:
        for kind, rx in _TERM_RE:
            m = rx.match(term)
            if m:
                break
        else:
            raise ValueError(f"malformed p-adic literal term: {term!r}")
        if kind in ("bigoh", "digit") and m.group(2 if kind == "digit" else 1) is not None:
            base = int(m.group(2 if kind == "digit" else 1))
            if base != ctx.p:
                raise ValueError(f"literal uses prime {base}, context has p = {ctx.p}")
        if kind == "bigoh":
            n = int(m.group(2))
            bigoh = n if bigoh is None else min(bigoh, n)
        elif kind == "frac":
            if int(m.group(2)) == 0:
                raise DomainError("zero denominator")
            total += Fraction(int(m.group(1)), int(m.group(2)))
        elif kind == "int":
            total += int(term)
        elif kind == "ppow":
            c = int(m.group(2)) if m.group(2) is not None else 1
            total += c * Fraction(ctx.p) ** int(m.group(1))
        else:
            e = int(m.group(3)) if m.group(3) is not None else 1
            total += int(m.group(1)) * Fraction(ctx.p) ** e
    x = ctx(total)
    if bigoh is not None:
        x = x.add_bigoh(bigoh)
        if total == 0:
            x = PadicScalar(ctx, bigoh, 0, 0)
    return x


# ---------------------------------------------------------------------------
# analytic primitives


@dataclass(frozen=True)
class AngleDecomposition:
    valuation: int
    teichmuller: PadicScalar
    angle: PadicScalar


def teichmueller(a: PadicScalar) -> PadicScalar:
    """The (p-1)-st root of unity congruent to the unit ``a`` mod p."""
    if not a.is_unit():
        raise DomainError("Teichmueller lift needs a unit")
    ctx = a.context
    p = ctx.p
    mod = p**ctx.working_precision
    x = a.unit % p
    # x -> x^p gains at least one digit per step
    for _ in range(ctx.working_precision + 1):
        y = pow(x, p, mod)
        if y == x:
            break
        x = y
    return PadicScalar(ctx, 0, x, ctx.working_precision).add_bigoh(a.abs_precision)


def angle_decompose(a: PadicScalar) -> AngleDecomposition:
    if a.is_zero():
        raise DomainError("cannot decompose zero")
    ctx = a.context
    u = PadicScalar(ctx, 0, a.unit, a.rel_precision)
    w = teichmueller(u)
    return AngleDecomposition(a.valuation, w, u / w)


def _log_one_plus(x: PadicScalar) -> PadicScalar:
    """log(1 + x) for valuation(x) >= 1, certified to working precision."""
    ctx = x.context
    prec = ctx.working_precision
    if x.is_exact_zero():
        return ctx.zero
    vx = x.valuation
    if vx < 1:
        raise DomainError("log series needs valuation >= 1")
    p = ctx.p
    M = tail_cutoff(lambda m: m * vx - floor_log(m, p), prec, p, vx, 1)
    total = ctx.zero
    power = ctx.one
    for m in range(1, M + 1):
        power = power * x
        term = power / m
        total = total + term if m % 2 else total - term
    return total.add_bigoh(prec)


def padic_log(a: PadicScalar) -> PadicScalar:
    """Iwasawa logarithm, normalized so that log p = 0."""
    if a.is_zero():
        raise DomainError("log of zero")
    return _log_one_plus(angle_decompose(a).angle - 1)


def padic_exp(x: PadicScalar) -> PadicScalar:
    ctx = x.context
    if x.is_exact_zero():
        return ctx.one
    if x.valuation < 1:
        raise DomainError("outside exp disc")
    p = ctx.p
    prec = ctx.working_precision
    vx = x.valuation
    M = tail_cutoff(lambda m: m * vx - Fraction(m - 1, p - 1), prec, p,
                    vx - Fraction(1, p - 1))
    total = ctx.one
    term = ctx.one
    for n in range(1, M + 1):
        term = term * x / n
        total = total + term
    return total.add_bigoh(prec)


def binom_padic(s, n: int):
    """s(s-1)...(s-n+1)/n!; works for any ring element ``s``."""
    if n < 0:
        raise DomainError("negative binomial index")
    num = Fraction(1)
    for i in range(n):
        num = num * (s - i)
    out = num / math.factorial(n)
    if isinstance(out, Fraction) and isinstance(s, PadicScalar):
        return s.context(out)
    return out


def angle_power(a: PadicScalar, s: PadicScalar) -> PadicScalar:
    """<a>^s as the binomial series in <a> - 1, for |s| <= 1."""
    ctx = a.context
    s = ctx(s)
    if s.is_exact_zero():
        return ctx.one
    if s.valuation < 0:
        raise DomainError("s outside closed unit disc")
    x = angle_decompose(a).angle - 1
    if x.is_exact_zero():
        return ctx.one
    prec = ctx.working_precision
    vx = x.valuation
    M = tail_cutoff(lambda n: n * vx, prec, ctx.p, vx)
    total = ctx.one
    term = ctx.one
    for n in range(1, M + 1):
        term = term * (s - (n - 1)) * x / n
        total = total + term
    return total.add_bigoh(prec)


def agreement(x, y):
    """Number of p-adic digits to which x and y are known to agree."""
    d = x - y
    if d.is_zero():
        return d.abs_precision
    return min(d.valuation, d.abs_precision)
