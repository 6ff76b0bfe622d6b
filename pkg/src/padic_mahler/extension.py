"""Unramified extensions Q_{p^f} and the roots of unity they contain."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy

from .padic import DomainError, PadicContext, PadicScalar, floor_log, tail_cutoff


def _irreducible_mod_p(coeffs: tuple[int, ...], p: int) -> bool:
    """``coeffs`` low-to-high, monic."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    return poly.is_irreducible


@dataclass(frozen=True)
class UnramifiedField:
    context: PadicContext
    degree: int
    defining_poly: tuple[int, ...]  # monic, low-to-high, length degree + 1

    @property
    def p(self) -> int:
        return self.context.p

    @property
    def residue_size(self) -> int:
        return self.context.p ** self.degree

    def __call__(self, x) -> ExtScalar:
        if isinstance(x, ExtScalar):
            if x.field != self:
                raise DomainError("elements from different fields")
            return x
        if isinstance(x, (list, tuple)):
            if len(x) != self.degree:
                raise DomainError("wrong number of coordinates")
            return ExtScalar(self, tuple(self.context(c) for c in x))
        c = self.context(x)
        return ExtScalar(self, (c,) + (self.context.zero,) * (self.degree - 1))

    @property
    def one(self) -> ExtScalar:
        return self(1)

    @property
    def zero(self) -> ExtScalar:
        return self(0)


def make_unramified(ctx: PadicContext, f: int) -> UnramifiedField:
    """Degree-f unramified extension; the defining polynomial is the first
    monic irreducible mod p when the non-leading coefficients, read from
    degree f-1 down to 0, are enumerated lexicographically."""
    if f < 1:
        raise DomainError("extension degree must be at least 1")
    if f == 1:
        return UnramifiedField(ctx, 1, (0, 1))
    for tail in itertools.product(range(ctx.p), repeat=f):
        coeffs = tuple(reversed(tail)) + (1,)
        if coeffs[0] != 0 and _irreducible_mod_p(coeffs, ctx.p):
            return UnramifiedField(ctx, f, coeffs)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


class ExtScalar:
    """Element of an unramified extension as a polynomial in the generator."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: UnramifiedField, coeffs: tuple[PadicScalar, ...]):
        self.field = field
        self.coeffs = coeffs

    @property
    def context(self) -> PadicContext:
        return self.field.context

    @property
    def valuation(self):
        return min(c.valuation for c in self.coeffs)

    @property
    def abs_precision(self):
        return min(c.abs_precision for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_unit(self) -> bool:
        return self.valuation == 0 and not self.is_zero()

    def add_bigoh(self, n) -> ExtScalar:
        return ExtScalar(self.field, tuple(c.add_bigoh(n) for c in self.coeffs))

    def residue(self) -> tuple[int, ...]:
        return tuple(c.residue() for c in self.coeffs)

    def to_scalar(self) -> PadicScalar:
        """The element as a scalar of Q_p; only for degree-1 fields."""
        if self.field.degree != 1:
            raise DomainError("not a degree-1 field")
        return self.coeffs[0]

    def _coerce(self, other):
        if isinstance(other, ExtScalar):
            if other.field != self.field:
                raise DomainError("elements from different fields")
            return other
        try:
            return self.field(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ExtScalar(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ExtScalar(self.field, tuple(-a for a in self.coeffs))

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
            c = self.context(other)
            return ExtScalar(self.field, tuple(a * c for a in self.coeffs))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f = self.field.degree
        zero = self.context.zero
        prod = [zero] * (2 * f - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_exact_zero():
                continue
            for j, b in enumerate(other.coeffs):
                prod[i + j] = prod[i + j] + a * b
        h = self.field.defining_poly
        for d in range(2 * f - 2, f - 1, -1):
            c = prod[d]
            if c.is_exact_zero():
                continue
            for i in range(f):
                if h[i]:
                    prod[d - f + i] = prod[d - f + i] - c * h[i]
        return ExtScalar(self.field, tuple(prod[:f]))

    __rmul__ = __mul__

    def inverse(self) -> ExtScalar:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in extension")
        v = self.valuation
        shift = self.context(1) if v == 0 else PadicScalar(self.context, -v, 1, self.context.working_precision)
        u = self * shift
        y = self.field(list(_residue_inverse(u.residue(), self.field)))
        # Newton: y <- y(2 - u y); correct digits double each step
        steps = max(1, self.context.working_precision).bit_length() + 1
        for _ in range(steps):
            y = y * (2 - u * y)
        return y * shift

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
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        body = ", ".join(c.compact() for c in self.coeffs)
        return f"ExtScalar<p^{self.field.degree}>[{body}]"


# ---------------------------------------------------------------------------
# residue field helpers (integer coefficient tuples, low-to-high)


def _res_mul(a, b, h, p):
    f = len(h) - 1
    prod = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(2 * f - 2, f - 1, -1):
        c = prod[d]
        if c:
            for i in range(f):
                prod[d - f + i] = (prod[d - f + i] - c * h[i]) % p
    return tuple(prod[:f])


def _res_pow(a, n, h, p):
    f = len(h) - 1
    result = (1,) + (0,) * (f - 1)
    while n:
        if n & 1:
            result = _res_mul(result, a, h, p)
        a = _res_mul(a, a, h, p)
        n >>= 1
    return result


def _residue_inverse(a, field: UnramifiedField):
    if not any(a):
        raise ZeroDivisionError("residue is zero")
    q = field.residue_size
    return _res_pow(a, q - 2, field.defining_poly, field.p)


def _primitive_residue(field: UnramifiedField):
    p, h, q = field.p, field.defining_poly, field.residue_size
    f = field.degree
    factors = sympy.factorint(q - 1)
    one = (1,) + (0,) * (f - 1)
    for a in itertools.product(range(p), repeat=f):
        if not any(a):
            continue
        if all(_res_pow(a, (q - 1) // r, h, p) != one for r in factors):
            return a
    raise AssertionError("unreachable: the multiplicative group is cyclic")


def teichmueller_lift(field: UnramifiedField, residue) -> ExtScalar:
    """The root of unity of order prime to p reducing to ``residue``."""
    q = field.residue_size
    x = field(list(residue))
    for _ in range(field.context.working_precision + 1):
        y = x**q
        if (y - x).is_zero():
            break
        x = y
    return x


def roots_of_unity(field: UnramifiedField, N: int) -> list[ExtScalar]:
    """The N-th roots of unity of ``field``, as Teichmueller lifts."""
    if N < 1:
        raise DomainError("N must be positive")
    if gcd(N, field.p) != 1:
        raise DomainError("p divides N")
    q = field.residue_size
    if (q - 1) % N:
        raise DomainError(f"mu_{N} not contained in this field (N does not divide {q - 1})")
    gen = _primitive_residue(field)
    step = _res_pow(gen, (q - 1) // N, field.defining_poly, field.p)
    out = []
    r = (1,) + (0,) * (field.degree - 1)
    for _ in range(N):
        out.append(teichmueller_lift(field, r))
        r = _res_mul(r, step, field.defining_poly, field.p)
    return out


def ext_log(x: ExtScalar) -> ExtScalar:
    """Iwasawa logarithm on an unramified field: log p = 0 and the
    Teichmueller factor is removed by raising the unit part to q - 1."""
    if x.is_zero():
        raise DomainError("log of zero")
    field = x.field
    ctx = field.context
    v = x.valuation
    u = x if v == 0 else x * PadicScalar(ctx, -v, 1, ctx.working_precision)
    q = field.residue_size
    w = u ** (q - 1) - 1
    prec = ctx.working_precision
    if w.is_zero():
        return field.zero.add_bigoh(min(prec, w.abs_precision))
    vw = w.valuation
    p = ctx.p
    M = tail_cutoff(lambda m: m * vw - floor_log(m, p), prec, p, vw, 1)
    total = field.zero
    power = field.one
    for m in range(1, M + 1):
        power = power * w
        term = power * _inv_int(m, ctx)
        total = total + term if m % 2 else total - term
    return (total * _inv_int(q - 1, ctx)).add_bigoh(prec)


def _inv_int(n: int, ctx: PadicContext) -> PadicScalar:
    return ctx(1) / n


def eval_laurent(f, point) -> ExtScalar:
    """Value of a Laurent polynomial at a point of unit coordinates."""
    point = tuple(point)
    if len(point) != f.n_vars:
        raise DomainError("point has the wrong number of coordinates")
    if not point:
        raise DomainError("empty point")
    field = point[0].field
    for z in point:
        if not z.is_unit():
            raise DomainError("coordinates must be units")
    inverses = [z.inverse() for z in point]
    cache: dict[tuple[int, int], ExtScalar] = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = point[i] ** e if e >= 0 else inverses[i] ** (-e)
        return cache[key]

    total = field.zero
    for exp, c in f.terms.items():
        term = field.one
        for i, e in enumerate(exp):
            if e:
                term = term * power(i, e)
        total = total + term * c
    return total
