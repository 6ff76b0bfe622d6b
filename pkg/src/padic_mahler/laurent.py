"""Sparse multivariate Laurent polynomials over an arbitrary coefficient ring."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .padic import INFINITY, DomainError, PadicContext, parse_literal


class NonvanishingError(DomainError):
    """The polynomial has a zero on the p-adic torus."""


def _is_zero(c) -> bool:
    z = getattr(c, "is_zero", None)
    return z() if z is not None else c == 0


class LaurentPoly:
    """Finite sum of ``c_v t^v`` with v in Z^n, stored as ``{v: c_v}``.

    ``big_oh`` is the absolute p-adic precision of the coefficients that were
    dropped for being zero to their known digits (INFINITY if none were).
    Treat instances as immutable.
    """

    __slots__ = ("n_vars", "terms", "big_oh")

    def __init__(self, n_vars: int, terms=None, big_oh=INFINITY):
        if n_vars < 1:
            raise DomainError("need at least one variable")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n_vars:
                raise DomainError(f"exponent {exp} does not have {n_vars} entries")
            if _is_zero(c):
                big_oh = min(big_oh, getattr(c, "abs_precision", INFINITY))
                continue
            clean[exp] = c
        self.n_vars = n_vars
        self.terms = clean
        self.big_oh = big_oh

    # -- constructors ----------------------------------------------------

    @classmethod
    def monomial(cls, exp, coeff=1) -> LaurentPoly:
        exp = tuple(exp)
        return cls(len(exp), {exp: coeff})

    @classmethod
    def from_json(cls, data, ctx: PadicContext) -> LaurentPoly:
        """Build from ``{"vars": n, "terms": [{"coeff": "<literal>", "exp": [...]}, ...]}``."""
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["vars"])
            raw = data["terms"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"polynomial JSON needs 'vars' and 'terms': {exc}") from None
        terms = {}
        for item in raw:
            exp = tuple(int(e) for e in item["exp"])
            if len(exp) != n:
                raise ValueError(f"exponent {list(exp)} does not have {n} entries")
            c = parse_literal(str(item["coeff"]), ctx)
            terms[exp] = terms[exp] + c if exp in terms else c
        return cls(n, terms)

    def to_json(self) -> dict:
        def lit(c):
            return c.expansion() if hasattr(c, "expansion") else str(c)

        return {
            "vars": self.n_vars,
            "terms": [{"coeff": lit(c), "exp": list(e)} for e, c in sorted(self.terms.items())],
        }

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.n_vars, 0)

    def gauss_valuation(self):
        if not self.terms:
            return INFINITY
        return min(c.valuation for c in self.terms.values())

    def degree_bound(self) -> int:
        """Largest |exponent| over all coordinates of the support."""
        return max((abs(e) for exp in self.terms for e in exp), default=0)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    # -- arithmetic ------------------------------------------------------

    def _embed(self, x):
        """Bring an int or Fraction into the coefficient ring of self."""
        if isinstance(x, (int, Fraction)):
            for c in self.terms.values():
                return c * 0 + x
        return x

    def _check(self, other: LaurentPoly):
        if other.n_vars != self.n_vars:
            raise DomainError(f"variable count mismatch: {self.n_vars} vs {other.n_vars}")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.monomial((0,) * self.n_vars, self._embed(other))
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return LaurentPoly(self.n_vars, terms, min(self.big_oh, other.big_oh))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.n_vars, {e: -c for e, c in self.terms.items()}, self.big_oh)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> LaurentPoly:
        return LaurentPoly(self.n_vars, {e: a * c for e, a in self.terms.items()},
                           self.big_oh + getattr(c, "valuation", 0))

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        return laurent_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("only nonnegative integer powers")
        result = LaurentPoly.monomial((0,) * self.n_vars, self._embed(1))
        for _ in range(n):
            result = result * self
        return result

    def truncate(self, prec) -> LaurentPoly:
        """Drop the terms that vanish modulo p^prec."""
        terms = {}
        for e, c in self.terms.items():
            c = c.add_bigoh(prec)
            terms[e] = c
        return LaurentPoly(self.n_vars, terms, min(self.big_oh, prec))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.monomial((0,) * self.n_vars, self._embed(other))
        return (self - other).is_zero()

    __hash__ = None

    def __call__(self, *point):
        """Evaluate at a point; coordinates may come from any ring."""
        if len(point) != self.n_vars:
            raise DomainError("wrong number of coordinates")
        total = 0
        for exp, c in self.terms.items():
            term = c
            for z, e in zip(point, exp):
                if e:
                    term = term * z**e
            total = total + term
        return total

    def __repr__(self):
        if not self.terms:
            return f"LaurentPoly({self.n_vars}, 0)"
        parts = []
        for exp, c in sorted(self.terms.items()):
            mono = "*".join(
                f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}" for i, e in enumerate(exp) if e
            )
            shown = c.compact() if hasattr(c, "compact") else str(c)
            parts.append(f"{shown}*{mono}" if mono else shown)
        return f"LaurentPoly({self.n_vars}, " + " + ".join(parts) + ")"


def laurent_mul(f: LaurentPoly, g: LaurentPoly, keep=None) -> LaurentPoly:
    """Convolution product.  ``keep(exp)`` may veto exponents of the result."""
    f._check(g)
    out: dict = {}
    gitems = list(g.terms.items())
    for e1, c1 in f.terms.items():
        for e2, c2 in gitems:
            e = tuple(a + b for a, b in zip(e1, e2))
            if keep is not None and not keep(e):
                continue
            prod = c1 * c2
            if e in out:
                out[e] = out[e] + prod
            else:
                out[e] = prod
    big_oh = INFINITY
    if f.big_oh != INFINITY:
        gv = g.gauss_valuation()
        big_oh = min(big_oh, f.big_oh + (gv if gv != INFINITY else 0))
    if g.big_oh != INFINITY:
        fv = f.gauss_valuation()
        big_oh = min(big_oh, g.big_oh + (fv if fv != INFINITY else 0))
    return LaurentPoly(f.n_vars, out, big_oh)


def gauss_valuation(f: LaurentPoly):
    return f.gauss_valuation()


@dataclass(frozen=True)
class UnitDecomposition:
    """``f = a * t^l * (1 + g)`` with g of positive Gauss valuation and no
    constant term."""

    a: object
    l: tuple[int, ...]
    g: LaurentPoly

    def reassemble(self) -> LaurentPoly:
        one = LaurentPoly.monomial((0,) * self.g.n_vars, self.a * 0 + 1)
        return (one + self.g) * LaurentPoly.monomial(self.l, self.a)


def decompose_unit(f: LaurentPoly) -> UnitDecomposition:
    if f.is_zero():
        raise DomainError("the zero polynomial has no unit decomposition")
    vals = sorted((c.valuation, e) for e, c in f.terms.items())
    vmin, l = vals[0]
    if len(vals) > 1 and vals[1][0] == vmin:
        raise NonvanishingError(
            "f vanishes on the p-adic torus: no coefficient strictly dominates, "
            "so m_{p,k}(f) is undefined"
        )
    a = f.terms[l]
    inv = a.inverse()
    g = {
        tuple(x - y for x, y in zip(e, l)): c * inv
        for e, c in f.terms.items()
        if e != l
    }
    return UnitDecomposition(a, l, LaurentPoly(f.n_vars, g))


def _as_matrix(S) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in S]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("substitution matrix must be square")
    return rows


def substitute_monomials(f: LaurentPoly, S) -> LaurentPoly:
    """Replace every exponent vector v by S v."""
    rows = _as_matrix(S)
    if len(rows) != f.n_vars:
        raise DomainError("matrix size does not match the number of variables")
    if sympy.Matrix(rows).det() == 0:
        raise DomainError("substitution matrix is singular")
    terms = {}
    for v, c in f.terms.items():
        w = tuple(sum(r[j] * v[j] for j in range(f.n_vars)) for r in rows)
        terms[w] = c
    return LaurentPoly(f.n_vars, terms, f.big_oh)


def from_rationals(n_vars: int, terms: dict, ctx: PadicContext) -> LaurentPoly:
    """Embed a polynomial with int/Fraction coefficients into Q_p."""
    return LaurentPoly(n_vars, {e: ctx(Fraction(c)) for e, c in terms.items()})
