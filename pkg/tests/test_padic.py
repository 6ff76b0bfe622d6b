from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_mahler.padic import (
    DomainError,
    PadicContext,
    PadicScalar,
    agreement,
    angle_decompose,
    angle_power,
    binom_padic,
    factorial_valuation,
    floor_log,
    padic_exp,
    padic_log,
    parse_literal,
    tail_cutoff,
    teichmueller,
    valuation_int,
)

CTX = PadicContext(5, 30, 10)
NW = CTX.working_precision

nonzero_ints = st.integers(-10**6, 10**6).filter(lambda n: n != 0)
rationals = st.builds(Fraction, nonzero_ints, st.integers(1, 10**6))
units = rationals.filter(lambda x: x.numerator % 5 and x.denominator % 5)


def test_context_validation():
    with pytest.raises(DomainError):
        PadicContext(2)
    with pytest.raises(DomainError):
        PadicContext(9)
    assert CTX.working_precision == 40


def test_integer_helpers():
    assert valuation_int(250, 5) == 3
    assert floor_log(24, 5) == 1 and floor_log(25, 5) == 2
    assert factorial_valuation(30, 5) == 7


def test_from_rational_and_digits():
    x = CTX(Fraction(-26, 5))
    assert x.valuation == -1
    assert x.abs_precision == NW - 1
    assert CTX(0).is_exact_zero()
    assert CTX(50).digits()[:2] == [2, 0]


def test_teichmueller_and_log_anchors():
    # values mod 5^4 checked by hand with exact fractions
    ctx = PadicContext(5, 4, 0)
    assert teichmueller(ctx(2)).lift() == 182
    assert padic_log(ctx(6)).lift() == 555
    assert padic_log(ctx(5)).is_zero()


def test_log6_oracle():
    assert agreement(padic_log(CTX(6)), CTX(45734245251805)) >= 20


def test_angle_decomposition():
    d = angle_decompose(CTX(Fraction(-26, 5)))
    assert d.valuation == -1
    assert (d.teichmuller**4 - 1).is_zero()
    assert (d.angle - 26).is_zero()


def test_log_of_zero_raises():
    with pytest.raises(DomainError):
        padic_log(CTX(0))


def test_exp_domain():
    with pytest.raises(DomainError, match="outside exp disc"):
        padic_exp(CTX(1))


def test_exp_log_inverse():
    assert agreement(padic_exp(padic_log(CTX(6))), CTX(6)) >= NW


def test_angle_power_square_root():
    r = angle_power(CTX(6), CTX(Fraction(1, 2)))
    assert agreement(r * r, CTX(6)) >= NW
    assert angle_power(CTX(6), CTX(0)) == 1
    with pytest.raises(DomainError, match="outside closed unit disc"):
        angle_power(CTX(6), CTX(Fraction(1, 5)))


def test_binomial():
    assert binom_padic(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom_padic(5, 2) == 10
    assert binom_padic(CTX(5), 2) == CTX(10)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        CTX(0).inverse()


def test_parse_literals():
    assert parse_literal("1/5", CTX) == CTX(Fraction(1, 5))
    assert parse_literal("p^2*3", CTX) == CTX(75)
    assert parse_literal("1*5 + 2*5^2 + O(5^4)", CTX).abs_precision == 4
    assert parse_literal("O(5^7)", CTX).abs_precision == 7
    with pytest.raises(ValueError):
        parse_literal("1*7^2", CTX)
    with pytest.raises(ValueError):
        parse_literal("abc", CTX)


def test_tail_cutoff_certified():
    M = tail_cutoff(lambda m: m - floor_log(m, 5), 40, 5, 1, 1)
    assert all(m - floor_log(m, 5) >= 40 for m in range(M + 1, 2000))
    with pytest.raises(DomainError):
        tail_cutoff(lambda m: 0, 10, 5, 0)


@given(rationals, rationals)
def test_ring_laws(a, b):
    x, y = CTX(a), CTX(b)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) - y == x
    assert x * y == CTX(a * b)


@given(rationals)
def test_inverse(a):
    x = CTX(a)
    assert x * x.inverse() == 1


@given(rationals, rationals, rationals)
def test_distributive(a, b, c):
    x, y, z = CTX(a), CTX(b), CTX(c)
    assert agreement(x * (y + z), x * y + x * z) >= min((x * y).abs_precision, (x * z).abs_precision)


@given(units, units)
@settings(max_examples=40)
def test_log_is_a_homomorphism(a, b):
    x, y = CTX(a), CTX(b)
    assert agreement(padic_log(x * y), padic_log(x) + padic_log(y)) >= NW - 1


@given(units, st.integers(0, 10**6), st.integers(0, 10**6))
@settings(max_examples=30)
def test_angle_power_additive(a, s, t):
    x = CTX(a)
    lhs = angle_power(x, CTX(s)) * angle_power(x, CTX(t))
    assert agreement(lhs, angle_power(x, CTX(s + t))) >= NW - 1


@given(rationals)
def test_expansion_round_trip(a):
    x = CTX(a)
    y = parse_literal(x.expansion(), CTX)
    assert agreement(x, y) >= x.abs_precision
    assert y.abs_precision == x.abs_precision


def test_scalar_is_immutable():
    x = CTX(3)
    with pytest.raises(AttributeError):
        x.valuation = 2
    assert isinstance(x, PadicScalar)
