import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_mahler.hoffman import WordPoly, main1_word
from padic_mahler.padic import DomainError, PadicContext, agreement, padic_exp, padic_log
from padic_mahler.series import (
    SJet,
    double_constrained_sum,
    hypergeometric,
    jet_exp,
    multipolylog,
    partial_sum_coefficients,
    pochhammer,
    polylog_coefficients,
    polylog_series_product,
)

CTX = PadicContext(5, 30, 10)
NW = CTX.working_precision


def test_li1_is_minus_log():
    small = PadicContext(5, 4, 0)
    assert multipolylog((1,), small(5)).lift() == 580
    assert agreement(multipolylog((1,), CTX(5)), -padic_log(CTX(-4))) >= NW - 1


def test_li2_oracle():
    # 2 Li_2(25) mod 5^20 from an exact-fraction sum
    assert agreement(multipolylog((2,), CTX(25)) * 2, CTX(10124305711300)) >= 20


def test_li12_oracle():
    assert agreement(multipolylog((1, 2), CTX(25)) * -12, CTX(12173079263750)) >= 20


def test_polylog_coefficients_small():
    c = polylog_coefficients((1, 2), 4)
    assert c[:3] == [0, 0, Fraction(1, 4)]
    assert c[3] == Fraction(1, 9) * (1 + Fraction(1, 2))


def test_polylog_domain():
    with pytest.raises(DomainError, match="outside polylog disc"):
        multipolylog((2,), CTX(1))
    assert multipolylog((2,), CTX(0)).is_zero()


def test_word_poly_argument_is_linear():
    w = main1_word(2, 2)
    lhs = multipolylog(w, CTX(25))
    rhs = multipolylog((1, 1, 2), CTX(25)) * 2 + multipolylog((2, 2), CTX(25))
    assert agreement(lhs, rhs) >= NW - 2


@pytest.mark.parametrize("k,l", [(1, 1), (2, 1), (2, 3), (4, 4)])
@pytest.mark.parametrize("t", [5, 25])
def test_double_constrained_sum(k, l, t):
    assert agreement(multipolylog(main1_word(k, l), CTX(t)), double_constrained_sum(k, l, CTX(t))) >= 30


def test_pochhammer():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(3, 0) == 1
    for m in range(1, 31):
        assert math.factorial(2 * m) == 4**m * math.factorial(m) * pochhammer(Fraction(1, 2), m)


def test_hypergeometric_polynomial_case():
    small = PadicContext(5, 4, 0)
    assert hypergeometric([-2, -2], [1], small(5)).lift() == (1 + 4 * 5 + 25) % 625
    assert hypergeometric([-1, -1], [1], CTX(25)) == 26


def test_hypergeometric_binomial_series():
    # 1F0(a;;z) = (1 - z)^(-a); here 2F1(a, b; b; z) with b cancelling
    z = CTX(5)
    a = Fraction(1, 2)
    val = hypergeometric([a, 3], [3], z)
    assert agreement(val * val * (1 - z), CTX(1)) >= NW - 2


def test_hypergeometric_domain():
    with pytest.raises(DomainError):
        hypergeometric([Fraction(1, 5)], [1], CTX(25))
    with pytest.raises(DomainError):
        hypergeometric([1], [0], CTX(25))
    with pytest.raises(DomainError):
        hypergeometric([1, 1], [2], CTX(1))


def test_jet_arithmetic():
    s = SJet.generator(CTX, 4)
    e = jet_exp(s * 5)
    for k in range(5):
        assert agreement(e[k], CTX(Fraction(5**k, math.factorial(k)))) >= NW - 2
    assert ((1 + s) * (1 + s).inverse() - 1).is_zero()
    assert (1 + s).evaluate(CTX(3)) == 4


def test_jet_hypergeometric_matches_scalar():
    # truncating at s^13 costs nothing below 5^13 when s is divisible by 5
    s = SJet.generator(CTX, 12)
    z = CTX(25)
    jet = hypergeometric([-s, -s], [1], z)
    for n in (0, 5, 10, 25):
        assert agreement(jet.evaluate(CTX(n)), hypergeometric([CTX(-n), CTX(-n)], [1], z)) >= 13


@given(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4))
@settings(max_examples=30)
def test_jet_exp_is_multiplicative(a, b):
    s = SJet.generator(CTX, 3)
    x, y = s * (5 * a), s * (5 * b)
    assert jet_exp(x) * jet_exp(y) == jet_exp(x + y)


@given(st.integers(-10**4, 10**4))
@settings(max_examples=30)
def test_jet_exp_matches_scalar_exp(a):
    # exp(5a s) at s = 1 is exp(5a); the s^3 tail has valuation >= 3 - 1
    s = SJet.generator(CTX, 12)
    e = jet_exp(s * (5 * a))
    assert agreement(e[1], CTX(5 * a)) >= NW - 1
    assert agreement(e.evaluate(CTX(1)), padic_exp(CTX(5 * a))) >= 10
    with pytest.raises(DomainError):
        jet_exp(s + 1)


indices = st.lists(st.integers(1, 2), min_size=1, max_size=3).map(tuple).filter(lambda i: sum(i) <= 4)


@given(indices, indices)
@settings(max_examples=60, deadline=None)
def test_harmonic_product_multiplies_truncated_sums(a, b):
    n = 31
    lhs = partial_sum_coefficients(WordPoly.index(a) * WordPoly.index(b), n)
    A, B = partial_sum_coefficients(a, n), partial_sum_coefficients(b, n)
    assert lhs == [x * y for x, y in zip(A, B)]


def test_cauchy_product_is_not_harmonic():
    # Li_1(t)^2 starts at t^2, Li_{1*1} = 2 Li_{1,1} + Li_2 starts at t
    one = WordPoly.index(1)
    lhs = polylog_coefficients(one * one, 4)
    rhs = polylog_series_product(polylog_coefficients(one, 4), polylog_coefficients(one, 4))
    assert lhs[1] == 1 and rhs[1] == 0


@given(indices, indices)
@settings(max_examples=30, deadline=None)
def test_cauchy_product_is_shuffle_for_depth_one(a, b):
    # Li_k Li_l = sum of Li over shuffles of e1 e0^(k-1) and e1 e0^(l-1)
    if len(a) != 1 or len(b) != 1:
        return
    from padic_mahler.hoffman import Word

    wa, wb = Word.from_index(a), Word.from_index(b)
    total = WordPoly()
    for w in _shuffles(tuple(wa), tuple(wb)):
        total = total + WordPoly.word(w)
    n = 25
    assert polylog_coefficients(total, n) == polylog_series_product(
        polylog_coefficients(a, n), polylog_coefficients(b, n))


def _shuffles(u, v):
    if not u:
        return [v]
    if not v:
        return [u]
    return [(u[0],) + w for w in _shuffles(u[1:], v)] + [(v[0],) + w for w in _shuffles(u, v[1:])]
