import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_mahler.hoffman import (
    Word,
    WordPoly,
    circled_harmonic,
    compositions,
    harmonic_product,
    index_word_convert,
    main1_word,
)
from padic_mahler.padic import DomainError

I = WordPoly.index


def test_small_products():
    assert I(1) * I(1) == 2 * I(1, 1) + I(2)
    assert I(1) * I(2) == I(1, 2) + I(2, 1) + I(3)
    assert str(I(1) * I(1)) == "2 * (1,1) + (2)"


def test_circled_product():
    assert circled_harmonic(I(1, 1), I(1, 1)) == 2 * I(1, 1, 2) + I(2, 2)
    assert circled_harmonic(I(3), I(4)) == I(7)
    with pytest.raises(DomainError):
        circled_harmonic(WordPoly.one(), I(1))


def test_main1_words():
    assert main1_word(1, 1) == I(2)
    assert main1_word(2, 1) == I(1, 2)
    assert main1_word(2, 2) == 2 * I(1, 1, 2) + I(2, 2)


def test_words_and_indices():
    w = Word.from_index((1, 2, 3))
    assert w == Word((1, 1, 0, 1, 0, 0))
    assert w.to_index() == (1, 2, 3)
    assert w.in_h1 and w.in_h0
    assert index_word_convert(w) == (1, 2, 3)
    assert not Word((0, 1)).in_h1
    with pytest.raises(DomainError):
        Word((0, 1)).to_index()
    with pytest.raises(DomainError):
        Word((2,))


def test_compositions_count():
    assert [len(list(compositions(n))) for n in range(1, 7)] == [1, 2, 4, 8, 16, 32]


indices = st.lists(st.integers(1, 3), min_size=0, max_size=3).map(tuple)


@given(indices, indices)
def test_commutative(a, b):
    assert harmonic_product(I(a), I(b)) == harmonic_product(I(b), I(a))


@given(indices, indices, indices)
@settings(deadline=None)
def test_associative(a, b, c):
    x, y, z = I(a), I(b), I(c)
    assert (x * y) * z == x * (y * z)


@given(indices, indices)
def test_product_preserves_weight(a, b):
    p = I(a) * I(b)
    assert all(sum(k) == sum(a) + sum(b) for k in p.terms)


@given(indices.filter(bool), indices.filter(bool))
def test_circled_commutative(a, b):
    assert circled_harmonic(I(a), I(b)) == circled_harmonic(I(b), I(a))


@given(st.integers(1, 4), st.integers(1, 4))
def test_main1_word_symmetric(i, j):
    assert main1_word(i, j) == main1_word(j, i)
