import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_mahler.extension import (
    eval_laurent,
    ext_log,
    make_unramified,
    roots_of_unity,
    teichmueller_lift,
)
from padic_mahler.laurent import from_rationals
from padic_mahler.padic import DomainError, PadicContext, agreement, padic_log

CTX = PadicContext(5, 30, 10)
Q25 = make_unramified(CTX, 2)


def test_defining_polynomial():
    assert Q25.defining_poly == (2, 0, 1)
    assert make_unramified(CTX, 1).defining_poly == (0, 1)
    assert make_unramified(PadicContext(7), 2).degree == 2


def test_mu4_in_q5():
    field = make_unramified(PadicContext(5, 4, 0), 1)
    assert [z.to_scalar().lift() for z in roots_of_unity(field, 4)] == [1, 182, 624, 443]


@pytest.mark.parametrize("N", [8, 12, 24])
def test_roots_of_unity_in_q25(N):
    roots = roots_of_unity(Q25, N)
    assert len(roots) == N
    prod = Q25.one
    for z in roots:
        assert (z**N - 1).is_zero()
        assert ext_log(z).is_zero()
        prod = prod * z
    assert prod == -1
    # all distinct modulo p
    assert len({z.residue() for z in roots}) == N


def test_roots_of_unity_errors():
    with pytest.raises(DomainError):
        roots_of_unity(make_unramified(CTX, 1), 3)
    with pytest.raises(DomainError):
        roots_of_unity(Q25, 5)


def test_teichmueller_lift_is_fixed_by_frobenius_power():
    z = teichmueller_lift(Q25, (1, 1))
    assert (z**25 - z).is_zero()


def test_ext_log_matches_base_field():
    for n in (6, 11, 26, 7, 3):
        assert agreement(ext_log(Q25(n)).coeffs[0], padic_log(CTX(n))) >= 38
        assert ext_log(Q25(n)).coeffs[1].is_zero()


coords = st.tuples(st.integers(-50, 50), st.integers(-50, 50)).filter(
    lambda c: (c[0] % 5, c[1] % 5) != (0, 0)
)


@given(coords, coords)
@settings(max_examples=30)
def test_extension_field_laws(a, b):
    x, y = Q25(list(a)), Q25(list(b))
    assert x * y == y * x
    assert x * x.inverse() == 1
    assert agreement(ext_log(x * y), ext_log(x) + ext_log(y)) >= 38


def test_eval_laurent():
    f = from_rationals(1, {(1,): 1, (-1,): 1}, CTX)
    z = roots_of_unity(Q25, 8)[1]
    assert eval_laurent(f, [z]) == z + z.inverse()
    with pytest.raises(DomainError):
        eval_laurent(f, [Q25(5)])
