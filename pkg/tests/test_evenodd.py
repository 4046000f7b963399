import pytest
from hypothesis import given

from genpos import parse_expression as P, sharp
from genpos.classify import is_even, is_gp, is_gpe, is_odd, is_p
from genpos.errors import NotOdd
from genpos.evenodd import even_part, even_product_law, odd_part, odd_square_gpe
from genpos.ratfun import equal
from strategies import gpe, rational


def test_split_of_one_over_one_plus_s():
    f = P("1/(1+s)")
    ev, od = even_part(f), odd_part(f)
    assert equal(ev, P("1/(1-s^2)"))
    assert equal(od, P("-s/(1-s^2)"))
    assert is_gpe(ev) and not is_p(ev)
    assert is_odd(od) and is_gp(od) and not is_p(od)


def test_printed_odd_part_does_not_add_up():
    # the coefficient -2 that sometimes appears for this split breaks even + odd = f
    f = P("1/(1+s)")
    assert not equal(even_part(f) + P("-2*s/(1-s^2)"), f)
    assert equal(even_part(f) + odd_part(f), f)


def test_polynomial_splits():
    assert equal(even_part(P("s^2")), P("s^2")) and odd_part(P("s^2")).is_zero()
    assert even_part(P("s")).is_zero() and equal(odd_part(P("s")), P("s"))


def test_product_law_examples():
    assert even_product_law(P("s"), P("s^2"))
    assert even_product_law(P("1/(1+s)"), P("s^2"))
    assert not even_product_law(P("s"), P("s"))


def test_odd_square():
    assert equal(odd_square_gpe(P("s")), P("-s^2")) and is_gpe(odd_square_gpe(P("s")))
    assert equal(odd_square_gpe(P("1/s")), P("-1/s^2"))
    with pytest.raises(NotOdd):
        odd_square_gpe(P("s+1"))


@given(rational())
def test_decomposition_identity(f):
    ev, od = even_part(f), odd_part(f)
    assert equal(ev + od, f)
    assert is_even(ev) and is_odd(od)
    assert equal(even_part(ev), ev) and odd_part(ev).is_zero()


@given(rational())
def test_even_part_stability(f):
    assert bool(is_gp(f)) == bool(is_gp(even_part(f)))


@given(rational(), gpe())
def test_product_law_for_even_multipliers(f, e):
    assert even_product_law(f, e)
