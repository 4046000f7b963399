import numpy as np
import pytest
from hypothesis import given, strategies as st

from genpos import parse_expression as P
from genpos.bounded import (
    BlaschkeProduct, blaschke_extract, cayley, cayley_inv, gb_g_instability_demo, gb_representation,
)
from genpos.classify import is_bounded, is_gb, is_gp, is_p
from genpos.errors import BadG, DegenerateTransform, NotGB, NotPositive
from genpos.ratfun import equal
from oracles import grid_gb
from strategies import admissible_g, open_rhp, positive


def test_cayley_examples():
    assert cayley(P("1")).is_zero()
    assert equal(cayley(P("s")), P("(1-s)/(1+s)"))
    f = cayley(P("(s-2)/s"))
    assert equal(f, P("1/(s-1)"))
    assert is_gb(f) and not is_bounded(f)
    with pytest.raises(DegenerateTransform):
        cayley(P("-1"))
    with pytest.raises(DegenerateTransform):
        cayley_inv(P("-1"))


def test_blaschke_product():
    beta = BlaschkeProduct((1.0, 2 + 1j))
    w = np.linspace(-9, 9, 31)
    assert np.allclose(np.abs(beta(1j * w)), 1, atol=1e-12)
    assert len(beta) == 2
    assert np.allclose(beta.to_rational()(1j * w), beta(1j * w))
    with pytest.raises(ValueError):
        BlaschkeProduct((-1.0,))
    with pytest.raises(ValueError):
        BlaschkeProduct((1j,))


def test_blaschke_extract_examples():
    f_b, beta = blaschke_extract(P("1/(s-1)"))
    assert beta.factors == (pytest.approx(1),)
    assert equal(f_b, P("1/(s+1)"))
    f_b, beta = blaschke_extract(P("1/(s-1)^2"))
    assert len(beta) == 2 and is_bounded(f_b)
    f_b, beta = blaschke_extract(P("(1-s)/(1+s)"))
    assert len(beta) == 0
    with pytest.raises(NotGB):
        blaschke_extract(P("2/(1+s)"))


def test_gb_representation():
    f = gb_representation(P("(s-2)/s"), P("s/(s+2)"))
    assert is_gb(f)
    with pytest.raises(NotPositive):
        gb_representation(P("1"), P("-1"))
    with pytest.raises(BadG):
        gb_representation(P("s+1"), P("1"))


def test_cayley_of_gp_with_close_pole_zero_pair():
    # 1 - psi has a zero 3e-6 from a pole of psi; cancelling them broke |f| <= 1
    from genpos import sharp
    g = P("(s-2*i)/(s^2+2.5*i*s)")
    p = P("((-4-0.5*i) + (0.25-4*i)*s + s^2)/((0.125-2*i) + s)")
    f = cayley(g * p * sharp(g))
    assert is_gb(f) and grid_gb(f)


def test_gbg_demo():
    demo = gb_g_instability_demo(P("(s-1)/(s-2)"))
    assert demo.distinct_zeros and demo.distinct_poles
    assert demo.p_positive == (True, True)
    assert is_gb(demo.f1) and is_gb(demo.f2)
    same = gb_g_instability_demo(P("(s-1)/(s-2)"), eps=0, delta=0)
    assert not same.distinct_zeros and not same.distinct_poles
    lit = gb_g_instability_demo(P("(s-1)/(s-2)"), literal=True)
    assert lit.p_positive == (False, False)
    with pytest.raises(BadG):
        gb_g_instability_demo(P("s/(s-2)"))
    with pytest.raises(ValueError):
        gb_g_instability_demo(P("(s-1)/(s-2)"), eps=-1)


@given(positive())
def test_cayley_transport(p):
    if equal(p, P("-1")):
        return
    f = cayley(p)
    assert is_bounded(f)
    assert equal(cayley_inv(f), p)


@given(st.lists(open_rhp, min_size=0, max_size=3), positive(max_deg=2))
def test_blaschke_round_trip(ws, p):
    f_b = cayley(p)
    beta = BlaschkeProduct(tuple(ws))
    f = f_b / beta.to_rational()
    assert is_gb(f) and grid_gb(f)
    got_b, got_beta = blaschke_extract(f)
    assert equal(got_b / got_beta.to_rational(), f)
    w = np.linspace(-20, 20, 81)
    assert np.allclose(np.abs(got_beta(1j * w)), 1, atol=1e-10)


def _g_from(zs, ps):
    from genpos.polynomial import Polynomial
    from genpos.ratfun import RationalFunction

    return RationalFunction(Polynomial.from_roots(zs), Polynomial.from_roots(ps))


g_roots = st.lists(open_rhp, min_size=1, max_size=2, unique=True)
perturb = st.sampled_from([1e-3, 1e-2, 5e-2])


@given(g_roots, g_roots, perturb, perturb)
def test_gbg_generator_always_distinct(zs, ps, eps, delta):
    if any(abs(z - p) < 0.1 for z in zs for p in ps):
        return
    demo = gb_g_instability_demo(_g_from(zs, ps), eps, delta, literal=True)
    assert demo.distinct_zeros and demo.distinct_poles


@given(g_roots, g_roots, perturb, perturb)
def test_gbg_positive_variant_moves_poles(zs, ps, eps, delta):
    if any(abs(z - p) < 0.1 for z in zs for p in ps):
        return
    demo = gb_g_instability_demo(_g_from(zs, ps), eps, delta)
    assert demo.p_positive == (True, True)
    assert is_gb(demo.f1) and is_gb(demo.f2)
    assert demo.distinct_poles


def test_gbg_positive_variant_can_fix_zeros():
    # with genuinely positive p1, p2 both members may have no right-half-plane zeros
    demo = gb_g_instability_demo(P("(s-0.25)/(s-0.25-0.5*i)"))
    assert demo.zeros1 == demo.zeros2 == ()
    assert demo.distinct_poles
