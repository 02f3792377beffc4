"""Tests for the exact scalar types: cyclotomics, half-power scalars and
rational functions in u = q^{-s}."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tame_llc.exactnum import (
    Cyclotomic,
    HalfPowerScalar,
    PoleAtPoint,
    RatFunc,
    ratfunc_eval,
    sqrt_as_cyclotomic,
)

orders = st.integers(1, 24)
rationals = st.fractions(min_value=-40, max_value=40, max_denominator=12)


@given(orders, st.integers(-30, 30))
def test_root_of_unity_has_exact_order(n, k):
    z = Cyclotomic.root_of_unity(n, k)
    assert z ** n == Cyclotomic.one()


@given(orders, st.integers(-30, 30), st.integers(-30, 30))
def test_roots_of_unity_multiply_by_adding_exponents(n, j, k):
    zj = Cyclotomic.root_of_unity(n, j)
    zk = Cyclotomic.root_of_unity(n, k)
    assert zj * zk == Cyclotomic.root_of_unity(n, j + k)


@given(orders, st.integers(-30, 30))
def test_conjugate_inverts_roots_of_unity(n, k):
    z = Cyclotomic.root_of_unity(n, k)
    assert z.conj() * z == Cyclotomic.one()
    assert z.inv() == z.conj()


@given(rationals, rationals, orders)
def test_rational_combinations_round_trip(a, b, n):
    x = Cyclotomic.from_rational(a) + Cyclotomic.from_rational(b) * Cyclotomic.root_of_unity(n)
    y = x - Cyclotomic.from_rational(b) * Cyclotomic.root_of_unity(n)
    assert y.is_rational()
    assert y.rational_value() == a


@given(rationals, rationals, rationals)
def test_cyclotomic_ring_axioms_on_rationals(a, b, c):
    xa, xb, xc = (Cyclotomic.from_rational(t) for t in (a, b, c))
    assert xa * (xb + xc) == xa * xb + xa * xc
    assert (xa + xb) + xc == xa + (xb + xc)
    assert xa * xb == xb * xa


@given(st.integers(1, 40))
def test_sqrt_squares_back(n):
    s = sqrt_as_cyclotomic(n)
    assert s * s == Cyclotomic.from_rational(n)


def test_sqrt_two_is_the_eighth_root_combination():
    z8 = Cyclotomic.root_of_unity(8)
    assert sqrt_as_cyclotomic(2) == z8 + z8.conj()


@given(st.sampled_from([3, 5, 7, 9, 25]), st.integers(-6, 6), st.integers(-6, 6))
def test_half_power_scalar_multiplies_exponents(q, h1, h2):
    x = HalfPowerScalar.q_half_power(q, h1) * HalfPowerScalar.q_half_power(q, h2)
    assert x == HalfPowerScalar.q_half_power(q, h1 + h2)


@given(st.sampled_from([3, 5, 7]), st.integers(-4, 4))
def test_even_half_powers_are_exact_rationals(q, h):
    x = HalfPowerScalar.q_half_power(q, 2 * h)
    v = x.exact_value()
    assert v.is_rational()
    assert v.rational_value() == Fraction(q) ** h


def test_normalized_absorbs_rational_sqrt_content():
    # sqrt(3) * 3^{-1/2} is 1 once the half exponent is folded in
    x = HalfPowerScalar(sqrt_as_cyclotomic(3), -1, 3)
    assert x.normalized() == HalfPowerScalar.one(3)
    assert x.root_number() == Cyclotomic.one()


def test_root_number_has_modulus_one():
    g = HalfPowerScalar(Cyclotomic.root_of_unity(12) * sqrt_as_cyclotomic(3), -1, 3)
    w = g.root_number()
    assert w * w.conj() == Cyclotomic.one()


# -- rational functions -----------------------------------------------------

small_polys = st.lists(st.integers(-5, 5), min_size=1, max_size=4)


def _rf(num, den):
    return RatFunc([Fraction(c) for c in num], [Fraction(c) for c in den])


@given(small_polys, small_polys, small_polys)
def test_ratfunc_field_axioms(a, b, c):
    ra, rb, rc = _rf(a, [1]), _rf(b, [1]), _rf(c, [1])
    assert ra * (rb + rc) == ra * rb + ra * rc
    assert ra + rb == rb + ra


@given(small_polys)
def test_ratfunc_inverse(a):
    ra = _rf(a, [1])
    if ra == RatFunc.constant(0):
        return
    assert ra * ra.inv() == RatFunc.one()


def test_monomial_evaluation():
    rf = RatFunc.one() - RatFunc.monomial(Fraction(1), 2)
    assert ratfunc_eval(rf, Fraction(1, 3)) == 1 - Fraction(1, 9)


def test_evaluation_at_pole_raises():
    rf = (RatFunc.one() - RatFunc.monomial(Fraction(3), 1)).inv()
    with pytest.raises(PoleAtPoint):
        ratfunc_eval(rf, Fraction(1, 3))


def test_ratfunc_cancellation_is_detected():
    # (1 - u^2)/(1 - u) equals 1 + u after reduction
    left = _rf([1, 0, -1], [1, -1])
    assert left == _rf([1, 1], [1])
