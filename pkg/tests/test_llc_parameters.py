"""The adjoint of the tame parameter: decomposition, L-factor, conductor,
gamma at zero, centralizer and root number."""

import math
from fractions import Fraction

import pytest

from tame_llc.exactnum import Cyclotomic
from tame_llc.llc_parameters import (
    adjoint_conductor,
    adjoint_decompose,
    adjoint_gamma0_abs,
    adjoint_L,
    adjoint_root_number,
    ad_character_identity,
    centralizer_order,
    centralizer_order_bruteforce,
    model_lambda,
    phi1_trace,
)
from tame_llc.tame_galois import GAL_ID, GalElt, params_from_q

BOX = [
    params_from_q(q, e, f, m, r)
    for (q, e, f, m, r) in [
        (3, 2, 1, 0, 4), (3, 1, 2, 0, 2), (3, 2, 2, 1, 3), (5, 4, 1, 2, 3),
        (7, 3, 1, 0, 2), (7, 1, 3, 0, 3), (9, 2, 2, 0, 2), (7, 6, 1, 3, 2),
    ]
]


@pytest.mark.parametrize("P", BOX)
def test_adjoint_dimension(P):
    dec = adjoint_decompose(P)
    assert dec.total_dim == P.n ** 2 - 1


@pytest.mark.parametrize("P", BOX)
def test_adjoint_l_factor_three_ways(P):
    closed = adjoint_L(P, "closed")
    assert closed == adjoint_L(P, "decomposition")
    assert closed == adjoint_L(P, "matrix")


@pytest.mark.parametrize("P", BOX)
def test_adjoint_conductor_two_ways(P):
    c1 = adjoint_conductor(P, "filtration")
    c2 = adjoint_conductor(P, "additivity")
    assert c1 == c2 == P.r * P.n * (P.n - 1)


@pytest.mark.parametrize("P,expected", [
    (params_from_q(3, 2, 1, 0, 4), Fraction(81)),
    (params_from_q(3, 1, 2, 0, 3), Fraction(81, 2)),
    (params_from_q(3, 1, 2, 0, 2), Fraction(27, 2)),
    (params_from_q(5, 1, 3, 0, 2), Fraction(1171875, 31)),
])
def test_adjoint_gamma_at_zero(P, expected):
    assert adjoint_gamma0_abs(P) == expected


@pytest.mark.parametrize("P", BOX)
def test_centralizer_order_closed_form(P):
    assert centralizer_order(P) == math.gcd(P.e, P.q - 1) * P.f


@pytest.mark.parametrize("tup", [(3, 2, 1, 0, 2), (3, 1, 2, 0, 2),
                                 (5, 2, 1, 0, 2), (5, 4, 1, 0, 2)])
def test_centralizer_order_bruteforce(tup):
    P = params_from_q(*tup)
    assert centralizer_order_bruteforce(P) == centralizer_order(P)


def test_parameter_trace_at_identity_counts_dimension(sys_ramified):
    sys = sys_ramified
    n = sys.P.n
    assert phi1_trace(sys, GAL_ID, sys.M.one()) == Cyclotomic.from_rational(n)


def test_parameter_trace_off_identity_component_vanishes(sys_ramified):
    sys = sys_ramified
    P = sys.P
    gamma = GalElt(1 % P.e, 0)
    if gamma != GAL_ID:
        assert phi1_trace(sys, gamma, sys.M.one()) == Cyclotomic.zero()


def test_adjoint_character_identity(sys_ramified, sys_unramified):
    """|tr phi(x)|^2 - 1 agrees with the twist-sum character of the adjoint."""
    for sys in (sys_ramified, sys_unramified):
        M = sys.M
        for x in [M.one(), M.add(M.one(), M.pi()),
                  M.from_gr(M.gr.pow(M.tau, 1))]:
            lhs, rhs = ad_character_identity(sys, x)
            assert lhs == rhs


def test_model_lambda_is_a_fourth_root(sys_ramified):
    lam = model_lambda(sys_ramified)
    assert lam ** 4 == Cyclotomic.one()


def test_root_number_closed_equals_assembled(sys_ramified, sys_unramified):
    for sys in (sys_ramified, sys_unramified):
        assert adjoint_root_number(sys, "closed") == adjoint_root_number(sys, "assembled")


def test_root_number_is_a_sign(sys_ramified, sys_unramified):
    for sys in (sys_ramified, sys_unramified):
        w = adjoint_root_number(sys, "closed")
        assert w == Cyclotomic.one() or w == -Cyclotomic.one()
