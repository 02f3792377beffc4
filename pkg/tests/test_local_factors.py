"""Local L-, epsilon- and lambda-factors, and the Weil-Deligne assembly
for the principal parameter."""

from fractions import Fraction

import pytest

from tame_llc.exactnum import Cyclotomic, RatFunc
from tame_llc.local_factors import (
    AbelianCharData,
    BruteForceUnsupported,
    LocalFactorTriple,
    eps_abelian,
    gamma_at_zero_abs,
    induced_factor,
    lambda_chain,
    lambda_tame,
    principal_descriptor,
    principal_triple,
    sym_pairing,
    sym_pairing_check,
    trivial_triple,
    wd_factors,
)
from tame_llc.tame_galois import GAL_ID, order_two_set


def test_trivial_triple_has_the_geometric_l_factor():
    t = trivial_triple(3)
    assert t.a == 0
    assert t.L == (RatFunc.one() - RatFunc.monomial(Fraction(1), 1)).inv()
    assert t.root_number() == Cyclotomic.one()


def test_direct_sum_adds_conductors_and_multiplies_eps():
    t = trivial_triple(3)
    s = t.direct_sum(t)
    assert s.a == 0
    assert s.fixed_dim == 2 * t.fixed_dim


def test_unramified_abelian_characters_have_no_eps():
    chi = AbelianCharData(q_base=3, cond=0,
                          value_at_uniformizer=Cyclotomic.root_of_unity(4),
                          gauss=None)
    t = eps_abelian(chi)
    assert t.a == 0
    assert t.root_number() == Cyclotomic.one()


# -- lambda factors ---------------------------------------------------------

@pytest.mark.parametrize("p,d,e", [
    (3, 1, 2), (5, 1, 2), (7, 1, 2), (5, 1, 4), (13, 1, 4),
    (3, 2, 2), (3, 2, 4), (3, 2, 8), (5, 2, 2), (7, 1, 3), (7, 1, 6),
])
def test_lambda_closed_form_equals_inductivity_quotient(p, d, e):
    for u0_log in (0, 1):
        closed = lambda_tame(p, d, e, u0_log, "closed")
        brute = lambda_tame(p, d, e, u0_log, "bruteforce")
        assert closed == brute


def test_lambda_of_odd_degree_is_trivial():
    assert lambda_tame(3, 1, 1, 0) == Cyclotomic.one()
    assert lambda_tame(7, 1, 3, 1, "closed") == Cyclotomic.one()


def test_lambda_fourth_power_is_a_sign():
    lam = lambda_tame(3, 1, 2, 0)
    assert lam ** 4 == Cyclotomic.one()


def test_lambda_bruteforce_needs_a_cyclic_extension():
    with pytest.raises(BruteForceUnsupported):
        lambda_tame(3, 1, 4, 0, "bruteforce")


@pytest.mark.parametrize("p,d,e,f,u0", [
    (3, 1, 2, 1, 0), (3, 1, 2, 2, 1), (5, 1, 2, 2, 0), (5, 1, 4, 1, 1),
])
def test_lambda_chain_rule(p, d, e, f, u0):
    lhs, rhs = lambda_chain(p, d, e, f, u0)
    assert lhs == rhs


# -- induced factors --------------------------------------------------------

def test_induced_factor_shapes(sys_ramified, sys_unramified):
    for sys in (sys_ramified, sys_unramified):
        P = sys.P
        o2 = order_two_set(P)
        for gamma in sorted(o2.elements):
            if gamma == GAL_ID:
                continue
            t = induced_factor(sys, gamma)
            w = t.root_number()
            assert w * w.conj() == Cyclotomic.one()
            assert t.a >= P.f * (P.e - 1)


# -- the principal parameter ------------------------------------------------

@pytest.mark.parametrize("n,q,expected", [
    (2, 3, Fraction(9, 4)),
    (3, 3, Fraction(243, 13)),
    (4, 3, Fraction(19683, 40)),
    (5, 3, Fraction(4782969, 121)),
    (2, 5, Fraction(25, 6)),
])
def test_principal_gamma_at_zero(n, q, expected):
    assert principal_triple(n, q).gamma0 == expected


@pytest.mark.parametrize("n,q", [(2, 3), (3, 3), (4, 5), (6, 7)])
def test_principal_adjoint_structure(n, q):
    data = principal_triple(n, q)
    assert data.ad_eigen_exponents == tuple(range(1, n))
    t = data.triple
    assert t.a == n * (n - 1)
    # L has a simple factor (1 - q^{-k} u)^{-1} for each exponent
    L = RatFunc.one()
    for k in range(1, n):
        L = L * (RatFunc.one() - RatFunc.monomial(Fraction(1, q ** k), 1)).inv()
    assert t.L == L


def test_principal_gamma_zero_against_eps_l_ratio():
    # gamma(0) = eps * L(1)/L(0) evaluated exactly, for n = 3
    data = principal_triple(3, 5)
    assert gamma_at_zero_abs(data.triple) == data.gamma0


# -- symmetric power pairing ------------------------------------------------

def test_sym_pairing_antidiagonal():
    n = 3
    for i in range(n + 1):
        for j in range(n + 1):
            if i + j != n:
                assert sym_pairing(n, i, j) == 0
    assert sym_pairing(n, 0, n) == -sym_pairing(n, n, 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sym_pairing_invariance(n):
    one = Cyclotomic.one()
    zero = Cyclotomic.zero()
    i = Cyclotomic.root_of_unity(4)
    gs = [
        [[one, zero], [zero, one]],
        [[zero, one], [-one, zero]],
        [[i, zero], [zero, i.conj()]],
        [[one, one], [zero, one]],
    ]
    assert sym_pairing_check(n, gs)


def test_wd_assembly_of_the_principal_descriptor():
    n, q = 4, 3
    assembled = wd_factors(principal_descriptor(n, q), q)
    direct = principal_triple(n, q).triple
    assert assembled.a == direct.a
    assert assembled.L == direct.L
    assert assembled.root_number() == direct.root_number()
