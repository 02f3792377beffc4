"""Desk-scale acceptance suite: every identity the package claims is
checked here end to end, by at least two independent routes each."""

from fractions import Fraction

import pytest

from tame_llc.characters import (
    CharacterSystem,
    conductor_bruteforce,
    gauss_sum,
    quadratic_gauss_sum_field,
)
from tame_llc.conjectures import (
    dim_delta,
    formal_degree_EP,
    root_number_supported,
    valid_tuples,
    verify_formal_degree,
    verify_root_number,
)
from tame_llc.exactnum import Cyclotomic, HalfPowerScalar
from tame_llc.llc_parameters import (
    adjoint_conductor,
    adjoint_L,
    centralizer_order,
    centralizer_order_bruteforce,
    twist_conductor_predicted,
)
from tame_llc.local_factors import lambda_chain, lambda_tame
from tame_llc.ring_model import UnitGroupPresentation, build_model
from tame_llc.tame_galois import (
    GAL_ID,
    center,
    norm_index,
    order_two_set,
    params_from_q,
)

FULL_BOX = valid_tuples([3, 5, 7, 9], 6, [2, 3, 4, 5])


# 1. formal degree identity over the whole box, with pinned spot values
def test_formal_degree_identity_everywhere():
    assert len(FULL_BOX) > 100
    for P in FULL_BOX:
        assert verify_formal_degree(P).status == "OK", P


@pytest.mark.parametrize("tup,expected", [
    ((3, 2, 1, 0, 4), Fraction(18)),
    ((3, 1, 2, 0, 2), Fraction(3)),
    ((5, 1, 2, 0, 2), Fraction(5)),
])
def test_formal_degree_spot_values(tup, expected):
    assert formal_degree_EP(params_from_q(*tup)) == expected


# 2. conductor, by the filtration sum and by conductor-discriminant additivity
def test_adjoint_conductor_two_ways_everywhere():
    for P in FULL_BOX:
        c1 = adjoint_conductor(P, "filtration")
        c2 = adjoint_conductor(P, "additivity")
        assert c1 == c2 == P.r * P.n * (P.n - 1), P


# 3. adjoint L-factor by closed form, by summand decomposition, and by
#    the characteristic polynomial of the Frobenius permutation matrix
def test_adjoint_l_factor_three_ways():
    seen_f = set()
    for P in FULL_BOX:
        if P.f in seen_f or P.f > 6:
            continue
        seen_f.add(P.f)
        closed = adjoint_L(P, "closed")
        assert closed == adjoint_L(P, "decomposition"), P
        assert closed == adjoint_L(P, "matrix"), P
    assert seen_f >= {1, 2, 3, 4, 6}
    P = params_from_q(7, 1, 6, 0, 2)
    assert adjoint_L(P, "closed") == adjoint_L(P, "matrix")


# 4. Gauss sum laws: modulus one for primitive characters, and the
#    classical square of the quadratic sum, all by literal summation
def test_gauss_sum_modulus_one(sys_ramified, sys_unramified):
    for sys in (sys_ramified, sys_unramified):
        for gamma in sorted(order_two_set(sys.P).elements):
            if gamma == GAL_ID:
                continue
            tw = sys.theta_tilde_twist(gamma)
            k = conductor_bruteforce(sys, tw)
            g = gauss_sum(sys, tw, k).normalized()
            assert g.half_exp == 0
            w = g.root_number()
            assert w * w.conj() == Cyclotomic.one()


@pytest.mark.parametrize("p,d", [(3, 1), (5, 1), (7, 1), (3, 2),
                                 (5, 2), (3, 3), (7, 2), (3, 4)])
def test_quadratic_gauss_sum_squares(p, d):
    q = p ** d
    g = quadratic_gauss_sum_field(p, d)
    expected = HalfPowerScalar(
        Cyclotomic.from_rational((-1) ** ((q - 1) // 2)), 0, q
    )
    assert (g * g).normalized() == expected


# 5. the Gauss-sum root number of each twist, against the value of the
#    extended character at -1 (an instance of Frohlich-Queyrut)
def test_twist_root_number_against_value_at_minus_one(sys_ramified, sys_unramified):
    for sys in (sys_ramified, sys_unramified):
        P = sys.P
        dK = P.e - 1
        rhs = sys.theta_tilde.value_on_coords(sys.minus_one_coords())
        for gamma in sorted(order_two_set(P).elements):
            if gamma == GAL_ID:
                continue
            tw = sys.theta_tilde_twist(gamma)
            k = conductor_bruteforce(sys, tw)
            g = gauss_sum(sys, tw, k)
            assert g.root_number() * tw.value_at_uniformizer ** (dK + k) == rhs


# 6. root number identity on every supported ring-model tuple with
#    n <= 4, q <= 7, 3 <= r <= 4
def test_root_number_identity_supported_box():
    tuples = [
        P for P in valid_tuples([3, 5, 7], 4, [3, 4])
        if root_number_supported(P) is None
    ]
    assert len(tuples) == 28
    for P in tuples:
        assert verify_root_number(P).status == "OK", P


# 7. conductor breaks of the twists against the predicted e(r-1) / e(r-1)+1
def test_twist_conductor_breaks():
    tuples = [
        P for P in valid_tuples([3, 5, 7, 9], 4, [2, 3, 4])
        if P.supercuspidal_ok
    ]
    for P in tuples:
        sys = CharacterSystem(build_model(P))
        for gamma in sorted(order_two_set(P).elements):
            if gamma == GAL_ID:
                continue
            tw = sys.theta_tilde_twist(gamma)
            assert conductor_bruteforce(sys, tw) == \
                twist_conductor_predicted(P, gamma), (P, gamma)


# 8. dimension counts: closed form vs index computation everywhere,
#    vs a literal adjoint-orbit count at the smallest sizes
def test_dimension_counts():
    for P in FULL_BOX:
        d = dim_delta(P, "closed")
        assert d == dim_delta(P, "index"), P
        assert d.denominator == 1 and d > 0


@pytest.mark.parametrize("tup,expected", [
    ((3, 1, 2, 0, 2), Fraction(6)),
    ((5, 1, 2, 0, 2), Fraction(20)),
])
def test_dimension_orbit_bruteforce(tup, expected):
    P = params_from_q(*tup)
    assert dim_delta(P, "orbit_bruteforce") == expected
    assert dim_delta(P, "closed") == expected


# 9. structure checks: order-two elements, norm index, centralizers
def test_order_two_elements_are_central_when_the_table_applies():
    for P in FULL_BOX:
        data = order_two_set(P)
        if data.prediction_applicable:
            assert data.matches_prediction, P
            assert data.elements <= center(P), P


@pytest.mark.parametrize("tup", [(3, 2, 1, 0, 2), (3, 1, 2, 0, 2),
                                 (5, 2, 1, 0, 2), (5, 1, 2, 0, 2),
                                 (3, 2, 2, 1, 2)])
def test_norm_index_bruteforce(tup):
    P = params_from_q(*tup)
    M = build_model(P)
    U = UnitGroupPresentation(M, P.e * P.r)
    image = {M.norm_K_F(x) for _, x in U.enumerate()}
    base_units = (P.p - 1) * P.p ** (P.r - 1)
    assert base_units % len(image) == 0
    assert base_units // len(image) == norm_index(P)


@pytest.mark.parametrize("tup", [(3, 2, 1, 0, 2), (5, 2, 1, 0, 2)])
def test_centralizer_bruteforce_small_moduli(tup):
    from tame_llc.ring_model import centralizer_bruteforce, find_beta

    P = params_from_q(*tup)
    M = build_model(P)
    beta = find_beta(M)
    assert centralizer_bruteforce(M, beta, P.r)
    assert centralizer_order_bruteforce(P) == centralizer_order(P)


# 10. lambda factors: inductivity brute force vs the closed form, and
#     the chain rule through the unramified subextension
@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (5, 4)])
def test_lambda_inductivity(p, e):
    for u0_log in (0, 1):
        assert lambda_tame(p, 1, e, u0_log, "bruteforce") == \
            lambda_tame(p, 1, e, u0_log, "closed")


@pytest.mark.parametrize("p,e,f", [(3, 2, 2), (5, 2, 2), (5, 4, 1)])
def test_lambda_chain_rule(p, e, f):
    for u0_log in (0, 1):
        lhs, rhs = lambda_chain(p, 1, e, f, u0_log)
        assert lhs == rhs
