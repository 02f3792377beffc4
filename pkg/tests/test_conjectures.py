"""Both sides of the two identities, dimension counts and sweeps."""

from fractions import Fraction

import pytest

from tame_llc.conjectures import (
    dim_delta,
    formal_degree_EP,
    root_number_supported,
    sweep_report,
    valid_tuples,
    verify_formal_degree,
    verify_root_number,
)
from tame_llc.tame_galois import params_from_q


@pytest.mark.parametrize("tup,expected", [
    ((3, 2, 1, 0, 4), Fraction(36)),
    ((3, 1, 2, 0, 2), Fraction(6)),
    ((5, 1, 2, 0, 2), Fraction(20)),
])
def test_dimension_spot_values(tup, expected):
    P = params_from_q(*tup)
    assert dim_delta(P, "closed") == expected
    assert dim_delta(P, "index") == expected


@pytest.mark.parametrize("tup,expected", [
    ((3, 2, 1, 0, 4), Fraction(18)),
    ((3, 1, 2, 0, 2), Fraction(3)),
    ((5, 1, 2, 0, 2), Fraction(5)),
])
def test_formal_degree_spot_values(tup, expected):
    assert formal_degree_EP(params_from_q(*tup)) == expected


@pytest.mark.parametrize("tup", [(3, 2, 1, 0, 2), (5, 1, 2, 0, 2)])
def test_dimension_orbit_bruteforce(tup):
    P = params_from_q(*tup)
    assert dim_delta(P, "orbit_bruteforce") == dim_delta(P, "closed")


def test_formal_degree_identity_on_a_sample():
    for tup in [(3, 2, 1, 0, 4), (7, 1, 3, 0, 2), (9, 2, 2, 0, 3)]:
        assert verify_formal_degree(params_from_q(*tup)).status == "OK"


def test_root_number_skips_below_supported_depth():
    res = verify_root_number(params_from_q(3, 2, 1, 0, 2))
    assert res.status.startswith("SKIP")
    assert root_number_supported(params_from_q(3, 2, 1, 0, 2)) is not None


def test_root_number_on_the_two_reference_tuples(sys_ramified, sys_unramified):
    for sys in (sys_ramified, sys_unramified):
        assert verify_root_number(sys.P, sys).status == "OK"


def test_valid_tuples_is_deterministic_and_valid():
    a = valid_tuples([5, 3], 4, [3, 2])
    b = valid_tuples([3, 5], 4, [2, 3])
    assert a == b
    for P in a:
        assert 2 <= P.n <= 4
        assert P.q in (3, 5)
        assert (P.q ** P.f - 1) % P.e == 0


def test_sweep_report_is_green_on_a_small_box():
    reports = sweep_report([3], 3, [2, 3])
    assert reports
    assert all(rep.ok for rep in reports)
    payload = reports[0].to_json_dict()
    assert set(payload) == {"params", "checks", "paper_typo_notes"}
