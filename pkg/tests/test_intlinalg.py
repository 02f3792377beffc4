"""Integer linear algebra: normal forms, kernels and finite abelian
subgroup presentations."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tame_llc.intlinalg import (
    SubgroupPresentation,
    extend_character,
    hnf_row,
    identity_matrix,
    intersect_subgroups,
    invert_unimodular,
    kernel_subgroup,
    left_kernel_basis,
    mat_mul,
    smith_normal_form,
    solve_left,
    vec_mat,
)

small_matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(-9, 9), min_size=m, max_size=m),
            min_size=n, max_size=n,
        )
    )
)


@given(small_matrices)
def test_smith_normal_form_is_a_change_of_basis(mat):
    s, u, v = smith_normal_form(mat)
    assert mat_mul(mat_mul(u, mat), v) == s
    # both transforms are invertible over the integers
    assert mat_mul(invert_unimodular(u), u) == identity_matrix(len(mat))
    assert mat_mul(v, invert_unimodular(v)) == identity_matrix(len(mat[0]))


@given(small_matrices)
def test_smith_diagonal_divisibility_chain(mat):
    s, _, _ = smith_normal_form(mat)
    diag = [s[i][i] for i in range(min(len(s), len(s[0])))]
    for i in range(len(diag)):
        for j in range(len(s[0])):
            if j != i:
                assert s[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        assert a >= 0 and (a == 0 and b == 0 or b % max(a, 1) == 0 or a == 0)


@given(small_matrices)
def test_hnf_transform_reproduces_the_form(mat):
    h, t = hnf_row(mat)
    assert mat_mul(t, mat) == h


@given(small_matrices)
def test_left_kernel_annihilates(mat):
    for row in left_kernel_basis(mat):
        assert all(x == 0 for x in vec_mat(row, mat))


@given(small_matrices, st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_solve_left_round_trip(mat, coeffs):
    coeffs = (coeffs + [0] * len(mat))[: len(mat)]
    target = vec_mat(coeffs, mat)
    sol = solve_left(mat, target)
    assert sol is not None
    assert vec_mat(sol, mat) == list(target)


def test_solve_left_detects_unsolvable():
    assert solve_left([[2, 0], [0, 2]], [1, 0]) is None


# -- subgroup presentations -------------------------------------------------

def test_subgroup_of_z6_z4():
    ambient = [6, 4]
    sub = SubgroupPresentation(ambient, [[2, 0], [0, 2]])
    assert sub.order == 6
    assert sub.contains([4, 2])
    assert not sub.contains([1, 0])
    coords = sub.coords([2, 2])
    assert coords is not None


@given(st.lists(st.sampled_from([2, 3, 4, 6, 9]), min_size=1, max_size=3),
       st.data())
@settings(max_examples=40)
def test_subgroup_coords_invert_membership(orders, data):
    rows = [
        [data.draw(st.integers(0, d - 1)) for d in orders]
        for _ in range(len(orders))
    ]
    sub = SubgroupPresentation(orders, rows)
    # an arbitrary integer combination of the generators is a member
    combo = [0] * len(orders)
    for row in rows:
        c = data.draw(st.integers(-3, 3))
        combo = [(x + c * y) % d for x, y, d in zip(combo, row, orders)]
    assert sub.contains(combo)
    coords = sub.coords(combo)
    rebuilt = [0] * len(orders)
    for c, b in zip(coords, sub.basis):
        rebuilt = [(x + c * y) % d for x, y, d in zip(rebuilt, b, orders)]
    assert rebuilt == combo


def test_kernel_subgroup_members_map_to_zero():
    # reduction map Z/8 x Z/4 -> Z/4, (x, y) -> x + 2 y
    src = [8, 4]
    rows = [[1], [2]]
    ker = kernel_subgroup(src, rows, [4])
    assert ker.order == 8
    for b in ker.basis:
        assert (b[0] * 1 + b[1] * 2) % 4 == 0


def test_intersection_is_contained_in_both():
    ambient = [12]
    a = SubgroupPresentation(ambient, [[2]])
    b = SubgroupPresentation(ambient, [[3]])
    cap = intersect_subgroups(ambient, a.basis, b.basis)
    assert cap.order == 2
    for row in cap.basis:
        assert a.contains(row) and b.contains(row)


def test_extend_character_reproduces_prescribed_values():
    ambient = [4, 2]
    rows = [[2, 0], [0, 1]]
    values = [(1, 2), (0, 1)]  # -1 on the first generator, +1 on the second
    exps = extend_character(ambient, rows, values)
    from fractions import Fraction

    for row, (num, den) in zip(rows, values):
        frac = sum(Fraction(e * x, d) for e, x, d in zip(exps, row, ambient))
        assert frac % 1 == Fraction(num, den)


def test_extend_character_rejects_inconsistent_values():
    with pytest.raises(ValueError):
        # the generator has order 2 but is sent to a primitive 4th root
        extend_character([4], [[2]], [(1, 4)])
