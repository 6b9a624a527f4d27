from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quizzy import classical as C
from quizzy.classical import SignedPermutation
from quizzy.errors import BudgetExceededError


def signed_perm(N):
    return st.tuples(st.permutations(range(1, N + 1)), st.lists(st.sampled_from([1, -1]), min_size=N,
                                                                 max_size=N)).map(
        lambda t: SignedPermutation(tuple(t[0]), tuple(t[1])))


def compose(p, q):
    """(p ∘ q)(x) = p(q(x)) for index arrays."""
    return tuple(p[q[x]] for x in range(len(q)))


def orbits_by_closure(action, k):
    """Orbits on X^k by applying every group element to every tuple (no generators)."""
    from itertools import product
    seen = set()
    count = 0
    for t in product(range(action.size), repeat=k):
        if t in seen:
            continue
        count += 1
        for e in action.elements:
            seen.add(tuple(e[x] for x in t))
    return count


@pytest.mark.parametrize("N,order", [(1, 2), (2, 8), (3, 48), (4, 384)])
def test_hyperoctahedral_order(N, order):
    elems = C.enumerate_hyperoctahedral(N)
    assert len(elems) == order == len(set(elems))


def test_group_size_guard():
    with pytest.raises(BudgetExceededError):
        C.enumerate_hyperoctahedral(7)


@given(signed_perm(4), signed_perm(4), signed_perm(4))
def test_group_axioms(g, h, k):
    e = SignedPermutation.identity(4)
    assert g * e == g == e * g
    assert g * g.inverse() == e
    assert (g * h) * k == g * (h * k)


@given(signed_perm(4), signed_perm(4))
def test_actions_are_homomorphisms(g, h):
    assert C.action_cube(g * h) == compose(C.action_cube(g), C.action_cube(h))
    assert C.action_segments(g * h) == compose(C.action_segments(g), C.action_segments(h))


def test_action_examples():
    e = SignedPermutation.identity(3)
    assert C.action_segments(e) == tuple(range(6))
    assert C.action_cube(e) == tuple(range(8))
    flip = SignedPermutation((1, 2, 3), (1, -1, 1))
    # endpoints (2,+) and (2,-) are points 1 and 4
    assert C.action_segments(flip) == (0, 4, 2, 3, 1, 5)
    assert C.action_cube(SignedPermutation((1,), (-1,))) == (1, 0)


def test_actions_are_faithful():
    for N in (2, 3):
        elems = C.enumerate_hyperoctahedral(N)
        assert len({C.action_cube(g) for g in elems}) == len(elems)
        assert len({C.action_segments(g) for g in elems}) == len(elems)


def test_burnside_examples():
    seg = C.hyperoctahedral_action(4)
    assert [C.burnside_orbital_count(seg, k) for k in (1, 2, 3, 4)] == [1, 3, 11, 49]
    assert C.burnside_orbital_count(C.hyperoctahedral_action(3, "cube"), 2) == 4
    assert C.burnside_orbital_count(C.symmetric_action(4), 3) == 5
    with pytest.raises(ValueError):
        C.burnside_orbital_count(seg, 0)


def test_segment_counts_stabilise():
    for k in (1, 2, 3, 4):
        a = C.burnside_orbital_count(C.hyperoctahedral_action(4), k)
        b = C.burnside_orbital_count(C.hyperoctahedral_action(5), k)
        assert a == b


@pytest.mark.parametrize("name,k", [("seg3", 1), ("seg3", 2), ("seg3", 3), ("cube3", 2),
                                    ("cube3", 3), ("s4", 3), ("s4", 4), ("seg4", 3)])
def test_three_orbit_counts_agree(name, k):
    action = {"seg3": C.hyperoctahedral_action(3), "cube3": C.hyperoctahedral_action(3, "cube"),
              "s4": C.symmetric_action(4), "seg4": C.hyperoctahedral_action(4)}[name]
    burn = C.burnside_orbital_count(action, k)
    assert len(C.enumerate_korbitals(action, k)) == burn == orbits_by_closure(action, k)


def test_cube_orbitals_by_distance():
    classes = C.enumerate_korbitals(C.hyperoctahedral_action(2, "cube"), 2)
    assert len(classes) == 3
    by_dist = {}
    for cls in classes:
        x, y = cls[0]
        d = sum(a != b for a, b in zip(C.cube_vertex(x, 2), C.cube_vertex(y, 2)))
        by_dist[d] = len(cls)
    # squared diagonal lengths 0, 1·4, 2·4 appear with sizes 4, 8, 4
    assert by_dist == {0: 4, 1: 8, 2: 4}


def test_transitive_action_has_one_orbit():
    for act in (C.hyperoctahedral_action(3), C.hyperoctahedral_action(3, "cube"), C.symmetric_action(4)):
        assert len(C.enumerate_korbitals(act, 1)) == 1


def test_configuration_multiplicities():
    act = C.hyperoctahedral_action(4)
    three = C.configuration_multiplicities(C.enumerate_korbitals(act, 3), 4)
    assert sorted(three.values()) == [1, 1, 3, 3, 3]
    assert {C.render_shape(s): v for s, v in three.items()} == {
        "•••—": 1, "••—•": 3, "••— •—": 3, "•—• •—": 3, "•— •— •—": 1}
    four = C.configuration_multiplicities(C.enumerate_korbitals(act, 4), 4)
    assert sorted(four.values()) == sorted([1, 4, 3, 4, 12, 3, 6, 3, 6, 6, 1])
    assert sum(four.values()) == 49


def test_korbital_budget():
    with pytest.raises(BudgetExceededError):
        C.enumerate_korbitals(C.hyperoctahedral_action(4), 7, max_tuples=10 ** 5)


def test_sudoku_matrix():
    assert C.sudoku_matrix(SignedPermutation.identity(3)) == [[int(i == j) for j in range(6)]
                                                             for i in range(6)]
    assert C.sudoku_matrix([[-1]]) == [[0, 1], [1, 0]]
    for N in (2, 3):
        for g in C.enumerate_hyperoctahedral(N):
            M = C.sudoku_matrix(g)
            assert C.is_permutation_matrix(M)
            assert M == C.permutation_matrix(C.action_segments(g))
            m = g.matrix()
            # a - b recovers g, and g^2 entrywise is a permutation matrix
            assert all(M[i][j] - M[i][N + j] == m[i][j] for i in range(N) for j in range(N))
            assert C.is_permutation_matrix([[x * x for x in row] for row in m])


def test_transitivity_reports():
    s5 = C.transitivity_check(C.symmetric_action(5), 3)
    assert s5.moment == 5 and s5.distinct_integral == Fraction(1, 60)
    assert s5.kernel_mismatch_zero and s5.k_transitive and s5.consistent
    for N in (4, 5):
        act = C.symmetric_action(N)
        assert [C.transitivity_check(act, k).moment for k in (1, 2, 3)] == [1, 2, 5]
    h4 = C.transitivity_check(C.hyperoctahedral_action(4), 2)
    assert h4.moment == 3 and not h4.k_transitive and h4.consistent


def test_finite_action_validation():
    with pytest.raises(ValueError):
        C.FiniteAction(2, [(1, 0)])
    act = C.symmetric_action(3)
    assert act.is_closed_on([(a, b) for a in range(6) for b in range(6)])
