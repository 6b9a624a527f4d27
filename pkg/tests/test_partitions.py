from __future__ import annotations

from itertools import combinations, permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from quizzy import partitions as P
from quizzy.errors import ExperimentalCategoryError
from quizzy.partitions import SetPartition


def brute_partitions(m):
    """All set partitions of 1..m from every label function, deduplicated."""
    seen = set()
    for labels in product(range(max(m, 1)), repeat=m):
        seen.add(SetPartition.from_labels(labels))
    return seen


def brute_noncrossing(pi):
    owner = {x: i for i, b in enumerate(pi.blocks) for x in b}
    return not any(owner[a] == owner[c] and owner[b] == owner[d] and owner[a] != owner[b]
                   for a, b, c, d in combinations(range(1, pi.m + 1), 4))


labels_st = st.integers(0, 7).flatmap(lambda m: st.lists(st.integers(0, 3), min_size=m, max_size=m))


def test_bell_and_catalan_counts():
    assert [len(P.enumerate_category("P", m)) for m in range(9)] == [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    assert [len(P.enumerate_category("NC", m)) for m in range(9)] == [1, 1, 2, 5, 14, 42, 132, 429, 1430]


def test_even_counts():
    assert [len(P.enumerate_category("Peven", m)) for m in range(0, 11, 2)] == [1, 1, 4, 31, 379, 6556]
    assert [len(P.enumerate_category("NCeven", m)) for m in range(0, 11, 2)] == [1, 1, 3, 12, 55, 273]
    assert all(not P.enumerate_category("Peven", m) for m in (1, 3, 5))


def test_pairings_and_singletons():
    assert [len(P.enumerate_category("P2", m)) for m in (2, 4, 6)] == [1, 3, 15]
    assert [len(P.enumerate_category("NC2", m)) for m in (2, 4, 6)] == [1, 2, 5]
    # blocks of size 1 or 2
    assert [len(P.enumerate_category("P12", m)) for m in range(6)] == [1, 1, 2, 4, 10, 26]
    assert [len(P.enumerate_category("NC12", m)) for m in range(6)] == [1, 1, 2, 4, 9, 21]


@pytest.mark.parametrize("m", range(7))
def test_enumeration_matches_filter_oracle(m):
    everything = brute_partitions(m)
    assert set(P.enumerate_category("P", m)) == everything
    assert set(P.enumerate_category("NC", m)) == {p for p in everything if brute_noncrossing(p)}
    assert set(P.enumerate_category("Peven", m)) == {
        p for p in everything if all(len(b) % 2 == 0 for b in p.blocks)}


def test_nceven_four():
    got = {str(p) for p in P.enumerate_category("NCeven", 4)}
    assert got == {"{{1,2,3,4}}", "{{1,2},{3,4}}", "{{1,4},{2,3}}"}


def test_experimental_gate():
    with pytest.raises(ExperimentalCategoryError):
        P.enumerate_category("P2star", 4)
    balanced = P.enumerate_category("P2star", 4, experimental=True)
    # each pair joins an odd and an even position
    assert {str(p) for p in balanced} == {"{{1,2},{3,4}}", "{{1,4},{2,3}}"}


def test_unknown_category():
    with pytest.raises(ValueError):
        P.enumerate_category("XYZ", 3)


def test_canonical_form_and_parsing():
    a = SetPartition.from_blocks([[4, 2], [3, 1]])
    assert str(a) == "{{1,3},{2,4}}"
    assert P.parse_partition("13|24") == a
    assert P.parse_partition("{2,4}{1,3}") == a
    assert P.parse_partition("1,3;2,4") == a
    assert a.labels == (0, 1, 0, 1)
    assert len(a) == 2
    with pytest.raises(ValueError):
        SetPartition.from_blocks([[1, 2], [2, 3]])


@given(labels_st)
def test_labels_roundtrip(labels):
    pi = SetPartition.from_labels(labels)
    assert SetPartition.from_labels(pi.labels) == pi
    assert P.kernel([x + 10 for x in labels]) == pi


@given(labels_st)
def test_noncrossing_matches_brute_force(labels):
    pi = SetPartition.from_labels(labels)
    assert P.is_noncrossing(pi) == brute_noncrossing(pi)
    assert (P.crossing_count(pi) == 0) == P.is_noncrossing(pi)


def test_signature_values():
    crossing = SetPartition.from_blocks([[1, 3], [2, 4]])
    assert P.signature(crossing) == -1
    assert P.signature(SetPartition.one_block(4)) == 1
    for pi in P.enumerate_category("NCeven", 6):
        assert P.signature(pi) == 1
    with pytest.raises(ValueError):
        P.signature(SetPartition.from_blocks([[1], [2, 3, 4]]))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_signature_of_permutation_pairing_is_sign(k):
    for rho in permutations(range(1, k + 1)):
        assert P.signature(P.permutation_pairing(rho)) == P.permutation_sign(rho)


@given(labels_st, labels_st)
def test_join_is_coarser_than_both(a, b):
    m = min(len(a), len(b))
    pa, pb = SetPartition.from_labels(a[:m]), SetPartition.from_labels(b[:m])
    j = P.join_coarsen(pa, pb)
    assert P.coarser_leq(j, pa) and P.coarser_leq(j, pb)
    # least such: any common coarsening is coarser than the join
    for s in P.coarsenings(pa):
        if P.coarser_leq(s, pb):
            assert P.coarser_leq(s, j)


def test_mobius_small_values():
    one = SetPartition.one_block(4)
    crossing = SetPartition.from_blocks([[1, 3], [2, 4]])
    assert P.mobius(one, crossing, "Peven") == -1
    assert P.mobius(crossing, crossing, "Peven") == 1
    # on the full lattice, mu(one block, singletons of m) = (-1)^{m-1} (m-1)!
    for m, val in [(2, -1), (3, 2), (4, -6)]:
        assert P.mobius(SetPartition.one_block(m), SetPartition.singletons(m), "P") == val


@pytest.mark.parametrize("m", [2, 4])
def test_mobius_inverts_zeta(m):
    mu = P.Mobius("Peven")
    parts = P.enumerate_category("Peven", m)
    for s in parts:
        for p in parts:
            total = sum(mu(s, t) for t in parts if P.coarser_leq(s, t) and P.coarser_leq(t, p))
            assert total == (1 if s == p else 0)


@settings(max_examples=30)
@given(st.sampled_from(P.enumerate_category("Peven", 6)))
def test_coarsenings_of_even_are_even(pi):
    for s in P.coarsenings(pi):
        assert P.coarser_leq(s, pi)
        assert all(len(b) % 2 == 0 for b in s.blocks)
