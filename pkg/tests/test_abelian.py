from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cstkit.abelian import (
    FiniteAbelianGroup,
    abelian_groups_up_to,
    enumerate_subgroups,
    full_subgroup,
    quotient,
    subgroup_generated,
    subgroup_intersection,
    subgroup_join,
    trivial_subgroup,
)
from cstkit.errors import InputError, LimitError
from cstkit.intmat import determinant, hermite_normal_form, matmul, smith_normal_form


def G(*factors):
    return FiniteAbelianGroup(tuple(factors))


def closure_oracle(A, gens):
    """Element-set closure by repeated addition."""
    out = {A.zero}
    frontier = [A.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = A.add(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def brute_subgroups(A):
    """All subgroups as element sets: closures of every subset of size <= rank + 1."""
    elems = A.elements()
    found = set()
    for k in range(A.rank + 2):
        for gens in combinations(elems, k):
            found.add(closure_oracle(A, gens))
    return found


# -- Smith normal form ------------------------------------------------------


@pytest.mark.parametrize(
    "M, diag",
    [
        ([[1, 0], [0, 1]], [1, 1]),
        ([[2, 4], [4, 8]], [2, 0]),
        ([[4, 2], [0, 2]], [2, 4]),
    ],
)
def test_smith_examples(M, diag):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert [D[i][i] for i in range(len(diag))] == diag


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 6).flatmap(
        lambda r: st.integers(1, 6).flatmap(
            lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
def test_smith_random(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    rows, cols = len(M), len(M[0])
    diag = [D[i][i] for i in range(min(rows, cols))]
    assert all(D[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0 if a else b == 0


def test_smith_big_entries_stay_exact():
    M = [[10**30 + 7, 3], [5, 10**30 + 11]]
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert D[0][0] * D[1][1] == abs(determinant(M))


def test_hnf_is_canonical():
    a = hermite_normal_form([[2, 0], [0, 4], [1, 1]], 2)
    b = hermite_normal_form([[1, 1], [0, 2], [4, 0]], 2)
    assert a == b


# -- groups and subgroups ---------------------------------------------------


def test_invariant_factor_validation():
    with pytest.raises(InputError):
        G(4, 2)
    with pytest.raises(InputError):
        G(1, 2)
    assert G().order == 1
    assert G(2, 4).order == 8 and G(2, 4).exponent == 4


def test_from_cyclic_orders_canonicalizes():
    assert FiniteAbelianGroup.from_cyclic_orders([2, 3]) == G(6)
    assert FiniteAbelianGroup.from_cyclic_orders([4, 2, 1]) == G(2, 4)


def test_subgroup_generated_examples():
    V4 = G(2, 2)
    assert subgroup_generated(V4, []).is_trivial
    S = subgroup_generated(G(4), [(2,)])
    assert S.order == 2 and set(S.elements()) == {(0,), (2,)}
    assert subgroup_generated(V4, [(1, 0), (0, 1)]).is_full


def test_subgroup_generated_rejects_bad_element():
    with pytest.raises(InputError):
        subgroup_generated(G(2, 2), [(1,)])


def test_intersection_examples():
    V4 = G(2, 2)
    a = subgroup_generated(V4, [(1, 0)])
    b = subgroup_generated(V4, [(0, 1)])
    assert subgroup_intersection(a, b).is_trivial
    assert subgroup_intersection(a, a) == a
    two = subgroup_generated(G(4), [(2,)])
    assert subgroup_intersection(two, full_subgroup(G(4))) == two


def test_intersection_mismatched_groups():
    with pytest.raises(InputError):
        subgroup_intersection(trivial_subgroup(G(2)), trivial_subgroup(G(3)))


def test_quotient_examples():
    B, proj = quotient(G(4), subgroup_generated(G(4), [(2,)]))
    assert B == G(2)
    assert proj((3,)) == (1,)
    B, proj = quotient(G(2, 4), trivial_subgroup(G(2, 4)))
    assert B == G(2, 4) and proj((1, 3)) == (1, 3)
    B, _ = quotient(G(6), full_subgroup(G(6)))
    assert B.order == 1


@pytest.mark.parametrize("A, count", [(G(4), 3), (G(2, 2), 5), (G(), 1), (G(2, 2, 2, 2), 67), (G(12), 6)])
def test_subgroup_counts(A, count):
    assert len(enumerate_subgroups(A)) == count


@pytest.mark.parametrize("p", [2, 3, 5])
def test_elementary_rank_two_count(p):
    assert len(enumerate_subgroups(G(p, p))) == p + 3


def test_enumeration_limit():
    with pytest.raises(LimitError):
        enumerate_subgroups(G(8, 8), limit=32)


def test_abelian_types_up_to_16():
    types = abelian_groups_up_to(16)
    assert len(types) == 25  # 1,1,1,2,1,1,1,3,2,1,1,2,1,1,1,5 summed over orders 1..16
    assert len(set(types)) == 25


@pytest.mark.parametrize("A", abelian_groups_up_to(64), ids=repr)
def test_canonical_form_matches_element_sets(A):
    subs = enumerate_subgroups(A)
    as_sets = [frozenset(S.elements()) for S in subs]
    assert len(set(as_sets)) == len(subs)
    for S, elems in zip(subs, as_sets):
        assert S.order == len(elems)
        assert subgroup_generated(A, S.generators()) == S
        B, proj = quotient(A, S)
        assert B.order * S.order == A.order
        assert all(proj(x) == B.zero for x in elems)


@pytest.mark.parametrize("A", abelian_groups_up_to(16), ids=repr)
def test_lattice_operations_against_sets(A):
    subs = enumerate_subgroups(A)
    assert {frozenset(S.elements()) for S in subs} == brute_subgroups(A)
    for S in subs[:6]:
        for T in subs[-6:]:
            meet = subgroup_intersection(S, T)
            assert frozenset(meet.elements()) == frozenset(S.elements()) & frozenset(T.elements())
            join = subgroup_join(S, T)
            assert frozenset(join.elements()) == closure_oracle(A, list(S.elements()) + list(T.elements()))


def test_automorphism_checks():
    Z3 = G(3)
    assert Z3.is_automorphism([[2]])
    assert not Z3.is_automorphism([[0]])
    assert Z3.apply_endomorphism([[2]], (1,)) == (2,)
    assert not G(2, 4).is_endomorphism([[0, 1], [1, 0]])
