from math import comb, prod

import pytest
from hypothesis import given, settings, strategies as st

from cstkit.diag import is_generated_by_pseudo_reflections
from cstkit.errors import FieldError, InconclusiveError, InputError, LimitError, TamenessError, UnsupportedError
from cstkit.fields import QQ, PrimeField
from cstkit.fixtures import (
    abelian_battery,
    classical_battery,
    diagonal_cyclic,
    dihedral8,
    galois_swap_group,
    minus_identity,
    permutation_matrix,
    rotation_group,
    sign_group,
    swap_group,
    symmetric_group,
)
from cstkit.linalg import monomials
from cstkit.monoid import KernelMonoid, is_free
from cstkit.reflection import (
    close_group,
    diagonalize_abelian,
    fixed_space,
    invariant_basis,
    is_generated,
    is_polynomial_invariants,
    molien_series,
    pseudo_reflection_elements,
    reynolds,
    subgroup_generated_by_pseudo_reflections,
)

BATTERY = classical_battery()
ABELIAN = abelian_battery()


def x(n, i):
    return {tuple(int(j == i) for j in range(n)): QQ(1)}


def test_close_group_examples():
    assert swap_group().order == 2
    assert diagonal_cyclic(3, (1, 2)).order == 3
    assert symmetric_group(3).order == 6
    G = symmetric_group(3)
    assert G.elements[0] == G.identity


def test_close_group_errors():
    with pytest.raises(InputError):
        close_group([((1, 0), (0, 0))])
    with pytest.raises(InputError):
        close_group([((1, 0), (0, 1)), ((1,),)])
    with pytest.raises(LimitError):
        close_group(symmetric_group(4).generators, cap=10)
    with pytest.raises(TamenessError):
        close_group([permutation_matrix((1, 0), PrimeField(2))], PrimeField(2))


def test_pseudo_reflection_examples():
    swap = permutation_matrix((1, 0))
    assert pseudo_reflection_elements(swap_group()) == [swap]
    assert pseudo_reflection_elements(minus_identity(2)) == []
    G = galois_swap_group()
    F = G.field
    i = F.zeta()
    g1 = ((F.zero, -i), (i, F.zero))
    assert g1 in pseudo_reflection_elements(G)
    assert fixed_space(G, g1) == [(F.one, i)]


@pytest.mark.parametrize("name, G", BATTERY, ids=[n for n, _ in BATTERY])
def test_pseudo_reflections_fix_hyperplanes(name, G):
    for g in pseudo_reflection_elements(G):
        assert len(fixed_space(G, g)) == G.n - 1


def test_generation_examples():
    assert is_generated(symmetric_group(3))
    assert not is_generated(diagonal_cyclic(3, (1, 2)))
    G = galois_swap_group()
    assert G.order == 4 and is_generated(G)
    assert subgroup_generated_by_pseudo_reflections(rotation_group(4)).order == 1


def test_molien_examples():
    assert molien_series(swap_group(), 7) == [1, 1, 2, 2, 3, 3, 4, 4]
    assert molien_series(symmetric_group(3), 6) == [1, 1, 2, 3, 4, 5, 7]
    trivial = close_group([], QQ, n=3)
    assert molien_series(trivial, 6) == [comb(2 + d, d) for d in range(7)]


def test_molien_refused_in_char_p():
    with pytest.raises(UnsupportedError):
        molien_series(swap_group(PrimeField(3)), 3)


@pytest.mark.parametrize("name, G", BATTERY + ABELIAN, ids=[n for n, _ in BATTERY + ABELIAN])
def test_molien_matches_invariant_dimensions(name, G):
    series = molien_series(G, 8)
    assert series == [len(invariant_basis(G, d)) for d in range(9)]


def test_reynolds_examples():
    G = swap_group()
    assert reynolds(G, x(2, 0)) == {(1, 0): QQ("1/2"), (0, 1): QQ("1/2")}
    assert reynolds(G, {(0, 0): QQ(1)}) == {(0, 0): QQ(1)}
    assert invariant_basis(G, 2) == [{(2, 0): 1, (0, 2): 1}, {(1, 1): 1}]


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from([symmetric_group(3), dihedral8(), rotation_group(3)]),
    st.dictionaries(st.integers(0, 9), st.integers(-4, 4).filter(bool), min_size=1, max_size=4),
)
def test_reynolds_is_an_idempotent_projection(G, picks):
    monos = [m for d in range(1, 4) for m in monomials(G.n, d)]
    f = {monos[k % len(monos)]: G.field(c) for k, c in picks.items()}
    r = reynolds(G, f)
    assert reynolds(G, r) == r
    for i in range(G.order):
        assert G.act(i, r) == r


def test_degree_cap_enforced():
    with pytest.raises(LimitError):
        invariant_basis(swap_group(), 60)


@pytest.mark.parametrize(
    "G, degrees",
    [(symmetric_group(3), [1, 2, 3]), (symmetric_group(4), [1, 2, 3, 4]), (minus_identity(1), [2]), (dihedral8(), [2, 4])],
)
def test_polynomial_examples(G, degrees):
    v = is_polynomial_invariants(G)
    assert v.polynomial and v.degrees == degrees


def test_not_polynomial_example():
    v = is_polynomial_invariants(diagonal_cyclic(3, (1, 2)))
    assert not v.polynomial
    assert sorted(d for d, _ in v.generators) == [2, 3, 3]


def test_small_cap_is_inconclusive():
    with pytest.raises(InconclusiveError) as info:
        is_polynomial_invariants(symmetric_group(3), degree_cap=2)
    assert info.value.resume_degree == 6


def test_char_p_polynomial():
    v = is_polynomial_invariants(swap_group(PrimeField(3)))
    assert v.polynomial and v.degrees == [1, 2]


@pytest.mark.parametrize("name, G", BATTERY, ids=[n for n, _ in BATTERY])
def test_classical_equivalence(name, G):
    v = is_polynomial_invariants(G)
    assert is_generated(G) == v.polynomial
    if v.polynomial:
        assert prod(v.degrees) == G.order
        assert sum(d - 1 for d in v.degrees) == len(pseudo_reflection_elements(G))


def test_diagonalize_examples():
    a = diagonalize_abelian(swap_group())
    assert a.group.invariant_factors == (2,) and a.weights == ((0,), (1,))
    b = diagonalize_abelian(diagonal_cyclic(3, (1, 2)))
    assert b.group.invariant_factors == (3,) and b.weights == ((1,), (2,))
    c = diagonalize_abelian(sign_group(2))
    assert c.group.invariant_factors == (2, 2) and set(c.weights) == {(1, 0), (0, 1)}


def test_diagonalize_errors():
    with pytest.raises(InputError):
        diagonalize_abelian(symmetric_group(3))
    rot3_over_q = close_group([((0, -1), (1, -1))], QQ)  # order 3, eigenvalues not rational
    with pytest.raises(FieldError):
        diagonalize_abelian(rot3_over_q)


@pytest.mark.parametrize("name, G", ABELIAN, ids=[n for n, _ in ABELIAN])
def test_bridge(name, G):
    a = diagonalize_abelian(G)
    assert a.group.order == G.order
    assert is_generated_by_pseudo_reflections(a) == is_generated(G)
    assert is_free(KernelMonoid(a)) == is_polynomial_invariants(G).polynomial
