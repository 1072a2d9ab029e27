"""Galois-twisted constant groups and descent of pseudo-reflections.

A locally constant group G over k that splits over a Galois extension K/k
is the constant group G_K together with a semilinear action of
Gamma = Gal(K/k).  Subgroup schemes of G correspond to Gamma-stable
subgroups of G_K, so a pseudo-reflection of G_K only descends if its
subgroup is Gamma-stable.

Gamma is given by generators, each a pair ``(k, perm)``: the field
automorphism zeta -> zeta^k of the cyclotomic field K, and the induced
bijection of G_K's element list.  Only the splitting field is examined;
stability over every finite extension is not finitely checkable, which is
why the stability test is named ``..._at_splitting_field``.
"""

from dataclasses import dataclass

from .errors import InputError
from .fixtures import diagonal_cyclic, galois_swap_group, sign_group, symmetric_group
from .fields import CyclotomicField
from .linalg import mat_sub, nullspace
from .reflection import is_pseudo_reflection, matrix_to_json


def galois_matrix(G, g, k):
    return tuple(tuple(G.field.galois(x, k) for x in row) for row in g)


@dataclass(frozen=True)
class TwistedGroupData:
    group: object
    galois: tuple
    check_semilinear: bool = True

    def __post_init__(self):
        G = self.group
        idx = range(G.order)
        for k, perm in self.galois:
            if sorted(perm) != list(idx):
                raise InputError(f"Galois element {k} does not permute the {G.order} group elements")
            for i in idx:
                for j in idx:
                    if perm[G.multiply(i, j)] != G.multiply(perm[i], perm[j]):
                        raise InputError(f"Galois element {k} is not a group automorphism")
            if self.check_semilinear:
                for i in idx:
                    if galois_matrix(G, G.elements[i], k) != G.elements[perm[i]]:
                        raise InputError(
                            f"Galois element {k} is not semilinear on element {matrix_to_json(G.elements[i], G.field)}"
                        )


def galois_twist(G, exponents):
    """TwistedGroupData whose element bijections come from acting entrywise."""
    if not isinstance(G.field, CyclotomicField):
        raise InputError("Galois twists need a cyclotomic field")
    pairs = []
    for k in exponents:
        perm = []
        for g in G.elements:
            h = galois_matrix(G, g, k)
            if h not in G:
                raise InputError(f"zeta -> zeta^{k} does not preserve the group")
            perm.append(G.index(h))
        pairs.append((k, tuple(perm)))
    return TwistedGroupData(G, tuple(pairs))


def _closure(G, gens):
    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = G.multiply(h, g)
                if x not in members:
                    members.add(x)
                    nxt.append(x)
        frontier = nxt
    return frozenset(members)


def enumerate_subgroups(G):
    """Every subgroup of G, as frozensets of element indices, ordered by
    size and then by members."""
    cyclic = {_closure(G, [i]) for i in range(G.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyclic:
                if C <= S:
                    continue
                J = _closure(G, sorted(S | C))
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda S: (len(S), sorted(S)))


def is_gamma_stable(T, S):
    return all(frozenset(perm[i] for i in S) == S for _, perm in T.galois)


def galois_stable_subgroups(T):
    return [S for S in enumerate_subgroups(T.group) if is_gamma_stable(T, S)]


def common_fixed_space(G, S):
    """Basis of the vectors fixed by every element of S."""
    rows = [row for i in S for row in mat_sub(G.elements[i], G.identity)]
    return nullspace(tuple(rows), G.field)


def pseudo_reflection_subgroups(G):
    """Cyclic subgroups generated by pseudo-reflection elements."""
    subs = {_closure(G, [i]) for i, g in enumerate(G.elements) if i and is_pseudo_reflection(G, g)}
    return sorted(subs, key=lambda S: (len(S), sorted(S)))


def generated_subgroup(G, subgroups):
    gens = sorted(set().union(*subgroups)) if subgroups else []
    return _closure(G, gens)


def stable_pseudo_reflection_subgroups(T):
    return [S for S in pseudo_reflection_subgroups(T.group) if is_gamma_stable(T, S)]


def descended_pr_subgroup(T):
    """Smallest Gamma-stable subgroup containing every Gamma-stable
    pseudo-reflection subgroup.  The subgroup they generate is already
    Gamma-stable, so that is it."""
    return generated_subgroup(T.group, stable_pseudo_reflection_subgroups(T))


def full_pr_subgroup(G):
    return generated_subgroup(G, pseudo_reflection_subgroups(G))


def is_stable_at_splitting_field(T):
    return all(is_gamma_stable(T, S) for S in enumerate_subgroups(T.group))


def subgroup_to_json(G, S):
    return {
        "order": len(S),
        "elements": [matrix_to_json(G.elements[i], G.field) for i in sorted(S)],
    }


def example_twist():
    """The order-4 group over Q(i) with complex conjugation swapping g1, g2."""
    return galois_twist(galois_swap_group(), [-1])


def fixture_twists():
    """(name, TwistedGroupData) for small groups with nontrivial Galois action."""
    return [
        ("galois swap group / conjugation", example_twist()),
        ("Z/3 diag(w, w^2) / conjugation", galois_twist(diagonal_cyclic(3, (1, 2)), [-1])),
        ("Z/4 diag(i, 1) / conjugation", galois_twist(diagonal_cyclic(4, (1, 0)), [-1])),
        ("Z/4 diag(i, -1) / conjugation", galois_twist(diagonal_cyclic(4, (1, 2)), [-1])),
        ("Z/6 diag(z, z^3) / z -> z^5", galois_twist(diagonal_cyclic(6, (1, 3)), [5])),
        ("(Z/2)^2 signs / trivial", TwistedGroupData(sign_group(2), ())),
        ("(Z/2)^3 signs / trivial", TwistedGroupData(sign_group(3), ())),
        ("S3 permutation / trivial", TwistedGroupData(symmetric_group(3), ())),
    ]


def descent_demo():
    T = example_twist()
    G = T.group
    prs = pseudo_reflection_subgroups(G)
    stable = stable_pseudo_reflection_subgroups(T)
    over_k = full_pr_subgroup(G)
    descended = descended_pr_subgroup(T)
    return {
        "kind": "descent-demo",
        "field": G.field.describe(),
        "group_order": G.order,
        "pseudo_reflection_subgroups_over_K": [
            {**subgroup_to_json(G, S), "fixed_line": [[G.field.to_json(x) for x in v] for v in common_fixed_space(G, S)]}
            for S in prs
        ],
        "gamma_stable_pseudo_reflection_subgroups": [subgroup_to_json(G, S) for S in stable],
        "generated_over_K": {"order": len(over_k), "is_whole_group": len(over_k) == G.order},
        "descended": {"order": len(descended), "is_trivial": len(descended) == 1},
        "gamma_stable_subgroups": [subgroup_to_json(G, S) for S in galois_stable_subgroups(T)],
        "subgroup_count": len(enumerate_subgroups(G)),
        "stable_at_splitting_field": is_stable_at_splitting_field(T),
    }
