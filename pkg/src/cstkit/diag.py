"""Diagonalizable group scheme actions D(A) on affine n-space.

A faithful action of D(A) on k^n is the same thing as an A-grading of the
coordinate ring: coordinate x_i gets a weight a_i in A, and faithfulness
means the weights generate A.  Subgroup schemes of D(A) are D(A/K) for
subgroups K of A, with D(A/K) contained in D(A/K') iff K' is contained in K.

D(A/K) fixes x_i exactly when a_i lies in K, so it is a pseudo-reflection
iff exactly one weight lies outside K.  Everything here is combinatorics on
(A, weights) and does not depend on the characteristic.

Coordinate indices are 0-based throughout.
"""

from dataclasses import dataclass
from itertools import combinations

from .abelian import (
    DEFAULT_SUBGROUP_LIMIT,
    FiniteAbelianGroup,
    Subgroup,
    enumerate_subgroups,
    full_subgroup,
    subgroup_generated,
    subgroup_intersection,
    trivial_subgroup,
)
from .errors import FaithfulnessError, InputError, TheoremViolation


@dataclass(frozen=True)
class GradedAction:
    group: FiniteAbelianGroup
    weights: tuple

    def __post_init__(self):
        if not isinstance(self.group, FiniteAbelianGroup):
            raise InputError("group must be a FiniteAbelianGroup")
        weights = tuple(self.group.element(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if not weights:
            raise InputError("an action needs at least one coordinate")
        if not subgroup_generated(self.group, weights).is_full:
            raise FaithfulnessError(
                f"weights {[list(w) for w in weights]} do not generate {self.group!r}; the action is not faithful"
            )

    @classmethod
    def from_lists(cls, invariant_factors, weights):
        group = FiniteAbelianGroup(tuple(invariant_factors))
        if group.rank == 1:
            weights = [(w,) if isinstance(w, int) else w for w in weights]
        return cls(group, tuple(tuple(w) for w in weights))

    @classmethod
    def from_json(cls, doc):
        try:
            return cls.from_lists(doc["group"], doc["weights"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed diag action: {exc}") from exc

    def to_json(self):
        return {"kind": "diag", "group": self.group.to_json(), "weights": [list(w) for w in self.weights]}

    @property
    def n(self):
        return len(self.weights)

    def permuted(self, perm):
        """Action with coordinate i moved to position perm[i]."""
        new = [None] * self.n
        for i, j in enumerate(perm):
            new[j] = self.weights[i]
        return GradedAction(self.group, tuple(new))

    def twisted(self, matrix):
        """Action with every weight pushed through an automorphism of A."""
        if not self.group.is_automorphism(matrix):
            raise InputError("matrix is not an automorphism of the group")
        return GradedAction(self.group, tuple(self.group.apply_endomorphism(matrix, w) for w in self.weights))


@dataclass(frozen=True)
class PseudoReflectionSet:
    """Kernels K with D(A/K) a pseudo-reflection, and their intersection.

    ``generated_kernel`` is K_H with H = D(A/K_H) the subgroup scheme
    generated by pseudo-reflections.  With no pseudo-reflections it is all
    of A, so H is trivial.
    """

    kernels: tuple
    excluded: tuple  # excluded[k] = index of the unique weight outside kernels[k]
    generated_kernel: Subgroup

    def __len__(self):
        return len(self.kernels)

    def to_json(self):
        return {
            "count": len(self.kernels),
            "kernels": [K.to_json() for K in self.kernels],
            "excluded_coordinates": list(self.excluded),
            "generated_kernel": self.generated_kernel.to_json(),
            "generated_kernel_order": self.generated_kernel.order,
        }


def fixed_index_set(act, K):
    """Coordinates fixed by D(A/K): ``{i : a_i in K}``."""
    if K.group != act.group:
        raise InputError("subgroup does not belong to the acting group")
    return frozenset(i for i, w in enumerate(act.weights) if w in K)


def pseudo_reflections(act, limit=DEFAULT_SUBGROUP_LIMIT):
    kernels = []
    excluded = []
    for K in enumerate_subgroups(act.group, limit=limit):
        outside = [i for i, w in enumerate(act.weights) if w not in K]
        if len(outside) == 1:
            kernels.append(K)
            excluded.append(outside[0])
    generated = full_subgroup(act.group)
    for K in kernels:
        generated = subgroup_intersection(generated, K)
    return PseudoReflectionSet(tuple(kernels), tuple(excluded), generated)


def is_generated_by_pseudo_reflections(act, limit=DEFAULT_SUBGROUP_LIMIT):
    return pseudo_reflections(act, limit=limit).generated_kernel.is_trivial


def residual_action(act, limit=DEFAULT_SUBGROUP_LIMIT):
    """The action of G/H = D(K_H) on the free generators of k[V]^H.

    k[V]^H is the monoid algebra of ``{f : pi(f) in K_H}``, which must be
    free; its generators are m_i e_i and carry the weights m_i a_i in K_H.
    """
    from .monoid import KernelMonoid, hilbert_basis

    prs = pseudo_reflections(act, limit=limit)
    K_H = prs.generated_kernel
    if K_H.is_full:
        return act
    basis = hilbert_basis(KernelMonoid(act, K_H)).generators
    if len(basis) != act.n:
        raise TheoremViolation(
            f"invariants of the pseudo-reflection subgroup of {act.to_json()} are not polynomial "
            f"(Hilbert basis of size {len(basis)})"
        )
    # order generators by the coordinate they live on
    basis = sorted(basis, key=lambda f: next(i for i, c in enumerate(f) if c))
    residual_group, coords = K_H.structure()
    weights = []
    for f in basis:
        w = act.group.zero
        for c, a in zip(f, act.weights):
            w = act.group.add(w, act.group.scale(c, a))
        weights.append(coords(w))
    try:
        return GradedAction(residual_group, tuple(weights))
    except FaithfulnessError as exc:
        raise TheoremViolation(f"residual action of {act.to_json()} is not faithful: {exc}") from exc


def assert_no_residual_pseudo_reflections(act, limit=DEFAULT_SUBGROUP_LIMIT):
    res = residual_action(act, limit=limit)
    if res.group.order == 1:
        return True
    return len(pseudo_reflections(res, limit=limit)) == 0


def residual_chain(act, limit=DEFAULT_SUBGROUP_LIMIT):
    """Iterate residual_action until it stabilizes; returns every step."""
    chain = [act]
    while True:
        nxt = residual_action(chain[-1], limit=limit)
        if nxt is chain[-1] or nxt.group.order == 1:
            if nxt is not chain[-1]:
                chain.append(nxt)
            return chain
        if nxt.group.order >= chain[-1].group.order:
            raise TheoremViolation("residual action did not shrink the group")
        chain.append(nxt)


def stabilizer_kernel(act, support):
    """``<a_i : i in support>``; the stabilizer of such a point is D(A / this)."""
    support = sorted(set(support))
    if any(i < 0 or i >= act.n for i in support):
        raise InputError(f"support {support} out of range for n={act.n}")
    return subgroup_generated(act.group, [act.weights[i] for i in support])


def inertia_trivial_at_hyperplane(act, j, limit=DEFAULT_SUBGROUP_LIMIT):
    """True iff no pseudo-reflection acts trivially on the hyperplane x_j = 0."""
    if not 0 <= j < act.n:
        raise InputError(f"coordinate {j} out of range for n={act.n}")
    return j not in pseudo_reflections(act, limit=limit).excluded


def supports(n):
    """All subsets of range(n), smallest first."""
    return [frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)]


def trivial_kernel(act):
    return trivial_subgroup(act.group)
