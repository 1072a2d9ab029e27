"""Finite abelian groups, their elements, and their subgroup lattices.

A group is stored by its invariant factors d_1 | d_2 | ... | d_r and an
element by its coordinate tuple reduced modulo those factors.  A subgroup K
is stored as the row Hermite normal form of its preimage lattice
L = K + D.Z^r in Z^r; that matrix is unique, so subgroup equality and
hashing are plain tuple comparisons.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, prod

from .errors import InputError, LimitError
from .intmat import (
    diagonal,
    hermite_normal_form,
    left_kernel,
    smith_normal_form,
    solve_integer,
    vecmat,
)

__all__ = [
    "FiniteAbelianGroup",
    "Subgroup",
    "smith_normal_form",
    "subgroup_generated",
    "subgroup_intersection",
    "subgroup_join",
    "quotient",
    "enumerate_subgroups",
    "DEFAULT_SUBGROUP_LIMIT",
    "abelian_groups_up_to",
    "trivial_subgroup",
    "full_subgroup",
]

DEFAULT_SUBGROUP_LIMIT = 4096


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for d in factors:
            if d < 2:
                raise InputError(f"invariant factors must be >= 2, got {list(factors)}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise InputError(f"invariant factors must form a divisibility chain, got {list(factors)}")

    @classmethod
    def from_cyclic_orders(cls, orders):
        """Canonical form of Z/n_1 x ... x Z/n_k (any orders >= 1)."""
        orders = [int(n) for n in orders]
        if any(n < 1 for n in orders):
            raise InputError(f"cyclic orders must be positive, got {orders}")
        if not orders:
            return cls(())
        _, D, _ = smith_normal_form([[n if i == j else 0 for j in range(len(orders))] for i, n in enumerate(orders)])
        return cls(tuple(d for d in diagonal(D) if d != 1))

    def __repr__(self):
        if not self.invariant_factors:
            return "FiniteAbelianGroup(trivial)"
        return "FiniteAbelianGroup(" + " x ".join(f"Z/{d}" for d in self.invariant_factors) + ")"

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def order(self):
        return prod(self.invariant_factors)

    @property
    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def zero(self):
        return (0,) * self.rank

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise InputError(f"element {list(coords)} has length {len(coords)}, group rank is {self.rank}")
        return tuple(int(c) % d for c, d in zip(coords, self.invariant_factors))

    def elements(self):
        return list(product(*(range(d) for d in self.invariant_factors)))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x):
        return tuple(-a % d for a, d in zip(x, self.invariant_factors))

    def scale(self, k, x):
        return tuple(k * a % d for a, d in zip(x, self.invariant_factors))

    def element_order(self, x):
        n = 1
        for a, d in zip(x, self.invariant_factors):
            n = n * (d // gcd(a, d)) // gcd(n, d // gcd(a, d))
        return n

    def apply_endomorphism(self, matrix, x):
        """Image of ``x`` under ``v -> v @ matrix`` (row i = image of e_i)."""
        return self.element(vecmat(list(x), matrix)) if self.rank else ()

    def is_endomorphism(self, matrix):
        """True iff ``v -> v @ matrix`` is well defined modulo the relations."""
        if len(matrix) != self.rank or any(len(row) != self.rank for row in matrix):
            return False
        for d, row in zip(self.invariant_factors, matrix):
            if any(self.element([d * c for c in row])):
                return False
        return True

    def is_automorphism(self, matrix):
        if not self.is_endomorphism(matrix):
            return False
        images = [self.apply_endomorphism(matrix, e) for e in self.basis()]
        return subgroup_generated(self, images).is_full

    def basis(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def to_json(self):
        return list(self.invariant_factors)


def _relation_rows(group):
    r = group.rank
    return [[d if i == j else 0 for j in range(r)] for i, d in enumerate(group.invariant_factors)]


@dataclass(frozen=True)
class Subgroup:
    """A subgroup K of ``group``; ``hnf`` is the canonical basis of K + D.Z^r."""

    group: FiniteAbelianGroup
    hnf: tuple

    @property
    def order(self):
        return self.group.order // prod(self.hnf[i][i] for i in range(self.group.rank))

    @property
    def index(self):
        return self.group.order // self.order

    @property
    def is_trivial(self):
        return self.order == 1

    @property
    def is_full(self):
        return self.order == self.group.order

    def __contains__(self, x):
        v = list(x)
        for i, row in enumerate(self.hnf):
            piv = row[i]
            if v[i] % piv:
                return False
            q = v[i] // piv
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    def generators(self):
        """Nonzero reductions of the canonical basis rows."""
        gens = []
        for row in self.hnf:
            x = self.group.element(row)
            if any(x) and x not in gens:
                gens.append(x)
        return gens

    def elements(self):
        return [x for x in self.group.elements() if x in self]

    def structure(self):
        """Abstract canonical form of this subgroup and its embedding map.

        Returns ``(B, coords)`` where ``coords(x)`` sends an element of this
        subgroup (in ambient coordinates) to its coordinates in B.
        """
        r = self.group.rank
        H = [list(row) for row in self.hnf]
        C = [solve_integer(rel, H) for rel in _relation_rows(self.group)]
        B, present = _presentation(C, r)

        def coords(x):
            if x not in self:
                raise InputError(f"{list(x)} is not in the subgroup")
            return present(solve_integer(list(x), H))

        return B, coords

    def image(self, matrix):
        """Image of this subgroup under the endomorphism ``v -> v @ matrix``."""
        return subgroup_generated(self.group, [self.group.apply_endomorphism(matrix, g) for g in self.generators()])

    def sort_key(self):
        return self.hnf

    def to_json(self):
        return [list(g) for g in self.generators()]

    def __repr__(self):
        return f"Subgroup(order={self.order}, generators={self.to_json()})"


def _presentation(relations, r):
    """Canonical group Z^r / rowspan(relations) plus the coordinate map."""
    U, D, V = smith_normal_form(relations) if relations else (None, [], None)
    diag = diagonal(D) if relations else []
    diag = diag + [0] * (r - len(diag))
    if any(d == 0 for d in diag):
        raise InputError("relations do not present a finite group")
    keep = [i for i, d in enumerate(diag) if d != 1]
    moduli = [diag[i] for i in keep]
    group = FiniteAbelianGroup(tuple(moduli))

    def present(v):
        w = vecmat(list(v), V) if V else []
        return tuple(w[i] % diag[i] for i in keep)

    return group, present


def _from_lattice(group, rows):
    basis = hermite_normal_form(list(rows) + _relation_rows(group), group.rank)
    return Subgroup(group, tuple(tuple(row) for row in basis))


def _check_element(group, x):
    x = tuple(x)
    if len(x) != group.rank:
        raise InputError(f"element {list(x)} has length {len(x)}, group rank is {group.rank}")
    return group.element(x)


def subgroup_generated(group, gens):
    """Smallest subgroup of ``group`` containing every element of ``gens``."""
    gens = [_check_element(group, g) for g in gens]
    return _from_lattice(group, [list(g) for g in gens])


def trivial_subgroup(group):
    return subgroup_generated(group, [])


def full_subgroup(group):
    return subgroup_generated(group, group.basis())


def _check_same(S, T):
    if S.group != T.group:
        raise InputError(f"subgroups live in different groups: {S.group!r} vs {T.group!r}")


def subgroup_intersection(S, T):
    _check_same(S, T)
    r = S.group.rank
    if r == 0:
        return S
    H1 = [list(row) for row in S.hnf]
    H2 = [list(row) for row in T.hnf]
    stacked = H1 + [[-a for a in row] for row in H2]
    vecs = [vecmat(x[:r], H1) for x in left_kernel(stacked)]
    return _from_lattice(S.group, vecs)


def subgroup_join(S, T):
    _check_same(S, T)
    return _from_lattice(S.group, [list(r) for r in S.hnf + T.hnf])


class QuotientMap:
    """Projection A -> A/K in canonical coordinates of A/K."""

    def __init__(self, source, target, present):
        self.source = source
        self.target = target
        self._present = present

    def __call__(self, x):
        return self._present(_check_element(self.source, x))


def quotient(group, K):
    """Return ``(A/K, projection)`` with A/K in invariant-factor form."""
    if K.group != group:
        raise InputError("subgroup does not belong to this group")
    target, present = _presentation([list(row) for row in K.hnf], group.rank)
    return target, QuotientMap(group, target, present)


@lru_cache(maxsize=256)
def _enumerate_subgroups(group):
    elements = group.elements()
    start = trivial_subgroup(group)
    seen = {start}
    work = [start]
    while work:
        S = work.pop()
        members = [y for y in elements if y in S]
        covered = set(members)
        for x in elements:
            if x in covered:
                continue
            # every element of the coset x + S yields the same extension
            covered.update(group.add(x, y) for y in members)
            T = subgroup_join(S, subgroup_generated(group, [x]))
            if T not in seen:
                seen.add(T)
                work.append(T)
    return tuple(sorted(seen, key=Subgroup.sort_key))


def enumerate_subgroups(group, limit=DEFAULT_SUBGROUP_LIMIT):
    """All subgroups of ``group``, sorted by canonical form."""
    if group.order > limit:
        raise LimitError(
            f"group order {group.order} exceeds subgroup enumeration limit {limit}",
            limit=limit,
            value=group.order,
        )
    return list(_enumerate_subgroups(group))


def abelian_groups_up_to(max_order):
    """Every isomorphism type of abelian group of order <= max_order."""
    out = []
    for n in range(1, max_order + 1):
        out.extend(FiniteAbelianGroup(f) for f in _invariant_factor_chains(n))
    return out


def _invariant_factor_chains(n):
    # chains d_1 | ... | d_r with product n, d_i >= 2
    def build(remaining, last):
        if remaining == 1:
            yield ()
            return
        for d in range(2, remaining + 1):
            if remaining % d == 0 and (last == 0 or d % last == 0):
                rest = remaining // d
                for tail in build(rest, d):
                    if not tail or tail[0] % d == 0:
                        yield (d,) + tail

    return sorted(set(build(n, 0)))
