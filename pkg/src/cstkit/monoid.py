"""Kernel monoids P = {f in N^n : pi(f) in K} and their Hilbert bases.

For a weight vector (a_1, ..., a_n) in A and a subgroup K, k[V]^{D(A/K)} is
the monoid algebra k[P].  Let m_i be the order of a_i in A/K.

Box bound.  If f is in P and f_i >= m_i then f - m_i e_i is in P again, and
it is nonzero unless f = m_i e_i.  So every irreducible element lies in the
box {f : f_i < m_i for all i} or is one of the m_i e_i.  Moreover, if f and
g are in P with g <= f then f - g is in P, so the irreducible elements are
exactly the componentwise-minimal nonzero elements of P.

Freeness.  P contains every m_i e_i, so it has rank n and its cone is the
whole orthant; P is free iff its Hilbert basis has exactly n elements.

Minimal free resolutions.  The inclusion P -> N^n is automatically close
because N^n gp / P gp is the finite group A/K.  It fails to be minimal
exactly when it factors through a coordinate scaling (m, 1, ..., 1) with
m > 1, i.e. when some coordinate gcd over P exceeds 1.
"""

import os
from dataclasses import dataclass, field
from math import gcd, prod

from .abelian import quotient, subgroup_generated, trivial_subgroup
from .diag import pseudo_reflections, stabilizer_kernel, supports
from .errors import InputError, LimitError

DEFAULT_BOX_LIMIT = 10**6


def box_limit():
    env = os.environ.get("CSTKIT_LIMIT_BOX")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"CSTKIT_LIMIT_BOX must be an integer, got {env!r}") from None
    return DEFAULT_BOX_LIMIT


@dataclass(frozen=True)
class KernelMonoid:
    action: object
    target: object = None

    def __post_init__(self):
        if self.target is None:
            object.__setattr__(self, "target", trivial_subgroup(self.action.group))
        elif self.target.group != self.action.group:
            raise InputError("target subgroup does not belong to the acting group")

    @property
    def n(self):
        return self.action.n

    def contains(self, f):
        g = self.action.group
        w = g.zero
        for c, a in zip(f, self.action.weights):
            w = g.add(w, g.scale(c, a))
        return w in self.target

    def orders(self):
        return _images(self.action.group, self.action.weights, self.target)[1]


@dataclass(frozen=True)
class HilbertBasis:
    generators: tuple
    box_size: int = field(default=0, compare=False)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def to_json(self):
        return [list(f) for f in self.generators]


def _images(group, weights, target):
    B, proj = quotient(group, target)
    images = [proj(w) for w in weights]
    orders = [B.element_order(b) for b in images]
    return B, orders, images


def kernel_hilbert_basis(group, weights, target, limit=None):
    """Hilbert basis of ``{f in N^n : sum f_i a_i in target}``.

    Unlike :func:`hilbert_basis` this does not require the weights to
    generate the group.
    """
    limit = box_limit() if limit is None else limit
    B, orders, images = _images(group, weights, target)
    n = len(weights)
    box = prod(orders)
    if box > limit:
        raise LimitError(f"Hilbert basis box has {box} points, limit is {limit}", limit=limit, value=box)

    zero = B.zero
    candidates = []
    last = n - 1
    # f_last * b_last hits each target at most once on [0, m_last)
    last_solutions = {}
    acc = zero
    for k in range(orders[last]):
        last_solutions[acc] = k
        acc = B.add(acc, images[last])

    prefix = [0] * n

    def walk(i, partial):
        if i == last:
            k = last_solutions.get(B.neg(partial))
            if k is not None:
                f = tuple(prefix[:last]) + (k,)
                if any(f):
                    candidates.append(f)
            return
        b = images[i]
        s = partial
        for c in range(orders[i]):
            prefix[i] = c
            walk(i + 1, s)
            s = B.add(s, b)
        prefix[i] = 0

    walk(0, zero)
    for i, m in enumerate(orders):
        candidates.append(tuple(m if j == i else 0 for j in range(n)))

    candidates = sorted(set(candidates), key=lambda f: (sum(f), f))
    basis = []
    for f in candidates:
        if not any(all(h <= c for h, c in zip(g, f)) for g in basis):
            basis.append(f)
    return HilbertBasis(tuple(sorted(basis)), box_size=box)


def hilbert_basis(P, limit=None):
    return kernel_hilbert_basis(P.action.group, P.action.weights, P.target, limit=limit)


def is_free(P, limit=None):
    return len(hilbert_basis(P, limit=limit)) == P.n


def coordinate_gcds(P, limit=None):
    basis = hilbert_basis(P, limit=limit).generators
    out = []
    for j in range(P.n):
        g = 0
        for f in basis:
            g = gcd(g, f[j])
        out.append(g)
    return tuple(out)


def _require_full_group(P, what):
    if not P.target.is_trivial:
        raise InputError(f"{what} is defined for the invariants of the whole group (trivial target subgroup)")


def is_minimal_free_resolution(P, limit=None):
    _require_full_group(P, "is_minimal_free_resolution")
    return all(g == 1 for g in coordinate_gcds(P, limit=limit))


def stratum_is_smooth(P, support, limit=None):
    """Is Spec k[P] smooth along the torus-orbit of points with this support?

    Localizing at the face F = {f in P : supp f in S} inverts the lattice L
    spanned by the Hilbert basis elements supported in S.  Since P is the
    full orthant intersected with the lattice gp(P), the sharp part of the
    localization is the projection of gp(P) to the coordinates outside S,
    intersected with the orthant there.  That projection is the kernel
    monoid of the remaining weights with target <a_i : i in S> + K, so
    smoothness is freeness of that smaller kernel monoid.
    """
    _require_full_group(P, "stratum_is_smooth")
    act = P.action
    S = frozenset(support)
    if any(i < 0 or i >= act.n for i in S):
        raise InputError(f"support {sorted(S)} out of range for n={act.n}")
    rest = [i for i in range(act.n) if i not in S]
    if not rest:
        return True
    face_target = stabilizer_kernel(act, S)
    basis = kernel_hilbert_basis(act.group, [act.weights[i] for i in rest], face_target, limit=limit)
    return len(basis) == len(rest)


@dataclass
class TorsorReport:
    action: object
    strata: list
    violations: list

    @property
    def passed(self):
        return not self.violations

    def non_smooth_supports(self):
        return [s["support"] for s in self.strata if not s["smooth"]]

    def to_json(self):
        return {
            "action": self.action.to_json(),
            "pass": self.passed,
            "strata_checked": len(self.strata),
            "strata": self.strata,
            "violations": self.violations,
        }


def verify_torsor_theorem(act, limit=None):
    """Check that smooth strata of k^n / D(A) have trivial stabilizers.

    Requires an action without pseudo-reflections.  A violation (a smooth
    stratum with a nontrivial stabilizer) would contradict the theorem.
    """
    prs = pseudo_reflections(act)
    if len(prs):
        raise InputError(
            f"action has {len(prs)} pseudo-reflection(s) with kernels {[K.to_json() for K in prs.kernels]}; "
            "the torsor check needs a pseudo-reflection-free action"
        )
    P = KernelMonoid(act)
    strata = []
    violations = []
    for S in supports(act.n):
        smooth = stratum_is_smooth(P, S, limit=limit)
        stabilizer_trivial = stabilizer_kernel(act, S).is_full
        entry = {"support": sorted(S), "smooth": smooth, "stabilizer_trivial": stabilizer_trivial}
        strata.append(entry)
        if smooth and not stabilizer_trivial:
            violations.append(sorted(S))
    return TorsorReport(act, strata, violations)


def graded_nonzero_ideal_generators(P):
    """Minimal monomials of nonzero degree in A/K, as exponent vectors.

    A monomial x^f has nonzero degree iff some x_i dividing it does, so the
    ideal is generated by the variables with a_i outside K.  An empty list
    means the ideal is zero and the fixed locus is the whole space.
    """
    act = P.action
    n = act.n
    return [tuple(int(j == i) for j in range(n)) for i, w in enumerate(act.weights) if w not in P.target]


def invariant_monomials_up_to(P, degree):
    """Brute-force list of the elements of P with total degree <= degree."""
    out = []

    def walk(prefix, left):
        if len(prefix) == P.n:
            if P.contains(prefix):
                out.append(tuple(prefix))
            return
        for c in range(left + 1):
            walk(prefix + [c], left - c)

    walk([], degree)
    return sorted(out)


def hilbert_basis_degrees(basis):
    return sorted(sum(f) for f in basis)


def weight_subgroup(act, indices):
    return subgroup_generated(act.group, [act.weights[i] for i in indices])
