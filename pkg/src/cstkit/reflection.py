"""Finite constant groups as exact matrix groups, and their invariant rings.

Matrices act on V = k^n.  A polynomial f in k[V] = k[x_1, ..., x_n] is moved
by g as f(x) -> f(g x), i.e. x_i -> sum_j g_ij x_j.  Either convention gives
the same invariant ring.

The invariant-ring oracle extracts a minimal homogeneous generating set of
k[V]^G degree by degree from Reynolds images and decides polynomiality
without looking at pseudo-reflections:

* more than n minimal generators  -> not polynomial;
* n algebraically independent homogeneous invariants whose degrees
  multiply to |G| -> they generate k[V]^G, which is polynomial;
* generators are complete once the degree reaches |G| (Noether bound,
  valid whenever the characteristic does not divide |G|).
"""

from dataclasses import dataclass, field as dc_field
from math import prod

from .abelian import FiniteAbelianGroup, _presentation
from .diag import GradedAction
from .errors import FieldError, InconclusiveError, InputError, LimitError, TamenessError, TheoremViolation, UnsupportedError
from .fields import CyclotomicField, QQ, to_rational
from .linalg import (
    charpoly,
    column_space,
    determinant,
    identity,
    mat_mul,
    mat_sub,
    monomials,
    nullspace,
    poly_add,
    poly_diff,
    poly_mul,
    poly_scale,
    poly_str,
    poly_to_vector,
    rank,
    rref,
    substitute_linear,
    vector_to_poly,
)

DEFAULT_GROUP_CAP = 1024
DEFAULT_DEGREE_CAP = 48


class MatrixGroup:
    """A finite group of invertible matrices, closed under products."""

    def __init__(self, field, n, elements, generators):
        self.field = field
        self.n = n
        self.elements = tuple(elements)
        self.generators = tuple(generators)
        self._index = {g: i for i, g in enumerate(self.elements)}
        self._subst = [dict() for _ in self.elements]

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return identity(self.field, self.n)

    @property
    def characteristic(self):
        return self.field.characteristic

    @property
    def is_tame(self):
        p = self.characteristic
        return p == 0 or self.order % p != 0

    def index(self, g):
        return self._index[g]

    def __contains__(self, g):
        return g in self._index

    def multiply(self, i, j):
        return self._index[mat_mul(self.elements[i], self.elements[j])]

    def is_abelian(self):
        return all(mat_mul(a, b) == mat_mul(b, a) for a in self.generators for b in self.generators)

    def element_order(self, g):
        I = self.identity
        k, h = 1, g
        while h != I:
            h = mat_mul(h, g)
            k += 1
        return k

    def act(self, i, f):
        """g_i . f = f(g_i x)."""
        return substitute_linear(f, self.elements[i], self.n, self.field, self._subst[i])

    def to_json(self):
        return {
            "kind": "constant",
            "field": self.field.describe(),
            "generators": [matrix_to_json(g, self.field) for g in self.generators],
        }

    def __repr__(self):
        return f"MatrixGroup(order={self.order}, n={self.n}, field={self.field!r})"


def matrix_to_json(g, field):
    return [[field.to_json(x) for x in row] for row in g]


def matrix_from_json(rows, field):
    try:
        return tuple(tuple(field(x) for x in row) for row in rows)
    except TypeError as exc:
        raise InputError(f"malformed matrix {rows!r}: {exc}") from exc


def _matrix_key(g, field):
    return tuple(tuple(field.key(x) for x in row) for row in g)


def close_group(generators, field=QQ, cap=DEFAULT_GROUP_CAP, n=None):
    """Close a list of invertible matrices under multiplication."""
    gens = [tuple(tuple(field(x) for x in row) for row in g) for g in generators]
    if not gens and n is None:
        raise InputError("need at least one generator or an explicit dimension")
    n = len(gens[0]) if gens else n
    for g in gens:
        if len(g) != n or any(len(row) != n for row in g):
            raise InputError(f"generators must all be {n}x{n} square matrices")
        if not determinant(g, field):
            raise InputError(f"generator {matrix_to_json(g, field)} is singular")
    I = identity(field, n)
    seen = {I}
    frontier = [I]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = mat_mul(h, g)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
                    if len(seen) > cap:
                        raise LimitError(f"group order exceeds cap {cap}", limit=cap, value=len(seen))
        frontier = nxt
    rest = sorted((g for g in seen if g != I), key=lambda g: _matrix_key(g, field))
    group = MatrixGroup(field, n, [I] + rest, gens)
    if not group.is_tame:
        raise TamenessError(
            f"characteristic {field.characteristic} divides the group order {group.order}"
        )
    return group


def fixed_space(G, g):
    """Basis of V^g = ker(g - I)."""
    return nullspace(mat_sub(g, G.identity), G.field)


def is_pseudo_reflection(G, g):
    return rank(mat_sub(g, G.identity), G.field) == 1


def pseudo_reflection_elements(G):
    return [g for g in G.elements[1:] if is_pseudo_reflection(G, g)]


def subgroup_generated_by_pseudo_reflections(G):
    prs = pseudo_reflection_elements(G)
    return close_group(prs, G.field, cap=max(G.order, 1), n=G.n)


def is_generated(G):
    return subgroup_generated_by_pseudo_reflections(G).order == G.order


# -- Molien series --------------------------------------------------------


def molien_series(G, max_degree):
    """Coefficients c_0..c_max of (1/|G|) sum_g 1/det(I - t g)."""
    if G.characteristic:
        raise UnsupportedError("Molien series is only computed in characteristic 0; use invariant_dimension")
    F = G.field
    total = [F.zero] * (max_degree + 1)
    for g in G.elements:
        c = charpoly(g, F)
        n = G.n
        # det(I - t g) = sum_j c_{n-j} t^j
        den = [c[n - j] if j <= n else F.zero for j in range(max_degree + 1)]
        inv = [F.zero] * (max_degree + 1)
        inv[0] = F.one
        for k in range(1, max_degree + 1):
            s = F.zero
            for j in range(1, min(k, n) + 1):
                if den[j]:
                    s = s - den[j] * inv[k - j]
            inv[k] = s
        total = [a + b for a, b in zip(total, inv)]
    out = []
    for x in total:
        v = to_rational(x) / G.order
        if v.denominator != 1:
            raise TheoremViolation(f"Molien coefficient {v} is not an integer")
        out.append(int(v))
    return out


# -- Reynolds operator and invariant spaces -------------------------------


def reynolds(G, f):
    """(1/|G|) sum_g g.f"""
    out = {}
    for i in range(G.order):
        out = poly_add(out, G.act(i, f))
    return poly_scale(out, G.field.one / G.field(G.order))


def _orbit_sum(G, f):
    out = {}
    for i in range(G.order):
        out = poly_add(out, G.act(i, f))
    return out


def invariant_basis(G, d, degree_cap=DEFAULT_DEGREE_CAP):
    """Reduced echelon basis of the degree-d invariants (graded-lex leading terms)."""
    if d > degree_cap:
        raise LimitError(f"degree {d} exceeds cap {degree_cap}", limit=degree_cap, value=d)
    if not G.is_tame:
        raise TamenessError("Reynolds operator needs |G| invertible in the field")
    monos = monomials(G.n, d)
    index = {e: i for i, e in enumerate(monos)}
    rows = []
    for e in monos:
        v = _orbit_sum(G, {e: G.field.one})
        if v:
            rows.append(poly_to_vector(v, index, G.field))
    R, _ = rref(rows, G.field) if rows else ([], [])
    return [vector_to_poly(r, monos) for r in R]


def invariant_dimension(G, d, degree_cap=DEFAULT_DEGREE_CAP):
    return len(invariant_basis(G, d, degree_cap=degree_cap))


# -- polynomiality oracle -------------------------------------------------


@dataclass
class InvariantVerdict:
    polynomial: bool
    degrees: list
    generators: list
    dimensions: list
    certificate: str
    field: object = dc_field(repr=False, default=None)

    def to_json(self):
        return {
            "polynomial": self.polynomial,
            "degrees": self.degrees if self.polynomial else None,
            "generator_degrees": sorted(d for d, _ in self.generators),
            "generators": [poly_str(f, self.field) for _, f in self.generators],
            "invariant_dimensions": self.dimensions,
            "certificate": self.certificate,
        }


def _weighted_exponents(degs, d):
    """All exponent vectors e with sum e_j degs_j == d."""
    out = []

    def walk(j, left, prefix):
        if j == len(degs):
            if left == 0:
                out.append(tuple(prefix))
            return
        for k in range(left // degs[j] + 1):
            walk(j + 1, left - k * degs[j], prefix + [k])

    walk(0, d, [])
    return out


def _product(gens, e, cache, n, field):
    if e in cache:
        return cache[e]
    j = next(i for i, k in enumerate(e) if k)
    rest = list(e)
    rest[j] -= 1
    rest = tuple(rest)
    p = poly_mul(gens[j][1], _product(gens, rest, cache, n, field))
    cache[e] = p
    return p


def jacobian_determinant(polys, n):
    J = [[poly_diff(f, i) for i in range(n)] for f in polys]
    return _poly_det(J, n)


def _poly_det(M, n):
    if len(M) == 1:
        return M[0][0]
    out = {}
    for j in range(len(M)):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = poly_mul(M[0][j], _poly_det(minor, n))
        if j % 2:
            term = {e: -c for e, c in term.items()}
        out = poly_add(out, term)
    return out


def series_of_product(degrees, max_degree):
    """Coefficients of prod 1/(1 - t^d) up to max_degree."""
    c = [0] * (max_degree + 1)
    c[0] = 1
    for d in degrees:
        for k in range(d, max_degree + 1):
            c[k] += c[k - d]
    return c


def extract_generators(n, field, group_order, invariants_in_degree, degree_cap, complete_at=None):
    """Greedy minimal generating set of a graded invariant ring.

    ``invariants_in_degree(d)`` returns a basis (list of polynomials) of the
    degree-d invariants, in the order that should break ties.  If
    ``complete_at`` is given, every minimal generator is known to have
    degree at most that value.
    """
    gens = []  # (degree, poly)
    cache = {}
    dims = [1]  # dims[d] = dim of degree-d invariants, as far as scanned
    char = field.characteristic
    for d in range(1, degree_cap + 1):
        inv = invariants_in_degree(d)
        dims.append(len(inv))
        monos = monomials(n, d)
        index = {e: i for i, e in enumerate(monos)}
        degs = [g[0] for g in gens]
        cache[(0,) * len(gens)] = {(0,) * n: field.one}
        span = []
        for e in _weighted_exponents(degs, d) if gens else []:
            if any(e):
                span.append(poly_to_vector(_product(gens, e, cache, n, field), index, field))
        r = rank(span, field) if span else 0
        if r < len(inv):
            rows = list(span)
            for f in inv:
                trial = rows + [poly_to_vector(f, index, field)]
                if rank(trial, field) > r:
                    rows = trial
                    r += 1
                    gens.append((d, f))
                if r == len(inv):
                    break
        if len(gens) > n:
            return InvariantVerdict(
                False, None, gens, dims, f"{len(gens)} > {n} minimal generators by degree {d}", field
            )
        if len(gens) == n and prod(g[0] for g in gens) == group_order:
            polys = [g[1] for g in gens]
            if char == 0:
                if jacobian_determinant(polys, n):
                    return InvariantVerdict(
                        True, sorted(g[0] for g in gens), gens, dims,
                        "n algebraically independent invariants (Jacobian) with degree product |G|", field,
                    )
            else:
                ok, sub_dims = _charp_independence(gens, n, field, degree_cap, d)
                if ok:
                    return InvariantVerdict(
                        True, sorted(g[0] for g in gens), gens, dims,
                        f"n invariants with degree product |G|; subalgebra dimensions match "
                        f"prod 1/(1-t^d_i) through degree {degree_cap}", field,
                    )
    if complete_at is not None and degree_cap >= complete_at:
        if len(gens) < n:
            raise TheoremViolation("fewer than n generators below the Noether bound")
        return InvariantVerdict(
            False, None, gens, dims,
            f"generating set complete at degree {degree_cap} >= |G| but not n independent invariants of degree product |G|",
            field,
        )
    raise InconclusiveError(
        f"degree cap {degree_cap} too small to decide ({len(gens)} generators so far); "
        f"rerun with a cap of at least {complete_at if complete_at is not None else 2 * degree_cap}",
        resume_degree=complete_at if complete_at is not None else 2 * degree_cap,
    )


def _charp_independence(gens, n, field, degree_cap, start):
    degs = [g[0] for g in gens]
    expected = series_of_product(degs, degree_cap)
    cache = {(0,) * n: {(0,) * n: field.one}}
    got = [1]
    for d in range(1, degree_cap + 1):
        monos = monomials(n, d)
        index = {e: i for i, e in enumerate(monos)}
        rows = [poly_to_vector(_product(gens, e, cache, n, field), index, field) for e in _weighted_exponents(degs, d)]
        got.append(rank(rows, field) if rows else 0)
        if got[-1] != expected[d]:
            return False, got
    return True, got


def is_polynomial_invariants(G, degree_cap=None):
    if not G.is_tame:
        raise TamenessError("invariant extraction needs a tame group")
    cap = G.order if degree_cap is None else degree_cap
    return extract_generators(
        G.n, G.field, G.order, lambda d: invariant_basis(G, d, degree_cap=max(cap, d)), cap, complete_at=G.order
    )


# -- abelian groups and the diagonal picture ------------------------------


def abstract_structure(G):
    """Invariant-factor form of an abelian matrix group plus coordinates.

    Returns ``(A, coords)`` with ``coords[i]`` the coordinates of element i.
    """
    if not G.is_abelian():
        raise InputError("group is not abelian")
    s = len(G.generators)
    vec = {0: (0,) * s}
    frontier = [0]
    relations = []
    while frontier:
        nxt = []
        for i in frontier:
            for j, g in enumerate(G.generators):
                k = G.index(mat_mul(G.elements[i], g))
                step = tuple(v + (1 if t == j else 0) for t, v in enumerate(vec[i]))
                if k not in vec:
                    vec[k] = step
                    nxt.append(k)
                else:
                    rel = [a - b for a, b in zip(step, vec[k])]
                    if any(rel):
                        relations.append(rel)
        frontier = nxt
    A, present = _presentation(relations, s) if s else (FiniteAbelianGroup(()), lambda v: ())
    coords = [present(vec[i]) for i in range(G.order)]
    return A, coords


def simultaneous_eigenbasis(G):
    """Eigen-lines of an abelian char-0 group: list of (character, vector).

    A character is given by its coordinates c in the dual of the
    invariant-factor form, chi_c(h_i) = zeta_{d_i}^{c_i}.
    """
    if G.characteristic:
        raise UnsupportedError("diagonalization is only done in characteristic 0")
    A, coords = abstract_structure(G)
    F = G.field
    exponent = F.exponent if isinstance(F, CyclotomicField) else 2
    if exponent % A.exponent:
        raise FieldError(
            f"field {F!r} lacks primitive {A.exponent}-th roots of unity; declare a cyclotomic order divisible by {A.exponent}"
        )

    def root(order, k):
        if isinstance(F, CyclotomicField):
            return F.root_of_unity(order, k)
        return F(-1) ** (k % 2) if order == 2 else F.one

    lines = []
    for c in A.elements():
        P = [[F.zero] * G.n for _ in range(G.n)]
        for g, k in zip(G.elements, coords):
            val = F.one
            for ci, ki, d in zip(c, k, A.invariant_factors):
                val = val * root(d, -ci * ki % d)
            for r in range(G.n):
                for t in range(G.n):
                    if g[r][t]:
                        P[r][t] = P[r][t] + val * g[r][t]
        cols = column_space(P, F)
        for v in cols:
            lines.append((c, tuple(v)))
    if len(lines) != G.n:
        raise TheoremViolation("eigenspaces do not span V")
    lines.sort(key=lambda cv: (next(i for i, x in enumerate(cv[1]) if x), cv[0]))
    return A, lines


def diagonalize_abelian(G):
    """The D(A)-grading equivalent to an abelian char-0 matrix group."""
    A, lines = simultaneous_eigenbasis(G)
    return GradedAction(A, tuple(c for c, _ in lines))
