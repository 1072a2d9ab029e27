"""Well-split groups Delta x| Q acting by monomial symmetries.

Delta = D(A) acts diagonally through a weight vector; the finite constant
group Q permutes the coordinates and acts on A by automorphisms, with the
weights permuted equivariantly: a_{q(i)} = q . a_i.

Characteristic 0: the whole group is constant, so it is built as an
explicit monomial matrix group and handed to :mod:`cstkit.reflection`.

Characteristic p with Delta local (every invariant factor a power of p):
Delta has no nontrivial k-points, so the pseudo-reflection search looks at
two families only:

(a) diagonalizable pseudo-reflections D(A/K) inside Delta;
(b) etale pseudo-reflection elements, i.e. permutations q with a
    codimension-one fixed space (transpositions).

Over an algebraically closed perfect field a pseudo-reflection N splits as
N0 x| N_et with N0 in Delta, and faithfulness pushes N0 and each etale
generator into these two families.  Whether the subgroup they GENERATE is
the right one is exactly what the side-by-side invariant-ring oracle
audits; disagreements are reported, not suppressed.
"""

from dataclasses import dataclass
from math import lcm

from .diag import GradedAction, pseudo_reflections
from .errors import EquivarianceError, InputError, TamenessError, TheoremViolation
from .fields import QQ, CyclotomicField, PrimeField
from .fixtures import permutation_matrix
from .linalg import mat_sub, monomials, rank
from .monoid import KernelMonoid
from .reflection import (
    close_group,
    extract_generators,
    is_polynomial_invariants,
    pseudo_reflection_elements,
    subgroup_generated_by_pseudo_reflections,
)
from .report import OPEN_QUESTION_WELLSPLIT_CHARP, AnalysisReport


def compose(q, r):
    """(q o r)(i) = q(r(i))."""
    return tuple(q[i] for i in r)


def perm_closure(gens, n):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = compose(g, h)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return [ident] + sorted(seen - {ident})


def cycle_count(q):
    seen = set()
    cycles = 0
    for i in range(len(q)):
        if i not in seen:
            cycles += 1
            j = i
            while j not in seen:
                seen.add(j)
                j = q[j]
    return cycles


@dataclass(frozen=True)
class WellSplitAction:
    action: GradedAction
    perm_generators: tuple
    q_on_A: tuple
    characteristic: int = 0

    @classmethod
    def from_json(cls, doc):
        try:
            action = GradedAction.from_lists(doc["group"], doc["weights"])
            perms = tuple(tuple(int(x) for x in p) for p in doc.get("perm_generators", []))
            q_on_A = tuple(tuple(tuple(int(x) for x in row) for row in M) for M in doc.get("q_on_A", []))
            char = int(doc.get("char", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed wellsplit action: {exc}") from exc
        ws = cls(action, perms, q_on_A, char)
        validate(ws)
        return ws

    def to_json(self):
        return {
            "kind": "wellsplit",
            "group": self.action.group.to_json(),
            "weights": [list(w) for w in self.action.weights],
            "perm_generators": [list(p) for p in self.perm_generators],
            "q_on_A": [[list(row) for row in M] for M in self.q_on_A],
            "char": self.characteristic,
        }

    @property
    def n(self):
        return self.action.n

    def q_elements(self):
        return perm_closure(self.perm_generators, self.n)

    @property
    def order(self):
        return self.action.group.order * len(self.q_elements())


def validate(ws):
    n = ws.n
    A = ws.action.group
    p = ws.characteristic
    if p < 0:
        raise InputError(f"characteristic must be >= 0, got {p}")
    if p > 0:
        PrimeField(p)
    for q in ws.perm_generators:
        if sorted(q) != list(range(n)):
            raise InputError(f"{list(q)} is not a permutation of 0..{n - 1}")
    if len(ws.q_on_A) != len(ws.perm_generators):
        raise InputError(
            f"need one automorphism of A per permutation generator, got {len(ws.q_on_A)} for {len(ws.perm_generators)}"
        )
    for q, M in zip(ws.perm_generators, ws.q_on_A):
        if not A.is_automorphism([list(r) for r in M]):
            raise InputError(f"{[list(r) for r in M]} is not an automorphism of {A!r}")
        for i in range(n):
            moved = A.apply_endomorphism([list(r) for r in M], ws.action.weights[i])
            if ws.action.weights[q[i]] != moved:
                raise EquivarianceError(
                    f"permutation {list(q)} is not equivariant: a_{q[i]} = {list(ws.action.weights[q[i]])} "
                    f"but q.a_{i} = {list(moved)}"
                )
    order_q = len(ws.q_elements())
    if p and order_q % p == 0:
        raise TamenessError(f"characteristic {p} divides |Q| = {order_q}; Q is not tame")


@dataclass
class FixedLocusReport:
    entries: list

    def divisorial(self):
        return [e["perm"] for e in self.entries if e["divisorial"]]

    def to_json(self):
        return {"entries": self.entries}


def fixed_locus_codimensions(ws):
    """Codimension of ker(perm(q) - I) for every nontrivial q in Q."""
    field = PrimeField(ws.characteristic) if ws.characteristic else QQ
    n = ws.n
    I = permutation_matrix(tuple(range(n)), field)
    entries = []
    for q in ws.q_elements()[1:]:
        codim = rank(mat_sub(permutation_matrix(q, field), I), field)
        if codim != n - cycle_count(q):
            raise TheoremViolation(f"rank of perm({list(q)}) - I disagrees with its cycle count")
        entries.append({"perm": list(q), "codimension": codim, "divisorial": codim == 1})
    return FixedLocusReport(entries)


def diagonal_character(A, weights, field, j):
    """diag(zeta_{d_j}^{a_i[j]}) - the j-th basis character of A acting."""
    d = A.invariant_factors[j]
    n = len(weights)
    return tuple(
        tuple(field.root_of_unity(d, weights[i][j]) if i == t else field.zero for t in range(n)) for i in range(n)
    )


def monomial_group(ws, cap=None):
    A = ws.action.group
    orders = [cycle_order(q) for q in ws.q_elements()]
    m = lcm(A.exponent, *orders)
    F = CyclotomicField(m)
    gens = [diagonal_character(A, ws.action.weights, F, j) for j in range(A.rank)]
    gens += [permutation_matrix(q, F) for q in ws.perm_generators]
    kwargs = {} if cap is None else {"cap": cap}
    return close_group(gens, F, n=ws.n, **kwargs)


def cycle_order(q):
    k, h = 1, q
    ident = tuple(range(len(q)))
    while h != ident:
        h = compose(q, h)
        k += 1
    return k


def analyze_char0(ws, degree_cap=None, cap=None):
    if ws.characteristic != 0:
        raise InputError("analyze_char0 needs characteristic 0")
    G = monomial_group(ws, cap=cap)
    prs = pseudo_reflection_elements(G)
    H = subgroup_generated_by_pseudo_reflections(G)
    verdict = is_polynomial_invariants(G, degree_cap=degree_cap)
    return AnalysisReport(
        kind="wellsplit",
        input=ws.to_json(),
        pseudo_reflection_count=len(prs),
        generated_subgroup={"order": H.order, "group_order": G.order},
        criterion_verdict=H.order == G.order,
        oracle_verdict=verdict.polynomial,
        oracle={"degrees": verdict.degrees, **{k: v for k, v in verdict.to_json().items() if k != "polynomial"}},
        limits={"degree_cap": degree_cap if degree_cap is not None else G.order},
        details={"monomial_group_order": G.order, "field": G.field.describe()},
    )


def _is_p_power(d, p):
    while d % p == 0:
        d //= p
    return d == 1


def charp_invariant_oracle(ws, degree_cap):
    """Invariants of Delta are spanned by kernel-monoid monomials; Q-invariants
    among those are spanned by orbit sums (Q is tame)."""
    p = ws.characteristic
    F = PrimeField(p)
    n = ws.n
    P = KernelMonoid(ws.action)
    Q = ws.q_elements()

    def invariants(d):
        seen = set()
        out = []
        for e in monomials(n, d):
            if e in seen or not P.contains(e):
                continue
            orbit = set()
            for q in Q:
                moved = [0] * n
                for i, k in enumerate(e):
                    moved[q[i]] = k
                orbit.add(tuple(moved))
            seen |= orbit
            out.append(dict.fromkeys(orbit, F.one))
        # leading monomial first so ties break graded-lex
        return sorted(out, key=lambda f: max(f), reverse=True)

    return extract_generators(n, F, ws.order, invariants, degree_cap)


def analyze_charp_local(ws, degree_cap=None):
    p = ws.characteristic
    if p <= 0:
        raise InputError("analyze_charp_local needs a positive characteristic")
    A = ws.action.group
    bad = [d for d in A.invariant_factors if not _is_p_power(d, p)]
    if bad:
        raise InputError(
            f"invariant factors {bad} are not powers of {p}: the diagonalizable part is not local; "
            "move the prime-to-p part into Q or analyze in characteristic 0"
        )
    prs = pseudo_reflections(ws.action)
    K_H = prs.generated_kernel
    fixed = fixed_locus_codimensions(ws)
    etale = [tuple(q) for q in fixed.divisorial()]
    Q = ws.q_elements()
    Q_H = perm_closure(etale, ws.n)
    candidate = K_H.is_trivial and len(Q_H) == len(Q)
    cap = 2 * ws.order if degree_cap is None else degree_cap
    verdict = charp_invariant_oracle(ws, cap)
    report = AnalysisReport(
        kind="wellsplit",
        input=ws.to_json(),
        pseudo_reflection_count=len(prs) + len(etale),
        generated_subgroup={
            "diagonalizable_kernel": K_H.to_json(),
            "diagonalizable_kernel_order": K_H.order,
            "etale_subgroup_order": len(Q_H),
            "Q_order": len(Q),
        },
        criterion_verdict=candidate,
        oracle_verdict=verdict.polynomial,
        oracle={"degrees": verdict.degrees, **{k: v for k, v in verdict.to_json().items() if k != "polynomial"}},
        limits={"degree_cap": cap},
        details={
            "experimental": True,
            "family_a_kernels": [K.to_json() for K in prs.kernels],
            "family_b_permutations": [list(q) for q in etale],
        },
    )
    if not report.agreement:
        report.warnings.append(
            "candidate verdict and invariant-ring oracle disagree (known open question, not a defect)"
        )
        report.open_question = OPEN_QUESTION_WELLSPLIT_CHARP
    return report


def analyze(ws, degree_cap=None):
    if ws.characteristic == 0:
        return analyze_char0(ws, degree_cap=degree_cap)
    return analyze_charp_local(ws, degree_cap=degree_cap)


def family_a_is_q_stable(ws):
    """The diagonalizable pseudo-reflection kernels are permuted by Q."""
    kernels = set(pseudo_reflections(ws.action).kernels)
    for M in ws.q_on_A:
        if {K.image([list(r) for r in M]) for K in kernels} != kernels:
            return False
    return True
