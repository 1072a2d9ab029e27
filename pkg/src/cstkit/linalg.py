"""Dense exact linear algebra and sparse multivariate polynomials over any
of the fields in :mod:`cstkit.fields`.

Matrices are tuples of row tuples.  A polynomial is a dict mapping exponent
tuples to nonzero coefficients.
"""

from itertools import combinations_with_replacement


def identity(field, n):
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def mat_mul(A, B):
    n = len(B[0])
    return tuple(tuple(sum((a * B[k][j] for k, a in enumerate(row) if a), start=row[0] * 0) for j in range(n)) for row in A)


def mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(A, B))


def mat_vec(A, v):
    return tuple(sum((a * x for a, x in zip(row, v) if a), start=row[0] * 0) for row in A)


def transpose(A):
    return tuple(zip(*A))


def rref(rows, field):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = field.one / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return [tuple(row) for row in A[:r]], pivots


def rank(rows, field):
    if not rows:
        return 0
    return len(rref(rows, field)[1])


def nullspace(A, field):
    """Basis of ``{v : A v = 0}`` (column vectors), each normalized so its
    first nonzero entry is 1."""
    n = len(A[0])
    R, pivots = rref(A, field)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    out = []
    for v in basis:
        lead = next(x for x in v if x)
        out.append(tuple(x / lead for x in v))
    return out


def column_space(A, field):
    R, _ = rref(transpose(A), field)
    return R


def determinant(A, field):
    A = [list(r) for r in A]
    n = len(A)
    det = field.one
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return field.zero
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det = det * A[c][c]
        inv = field.one / A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det


def charpoly(A, field):
    """Coefficients c_0..c_n of det(x I - A) by Faddeev-LeVerrier.

    Divides by 1..n, so it needs characteristic 0 (or > n).
    """
    n = len(A)
    coeffs = [field.zero] * (n + 1)
    coeffs[n] = field.one
    M = tuple(tuple(field.zero for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        AM = mat_mul(A, M)
        M = tuple(tuple(AM[i][j] + (coeffs[n - k + 1] if i == j else field.zero) for j in range(n)) for i in range(n))
        AM = mat_mul(A, M)
        trace = sum((AM[i][i] for i in range(n)), start=field.zero)
        coeffs[n - k] = -trace / k
    return coeffs


# -- polynomials ----------------------------------------------------------


def monomials(n, d):
    """Exponent vectors of total degree d in n variables, in graded-lex
    order (x_1 > x_2 > ...), largest first."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def poly_add(f, g):
    out = dict(f)
    for e, c in g.items():
        s = out.get(e)
        s = c if s is None else s + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def poly_scale(f, c):
    if not c:
        return {}
    return {e: a * c for e, a in f.items()}


def poly_mul(f, g):
    out = {}
    for e1, a in f.items():
        for e2, b in g.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e)
            out[e] = a * b if s is None else s + a * b
    return {e: c for e, c in out.items() if c}


def poly_pow(f, k, n, field):
    out = {(0,) * n: field.one}
    base = f
    while k:
        if k & 1:
            out = poly_mul(out, base)
        base = poly_mul(base, base)
        k >>= 1
    return out


def poly_diff(f, i):
    out = {}
    for e, c in f.items():
        if e[i]:
            d = list(e)
            d[i] -= 1
            v = c * e[i]
            if v:
                out[tuple(d)] = v
    return out


def poly_degree(f):
    return max((sum(e) for e in f), default=-1)


def substitute_linear(f, forms, n, field, cache=None):
    """f(L_1, ..., L_n) for linear forms L_i given as coefficient tuples."""
    cache = {} if cache is None else cache
    out = {}
    for e, c in f.items():
        term = {(0,) * n: c}
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                p = cache.get(key)
                if p is None:
                    lin = {tuple(int(j == t) for t in range(n)): a for j, a in enumerate(forms[i]) if a}
                    p = poly_pow(lin, k, n, field)
                    cache[key] = p
                term = poly_mul(term, p)
        out = poly_add(out, term)
    return out


def poly_to_vector(f, basis_index, field):
    v = [field.zero] * len(basis_index)
    for e, c in f.items():
        v[basis_index[e]] = c
    return tuple(v)


def vector_to_poly(v, monos):
    return {e: c for e, c in zip(monos, v) if c}


def poly_to_json(f, field):
    return [[list(e), field.to_json(c)] for e, c in sorted(f.items(), reverse=True)]


def poly_str(f, field, names=None):
    if not f:
        return "0"
    n = len(next(iter(f)))
    names = names or (["x", "y", "z", "w"][:n] if n <= 4 else [f"x{i + 1}" for i in range(n)])
    parts = []
    for e, c in sorted(f.items(), reverse=True):
        mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
        coef = field.to_json(c)
        if isinstance(coef, list):
            coef = "(" + repr(c) + ")"
        if mono:
            parts.append(mono if coef == 1 else f"{coef}*{mono}")
        else:
            parts.append(str(coef))
    return " + ".join(parts)
