"""Integer matrix normal forms.

Matrices are plain lists of lists of Python ints (arbitrary precision), so no
intermediate value can overflow.
"""

from fractions import Fraction


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(cols)] for row in A]


def vecmat(v, M):
    """Row vector times matrix."""
    if not M:
        return []
    return [sum(v[k] * M[k][j] for k in range(len(v))) for j in range(len(M[0]))]


def determinant(M):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def smith_normal_form(M):
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    U and V are unimodular and D is diagonal with d_1 | d_2 | ... ; zero
    diagonal entries come last.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(r) for r in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        if q:
            A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in A:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // A[t][t])
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        done = False
            if not done:
                # a nonzero remainder is smaller than the pivot; move it in
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < abs(best[2])):
                        best = (i, t, A[i][t])
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < abs(best[2])):
                        best = (t, j, A[t][j])
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def hermite_normal_form(rows, ncols):
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows: echelon, positive pivots, entries above each
    pivot reduced into ``[0, pivot)``.  Unique per lattice.
    """
    A = [list(r) for r in rows if any(r)]
    r = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r, len(A)) if A[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[p] = A[p], A[r]
            piv = A[r][col]
            cleared = True
            for i in range(r + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // piv
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][col]:
                        cleared = False
            if cleared:
                break
        if r < len(A) and A[r][col]:
            if A[r][col] < 0:
                A[r] = [-a for a in A[r]]
            piv = A[r][col]
            for i in range(r):
                q = A[i][col] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
            A = A[:r] + [row for row in A[r:] if any(row)]
    return [row for row in A[:r]]


def left_kernel(M):
    """Integer basis (as rows) of ``{x : x @ M == 0}``."""
    m = len(M)
    if m == 0:
        return []
    U, D, _ = smith_normal_form(M)
    rank = sum(1 for d in diagonal(D) if d)
    return [U[i] for i in range(rank, m)]


def solve_rational(v, M):
    """Solve ``x @ M == v`` for square invertible M over the rationals."""
    n = len(M)
    # transpose system: M^T x^T = v^T
    A = [[Fraction(M[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [a * inv for a in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [A[i][n] for i in range(n)]


def solve_integer(v, M):
    x = solve_rational(v, M)
    if any(c.denominator != 1 for c in x):
        raise ValueError("vector is not in the lattice spanned by the rows")
    return [int(c) for c in x]


def rank(M):
    if not M:
        return 0
    _, D, _ = smith_normal_form(M)
    return sum(1 for d in diagonal(D) if d)
